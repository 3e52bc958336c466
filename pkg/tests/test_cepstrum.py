#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from stripid.features import extract, default_config, config_from_dict
from stripid.features.cepstrum import (CepstrumConfig, cepstral_features,
                                       cepstral_spectra, dct1d)
from stripid.errors import MethodMismatch
from stripid.features.cgpf import CgpfConfig
from stripid.imaging import resize
from stripid.utils import to_uint8
from stripid.synth import gen_class_specs, hue_twin, render_sample, AugmentSpec

# Largest feature distance between a smooth image and its 2x upscale
UPSCALE_TOLERANCE = 0.01


def smooth_image():
    """Two whole-period cosine gratings per channel on a 256 x 256 canvas."""
    y, x = np.mgrid[:256, :256]
    planes = [128 + 60 * np.cos(2 * np.pi * (2 * x + y) / 256 + k)
              + 30 * np.cos(2 * np.pi * (x - 3 * y) / 256 + 2 * k) for k in range(3)]
    return to_uint8(np.dstack(planes))


class TestCepstralFeatures:

    @staticmethod
    def setup():
        rng = np.random.default_rng(8)
        return rng.integers(0, 256, size=(120, 90, 3), dtype=np.uint8)

    def test_default_length(self):
        features = cepstral_features(self.setup())
        assert features.method == 'cepstrum'
        assert len(features) == 20

    def test_pure(self):
        img = self.setup()
        assert cepstral_features(img) == cepstral_features(img.copy())

    def test_pipeline_composition(self):
        img = self.setup()
        cfg = CepstrumConfig(bin_count=64, coeff_count=10)
        binned = cepstral_spectra(img, cfg)
        assert len(binned) == 64
        assert binned.counts.sum() == pytest.approx(1.0)
        expected = dct1d(binned.counts)[:10]
        assert np.array_equal(cepstral_features(img, cfg).values, expected)

    def test_first_coefficient_is_constant(self):
        # The frequencies sum to one, so F(0) = 1 / sqrt(B)
        features = cepstral_features(self.setup())
        assert features.values[0] == pytest.approx(1 / np.sqrt(128))

    def test_hue_rotation_changes_features(self):
        spec = gen_class_specs(3, seed=4)[1]
        twin = hue_twin(spec, 20)
        a = render_sample(spec, AugmentSpec.none(), 0)
        b = render_sample(twin, AugmentSpec.none(), 0)
        distance = np.linalg.norm(cepstral_features(a).values - cepstral_features(b).values)
        assert distance > 0

    def test_upscale_is_consistent(self):
        img = smooth_image()
        upscaled = resize(img, 512, 512)
        distance = np.linalg.norm(cepstral_features(img).values
                                  - cepstral_features(upscaled).values)
        assert distance < UPSCALE_TOLERANCE

    def test_config_validation(self):
        with pytest.raises(ValueError):
            CepstrumConfig(bin_count=10, coeff_count=20)
        with pytest.raises(ValueError):
            CepstrumConfig(coeff_count=0)
        with pytest.raises(ValueError):
            CepstrumConfig(resize_dims=(0, 256))


class TestRegistry:

    def test_default_configs(self):
        assert default_config('cepstrum').dims == 20
        assert default_config('cgpf').dims == 31
        with pytest.raises(MethodMismatch):
            default_config('brisk')

    def test_config_round_trip(self):
        cfg = CepstrumConfig(bin_count=32, coeff_count=12)
        assert config_from_dict('cepstrum', cfg.to_dict()) == cfg
        cgpf = CgpfConfig(top_regions=3, threshold=100.0)
        assert config_from_dict('cgpf', cgpf.to_dict()) == cgpf

    def test_extract_dispatch(self):
        img = np.full((16, 16, 3), 40, dtype=np.uint8)
        assert extract(img, 'cepstrum').method == 'cepstrum'
        assert len(extract(img, 'cgpf')) == 31
        with pytest.raises(MethodMismatch):
            extract(img, 'cepstrum', CgpfConfig())
