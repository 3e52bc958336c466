#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The 2-D cepstral feature extractor.

The image is brought to the working size and split into its R, G and B
planes. Each plane is Fourier transformed and log compressed, the three
spectra are pooled into one population and histogrammed into uniform
bins, and the DCT of the bin frequencies is truncated to its leading
coefficients.
"""

import logging
from dataclasses import dataclass, asdict
from stripid.features.transforms import (BinVector, fft2d, log_magnitude,
                                         bin_values, dct1d)
from stripid.features.vector import FeatureVector
from stripid.imaging import canonicalize, split_planes, CANONICAL_SIZE

log = logging.getLogger(__name__)

__all__ = ['CepstrumConfig', 'BinVector', 'fft2d', 'log_magnitude',
           'bin_values', 'dct1d', 'cepstral_spectra', 'cepstral_features']


@dataclass(frozen=True)
class CepstrumConfig:
    """
    Parameters of the cepstral extractor.

    Attributes
    ----------
    resize_dims : tuple
        Working size (width, height) every image is resized to.
    bin_count : int
        Number of uniform bins B.
    coeff_count : int
        Number of leading DCT coefficients K kept as features.

    Examples
    ---------
    >>> CepstrumConfig().coeff_count
    20
    >>> CepstrumConfig(bin_count=8, coeff_count=20)
    Traceback (most recent call last):
    ...
    ValueError: Need bin_count >= coeff_count >= 1.
    """
    resize_dims: tuple = CANONICAL_SIZE
    bin_count: int = 128
    coeff_count: int = 20

    def __post_init__(self):
        object.__setattr__(self, 'resize_dims', tuple(int(d) for d in self.resize_dims))
        if len(self.resize_dims) != 2 or min(self.resize_dims) < 1:
            raise ValueError('resize_dims must be two positive integers.')
        if self.bin_count < 2:
            raise ValueError('Need at least two bins.')
        if not self.bin_count >= self.coeff_count >= 1:
            raise ValueError('Need bin_count >= coeff_count >= 1.')

    @property
    def dims(self):
        return self.coeff_count

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


def cepstral_spectra(img, cfg=None):
    """
    The bin vector of an image, i.e. the extractor output before the DCT.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An RGB image.
    cfg : CepstrumConfig
        Extractor settings, defaults when None.

    Returns
    -------
    binned : BinVector
        The pooled log-magnitude histogram.
    """
    cfg = cfg or CepstrumConfig()
    planes = split_planes(canonicalize(img, cfg.resize_dims))
    spectra = [log_magnitude(fft2d(p)) for p in planes]
    return bin_values(spectra, cfg.bin_count)


def cepstral_features(img, cfg=None):
    """
    Extract the cepstral feature vector of an image.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An RGB image of any size.
    cfg : CepstrumConfig
        Extractor settings, defaults when None.

    Returns
    -------
    features : FeatureVector
        The first ``cfg.coeff_count`` DCT coefficients of the bin vector,
        tagged ``'cepstrum'``.

    Examples
    ---------
    >>> import numpy as np
    >>> img = np.zeros((40, 30, 3), dtype=np.uint8)
    >>> len(cepstral_features(img))
    20
    """
    cfg = cfg or CepstrumConfig()
    binned = cepstral_spectra(img, cfg)
    coefficients = dct1d(binned.counts)[:cfg.coeff_count]
    return FeatureVector('cepstrum', coefficients)


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
