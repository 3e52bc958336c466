#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for thresholding, binarization and region geometry.
"""

from random import randint as ri
import numpy as np
import pytest
from stripid.features.regions import (otsu_threshold, between_class_variances,
                                      binarize, region_props, quantize)


def brute_force_otsu(p):
    """Search all 256 thresholds with the textbook weighted-variance form."""
    levels = quantize(p).ravel()
    best, best_t = -1.0, 0
    for t in range(256):
        low, high = levels[levels < t], levels[levels >= t]
        if len(low) == 0 or len(high) == 0:
            variance = 0.0
        else:
            variance = len(low) * len(high) * (low.mean() - high.mean()) ** 2
        if variance > best:
            best, best_t = variance, t
    return float(best_t)


def moments(mask):
    rows, cols = np.nonzero(mask)
    return rows.mean(), cols.mean()


class TestOtsu:

    def test_constant_plane(self):
        assert otsu_threshold(np.full((5, 5), 40.0)) == 40.0

    def test_bimodal(self):
        p = np.zeros((4, 4))
        p[:, 2:] = 255
        t = otsu_threshold(p)
        assert 0 < t <= 255
        assert np.array_equal(binarize(p, t), (p == 255).astype(np.uint8))
        variances = between_class_variances(p)
        assert variances[int(t)] == variances.max()

    def test_against_exhaustive_search(self):
        rng = np.random.default_rng(ri(0, 10000))
        p = rng.integers(0, 256, size=(12, 9)).astype(float)
        assert otsu_threshold(p) == brute_force_otsu(p)

    def test_two_cluster_plane(self):
        rng = np.random.default_rng(1)
        p = np.concatenate([rng.normal(50, 5, 200), rng.normal(200, 5, 200)]).reshape(20, 20)
        assert 60 < otsu_threshold(p) < 190

    def test_fractional_plane(self):
        p = np.array([[0.0, 0.0, 0.7, 0.7]])
        t = otsu_threshold(p)
        assert t == 0.0
        assert np.array_equal(binarize(p, t), np.ones((1, 4), dtype=np.uint8))

    def test_levels_agree_with_raw_values(self):
        p = np.random.default_rng(3).random((16, 16)) * 256
        for t in range(1, 256):
            assert np.array_equal(quantize(p) >= t, p >= t)

    def test_foreground_never_empty(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            p = rng.random((8, 8)) * rng.uniform(0.5, 4.0)
            assert binarize(p, otsu_threshold(p)).any()


class TestBinarize:

    def test_all_below(self):
        assert np.all(binarize(np.full((3, 3), 4.0), 5.0) == 0)

    def test_all_above(self):
        assert np.all(binarize(np.full((3, 3), 5.0), 5.0) == 1)

    def test_per_pixel(self):
        p = np.random.default_rng(2).random((7, 7)) * 255
        b = binarize(p, 128.0)
        assert b.dtype == np.uint8
        for (i, j), value in np.ndenumerate(p):
            assert b[i, j] == (1 if value >= 128.0 else 0)

    def test_extremes(self):
        p = np.random.default_rng(5).random((6, 6)) * 255
        assert np.all(binarize(p, p.min()) == 1)
        assert np.all(binarize(p, np.nextafter(p.max(), np.inf)) == 0)


class TestRegionProps:

    def test_square(self):
        plane = np.zeros((100, 100), dtype=np.uint8)
        plane[20:30, 40:50] = 1
        (region,) = region_props(plane)
        assert region.pixel_count == 100
        assert region.boundary_count == 36
        assert region.area == pytest.approx(100 / 10000)
        assert region.perimeter == pytest.approx(36 / 200)
        assert region.centroid == pytest.approx(moments(plane))
        assert region.eccentricity < 0.05

    def test_disk(self):
        rows, cols = np.ogrid[:100, :100]
        disk = ((rows - 50) ** 2 + (cols - 50) ** 2 <= 20 ** 2).astype(np.uint8)
        (region,) = region_props(disk)
        assert region.pixel_count == int(disk.sum())
        assert region.eccentricity < 0.1
        assert region.major_axis * 100 == pytest.approx(40, rel=0.05)

    def test_rectangle_axes(self):
        plane = np.zeros((100, 100), dtype=np.uint8)
        plane[10:50, 20:30] = 1
        (region,) = region_props(plane)
        assert region.major_axis / region.minor_axis == pytest.approx(4, rel=0.1)

    def test_eccentricity_is_scale_invariant(self):
        small = np.zeros((100, 100), dtype=np.uint8)
        small[10:50, 20:30] = 1
        large = np.zeros((100, 100), dtype=np.uint8)
        large[10:90, 20:40] = 1
        (a,) = region_props(small)
        (b,) = region_props(large)
        assert a.eccentricity == pytest.approx(b.eccentricity, abs=1e-6)

    def test_areas_bounded_by_foreground(self):
        plane = (np.random.default_rng(6).random((50, 60)) < 0.3).astype(np.uint8)
        ones = int(plane.sum())
        regions = region_props(plane)
        assert sum(r.pixel_count for r in regions) == ones
        assert sum(r.area for r in regions) * plane.size == pytest.approx(ones)
        assert sum(r.pixel_count for r in region_props(plane, min_area=3)) <= ones

    def test_empty(self):
        assert region_props(np.zeros((10, 10), dtype=np.uint8)) == []

    def test_eight_connectivity(self):
        diagonal = np.eye(6, dtype=np.uint8)
        assert len(region_props(diagonal)) == 1

    def test_order_and_min_area(self):
        plane = np.zeros((40, 40), dtype=np.uint8)
        plane[1:4, 30:33] = 1    # 9 pixels
        plane[20:30, 5:15] = 1   # 100 pixels
        plane[35, 35] = 1        # 1 pixel
        regions = region_props(plane)
        assert [r.pixel_count for r in regions] == [100, 9, 1]
        assert [r.pixel_count for r in region_props(plane, min_area=5)] == [100, 9]

    def test_ties_ordered_by_centroid(self):
        plane = np.zeros((20, 20), dtype=np.uint8)
        plane[12:14, 2:4] = 1
        plane[2:4, 12:14] = 1
        plane[2:4, 2:4] = 1
        centroids = [r.centroid for r in region_props(plane)]
        assert centroids == [(2.5, 2.5), (2.5, 12.5), (12.5, 2.5)]

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            region_props(np.full((3, 3), 2))
