#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
This module contains the segmentation primitives of the pill-shape
features: global threshold selection, binarization and per-region
geometry of the 8-connected foreground components.
"""

import logging
from dataclasses import dataclass
import numpy as np
from scipy import ndimage
from stripid.imaging import check_plane

log = logging.getLogger(__name__)

LEVELS = 256

# 8-connectivity for the component labeling
_EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class RegionStats:
    """
    Geometry of one connected region.

    Attributes
    ----------
    area : float
        Pixel count divided by H * W.
    perimeter : float
        Boundary pixel count divided by H + W.
    major_axis, minor_axis : float
        Lengths of the ellipse with the same second moments, divided by
        max(H, W).
    eccentricity : float
        Eccentricity of that ellipse, in [0, 1].
    centroid : tuple
        (row, col) of the region center, in pixels.
    pixel_count : int
        Raw area in pixels.
    boundary_count : int
        Raw perimeter in pixels.
    """
    area: float
    perimeter: float
    major_axis: float
    minor_axis: float
    eccentricity: float
    centroid: tuple
    pixel_count: int
    boundary_count: int

    def as_features(self):
        """The five shape values in feature-vector order."""
        return [self.area, self.perimeter, self.major_axis,
                self.minor_axis, self.eccentricity]


def quantize(p):
    """
    Integer levels in [0, 255] used by the threshold search.

    Values are floored, so for an integer T in 1..255 a level is at least T
    exactly when the raw value is.

    Examples
    ---------
    >>> quantize([[-4.0, 12.5, 300.0]]).tolist()
    [[0, 12, 255]]
    """
    p = check_plane(p)
    return np.clip(np.floor(p), 0, LEVELS - 1).astype(np.int64)


def between_class_variances(p):
    """
    Between-class variance for every candidate threshold T in 0..255.

    The classes are the levels below T and the levels at or above T. The
    counts and level sums are exact integers, so the variances depend only
    on the histogram.

    Returns
    -------
    variances : :py:class:`~numpy.ndarray`
        256 values, zero where one class is empty.
    """
    levels = quantize(p).ravel()
    hist = np.bincount(levels, minlength=LEVELS)
    weighted = hist * np.arange(LEVELS)

    # Counts and sums of the levels strictly below each T
    n_low = np.concatenate([[0], np.cumsum(hist)[:-1]])
    s_low = np.concatenate([[0], np.cumsum(weighted)[:-1]])
    n_high = levels.size - n_low
    s_high = int(weighted.sum()) - s_low

    variances = np.zeros(LEVELS)
    valid = (n_low > 0) & (n_high > 0)
    mean_low = s_low[valid] / n_low[valid]
    mean_high = s_high[valid] / n_high[valid]
    variances[valid] = (n_low[valid] * n_high[valid]) * (mean_low - mean_high) ** 2
    return variances


def otsu_threshold(p):
    """
    Global threshold maximizing the between-class variance.

    Ties go to the lowest threshold. A constant plane returns its value.

    Parameters
    ----------
    p : array_like
        A plane, typically in [0, 255].

    Returns
    -------
    threshold : float

    Examples
    ---------
    >>> otsu_threshold(np.full((4, 4), 40.0))
    40.0
    >>> otsu_threshold([[0.0, 0.0, 255.0, 255.0]])
    1.0
    """
    p = check_plane(p)
    if p.min() == p.max():
        return float(p.flat[0])
    return float(np.argmax(between_class_variances(p)))


def binarize(p, threshold):
    """
    Global thresholding: 0 where the value is below `threshold`, else 1.

    Examples
    ---------
    >>> binarize([[1.0, 5.0, 9.0]], 5.0).tolist()
    [[0, 1, 1]]
    """
    p = check_plane(p)
    return (p >= threshold).astype(np.uint8)


def _boundary_count(mask):
    """Pixels of `mask` with at least one 4-neighbor outside the mask."""
    padded = np.pad(mask, 1, mode='constant', constant_values=False)
    interior = (padded[1:-1, 1:-1] & padded[:-2, 1:-1] & padded[2:, 1:-1]
                & padded[1:-1, :-2] & padded[1:-1, 2:])
    return int(mask.sum() - interior.sum())


def _ellipse_axes(rows, cols):
    """
    Ellipse-equivalent axes and eccentricity from pixel coordinates.

    Each pixel is treated as a unit square, adding 1/12 to both variances.
    """
    d_rows = rows - rows.mean()
    d_cols = cols - cols.mean()
    var_rows = np.mean(d_rows ** 2) + 1 / 12
    var_cols = np.mean(d_cols ** 2) + 1 / 12
    covariance = np.mean(d_rows * d_cols)
    minor_var, major_var = np.linalg.eigvalsh([[var_rows, covariance],
                                               [covariance, var_cols]])
    minor_var = max(minor_var, 0.0)
    major = 4 * np.sqrt(major_var)
    minor = 4 * np.sqrt(minor_var)
    eccentricity = np.sqrt(np.clip(1 - minor_var / major_var, 0.0, 1.0))
    return float(major), float(minor), float(eccentricity)


def region_props(b, min_area=1):
    """
    Geometry of the 8-connected regions of ones in a binary plane.

    Parameters
    ----------
    b : array_like
        A binary plane.
    min_area : int
        Regions with fewer pixels are dropped.

    Returns
    -------
    regions : list
        :py:class:`RegionStats`, largest area first, ties ordered by
        centroid row, then column.

    Examples
    ---------
    >>> square = np.zeros((100, 100), dtype=np.uint8)
    >>> square[20:30, 40:50] = 1
    >>> (region,) = region_props(square)
    >>> region.pixel_count, region.boundary_count, region.centroid
    (100, 36, (24.5, 44.5))
    """
    b = np.asarray(b)
    if b.ndim != 2:
        raise ValueError('Binary plane must be two dimensional.')
    if not np.all((b == 0) | (b == 1)):
        raise ValueError('Binary plane must hold only 0 and 1.')
    height, width = b.shape

    labels, count = ndimage.label(b, structure=_EIGHT_CONNECTED)
    regions = []
    for index, window in enumerate(ndimage.find_objects(labels), start=1):
        mask = labels[window] == index
        pixel_count = int(mask.sum())
        if pixel_count < min_area:
            continue
        rows, cols = np.nonzero(mask)
        rows = (rows + window[0].start).astype(float)
        cols = (cols + window[1].start).astype(float)
        major, minor, eccentricity = _ellipse_axes(rows, cols)
        boundary = _boundary_count(mask)
        extent = max(height, width)
        regions.append(RegionStats(
            area=pixel_count / (height * width),
            perimeter=boundary / (height + width),
            major_axis=major / extent,
            minor_axis=minor / extent,
            eccentricity=eccentricity,
            centroid=(float(rows.mean()), float(cols.mean())),
            pixel_count=pixel_count,
            boundary_count=boundary))

    log.debug('%d of %d components kept (min area %d).', len(regions), count, min_area)
    regions.sort(key=lambda r: (-r.pixel_count, r.centroid[0], r.centroid[1]))
    return regions


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
