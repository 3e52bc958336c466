#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The color gradient and pill-shape (CGPF) feature extractor.

The feature vector has two parts. The first holds the position and height
of the histogram peak of each color channel. The second describes the pill
blisters: the gradient energy of the gray image is pooled per cell,
median filtered and globally thresholded, and the geometry of the largest
surviving regions is appended, zero padded to a fixed number of regions.
"""

import logging
from dataclasses import dataclass, field, asdict
import numpy as np
from stripid.errors import DegenerateInput, LengthMismatch, PlaneTooSmall
from stripid.features.regions import (RegionStats, otsu_threshold, binarize,
                                      region_props)
from stripid.features.vector import FeatureVector
from stripid.imaging import (canonicalize, check_image, check_plane, to_gray,
                             median_filter, CANONICAL_SIZE)

log = logging.getLogger(__name__)

__all__ = ['ColorPeaks', 'HogConfig', 'HogDescriptor', 'CgpfConfig',
           'RegionStats', 'color_peaks', 'pearson_r', 'gradients', 'hog',
           'gradient_energy_map', 'otsu_threshold', 'binarize',
           'region_props', 'cgpf_features']

COLOR_VALUES = 6
SHAPE_VALUES = 5


@dataclass(frozen=True)
class ColorPeaks:
    """
    Per-channel histogram peaks: (position, height) for R, G and B.

    The position is the peak intensity divided by 255, the height is the
    peak count divided by the pixel count.
    """
    red: tuple
    green: tuple
    blue: tuple

    def as_features(self):
        return [*self.red, *self.green, *self.blue]


@dataclass(frozen=True)
class HogConfig:
    """
    Cell and block layout of the HOG descriptor.

    Attributes
    ----------
    cell_size : int
        Cell side in pixels.
    orientation_bins : int
        Unsigned orientation bins over [0, 180) degrees.
    block_size : tuple
        Block size in cells, (rows, cols).
    block_stride : int
        Block step in cells.
    epsilon : float
        Stabilizer of the block L2 normalization.
    """
    cell_size: int = 8
    orientation_bins: int = 9
    block_size: tuple = (2, 2)
    block_stride: int = 1
    epsilon: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, 'block_size', tuple(int(b) for b in self.block_size))
        if self.cell_size < 1 or self.block_stride < 1 or min(self.block_size) < 1:
            raise ValueError('Cell size, block size and stride must be positive.')
        if self.orientation_bins < 2:
            raise ValueError('At least two orientation bins are required.')
        if self.epsilon <= 0:
            raise ValueError('Epsilon must be positive.')


@dataclass(frozen=True, eq=False)
class HogDescriptor:
    """
    Concatenated, block-normalized cell histograms.

    ``values`` has length ``blocks_y * blocks_x * block_len`` where
    ``layout = (blocks_y, blocks_x, block_len)``.
    """
    values: np.ndarray
    layout: tuple

    def blocks(self):
        """The descriptor reshaped to (blocks_y, blocks_x, block_len)."""
        return self.values.reshape(self.layout)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CgpfConfig:
    """
    Parameters of the CGPF extractor.

    Attributes
    ----------
    hog : HogConfig
        Its ``cell_size`` sets the resolution of the gradient energy map.
    median_kernel : int
        Odd median filter size applied to the energy map.
    top_regions : int
        Number N of region slots in the feature vector.
    min_region_area : int
        Smallest region, in energy-map pixels, that is kept.
    threshold : str or float
        ``'otsu'`` or a fixed global threshold on the 0-255 energy map.
    resize_dims : tuple
        Working size (width, height).

    Examples
    ---------
    >>> CgpfConfig().dims
    31
    """
    hog: HogConfig = field(default_factory=HogConfig)
    median_kernel: int = 3
    top_regions: int = 5
    min_region_area: int = 16
    threshold: object = 'otsu'
    resize_dims: tuple = CANONICAL_SIZE

    def __post_init__(self):
        if isinstance(self.hog, dict):
            object.__setattr__(self, 'hog', HogConfig(**self.hog))
        object.__setattr__(self, 'resize_dims', tuple(int(d) for d in self.resize_dims))
        if self.top_regions < 1:
            raise ValueError('At least one region slot is required.')
        if self.median_kernel < 1 or self.median_kernel % 2 == 0:
            raise ValueError('Median kernel must be odd and positive.')
        if self.min_region_area < 1:
            raise ValueError('Minimum region area must be positive.')
        if self.threshold != 'otsu' and not isinstance(self.threshold, (int, float)):
            raise ValueError("Threshold must be 'otsu' or a number.")

    @property
    def dims(self):
        return COLOR_VALUES + SHAPE_VALUES * self.top_regions

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


def color_peaks(img):
    """
    Position and height of the intensity histogram peak of every channel.

    Ties between equally high bins go to the lowest intensity.

    Examples
    ---------
    >>> red = np.zeros((2, 2, 3), dtype=np.uint8)
    >>> red[:, :, 0] = 255
    >>> color_peaks(red).as_features()
    [1.0, 1.0, 0.0, 1.0, 0.0, 1.0]
    """
    check_image(img)
    pixels = img.shape[0] * img.shape[1]
    peaks = []
    for channel in range(3):
        counts = np.bincount(img[:, :, channel].ravel(), minlength=256)
        position = int(np.argmax(counts))
        peaks.append((position / 255, int(counts[position]) / pixels))
    return ColorPeaks(*peaks)


def pearson_r(u, v):
    """
    The Pearson correlation coefficient of two equally long vectors.

    Computed as ``(n Suv - Su Sv) / sqrt((n Suu - Su^2) (n Svv - Sv^2))``.

    Examples
    ---------
    >>> pearson_r([1, 2, 3], [2, 4, 6])
    1.0
    >>> pearson_r([1, 2, 3], [5, 5, 5])
    Traceback (most recent call last):
    ...
    stripid.errors.DegenerateInput: Both vectors must have nonzero variance.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise LengthMismatch('Vectors must be one dimensional and of equal length.')
    n = len(u)
    if n < 2:
        raise DegenerateInput('At least two observations are required.')

    su, sv = u.sum(), v.sum()
    spread_u = n * np.dot(u, u) - su ** 2
    spread_v = n * np.dot(v, v) - sv ** 2
    if spread_u <= 0 or spread_v <= 0:
        raise DegenerateInput('Both vectors must have nonzero variance.')
    r = (n * np.dot(u, v) - su * sv) / np.sqrt(spread_u * spread_v)
    return float(np.clip(r, -1.0, 1.0))


def gradients(gray):
    """
    Central-difference gradients with the kernel [-1, 0, 1].

    Borders are replicated, so the outermost differences are one-sided.

    Returns
    -------
    gx, gy : :py:class:`~numpy.ndarray`
        Horizontal and vertical derivatives, same shape as `gray`.
    """
    gray = check_plane(gray)
    padded = np.pad(gray, 1, mode='edge')
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    return gx, gy


def hog(gray, cfg=None):
    """
    Histogram of oriented gradients of a gray plane.

    Orientations are unsigned, in [0, 180) degrees. Bin `i` is centered at
    ``i * 180 / bins`` degrees and each gradient magnitude is split
    linearly between the two nearest bin centers, wrapping at 180. Cells
    that do not fit completely are ignored. Each block of cells is
    normalized by ``b / sqrt(|b|^2 + eps^2)``.

    Parameters
    ----------
    gray : array_like
        A gray plane.
    cfg : HogConfig
        Layout, defaults when None.

    Returns
    -------
    descriptor : HogDescriptor

    Examples
    ---------
    >>> len(hog(np.zeros((64, 64))))
    1764
    """
    cfg = cfg or HogConfig()
    gray = check_plane(gray)
    size, bins = cfg.cell_size, cfg.orientation_bins
    block_rows, block_cols = cfg.block_size
    cells_y, cells_x = gray.shape[0] // size, gray.shape[1] // size
    if cells_y < block_rows or cells_x < block_cols:
        raise PlaneTooSmall('Plane of shape {} is smaller than one block.'
                            .format(gray.shape))

    gx, gy = gradients(gray)
    gx = gx[:cells_y * size, :cells_x * size]
    gy = gy[:cells_y * size, :cells_x * size]
    magnitude = np.hypot(gx, gy)
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)
    angle[angle >= 180.0] = 0.0

    position = angle / (180.0 / bins)
    lower = np.floor(position)
    upper_weight = position - lower
    lower = lower.astype(int) % bins
    upper = (lower + 1) % bins

    rows = np.arange(cells_y * size)[:, None] // size
    cols = np.arange(cells_x * size)[None, :] // size
    cell = (rows * cells_x + cols) * bins
    n_slots = cells_y * cells_x * bins
    histogram = (np.bincount((cell + lower).ravel(),
                             weights=(magnitude * (1 - upper_weight)).ravel(),
                             minlength=n_slots)
                 + np.bincount((cell + upper).ravel(),
                               weights=(magnitude * upper_weight).ravel(),
                               minlength=n_slots))
    histogram = histogram.reshape(cells_y, cells_x, bins)

    stride = cfg.block_stride
    blocks_y = (cells_y - block_rows) // stride + 1
    blocks_x = (cells_x - block_cols) // stride + 1
    block_len = block_rows * block_cols * bins
    values = np.empty((blocks_y, blocks_x, block_len))
    for by in range(blocks_y):
        for bx in range(blocks_x):
            block = histogram[by * stride:by * stride + block_rows,
                              bx * stride:bx * stride + block_cols].ravel()
            values[by, bx] = block / np.sqrt(np.dot(block, block) + cfg.epsilon ** 2)

    return HogDescriptor(values=values.ravel(), layout=(blocks_y, blocks_x, block_len))


def gradient_energy_map(gray, cell_size):
    """
    Sum of gradient magnitudes per cell, rescaled to [0, 255].

    Partial cells at the right and bottom edges are kept, so the map has
    ``ceil(H / cell) x ceil(W / cell)`` entries. A map without variation
    is returned as zeros.

    Examples
    ---------
    >>> gradient_energy_map(np.zeros((256, 256)), 8).shape
    (32, 32)
    """
    if cell_size < 1:
        raise ValueError('Cell size must be positive.')
    gx, gy = gradients(gray)
    magnitude = np.hypot(gx, gy)
    height, width = magnitude.shape
    rows = -(-height // cell_size)
    cols = -(-width // cell_size)
    padded = np.zeros((rows * cell_size, cols * cell_size))
    padded[:height, :width] = magnitude
    energy = padded.reshape(rows, cell_size, cols, cell_size).sum(axis=(1, 3))

    low, high = energy.min(), energy.max()
    if high <= low:
        return np.zeros_like(energy)
    return (energy - low) / (high - low) * 255.0


def cgpf_features(img, cfg=None):
    """
    Extract the CGPF feature vector of an image.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An RGB image of any size.
    cfg : CgpfConfig
        Extractor settings, defaults when None.

    Returns
    -------
    features : FeatureVector
        Six color-peak values followed by five shape values for each of
        the ``cfg.top_regions`` largest regions, zero padded, tagged
        ``'cgpf'``.

    Examples
    ---------
    >>> blank = np.full((32, 32, 3), 90, dtype=np.uint8)
    >>> values = cgpf_features(blank).values
    >>> len(values), float(values[6:].max())
    (31, 0.0)
    """
    cfg = cfg or CgpfConfig()
    img = canonicalize(img, cfg.resize_dims)
    peaks = color_peaks(img)

    energy = gradient_energy_map(to_gray(img), cfg.hog.cell_size)
    energy = median_filter(energy, cfg.median_kernel)
    if energy.max() <= energy.min():
        # No gradient structure, hence no regions
        regions = []
    else:
        if cfg.threshold == 'otsu':
            threshold = otsu_threshold(energy)
        else:
            threshold = float(cfg.threshold)
        regions = region_props(binarize(energy, threshold), cfg.min_region_area)

    shape = np.zeros(SHAPE_VALUES * cfg.top_regions)
    for slot, region in enumerate(regions[:cfg.top_regions]):
        shape[slot * SHAPE_VALUES:(slot + 1) * SHAPE_VALUES] = region.as_features()
    return FeatureVector('cgpf', np.concatenate([peaks.as_features(), shape]))


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
