#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
This module contains the frequency-domain transforms used by the cepstral
extractor: the normalized 2-D DFT, logarithmic magnitude compression,
uniform-width binning of a pooled population and the orthonormal DCT-II.
The heavy lifting is done by :py:mod:`scipy.fft`.
"""

import logging
from dataclasses import dataclass
import numpy as np
from scipy import fft as sfft
from stripid.errors import EmptyPlane, EmptyVector, InvalidDimensions
from stripid.imaging import check_plane

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BinVector:
    """
    Normalized bin frequencies together with the binned value range.

    Attributes
    ----------
    counts : :py:class:`~numpy.ndarray`
        B non-negative frequencies summing to one.
    edges : tuple
        The (lower, upper) bound of the binned range.
    """
    counts: np.ndarray
    edges: tuple

    def __len__(self):
        return len(self.counts)


def fft2d(p):
    """
    The 2-D discrete Fourier transform, normalized by 1/(M N).

    This is the separable transform
    ``F(k, l) = 1/(M N) sum_x sum_y f(x, y) exp(-2 pi i (k x / M + l y / N))``
    computed by :py:func:`scipy.fft.fft2` with ``norm='forward'``. Sizes
    need not be powers of two.

    Parameters
    ----------
    p : array_like
        A real plane of shape (M, N).

    Returns
    -------
    spectrum : :py:class:`~numpy.ndarray`
        A complex array of shape (M, N).

    Examples
    ---------
    >>> spectrum = fft2d(np.ones((2, 2)))
    >>> float(spectrum[0, 0].real), float(abs(spectrum[0, 0].imag))
    (1.0, 0.0)
    >>> float(abs(spectrum[1:, :]).max())
    0.0
    >>> delta = np.zeros((2, 2))
    >>> delta[0, 0] = 1
    >>> fft2d(delta).real.tolist()
    [[0.25, 0.25], [0.25, 0.25]]
    """
    if np.size(p) == 0:
        raise EmptyPlane('Cannot transform an empty plane.')
    p = check_plane(p)
    return sfft.fft2(p, norm='forward')


def log_magnitude(c):
    """
    Logarithmic compression ``ln(1 + |z|)`` of every entry.

    Examples
    ---------
    >>> np.round(log_magnitude(np.array([[0j, np.e - 1]])), 12).tolist()
    [[0.0, 1.0]]
    """
    c = np.asarray(c)
    if c.ndim != 2:
        raise InvalidDimensions('Complex plane must be two dimensional.')
    return np.log1p(np.hypot(c.real, c.imag))


def bin_values(planes, bins):
    """
    Pool the values of several planes and histogram them into `bins`
    uniform-width bins spanning [0, max].

    The upper bin is closed above. If the population maximum is zero, every
    value is zero and the frequency vector is (1, 0, ..., 0).

    Parameters
    ----------
    planes : sequence
        Planes of equal shape, typically the three log-magnitude spectra.
    bins : int
        The number of bins, at least 2.

    Returns
    -------
    binned : BinVector
        Frequencies summing to one.

    Examples
    ---------
    >>> half = np.array([[0.0, 3.0]])
    >>> bin_values([half, half, half], 4).counts.tolist()
    [0.5, 0.0, 0.0, 0.5]
    """
    if bins < 2:
        raise ValueError('At least two bins are required.')
    planes = [check_plane(p) for p in planes]
    if not planes:
        raise EmptyPlane('At least one plane is required.')
    if any(p.shape != planes[0].shape for p in planes):
        raise InvalidDimensions('Planes must have equal shapes.')

    population = np.concatenate([p.ravel() for p in planes])
    top = float(population.max())
    counts = np.zeros(bins)
    if top <= 0:
        log.debug('Degenerate bin range, all %d values are zero.', population.size)
        counts[0] = 1.0
        return BinVector(counts=counts, edges=(0.0, 0.0))

    index = np.floor(population / top * bins).astype(int)
    index = np.clip(index, 0, bins - 1)
    counts = np.bincount(index, minlength=bins) / population.size
    return BinVector(counts=counts, edges=(0.0, top))


def dct1d(v):
    """
    The orthonormal DCT-II of a real vector.

    ``F(u) = L(u) sqrt(2/N) sum_i f(i) cos(pi u (2 i + 1) / (2 N))`` with
    ``L(0) = 1/sqrt(2)`` and ``L(u) = 1`` otherwise.

    Examples
    ---------
    >>> coefficients = dct1d([2.0, 2.0, 2.0, 2.0])
    >>> bool(np.allclose(coefficients, [4.0, 0.0, 0.0, 0.0]))
    True
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise InvalidDimensions('DCT input must be a vector.')
    if v.size == 0:
        raise EmptyVector('Cannot transform an empty vector.')
    return sfft.dct(v, type=2, norm='ortho')


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
