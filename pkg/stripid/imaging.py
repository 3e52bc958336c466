#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The preprocessing front end shared by both feature extractors.

Images are ``uint8`` arrays of shape (H, W, 3) in R, G, B order. Planes
are ``float64`` arrays of shape (H, W). Binary planes are ``uint8``
arrays holding only 0 and 1. Every function here is pure.
"""

import logging
from pathlib import Path
import numpy as np
from PIL import Image as PILImage, UnidentifiedImageError
from scipy import ndimage
from stripid.errors import (InvalidDimensions, InvalidKernel, UnsupportedFormat,
                            CorruptImage, EmptyPlane)
from stripid.utils import to_uint8

log = logging.getLogger(__name__)

CANONICAL_SIZE = (256, 256)

_READ_FORMATS = {'PNG', 'JPEG', 'BMP'}
_WRITE_FORMATS = {'.png': 'PNG', '.bmp': 'BMP'}

# ITU-R BT.601 luma weights
_LUMA = (0.299, 0.587, 0.114)


def check_image(img):
    """
    Verify that `img` is an (H, W, 3) ``uint8`` array with H, W >= 1.

    Returns the image unchanged, so it can be used inline.
    """
    if not isinstance(img, np.ndarray):
        raise TypeError('Image must be a numpy array.')
    if img.ndim != 3 or img.shape[2] != 3:
        raise InvalidDimensions('Image must have shape (H, W, 3).')
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise InvalidDimensions('Image must be at least 1x1.')
    if img.dtype != np.uint8:
        raise TypeError('Image must have dtype uint8.')
    return img


def check_plane(p):
    """
    Verify that `p` is a non-empty two dimensional array of finite values.

    Returns `p` as a ``float64`` array.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 2:
        raise InvalidDimensions('Plane must be two dimensional.')
    if p.size == 0:
        raise EmptyPlane('Plane must be non-empty.')
    if not np.all(np.isfinite(p)):
        raise ValueError('Plane values must be finite.')
    return p


def load_image(path):
    """
    Decode a PNG, JPEG or BMP file into an RGB image.

    Parameters
    ----------
    path : str or :py:class:`~pathlib.Path`
        The file to read.

    Returns
    -------
    img : :py:class:`~numpy.ndarray`
        An (H, W, 3) ``uint8`` array in R, G, B order.

    Raises
    ------
    FileNotFoundError
        If `path` does not exist.
    UnsupportedFormat
        If the file is not a PNG, JPEG or BMP image.
    CorruptImage
        If the file is recognized but cannot be decoded.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError('Image not found: {}'.format(path))

    try:
        with PILImage.open(path) as handle:
            if handle.format not in _READ_FORMATS:
                raise UnsupportedFormat('Unsupported image format {} in {}.'
                                        .format(handle.format, path))
            handle.load()
            img = np.array(handle.convert('RGB'), dtype=np.uint8)
    except UnidentifiedImageError:
        raise UnsupportedFormat('Cannot identify image file {}.'.format(path))
    except (OSError, SyntaxError, ValueError) as error:
        if isinstance(error, UnsupportedFormat):
            raise
        raise CorruptImage('Cannot decode {}: {}'.format(path, error))

    return check_image(img)


def save_image(img, path):
    """
    Encode `img` as PNG or BMP, chosen by the file extension.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An (H, W, 3) ``uint8`` array.
    path : str or :py:class:`~pathlib.Path`
        The destination; the suffix must be ``.png`` or ``.bmp``.
    """
    check_image(img)
    path = Path(path)
    fmt = _WRITE_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise UnsupportedFormat('Cannot write images with suffix {!r}.'
                                .format(path.suffix))
    PILImage.fromarray(np.ascontiguousarray(img)).save(path, format=fmt)
    return path


def _sample_grid(source, target):
    """
    Source coordinates, lower indices and weights for one axis.

    Pixel centers are aligned, i.e. target pixel `i` samples the source at
    ``(i + 0.5) * source / target - 0.5``, clamped to the source extent.
    """
    coords = (np.arange(target) + 0.5) * (source / target) - 0.5
    coords = np.clip(coords, 0, source - 1)
    lower = np.floor(coords).astype(int)
    upper = np.minimum(lower + 1, source - 1)
    weight = coords - lower
    return lower, upper, weight


def resize(img, w, h):
    """
    Bilinear resize of an image to exactly `w` x `h` pixels.

    Results are rounded half up to integers. When the image already has the
    requested size a copy is returned.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An (H, W, 3) ``uint8`` image.
    w : int
        Target width.
    h : int
        Target height.

    Returns
    -------
    resized : :py:class:`~numpy.ndarray`
        An (h, w, 3) ``uint8`` image.

    Examples
    ---------
    >>> checker = np.array([[0, 255], [255, 0]], dtype=np.uint8)
    >>> img = np.repeat(checker[:, :, None], 3, axis=2)
    >>> resize(img, 1, 1)[0, 0].tolist()
    [128, 128, 128]
    """
    check_image(img)
    if w < 1 or h < 1:
        raise InvalidDimensions('Target size must be at least 1x1.')
    height, width = img.shape[:2]
    if (width, height) == (w, h):
        return img.copy()

    y0, y1, fy = _sample_grid(height, h)
    x0, x1, fx = _sample_grid(width, w)
    src = img.astype(float)
    fx = fx[None, :, None]
    fy = fy[:, None, None]

    top = src[y0][:, x0] * (1 - fx) + src[y0][:, x1] * fx
    bottom = src[y1][:, x0] * (1 - fx) + src[y1][:, x1] * fx
    return to_uint8(top * (1 - fy) + bottom * fy)


def canonicalize(img, size=CANONICAL_SIZE):
    """Resize `img` to the working size (width, height) used by the extractors."""
    w, h = size
    return resize(img, w, h)


def split_planes(img):
    """
    Split an image into its R, G and B planes.

    Examples
    ---------
    >>> img = np.full((2, 2, 3), 17, dtype=np.uint8)
    >>> [float(p[0, 0]) for p in split_planes(img)]
    [17.0, 17.0, 17.0]
    """
    check_image(img)
    return tuple(img[:, :, c].astype(float) for c in range(3))


def merge_planes(r, g, b):
    """
    Stack three planes back into an image, rounding and clipping to ``uint8``.
    """
    planes = [check_plane(p) for p in (r, g, b)]
    if not planes[0].shape == planes[1].shape == planes[2].shape:
        raise InvalidDimensions('Planes must have equal shapes.')
    return to_uint8(np.stack(planes, axis=2))


def to_gray(img):
    """
    Luminance plane ``0.299 R + 0.587 G + 0.114 B``, not rounded.

    Examples
    ---------
    >>> img = np.array([[[255, 0, 0]]], dtype=np.uint8)
    >>> round(float(to_gray(img)[0, 0]), 6)
    76.245
    """
    r, g, b = split_planes(img)
    return _LUMA[0] * r + _LUMA[1] * g + _LUMA[2] * b


def median_filter(p, k):
    """
    Median of every k x k neighborhood, borders replicated.

    Parameters
    ----------
    p : array_like
        A plane.
    k : int
        The odd window size.

    Returns
    -------
    filtered : :py:class:`~numpy.ndarray`
        A plane with the same shape as `p`.

    Examples
    ---------
    >>> impulse = np.zeros((3, 3))
    >>> impulse[1, 1] = 100
    >>> float(median_filter(impulse, 3).max())
    0.0
    """
    p = check_plane(p)
    if k < 1 or k % 2 == 0:
        raise InvalidKernel('Median kernel size must be odd and positive.')
    if k == 1:
        return p.copy()
    return ndimage.median_filter(p, size=k, mode='nearest')


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
