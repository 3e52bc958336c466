#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
A deterministic generator of synthetic medicine-strip images.

Every class is a :py:class:`StripSpec`: a foil color with a fixed speckle
texture and a grid of elliptic pill blisters. Samples of a class are the
clean strip under random illumination, noise, scale and hue changes drawn
from a per-sample seed. Nothing outside the seeds influences the output.
"""

import csv
import logging
from dataclasses import dataclass, replace, asdict
from pathlib import Path
import numpy as np
from skimage.color import rgb2hsv, hsv2rgb
from skimage.draw import ellipse
from scipy import ndimage
from stripid.errors import TooManyClasses
from stripid.imaging import save_image, resize, CANONICAL_SIZE
from stripid.utils import to_uint8, round_half_up, derive_seed, ordered_map

log = logging.getLogger(__name__)

CANVAS = CANONICAL_SIZE[0]
MARGIN = 16
RIM_WIDTH = 4
# Optical blur of the rendered strip, in pixels
BLUR_SIGMA = 1.5
GRIDS = ((2, 4), (3, 4), (2, 5))
COLOR_RANGE = (20, 235)
MIN_COLOR_DISTANCE = 60.0
MIN_PILL_CONTRAST = 40.0
MIN_SEMI_AXIS = 14

# Beyond this many classes the rejection sampler may fail to keep the
# pairwise color floor.
MAX_CLASSES = 40
MAX_ATTEMPTS = 10000

# Extra regions the speckle texture may add to the pill count
SPECKLE_ALLOWANCE = 2

# Speckle levels selected by the bits of a texture code: density, strength,
# then grain size along rows and along columns.
SPECKLE_DENSITY = (0.03, 0.3)
SPECKLE_STRENGTH = (4.0, 14.0)
SPECKLE_GRAIN = (0.0, 1.5)
SPECKLE_JITTER = 0.1
TEXTURE_CODES = 16
# Classes walk the codes in this order, so neighbouring ids differ in
# several bits.
_CODE_ORDER = (3, 12, 5, 10, 0, 15, 6, 9, 1, 14, 7, 8, 2, 13, 4, 11)

MANIFEST_NAME = 'manifest.csv'


def label_name(class_id):
    """
    The label of a class.

    Examples
    ---------
    >>> label_name(0), label_name(11)
    ('med01', 'med12')
    """
    return 'med{:02d}'.format(class_id + 1)


def _color(values):
    color = tuple(int(v) for v in values)
    if len(color) != 3 or not all(0 <= v <= 255 for v in color):
        raise ValueError('Colors must be three integers in [0, 255].')
    return color


def color_distance(a, b):
    """
    Euclidean distance of two RGB triples.

    Examples
    ---------
    >>> color_distance((204, 102, 51), (204, 153, 51))
    51.0
    """
    return float(np.linalg.norm(np.subtract(a, b, dtype=float)))


def _luma(color):
    return 0.299 * color[0] + 0.587 * color[1] + 0.114 * color[2]


def _cells(grid):
    """Height and width of one grid cell inside the margins."""
    rows, cols = grid
    return (CANVAS - 2 * MARGIN) / rows, (CANVAS - 2 * MARGIN) / cols


@dataclass(frozen=True)
class StripSpec:
    """
    The appearance of one synthetic medicine.

    Attributes
    ----------
    class_id : int
    base_color : tuple
        RGB of the foil.
    pill_grid : tuple
        (rows, cols) of blisters.
    pill_shape : tuple
        Semi-axes (vertical, horizontal) of every blister, in pixels.
    pill_color : tuple
        RGB of the pills.
    texture_seed : int
        Seeds the speckle pattern of the foil.
    texture_code : int
        Four bits choosing low or high speckle density, strength, row
        grain and column grain.
    """
    class_id: int
    base_color: tuple
    pill_grid: tuple
    pill_shape: tuple
    pill_color: tuple
    texture_seed: int
    texture_code: int = 0

    def __post_init__(self):
        if not 0 <= self.texture_code < TEXTURE_CODES:
            raise ValueError('Texture code must be in [0, {}).'.format(TEXTURE_CODES))
        object.__setattr__(self, 'base_color', _color(self.base_color))
        object.__setattr__(self, 'pill_color', _color(self.pill_color))
        object.__setattr__(self, 'pill_grid', tuple(int(n) for n in self.pill_grid))
        object.__setattr__(self, 'pill_shape', tuple(int(n) for n in self.pill_shape))
        rows, cols = self.pill_grid
        if rows < 1 or cols < 1:
            raise ValueError('Pill grid needs at least one row and column.')
        cell_h, cell_w = _cells(self.pill_grid)
        ry, rx = self.pill_shape
        if not (1 <= ry and 2 * (ry + RIM_WIDTH) < cell_h
                and 1 <= rx and 2 * (rx + RIM_WIDTH) < cell_w):
            raise ValueError('Pills do not fit in their grid cells.')

    @property
    def label(self):
        return label_name(self.class_id)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class AugmentSpec:
    """
    Ranges of the per-sample perturbations.

    Attributes
    ----------
    brightness_jitter : float
        Intensities are scaled by a factor in [1 - j, 1 + j].
    noise_sigma : float
        Standard deviation of additive Gaussian noise, in gray levels.
    scale_jitter : float
        The strip is zoomed by a factor in [1 - j, 1 + j].
    hue_jitter : float
        Hue is rotated by an angle in [-j, j] degrees.
    """
    brightness_jitter: float = 0.1
    noise_sigma: float = 4.0
    scale_jitter: float = 0.1
    hue_jitter: float = 5.0

    def __post_init__(self):
        if min(self.brightness_jitter, self.noise_sigma,
               self.scale_jitter, self.hue_jitter) < 0:
            raise ValueError('Augmentation ranges must be non-negative.')
        if self.brightness_jitter >= 1 or self.scale_jitter >= 1:
            raise ValueError('Brightness and scale jitter must be below 1.')

    @classmethod
    def none(cls):
        """No perturbation at all."""
        return cls(0.0, 0.0, 0.0, 0.0)


def _random_color(rng):
    return tuple(int(v) for v in rng.integers(COLOR_RANGE[0], COLOR_RANGE[1] + 1, size=3))


def gen_class_specs(n_classes, seed=0):
    """
    Draw `n_classes` strip specs whose foil colors are pairwise at least
    60 apart in RGB.

    Parameters
    ----------
    n_classes : int
        At least 2 and at most :py:data:`MAX_CLASSES`.
    seed : int

    Returns
    -------
    specs : list
        :py:class:`StripSpec` with class ids 0 .. n_classes - 1.

    Examples
    ---------
    >>> specs = gen_class_specs(3, seed=1)
    >>> [s.label for s in specs]
    ['med01', 'med02', 'med03']
    >>> specs == gen_class_specs(3, seed=1)
    True
    """
    if n_classes < 2:
        raise ValueError('At least two classes are required.')
    if n_classes > MAX_CLASSES:
        raise TooManyClasses('At most {} classes keep the color floor, got {}.'
                             .format(MAX_CLASSES, n_classes))

    rng = np.random.default_rng(seed)
    specs = []
    for class_id in range(n_classes):
        for _ in range(MAX_ATTEMPTS):
            base = _random_color(rng)
            if all(color_distance(base, s.base_color) >= MIN_COLOR_DISTANCE for s in specs):
                break
            log.debug('Rejected base color %s for class %d.', base, class_id)
        else:
            raise TooManyClasses('Could not place class {} at the color floor.'.format(class_id))

        grid = GRIDS[int(rng.integers(len(GRIDS)))]
        cell_h, cell_w = _cells(grid)
        ry = int(rng.integers(MIN_SEMI_AXIS, int(0.42 * cell_h) + 1))
        rx = int(rng.integers(MIN_SEMI_AXIS, int(0.42 * cell_w) + 1))

        for _ in range(MAX_ATTEMPTS):
            pill = _random_color(rng)
            if (color_distance(pill, base) >= MIN_COLOR_DISTANCE
                    and abs(_luma(pill) - _luma(base)) >= MIN_PILL_CONTRAST):
                break
        else:
            raise TooManyClasses('Could not find a pill color for class {}.'.format(class_id))

        specs.append(StripSpec(class_id=class_id, base_color=base, pill_grid=grid,
                               pill_shape=(ry, rx), pill_color=pill,
                               texture_seed=int(rng.integers(2 ** 31)),
                               texture_code=_CODE_ORDER[class_id % TEXTURE_CODES]))
    return specs


def rotate_hue(img, degrees):
    """
    Rotate the hue of an image (or an RGB triple) by `degrees`.

    Black pixels have no hue and stay unchanged.

    Examples
    ---------
    >>> rotate_hue((204, 102, 51), 20)
    (204, 153, 51)
    """
    triple = not isinstance(img, np.ndarray)
    pixels = np.asarray(img, dtype=np.uint8).reshape(-1, 1, 3) if triple else img
    if degrees % 360 == 0:
        rotated = pixels.copy()
    else:
        hsv = rgb2hsv(pixels)
        hsv[..., 0] = (hsv[..., 0] + degrees / 360.0) % 1.0
        rotated = to_uint8(hsv2rgb(hsv) * 255)
    if triple:
        return tuple(int(v) for v in rotated.reshape(3))
    return rotated


def hue_twin(spec, offset_degrees):
    """
    The same strip with foil and pill colors rotated in hue.

    Examples
    ---------
    >>> spec = gen_class_specs(2, seed=5)[0]
    >>> hue_twin(spec, 0) == spec
    True
    """
    return replace(spec,
                   base_color=rotate_hue(spec.base_color, offset_degrees),
                   pill_color=rotate_hue(spec.pill_color, offset_degrees))


def speckle(spec):
    """
    The gray foil texture of `spec`, a zero-mean (H, W) array.

    Density, strength and the grain size along each axis are taken at the
    low or high level named by the texture code, each varied by up to
    10 percent from the texture seed. The grain is a Gaussian blur of the
    sparse impulses, rescaled so the RMS is ``strength * sqrt(density)``.

    Examples
    ---------
    >>> spec = gen_class_specs(2, seed=0)[0]
    >>> speckle(spec).shape
    (256, 256)
    >>> bool(np.array_equal(speckle(spec), speckle(spec)))
    True
    """
    rng = np.random.default_rng(spec.texture_seed)
    code = spec.texture_code
    levels = [SPECKLE_DENSITY[code & 1], SPECKLE_STRENGTH[(code >> 1) & 1],
              SPECKLE_GRAIN[(code >> 2) & 1], SPECKLE_GRAIN[(code >> 3) & 1]]
    density, strength, grain_rows, grain_cols = (
        v * (1.0 + rng.uniform(-SPECKLE_JITTER, SPECKLE_JITTER)) for v in levels)

    field = (rng.random((CANVAS, CANVAS)) < density) * rng.standard_normal((CANVAS, CANVAS))
    for axis, grain in enumerate((grain_rows, grain_cols)):
        if grain > 0:
            field = ndimage.gaussian_filter1d(field, grain, axis=axis, mode='nearest')
    rms = np.sqrt(np.mean(field ** 2))
    if rms == 0:
        return field
    return field * (strength * np.sqrt(density) / rms)


def render_clean(spec):
    """
    The strip of `spec` without any augmentation, as a ``float64`` RGB array.

    The foil carries the :py:func:`speckle` of the spec. Each blister is a
    filled ellipse with a dome shading, surrounded by a rim lighter than
    the foil.
    """
    canvas = np.empty((CANVAS, CANVAS, 3))
    canvas[:] = spec.base_color

    base = np.asarray(spec.base_color, dtype=float)
    rim = base + 0.5 * (255.0 - base)
    pill = np.asarray(spec.pill_color, dtype=float)
    rows, cols = spec.pill_grid
    cell_h, cell_w = _cells(spec.pill_grid)
    ry, rx = spec.pill_shape
    for i in range(rows):
        for j in range(cols):
            r = MARGIN + (i + 0.5) * cell_h
            c = MARGIN + (j + 0.5) * cell_w
            rr, cc = ellipse(r, c, ry + RIM_WIDTH, rx + RIM_WIDTH, shape=canvas.shape[:2])
            canvas[rr, cc] = rim
            rr, cc = ellipse(r, c, ry, rx, shape=canvas.shape[:2])
            radius = ((rr - r) / ry) ** 2 + ((cc - c) / rx) ** 2
            canvas[rr, cc] = pill * (0.85 + 0.15 * (1.0 - np.clip(radius, 0.0, 1.0)))[:, None]

    # Soften the blister outlines, then lay the foil texture on top
    canvas = ndimage.gaussian_filter(canvas, sigma=(BLUR_SIGMA, BLUR_SIGMA, 0), mode='nearest')
    return canvas + speckle(spec)[:, :, None]


def adjust_brightness(img, factor):
    """
    Scale every intensity by `factor`, clipped to [0, 255].

    Examples
    ---------
    >>> adjust_brightness(np.full((1, 1, 3), 100, dtype=np.uint8), 1.1).ravel().tolist()
    [110, 110, 110]
    """
    return to_uint8(np.asarray(img, dtype=float) * factor)


def zoom(img, factor):
    """
    Resample the image through a resolution `factor` times its own and
    back, as a camera at another distance followed by canonicalization
    would. The size is kept; the strip layout is not moved.

    Examples
    ---------
    >>> img = np.full((8, 8, 3), 90, dtype=np.uint8)
    >>> zoom(img, 0.5).shape, int(zoom(img, 0.5).max())
    ((8, 8, 3), 90)
    """
    height, width = img.shape[:2]
    h = max(1, int(round_half_up(height * factor)))
    w = max(1, int(round_half_up(width * factor)))
    if (h, w) == (height, width):
        return img.copy()
    return resize(resize(img, w, h), width, height)


def render_sample(spec, aug, sample_seed):
    """
    Render one sample of a class.

    The perturbations are drawn from `sample_seed` in a fixed order and
    applied as brightness scaling, additive Gaussian noise, zoom and hue
    rotation.

    Parameters
    ----------
    spec : StripSpec
    aug : AugmentSpec
    sample_seed : int

    Returns
    -------
    img : :py:class:`~numpy.ndarray`
        A ``uint8`` image of the canonical size.
    """
    rng = np.random.default_rng(sample_seed)
    brightness = rng.uniform(-aug.brightness_jitter, aug.brightness_jitter)
    scale = rng.uniform(-aug.scale_jitter, aug.scale_jitter)
    hue = rng.uniform(-aug.hue_jitter, aug.hue_jitter)
    noise = rng.normal(0.0, aug.noise_sigma, (CANVAS, CANVAS, 3))

    img = to_uint8(render_clean(spec) * (1.0 + brightness) + noise)
    if scale != 0:
        img = zoom(img, 1.0 + scale)
    if hue != 0:
        img = rotate_hue(img, hue)
    return img


def sample_seed(seed, class_id, index):
    """The seed of sample `index` of class `class_id`."""
    return derive_seed(seed, class_id, index)


def render_dataset(specs, per_class, aug, seed):
    """
    Yield ``(spec, index, image)`` for `per_class` samples of every spec,
    class by class.
    """
    for spec in specs:
        for index in range(per_class):
            yield spec, index, render_sample(spec, aug, sample_seed(seed, spec.class_id, index))


def with_twins(specs, twins):
    """
    Append a hue-rotated copy of some specs as new classes.

    Parameters
    ----------
    specs : list
    twins : iterable
        ``(class_id, offset_degrees)`` pairs.
    """
    specs = list(specs)
    for class_id, offset in twins:
        if not 0 <= class_id < len(specs):
            raise ValueError('No class {} to twin.'.format(class_id))
        specs.append(replace(hue_twin(specs[class_id], offset), class_id=len(specs)))
    return specs


def gen_dataset(n_classes, per_class, aug=None, seed=0, out_dir='.', twins=()):
    """
    Write a synthetic dataset of PNG images and its manifest.

    Images go to ``<out_dir>/images/<label>/<label>_<index>.png``; the
    manifest ``<out_dir>/manifest.csv`` lists them with a ``path,label``
    header and paths relative to `out_dir`.

    Parameters
    ----------
    n_classes : int
    per_class : int
    aug : AugmentSpec
        Defaults when None.
    seed : int
    out_dir : str or :py:class:`~pathlib.Path`
    twins : iterable
        ``(class_id, offset_degrees)`` pairs, see :py:func:`with_twins`.

    Returns
    -------
    manifest : :py:class:`~pathlib.Path`
    """
    if per_class < 1:
        raise ValueError('At least one sample per class is required.')
    aug = aug or AugmentSpec()
    out_dir = Path(out_dir)
    specs = with_twins(gen_class_specs(n_classes, seed), twins)

    for spec in specs:
        (out_dir / 'images' / spec.label).mkdir(parents=True, exist_ok=True)

    def write(task):
        spec, index = task
        relative = Path('images', spec.label, '{}_{:03d}.png'.format(spec.label, index))
        save_image(render_sample(spec, aug, sample_seed(seed, spec.class_id, index)),
                   out_dir / relative)
        return relative.as_posix(), spec.label

    tasks = [(spec, index) for spec in specs for index in range(per_class)]
    rows = ordered_map(write, tasks)

    manifest = out_dir / MANIFEST_NAME
    with open(manifest, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['path', 'label'])
        writer.writerows(rows)
    log.info('Wrote %d images of %d classes to %s.', len(rows), len(specs), out_dir)
    return manifest


def read_manifest(path):
    """
    Read a manifest into ``(image path, label)`` pairs, image paths resolved
    against the manifest's directory.
    """
    path = Path(path)
    with open(path, newline='', encoding='utf-8') as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ['path', 'label']:
            raise ValueError('Manifest {} must start with a path,label header.'.format(path))
        return [(path.parent / row[0], row[1]) for row in reader if row]


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
