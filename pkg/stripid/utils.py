#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Small helpers shared by the other modules: rounding, seeding, the
thread cap read from the environment and logging setup.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
import numpy as np

log = logging.getLogger(__name__)

THREADS_ENV = 'STRIPID_THREADS'


def round_half_up(values):
    """
    Round to the nearest integer, with halves rounded up.

    Parameters
    ----------
    values : array_like
        Real values.

    Returns
    -------
    rounded : :py:class:`~numpy.ndarray`
        The rounded values, still of floating point type.

    Examples
    ---------
    >>> round_half_up([0.5, 1.5, 2.4, -0.5]).tolist()
    [1.0, 2.0, 2.0, 0.0]
    """
    return np.floor(np.asarray(values, dtype=float) + 0.5)


def to_uint8(values):
    """
    Round half up and clip into [0, 255], returning ``uint8``.

    Examples
    ---------
    >>> to_uint8([-3.0, 127.5, 300.0]).tolist()
    [0, 128, 255]
    """
    return np.clip(round_half_up(values), 0, 255).astype(np.uint8)


def derive_seed(*keys):
    """
    Derive a 32-bit seed from a sequence of integer keys.

    The mapping is a pure function of the keys, so nested loops (class,
    sample) can hand out independent, reproducible streams.

    Parameters
    ----------
    *keys : int
        Non-negative integers.

    Returns
    -------
    seed : int
        A seed in [0, 2**32).

    Examples
    ---------
    >>> derive_seed(42, 1, 7) == derive_seed(42, 1, 7)
    True
    >>> derive_seed(42, 1, 7) == derive_seed(42, 7, 1)
    False
    """
    sequence = np.random.SeedSequence([int(k) for k in keys])
    return int(sequence.generate_state(1)[0])


def thread_count():
    """
    Return the worker cap from ``STRIPID_THREADS``, defaulting to 1.
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        threads = 0
    if threads < 1:
        log.warning('Ignoring %s=%r, using 1 thread.', THREADS_ENV, raw)
        return 1
    return threads


def ordered_map(function, items):
    """
    Apply `function` to every item, keeping the input order.

    Runs on a thread pool when ``STRIPID_THREADS`` is above one. Each item
    is computed independently, so the output is identical to the
    sequential result.

    Examples
    ---------
    >>> ordered_map(lambda x: x * x, [3, 1, 2])
    [9, 1, 4]
    """
    items = list(items)
    threads = thread_count()
    if threads == 1 or len(items) < 2:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))


def configure_logging(verbosity=0):
    """
    Install a single stderr handler on the package logger.

    Parameters
    ----------
    verbosity : int
        Negative for errors only, 0 for warnings, 1 for info, 2 or more
        for debug output.
    """
    if verbosity < 0:
        level = logging.ERROR
    else:
        level = [logging.WARNING, logging.INFO][min(verbosity, 1)]
        if verbosity >= 2:
            level = logging.DEBUG

    logger = logging.getLogger('stripid')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
