#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The fixed-length feature vector produced by both extractors.
"""

from dataclasses import dataclass
import numpy as np
from stripid.errors import MethodMismatch

METHODS = ('cepstrum', 'cgpf')


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """
    A real feature vector tagged with the method that produced it.

    Parameters
    ----------
    method : str
        Either ``'cepstrum'`` or ``'cgpf'``.
    values : array_like
        The finite feature values.

    Examples
    ---------
    >>> v = FeatureVector('cgpf', [0.5, 1.0])
    >>> len(v)
    2
    >>> FeatureVector('brisk', [1.0])
    Traceback (most recent call last):
    ...
    stripid.errors.MethodMismatch: Unknown feature method 'brisk'.
    """
    method: str
    values: np.ndarray

    def __post_init__(self):
        if self.method not in METHODS:
            raise MethodMismatch('Unknown feature method {!r}.'.format(self.method))
        values = np.array(self.values, dtype=float).ravel()
        if not np.all(np.isfinite(values)):
            raise ValueError('Feature values must be finite.')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return (self.method == other.method
                and np.array_equal(self.values, other.values))

    def __repr__(self):
        return 'FeatureVector({!r}, dims={})'.format(self.method, len(self))
