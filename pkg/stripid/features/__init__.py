#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Feature extraction: the 2-D cepstral and the CGPF extractors, and a small
registry mapping method tags to extractors and their config records.
"""

from stripid.errors import MethodMismatch
from stripid.features.vector import FeatureVector, METHODS
from stripid.features.cepstrum import CepstrumConfig, cepstral_features
from stripid.features.cgpf import CgpfConfig, cgpf_features

_REGISTRY = {
    'cepstrum': (CepstrumConfig, cepstral_features),
    'cgpf': (CgpfConfig, cgpf_features),
}


def default_config(method):
    """
    Return the default config record of `method`.

    Examples
    ---------
    >>> default_config('cepstrum').dims
    20
    """
    try:
        return _REGISTRY[method][0]()
    except KeyError:
        raise MethodMismatch('Unknown feature method {!r}.'.format(method))


def config_from_dict(method, data):
    """Rebuild the config record of `method` from :py:meth:`to_dict` output."""
    if method not in _REGISTRY:
        raise MethodMismatch('Unknown feature method {!r}.'.format(method))
    return _REGISTRY[method][0].from_dict(dict(data))


def extract(img, method, cfg=None):
    """
    Run the extractor registered for `method` on an image.

    Parameters
    ----------
    img : :py:class:`~numpy.ndarray`
        An RGB image.
    method : str
        ``'cepstrum'`` or ``'cgpf'``.
    cfg : CepstrumConfig or CgpfConfig
        Extractor settings, defaults when None.

    Returns
    -------
    features : FeatureVector
    """
    if method not in _REGISTRY:
        raise MethodMismatch('Unknown feature method {!r}.'.format(method))
    config_type, extractor = _REGISTRY[method]
    if cfg is not None and not isinstance(cfg, config_type):
        raise MethodMismatch('Config {} does not belong to method {!r}.'
                             .format(type(cfg).__name__, method))
    return extractor(img, cfg)
