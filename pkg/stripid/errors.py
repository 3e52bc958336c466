#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exceptions raised by the ``stripid`` package.

Every exception derives from :py:class:`StripIdError` and from the builtin
it most resembles, so callers may catch either ``StripIdError`` or the
plain ``ValueError``.
"""


class StripIdError(Exception):
    """Base class for all errors raised by stripid."""


# Input validation
class InvalidDimensions(StripIdError, ValueError):
    pass


class InvalidKernel(StripIdError, ValueError):
    pass


class EmptyPlane(StripIdError, ValueError):
    pass


class EmptyVector(StripIdError, ValueError):
    pass


class DegenerateInput(StripIdError, ValueError):
    pass


class PlaneTooSmall(StripIdError, ValueError):
    pass


# Shape agreement between features, datasets and models
class LengthMismatch(StripIdError, ValueError):
    pass


class DimensionMismatch(StripIdError, ValueError):
    pass


class MethodMismatch(StripIdError, ValueError):
    pass


# Dataset shape
class EmptyDataset(StripIdError, ValueError):
    pass


class SingleClass(StripIdError, ValueError):
    pass


class ClassTooSmall(StripIdError, ValueError):
    pass


class SizeTooLarge(StripIdError, ValueError):
    pass


class TooFewSamples(StripIdError, ValueError):
    pass


class TooManyClasses(StripIdError, ValueError):
    pass


# Files on disk
class UnsupportedFormat(StripIdError, ValueError):
    pass


class CorruptImage(StripIdError, ValueError):
    pass


class CorruptModel(StripIdError, ValueError):
    pass


class VersionMismatch(StripIdError, ValueError):
    pass


class CorruptFeatureFile(StripIdError, ValueError):
    pass
