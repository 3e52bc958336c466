#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
    Shared pytest configuration for stripid.

    Read more about conftest.py under:
    https://pytest.org/latest/plugins.html
"""

import numpy as np
import pytest
from stripid.classify import Dataset
from stripid.features import extract
from stripid.synth import AugmentSpec, gen_class_specs, render_dataset

BENCHMARK_CLASSES = 12
BENCHMARK_PER_CLASS = 50
BENCHMARK_SEED = 42
SPLIT_SEED = 7


def pytest_addoption(parser):
    parser.addoption('--repeat', action='store',
        help='Number of times to repeat each test')


def pytest_generate_tests(metafunc):
    if metafunc.config.option.repeat is not None:
        count = int(metafunc.config.option.repeat)

        # Randomized tests are repeated by parametrizing a dummy fixture,
        # as @pytest.mark.parametrize('tmp_ct', range(count)) would
        metafunc.fixturenames.append('tmp_ct')
        metafunc.parametrize('tmp_ct', range(count))


@pytest.fixture(scope='session')
def strip_benchmark():
    """
    Features of the frozen synthetic benchmark: 12 classes of 50 strips,
    seed 42, default augmentation and extractor settings.
    """
    specs = gen_class_specs(BENCHMARK_CLASSES, BENCHMARK_SEED)
    labels = [spec.label for spec in specs]
    samples = {'cepstrum': [], 'cgpf': []}
    for spec, _, img in render_dataset(specs, BENCHMARK_PER_CLASS, AugmentSpec(),
                                       BENCHMARK_SEED):
        for method in samples:
            samples[method].append((extract(img, method), spec.class_id))
    return {method: Dataset.from_samples(rows, labels) for method, rows in samples.items()}
