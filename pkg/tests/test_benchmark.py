#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Frozen-seed runs on the synthetic strip benchmark. These targets are
calibrated on the generator; a change to the renderer or to a default
setting may move them.
"""

import pytest
from conftest import BENCHMARK_SEED, SPLIT_SEED
from stripid.classify import Dataset
from stripid.evalx import train_and_evaluate, size_sweep, separation_ratio
from stripid.features import extract
from stripid.synth import (AugmentSpec, gen_class_specs, hue_twin, render_dataset,
                          with_twins)

pytestmark = pytest.mark.slow

CLASSIFIERS = ('knn', 'svm', 'lr')


@pytest.fixture(scope='module')
def accuracies(strip_benchmark):
    return {(method, name): train_and_evaluate(data, name, 0.8, SPLIT_SEED).accuracy
            for method, data in strip_benchmark.items()
            for name in CLASSIFIERS}


class TestAccuracyGrid:

    def test_cepstrum(self, accuracies):
        assert accuracies['cepstrum', 'knn'] >= 0.95
        assert accuracies['cepstrum', 'svm'] >= 0.90

    def test_cgpf(self, accuracies):
        assert accuracies['cgpf', 'knn'] >= 0.85

    def test_orderings(self, accuracies):
        for name in ('knn', 'svm'):
            assert accuracies['cepstrum', name] >= accuracies['cgpf', name]
        for method in ('cepstrum', 'cgpf'):
            assert accuracies[method, 'knn'] >= accuracies[method, 'lr']


class TestDataSize:

    def test_collapse(self, strip_benchmark):
        curve = size_sweep(strip_benchmark['cepstrum'], [2, 5, 40], CLASSIFIERS,
                           seed=SPLIT_SEED)
        small = [p for p in curve.points if p.total < 30]
        assert small
        assert all(p.accuracies['knn'] < 0.5 for p in small)
        five, forty = curve.points[1], curve.points[2]
        assert (five.per_class, forty.per_class) == (5, 40)
        for name in CLASSIFIERS:
            assert forty.accuracies[name] > five.accuracies[name]


class TestHueTwins:

    def test_separation(self):
        spec = gen_class_specs(12, BENCHMARK_SEED)[4]
        twin = hue_twin(spec, 20)
        # Noise only, so the two classes differ in hue alone
        aug = AugmentSpec(0.0, 4.0, 0.0, 0.0)
        features = [[extract(img, 'cepstrum') for _, _, img in
                     render_dataset([s], 20, aug, BENCHMARK_SEED)] for s in (spec, twin)]
        assert separation_ratio(*features) > 1

    def test_twin_is_learnable(self):
        specs = with_twins(gen_class_specs(2, BENCHMARK_SEED)[:1], [(0, 20)])
        rows = [(extract(img, 'cepstrum'), spec.class_id) for spec, _, img in
                render_dataset(specs, 20, AugmentSpec(0.0, 4.0, 0.0, 0.0), BENCHMARK_SEED)]
        data = Dataset.from_samples(rows, [s.label for s in specs])
        report = train_and_evaluate(data, 'knn', 0.8, SPLIT_SEED)
        assert report.accuracy >= 0.75
