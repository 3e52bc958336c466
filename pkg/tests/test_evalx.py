#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for splits, reports, the size sweep, the accuracy grid and the
separation statistic.
"""

import math
from random import randint as ri
import numpy as np
import pytest
from stripid.classify import Dataset, TrainConfig, fit_knn, train_linear
from stripid.errors import (ClassTooSmall, DimensionMismatch, MethodMismatch,
                            SizeTooLarge, TooFewSamples)
from stripid.evalx import (stratified_split, evaluate, train_and_evaluate, size_sweep,
                           accuracy_grid, format_grid, format_report, report_to_dict,
                           separation_ratio, class_features, SEPARATION_CAP)
from stripid.features.vector import FeatureVector


def blobs(n_classes, per_class, seed, spread=0.5, method='cgpf'):
    rng = np.random.default_rng(seed)
    centers = 5.0 * np.eye(n_classes, 3)
    features = np.vstack([c + spread * rng.standard_normal((per_class, 3)) for c in centers])
    targets = np.repeat(np.arange(n_classes), per_class)
    return Dataset(method, features, targets, ['med{:02d}'.format(i + 1) for i in range(n_classes)])


def row_set(d):
    return {tuple(row) + (int(t),) for row, t in zip(d.features, d.targets)}


class TestStratifiedSplit:

    def test_sizes(self):
        train, test = stratified_split(blobs(3, 10, seed=1), 0.8, seed=ri(0, 1000))
        assert train.class_counts().tolist() == [8, 8, 8]
        assert test.class_counts().tolist() == [2, 2, 2]

    def test_partition(self):
        d = blobs(3, 13, seed=2)
        train, test = stratified_split(d, 0.7, seed=ri(0, 1000))
        assert len(train) + len(test) == len(d)
        assert row_set(train).isdisjoint(row_set(test))
        assert row_set(train) | row_set(test) == row_set(d)

    def test_deterministic(self):
        d = blobs(3, 10, seed=3)
        a, _ = stratified_split(d, 0.8, seed=7)
        b, _ = stratified_split(d, 0.8, seed=7)
        c, _ = stratified_split(d, 0.8, seed=8)
        assert np.array_equal(a.features, b.features)
        assert not np.array_equal(a.features, c.features)

    def test_keeps_one_test_sample(self):
        train, test = stratified_split(blobs(2, 3, seed=4), 0.99, seed=0)
        assert train.class_counts().tolist() == [2, 2]
        assert test.class_counts().tolist() == [1, 1]

    def test_labels_preserved(self):
        d = blobs(2, 4, seed=5)
        train, test = stratified_split(d, 0.5, seed=0)
        assert train.labels == test.labels == d.labels

    def test_errors(self):
        d = Dataset('cgpf', [[0.0], [1.0], [2.0]], [0, 0, 1], 'ab')
        with pytest.raises(ClassTooSmall):
            stratified_split(d, 0.8, seed=0)
        with pytest.raises(ValueError):
            stratified_split(blobs(2, 4, seed=0), 1.0)


class TestEvaluate:

    def test_memorized(self):
        d = blobs(3, 6, seed=ri(0, 1000))
        report = evaluate(fit_knn(d, k=1), d, seed=3)
        assert report.accuracy == 1.0
        assert np.array_equal(report.confusion, np.diag([6, 6, 6]))
        assert report.per_class_accuracy.tolist() == [1.0, 1.0, 1.0]
        assert (report.train_size, report.test_size, report.seed) == (18, 18, 3)
        assert report.classifier == 'knn'

    def test_mislabeled(self):
        stored = Dataset('cgpf', [[0.0], [10.0]], [0, 1], 'ab')
        test = Dataset('cgpf', [[0.0], [10.0], [9.0]], [1, 0, 1], 'ab')
        report = evaluate(fit_knn(stored), test)
        assert report.accuracy == pytest.approx(1 / 3)
        assert report.confusion.tolist() == [[0, 1], [1, 1]]
        assert report.per_class_accuracy.tolist() == [0.0, 0.5]

    def test_absent_class(self):
        stored = Dataset('cgpf', [[0.0], [10.0], [20.0]], [0, 1, 2], 'abc')
        test = Dataset('cgpf', [[0.0], [10.0]], [0, 1], 'abc')
        report = evaluate(fit_knn(stored), test)
        assert math.isnan(report.per_class_accuracy[2])
        assert report_to_dict(report)['per_class_accuracy'] == [1.0, 1.0, None]
        assert '  c: n/a' in format_report(report)

    def test_confusion_sums(self):
        d = blobs(4, 10, seed=6, spread=3.0)
        train, test = stratified_split(d, 0.6, seed=1)
        report = evaluate(train_linear(train, 'lr', TrainConfig(iterations=50)), test)
        assert report.confusion.sum() == len(test)
        assert report.confusion.sum(axis=1).tolist() == test.class_counts().tolist()
        assert report.accuracy == pytest.approx(np.trace(report.confusion) / len(test))

    def test_mismatches(self):
        model = fit_knn(blobs(2, 3, seed=0))
        with pytest.raises(MethodMismatch):
            evaluate(model, blobs(2, 3, seed=0, method='cepstrum'))
        with pytest.raises(DimensionMismatch):
            evaluate(model, Dataset('cgpf', [[0.0]], [0], model.labels))

    def test_train_and_evaluate(self):
        report = train_and_evaluate(blobs(3, 10, seed=7, spread=0.3), 'svm', seed=2)
        assert report.accuracy == 1.0
        assert (report.train_size, report.test_size) == (24, 6)


class TestReports:

    @staticmethod
    def setup():
        stored = Dataset('cgpf', [[0.0], [10.0]], [0, 1], ['med01', 'med02'])
        test = Dataset('cgpf', [[1.0], [9.0], [2.0]], [0, 1, 1], ['med01', 'med02'])
        return evaluate(fit_knn(stored), test, seed=5, train_size=2)

    def test_format_report(self):
        text = format_report(self.setup())
        assert text.splitlines() == [
            'method: cgpf',
            'classifier: knn',
            'seed: 5',
            'train_size: 2',
            'test_size: 3',
            'accuracy: 0.6667',
            'per_class_accuracy:',
            '  med01: 1.0000',
            '  med02: 0.5000',
            'confusion:',
            '  1 0',
            '  1 1',
        ]

    def test_report_to_dict(self):
        as_dict = report_to_dict(self.setup())
        assert as_dict['labels'] == ['med01', 'med02']
        assert as_dict['confusion'] == [[1, 0], [1, 1]]
        assert as_dict['accuracy'] == pytest.approx(2 / 3)


class TestSweep:

    def test_shape(self):
        d = blobs(4, 20, seed=8)
        curve = size_sweep(d, [10, 5, 5, 20], ['knn', 'lr'], seed=1,
                           cfg=TrainConfig(iterations=40))
        assert curve.sizes() == [5, 10, 20]
        assert [p.total for p in curve.points] == [20, 40, 80]
        assert len(curve.rows()) == 6
        assert curve.rows()[0][:3] == (5, 20, 'knn')
        for name in ('knn', 'lr'):
            assert all(0 <= a <= 1 for a in curve.accuracies(name))

    def test_deterministic(self):
        d = blobs(3, 12, seed=9, spread=3.0)
        a = size_sweep(d, [4, 12], ['knn'], seed=3)
        b = size_sweep(d, [4, 12], ['knn'], seed=3)
        assert a.rows() == b.rows()

    def test_infeasible_sizes(self):
        d = blobs(3, 12, seed=9)
        with pytest.raises(SizeTooLarge):
            size_sweep(d, [5, 13], ['knn'])
        with pytest.raises(SizeTooLarge):
            size_sweep(d, [1], ['knn'])


class TestGrid:

    def test_grid(self):
        sets = {'cepstrum': blobs(3, 10, seed=1, spread=0.3, method='cepstrum'),
                'cgpf': blobs(3, 10, seed=2, spread=0.3)}
        grid = accuracy_grid(sets, ['knn', 'svm'], seed=4)
        assert set(grid) == {(m, c) for m in sets for c in ('knn', 'svm')}
        assert all(report.accuracy == 1.0 for report in grid.values())
        lines = format_grid(grid).splitlines()
        assert lines[0].split() == ['model', 'cepstrum', 'cgpf']
        assert lines[1].split() == ['knn', '1.0000', '1.0000']
        assert lines[2].split() == ['svm', '1.0000', '1.0000']


class TestSeparation:

    def test_hand_example(self):
        assert separation_ratio([[0, 0], [0, 2]], [[4, 0], [4, 2]]) == 4.0

    def test_same_class(self):
        a = np.random.default_rng(1).normal(size=(5, 3))
        assert separation_ratio(a, a) == 0.0

    def test_zero_spread(self):
        assert separation_ratio([[1.0], [1.0]], [[2.0], [2.0]]) == SEPARATION_CAP

    def test_symmetric_and_scale_free(self):
        rng = np.random.default_rng(ri(0, 1000))
        a, b = rng.normal(size=(6, 4)), rng.normal(size=(8, 4)) + 3
        assert separation_ratio(a, b) == pytest.approx(separation_ratio(b, a))
        assert separation_ratio(2 * a, 2 * b) == pytest.approx(separation_ratio(a, b))

    def test_feature_vectors(self):
        a = [FeatureVector('cgpf', [0, 0]), FeatureVector('cgpf', [0, 2])]
        b = [FeatureVector('cgpf', [4, 0]), FeatureVector('cgpf', [4, 2])]
        assert separation_ratio(a, b) == 4.0

    def test_errors(self):
        with pytest.raises(TooFewSamples):
            separation_ratio([[0.0]], [[1.0], [2.0]])
        with pytest.raises(DimensionMismatch):
            separation_ratio([[0.0], [1.0]], [[1.0, 2.0], [2.0, 3.0]])

    def test_class_features(self):
        d = blobs(2, 3, seed=0)
        assert np.array_equal(class_features(d, 'med02'), d.features[3:])
        assert np.array_equal(class_features(d, 0), d.features[:3])
