#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The experiment harness: stratified train/test splits, accuracy and
confusion reports, the data-size sweep, the method by classifier accuracy
grid and the separation statistic of two near-identical classes.
"""

import logging
import math
from dataclasses import dataclass, field
import numpy as np
from stripid.classify import Dataset, predict, train_model
from stripid.errors import (ClassTooSmall, EmptyDataset, MethodMismatch,
                            DimensionMismatch, SizeTooLarge, TooFewSamples)
from stripid.features.vector import FeatureVector
from stripid.utils import derive_seed, ordered_map

log = logging.getLogger(__name__)

SEPARATION_CAP = 1e9


@dataclass(frozen=True, eq=False)
class EvalReport:
    """
    Outcome of testing one trained model.

    Attributes
    ----------
    accuracy : float
        Fraction of correctly classified test samples.
    per_class_accuracy : :py:class:`~numpy.ndarray`
        Accuracy within every true class, NaN for classes without test
        samples.
    confusion : :py:class:`~numpy.ndarray`
        C x C counts, rows are true labels and columns predictions.
    train_size, test_size : int
    classifier : str
    method : str
    seed : int
        The split seed, or None when unknown.
    labels : tuple
    """
    accuracy: float
    per_class_accuracy: np.ndarray
    confusion: np.ndarray
    train_size: int
    test_size: int
    classifier: str
    method: str
    seed: int = None
    labels: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class SweepPoint:
    """Accuracies of every classifier at one per-class sample count."""
    per_class: int
    total: int
    accuracies: dict


@dataclass(frozen=True)
class SweepCurve:
    """Sweep points ordered by strictly increasing per-class count."""
    points: tuple

    def sizes(self):
        return [point.per_class for point in self.points]

    def accuracies(self, classifier):
        return [point.accuracies[classifier] for point in self.points]

    def rows(self):
        """``(per_class_size, total_size, model, accuracy)`` tuples."""
        return [(point.per_class, point.total, name, accuracy)
                for point in self.points
                for name, accuracy in point.accuracies.items()]


def stratified_split(d, train_fraction=0.8, seed=0):
    """
    Split a dataset into train and test parts class by class.

    Every class is shuffled by a generator seeded with `seed`;
    ``ceil(train_fraction * n_c)`` samples go to train and the rest to test,
    keeping at least one test sample per class.

    Parameters
    ----------
    d : Dataset
    train_fraction : float
        In (0, 1).
    seed : int

    Returns
    -------
    train : Dataset
    test : Dataset

    Examples
    ---------
    >>> d = Dataset('cgpf', np.arange(40.0).reshape(20, 2), [0] * 10 + [1] * 10, 'AB')
    >>> train, test = stratified_split(d, 0.8, seed=3)
    >>> train.class_counts().tolist(), test.class_counts().tolist()
    ([8, 8], [2, 2])
    """
    if not 0 < train_fraction < 1:
        raise ValueError('Train fraction must be in (0, 1).')
    counts = d.class_counts()
    present = np.flatnonzero(counts)
    if len(present) == 0:
        raise EmptyDataset('Cannot split an empty dataset.')
    small = [d.labels[c] for c in present if counts[c] < 2]
    if small:
        raise ClassTooSmall('Classes {} have fewer than two samples.'.format(small))

    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for c in present:
        members = rng.permutation(np.flatnonzero(d.targets == c))
        # Small slack keeps 0.8 * 10 from rounding up to 9
        n_train = min(math.ceil(train_fraction * len(members) - 1e-9), len(members) - 1)
        train_idx.extend(members[:n_train])
        test_idx.extend(members[n_train:])

    return d.subset(sorted(train_idx)), d.subset(sorted(test_idx))


def evaluate(model, test, seed=None, train_size=None):
    """
    Predict every test sample and tabulate the results.

    Parameters
    ----------
    model : KnnModel or LinearModel
    test : Dataset
        Samples of the model's feature method and dimension.
    seed : int
        Recorded in the report.
    train_size : int
        Recorded in the report; taken from KNN models when None.

    Returns
    -------
    report : EvalReport
    """
    if test.method != model.method:
        raise MethodMismatch('Model uses {!r} features, test set has {!r}.'
                             .format(model.method, test.method))
    if test.dims != model.dims:
        raise DimensionMismatch('Model expects {} features, test set has {}.'
                                .format(model.dims, test.dims))
    if tuple(test.labels) != tuple(model.labels):
        raise ValueError('Test labels differ from the model labels.')
    if len(test) == 0:
        raise EmptyDataset('Cannot evaluate on an empty test set.')

    n_classes = len(test.labels)
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    for values, target in zip(test.features, test.targets):
        label, _ = predict(model, FeatureVector(test.method, values))
        confusion[target, label] += 1

    totals = confusion.sum(axis=1)
    with np.errstate(invalid='ignore', divide='ignore'):
        per_class = np.where(totals > 0, np.diag(confusion) / np.maximum(totals, 1), np.nan)
    if train_size is None and hasattr(model, 'stored'):
        train_size = len(model.stored)

    report = EvalReport(accuracy=float(np.trace(confusion) / len(test)),
                        per_class_accuracy=per_class, confusion=confusion,
                        train_size=train_size, test_size=len(test),
                        classifier=model.kind, method=test.method, seed=seed,
                        labels=tuple(test.labels))
    log.info('%s + %s: accuracy %.4f on %d samples.', report.method,
             report.classifier, report.accuracy, report.test_size)
    return report


def train_and_evaluate(d, classifier, train_fraction=0.8, seed=0, cfg=None, k=1,
                       weighting='uniform'):
    """Split `d`, train `classifier` on the train part and test it."""
    train, test = stratified_split(d, train_fraction, seed)
    model = train_model(train, classifier, cfg, k=k, weighting=weighting)
    return evaluate(model, test, seed=seed, train_size=len(train))


def _subsample(d, per_class, seed):
    """`per_class` samples of every present class, drawn with `seed`."""
    rng = np.random.default_rng(seed)
    chosen = []
    for c in d.present_classes():
        members = np.flatnonzero(d.targets == c)
        chosen.extend(rng.choice(members, size=per_class, replace=False))
    return d.subset(sorted(chosen))


def size_sweep(full, sizes, classifiers, seed=0, train_fraction=0.8, cfg=None, k=1):
    """
    Accuracy of every classifier as the per-class sample count grows.

    For every size ``s``, ``s`` samples of each class are drawn, split and
    used to train and test each classifier.

    Parameters
    ----------
    full : Dataset
    sizes : iterable of int
        Per-class counts; duplicates are dropped and the rest sorted.
    classifiers : iterable of str
        Names accepted by :py:func:`~stripid.classify.train_model`.
    seed : int
    train_fraction : float
    cfg : TrainConfig
    k : int
        KNN neighbor count, lowered to the train size when larger.

    Returns
    -------
    curve : SweepCurve
    """
    sizes = sorted(set(int(s) for s in sizes))
    classifiers = list(classifiers)
    if not sizes:
        raise ValueError('At least one size is required.')
    counts = full.class_counts()[full.present_classes()]
    if len(counts) == 0:
        raise EmptyDataset('Cannot sweep an empty dataset.')
    smallest = int(counts.min())
    for size in sizes:
        if not 2 <= size <= smallest:
            raise SizeTooLarge('Per-class size {} is not in [2, {}].'.format(size, smallest))

    points = []
    for size in sizes:
        subset = _subsample(full, size, derive_seed(seed, size))
        train, test = stratified_split(subset, train_fraction, derive_seed(seed, size, 1))

        def run(name):
            model = train_model(train, name, cfg, k=min(k, len(train)))
            return evaluate(model, test, seed=seed, train_size=len(train)).accuracy

        accuracies = dict(zip(classifiers, ordered_map(run, classifiers)))
        points.append(SweepPoint(per_class=size, total=len(subset), accuracies=accuracies))
        log.info('Sweep size %d (%d samples): %s', size, len(subset), accuracies)
    return SweepCurve(points=tuple(points))


def accuracy_grid(feature_sets, classifiers, train_fraction=0.8, seed=0, cfg=None, k=1):
    """
    Evaluate every classifier on every feature set.

    Parameters
    ----------
    feature_sets : dict
        Maps a feature method to its Dataset.
    classifiers : iterable of str

    Returns
    -------
    grid : dict
        Maps ``(method, classifier)`` to an :py:class:`EvalReport`.
    """
    cells = [(method, name) for method in feature_sets for name in classifiers]

    def run(cell):
        method, name = cell
        return train_and_evaluate(feature_sets[method], name, train_fraction, seed, cfg, k)

    return dict(zip(cells, ordered_map(run, cells)))


def format_grid(grid):
    """
    A text table of accuracies, one row per classifier and one column per
    feature method.
    """
    methods = list(dict.fromkeys(method for method, _ in grid))
    classifiers = list(dict.fromkeys(name for _, name in grid))
    width = max([10] + [len(m) for m in methods])
    lines = ['{:<10}'.format('model') + ''.join('{:>{}}'.format(m, width + 2) for m in methods)]
    for name in classifiers:
        cells = ''.join('{:>{}.4f}'.format(grid[method, name].accuracy, width + 2)
                        for method in methods)
        lines.append('{:<10}'.format(name) + cells)
    return '\n'.join(lines) + '\n'


def report_to_dict(report):
    """The report as plain Python types; NaN accuracies become None."""
    return {
        'method': report.method,
        'classifier': report.classifier,
        'seed': report.seed,
        'train_size': report.train_size,
        'test_size': report.test_size,
        'accuracy': report.accuracy,
        'labels': list(report.labels),
        'per_class_accuracy': [None if np.isnan(a) else float(a)
                               for a in report.per_class_accuracy],
        'confusion': report.confusion.tolist(),
    }


def format_report(report):
    """
    Render a report as ``key: value`` lines followed by the confusion
    matrix, one row per true label.
    """
    def accuracy(value):
        return 'n/a' if np.isnan(value) else '{:.4f}'.format(value)

    lines = ['method: {}'.format(report.method),
             'classifier: {}'.format(report.classifier),
             'seed: {}'.format(report.seed),
             'train_size: {}'.format(report.train_size),
             'test_size: {}'.format(report.test_size),
             'accuracy: {:.4f}'.format(report.accuracy),
             'per_class_accuracy:']
    for label, value in zip(report.labels, report.per_class_accuracy):
        lines.append('  {}: {}'.format(label, accuracy(value)))
    lines.append('confusion:')
    width = max(len(str(report.confusion.max())), 1)
    for row in report.confusion:
        lines.append('  ' + ' '.join('{:>{}d}'.format(int(n), width) for n in row))
    return '\n'.join(lines) + '\n'


def _as_matrix(samples):
    rows = [s.values if isinstance(s, FeatureVector) else np.asarray(s, dtype=float)
            for s in samples]
    if len(rows) < 2:
        raise TooFewSamples('Need at least two samples per class.')
    return np.vstack(rows)


def separation_ratio(a, b):
    """
    Centroid distance of two classes over their larger within-class spread.

    The spread of a class is the mean distance of its samples to the
    class centroid. A ratio above one means the classes are further apart
    than they are wide.

    Parameters
    ----------
    a, b : sequence
        Feature vectors (or plain arrays) of the two classes.

    Returns
    -------
    ratio : float
        0 when the centroids coincide, :py:data:`SEPARATION_CAP` when both
        classes have zero spread.

    Examples
    ---------
    >>> separation_ratio([[0, 0], [0, 2]], [[4, 0], [4, 2]])
    4.0
    >>> separation_ratio([[0.0], [0.0]], [[1.0], [1.0]])
    1000000000.0
    """
    A, B = _as_matrix(a), _as_matrix(b)
    if A.shape[1] != B.shape[1]:
        raise DimensionMismatch('Both classes need the same feature length.')
    centroid_a, centroid_b = A.mean(axis=0), B.mean(axis=0)
    distance = float(np.linalg.norm(centroid_a - centroid_b))
    spread = max(float(np.mean(np.linalg.norm(A - centroid_a, axis=1))),
                 float(np.mean(np.linalg.norm(B - centroid_b, axis=1))))
    if distance == 0:
        return 0.0
    if spread == 0:
        return SEPARATION_CAP
    return min(distance / spread, SEPARATION_CAP)


def class_features(d, label):
    """Rows of `d` whose label is `label` (a name or an index)."""
    index = d.labels.index(label) if isinstance(label, str) else int(label)
    return d.features[d.targets == index]


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
