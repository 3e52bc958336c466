#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
This module contains the classifiers: k-nearest neighbors with a Euclidean
metric, and linear models (hinge-loss SVM, logistic regression, both
one-vs-rest, and multinomial softmax regression) trained by full-batch
gradient descent from zero on standardized features. Trained models are
immutable and can be written to and read from a small binary format.
"""

import json
import logging
import struct
from dataclasses import dataclass, field
import numpy as np
from scipy.special import expit, logsumexp, softmax
from stripid.errors import (LengthMismatch, DimensionMismatch, MethodMismatch,
                            EmptyDataset, SingleClass, CorruptModel,
                            VersionMismatch)
from stripid.features.vector import FeatureVector, METHODS
from stripid.utils import ordered_map

log = logging.getLogger(__name__)

KINDS = ('svm', 'lr', 'mlr')
CLASSIFIERS = ('knn',) + KINDS
WEIGHTINGS = ('uniform', 'distance')

MAGIC = b'SIDM'
FORMAT_VERSION = 1
_KIND_TAGS = {'knn': 0, 'svm': 1, 'lr': 2, 'mlr': 3}

sigmoid = expit


def _frozen(array, dtype=float):
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Labelled feature vectors of one extraction method.

    Attributes
    ----------
    method : str
        The feature method shared by every sample.
    features : :py:class:`~numpy.ndarray`
        An (n, D) matrix, one row per sample.
    targets : :py:class:`~numpy.ndarray`
        n label indices into `labels`.
    labels : tuple
        The ordered label names.

    Examples
    ---------
    >>> d = Dataset.from_samples([(FeatureVector('cgpf', [0.0, 1.0]), 1),
    ...                           (FeatureVector('cgpf', [2.0, 3.0]), 0)],
    ...                          labels=['med01', 'med02'])
    >>> len(d), d.dims, d.class_counts().tolist()
    (2, 2, [1, 1])
    """
    method: str
    features: np.ndarray
    targets: np.ndarray
    labels: tuple

    def __post_init__(self):
        if self.method not in METHODS:
            raise MethodMismatch('Unknown feature method {!r}.'.format(self.method))
        features = _frozen(self.features)
        if features.ndim == 1 and features.size == 0:
            features = _frozen(np.zeros((0, 0)))
        targets = _frozen(self.targets, dtype=np.int64).ravel()
        labels = tuple(str(label) for label in self.labels)
        if features.ndim != 2 or features.shape[0] != targets.shape[0]:
            raise DimensionMismatch('Need one target per feature row.')
        if not np.all(np.isfinite(features)):
            raise ValueError('Feature values must be finite.')
        if targets.size and (targets.min() < 0 or targets.max() >= len(labels)):
            raise ValueError('Label index out of range.')
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'targets', targets)
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_samples(cls, samples, labels):
        """Build a dataset from (FeatureVector, label index) pairs."""
        samples = list(samples)
        if not samples:
            raise EmptyDataset('Cannot build a dataset without samples.')
        methods = {vector.method for vector, _ in samples}
        if len(methods) != 1:
            raise MethodMismatch('Samples mix feature methods {}.'.format(sorted(methods)))
        lengths = {len(vector) for vector, _ in samples}
        if len(lengths) != 1:
            raise LengthMismatch('Samples have different lengths {}.'.format(sorted(lengths)))
        return cls(method=methods.pop(),
                   features=np.vstack([vector.values for vector, _ in samples]),
                   targets=[target for _, target in samples],
                   labels=labels)

    @property
    def samples(self):
        """The (FeatureVector, label index) pairs."""
        return [(FeatureVector(self.method, row), int(target))
                for row, target in zip(self.features, self.targets)]

    @property
    def dims(self):
        return self.features.shape[1]

    def __len__(self):
        return self.features.shape[0]

    def class_counts(self):
        """Number of samples of every label."""
        return np.bincount(self.targets, minlength=len(self.labels))

    def present_classes(self):
        """Label indices that have at least one sample."""
        return np.flatnonzero(self.class_counts())

    def subset(self, indices):
        """The samples at `indices`, in that order, with the same labels."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.method, self.features[indices].reshape(len(indices), self.dims),
                       self.targets[indices], self.labels)


def _vector_values(model_method, model_dims, x):
    """Check a query against a model and return its values."""
    if isinstance(x, FeatureVector):
        if x.method != model_method:
            raise MethodMismatch('Model expects {!r} features, got {!r}.'
                                 .format(model_method, x.method))
        values = x.values
    else:
        values = np.asarray(x, dtype=float).ravel()
    if len(values) != model_dims:
        raise DimensionMismatch('Model expects {} features, got {}.'
                                .format(model_dims, len(values)))
    return values


def euclidean(x, y):
    """
    The Euclidean distance ``sqrt(sum_i (x_i - y_i)^2)``.

    Examples
    ---------
    >>> euclidean([0, 0], [3, 4])
    5.0
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch('Vectors must have equal length.')
    difference = x - y
    return float(np.sqrt(np.dot(difference, difference)))


@dataclass(frozen=True, eq=False)
class KnnModel:
    """
    A k-nearest-neighbor classifier: the stored training set and `k`.

    Attributes
    ----------
    k : int
        Number of neighbors, 1 <= k <= len(stored).
    stored : Dataset
        The training samples.
    weighting : str
        ``'uniform'`` votes count one each, ``'distance'`` votes count
        ``1 / (d + 1e-12)``.
    feature_config : dict
        The extractor settings the features were produced with.
    """
    k: int
    stored: Dataset
    weighting: str = 'uniform'
    feature_config: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.k <= len(self.stored):
            raise ValueError('Need 1 <= k <= training size, got k={}.'.format(self.k))
        if self.weighting not in WEIGHTINGS:
            raise ValueError('Unknown weighting {!r}.'.format(self.weighting))

    kind = 'knn'

    @property
    def method(self):
        return self.stored.method

    @property
    def labels(self):
        return self.stored.labels

    @property
    def dims(self):
        return self.stored.dims


def fit_knn(train, k=1, weighting='uniform', feature_config=None):
    """Store `train` as a KNN model."""
    if len(train) == 0:
        raise EmptyDataset('Cannot fit on an empty dataset.')
    return KnnModel(k=int(k), stored=train, weighting=weighting,
                    feature_config=dict(feature_config or {}))


def _knn_votes(m, values):
    """Neighbor indices, distances and per-label votes of a query."""
    stored = m.stored
    difference = stored.features - values
    distances = np.sqrt(np.einsum('ij,ij->i', difference, difference))
    # Stable sort keeps stored order among equal distances
    nearest = np.argsort(distances, kind='stable')[:m.k]
    near_labels = stored.targets[nearest]
    near_distances = distances[nearest]
    if m.weighting == 'distance':
        weights = 1.0 / (near_distances + 1e-12)
    else:
        weights = np.ones(m.k)
    votes = np.bincount(near_labels, weights=weights, minlength=len(stored.labels))
    return near_labels, near_distances, votes


def knn_predict(m, x):
    """
    Majority vote of the `k` nearest stored samples.

    Vote ties go to the label with the smallest summed neighbor distance,
    then to the lowest label index.

    Parameters
    ----------
    m : KnnModel
    x : FeatureVector

    Returns
    -------
    label : int
        The predicted label index.
    distances : :py:class:`~numpy.ndarray`
        Distances to the k neighbors, nearest first.

    Examples
    ---------
    >>> stored = Dataset('cgpf', [[0, 0], [0, 1], [5, 5]], [0, 0, 1], ['A', 'B'])
    >>> label, distances = knn_predict(fit_knn(stored, k=3), FeatureVector('cgpf', [0, 0.4]))
    >>> label
    0
    """
    values = _vector_values(m.method, m.dims, x)
    near_labels, near_distances, votes = _knn_votes(m, values)
    tied = np.flatnonzero(votes == votes.max())
    if len(tied) > 1:
        sums = np.array([near_distances[near_labels == c].sum() for c in tied])
        tied = tied[sums == sums.min()]
    return int(tied[0]), near_distances


def knn_scores(m, x):
    """Vote share of every label among the k neighbors."""
    values = _vector_values(m.method, m.dims, x)
    _, _, votes = _knn_votes(m, values)
    return votes / votes.sum()


def _check_problem(X, y, width):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0] or X.shape[1] != width:
        raise DimensionMismatch('Inconsistent shapes X{} y{} for {} weights.'
                                .format(X.shape, y.shape, width))
    if X.shape[0] == 0:
        raise EmptyDataset('Cost of an empty sample set is undefined.')
    return X, y


def svm_cost_grad(w, b, X, y, lam):
    """
    Regularized hinge loss and its subgradient.

    ``J = (1/m) sum_i max(0, 1 - y_i (w . x_i - b)) + lam |w|^2``. Samples
    with margin at least one contribute nothing to the subgradient.

    Parameters
    ----------
    w : array_like
        D weights.
    b : float
        Bias.
    X : array_like
        An (m, D) sample matrix.
    y : array_like
        Labels in {-1, +1}.
    lam : float
        Regularization strength.

    Returns
    -------
    cost : float
    grad_w : :py:class:`~numpy.ndarray`
    grad_b : float

    Examples
    ---------
    >>> cost, _, _ = svm_cost_grad([0, 0], 0, [[1, 2], [3, 4]], [1, -1], 0)
    >>> cost
    1.0
    """
    w = np.asarray(w, dtype=float)
    X, y = _check_problem(X, y, len(w))
    m = X.shape[0]
    margins = y * (X @ w - b)
    active = margins < 1
    cost = np.sum(np.where(active, 1 - margins, 0.0)) / m + lam * np.dot(w, w)
    grad_w = -(X[active].T @ y[active]) / m + 2 * lam * w
    grad_b = np.sum(y[active]) / m
    return float(cost), grad_w, float(grad_b)


def lr_cost_grad(w, X, y):
    """
    Cross-entropy of the logistic model and its gradient.

    ``J = -(1/m) sum_i [y_i ln h(x_i) + (1 - y_i) ln(1 - h(x_i))]`` with
    ``h = sigmoid(w . x)``; the last column of `X` is the constant one. The
    logarithms are evaluated as ``log(1 + exp(z)) - y z``.

    Examples
    ---------
    >>> cost, grad = lr_cost_grad([0, 0], [[1, 1], [2, 1]], [0, 1])
    >>> round(cost, 12)
    0.69314718056
    """
    w = np.asarray(w, dtype=float)
    X, y = _check_problem(X, y, len(w))
    m = X.shape[0]
    z = X @ w
    cost = np.sum(np.logaddexp(0.0, z) - y * z) / m
    grad = X.T @ (sigmoid(z) - y) / m
    return float(cost), grad


def softmax_cost_grad(W, X, y):
    """
    Multinomial cross-entropy of the softmax model and its gradient.

    Parameters
    ----------
    W : array_like
        A (C, D + 1) weight matrix; the last column multiplies the
        constant one in `X`.
    X : array_like
        An (m, D + 1) sample matrix.
    y : array_like
        Label indices in [0, C).

    Returns
    -------
    cost : float
    grad : :py:class:`~numpy.ndarray`
        Same shape as `W`.
    """
    W = np.asarray(W, dtype=float)
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=np.int64)
    if W.ndim != 2 or X.ndim != 2 or X.shape[1] != W.shape[1] or X.shape[0] != len(y):
        raise DimensionMismatch('Inconsistent shapes W{} X{} y{}.'
                                .format(W.shape, X.shape, y.shape))
    m = X.shape[0]
    scores = X @ W.T
    normalizer = logsumexp(scores, axis=1)
    cost = np.sum(normalizer - scores[np.arange(m), y]) / m
    residual = np.exp(scores - normalizer[:, None])
    residual[np.arange(m), y] -= 1.0
    return float(cost), residual.T @ X / m


@dataclass(frozen=True, eq=False)
class Standardizer:
    """Per-dimension centering and scaling fitted on training data."""
    mean: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'mean', _frozen(self.mean))
        object.__setattr__(self, 'scale', _frozen(self.scale))
        if np.any(self.scale <= 0):
            raise ValueError('Scales must be positive.')


def fit_standardizer(train):
    """
    Mean and population standard deviation of every feature dimension.

    Dimensions without variance get scale one.
    """
    features = train.features if isinstance(train, Dataset) else np.asarray(train, dtype=float)
    if features.shape[0] == 0:
        raise EmptyDataset('Cannot standardize an empty dataset.')
    mean = features.mean(axis=0)
    scale = features.std(axis=0)
    flat = scale <= 1e-12 * np.maximum(1.0, np.abs(mean))
    scale[flat] = 1.0
    return Standardizer(mean=mean, scale=scale)


def apply_standardizer(s, x):
    """Return ``(x - mean) / scale`` for a vector or a matrix of rows."""
    return (np.asarray(x, dtype=float) - s.mean) / s.scale


@dataclass(frozen=True)
class TrainConfig:
    """
    Settings of the gradient descent used for linear models.

    Attributes
    ----------
    learning_rate : float
        Fixed step size.
    iterations : int
        Number of full-batch steps.
    lam : float
        L2 strength of the SVM objective.
    seed : int
        Recorded with the model; training itself is deterministic.
    """
    learning_rate: float = 0.1
    iterations: int = 500
    lam: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError('Learning rate must be positive.')
        if self.iterations < 1:
            raise ValueError('At least one iteration is required.')
        if self.lam < 0:
            raise ValueError('Regularization must be non-negative.')


@dataclass(frozen=True, eq=False)
class LinearModel:
    """
    A trained linear classifier.

    Attributes
    ----------
    kind : str
        ``'svm'``, ``'lr'`` or ``'mlr'``.
    weights : :py:class:`~numpy.ndarray`
        A (C, D) matrix, one row per class.
    bias : :py:class:`~numpy.ndarray`
        C values. The SVM margin is ``w . x - b``; for LR and MLR the bias is
        the intercept, added to ``w . x``.
    lam : float
        Regularization the model was trained with.
    standardizer : Standardizer
        Applied to queries before scoring.
    labels : tuple
        Label names.
    method : str
        Feature method of the training data.
    feature_config : dict
        The extractor settings the features were produced with.
    """
    kind: str
    weights: np.ndarray
    bias: np.ndarray
    lam: float
    standardizer: Standardizer
    labels: tuple
    method: str
    feature_config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError('Unknown linear model kind {!r}.'.format(self.kind))
        weights = _frozen(self.weights)
        bias = _frozen(self.bias).ravel()
        if weights.ndim != 2 or not weights.shape[0] == len(bias) == len(self.labels):
            raise DimensionMismatch('Need one weight row and one bias per class.')
        if weights.shape[1] != len(self.standardizer.mean):
            raise DimensionMismatch('Weights and standardizer disagree on dimensions.')
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'bias', bias)
        object.__setattr__(self, 'labels', tuple(self.labels))

    @property
    def dims(self):
        return self.weights.shape[1]


def gradient_descent(cost_grad, start, learning_rate, iterations):
    """
    Fixed-step full-batch gradient descent.

    Parameters
    ----------
    cost_grad : function
        Maps parameters to (cost, gradient).
    start : array_like
        Initial parameters.
    learning_rate : float
    iterations : int

    Returns
    -------
    params : :py:class:`~numpy.ndarray`
        The final parameters.
    costs : :py:class:`~numpy.ndarray`
        The cost before every step and after the last one.

    Examples
    ---------
    >>> params, costs = gradient_descent(lambda p: (float(p @ p), 2 * p),
    ...                                  np.array([1.0]), 0.25, 3)
    >>> params.tolist(), costs.tolist()
    ([0.125], [1.0, 0.25, 0.0625, 0.015625])
    """
    params = np.array(start, dtype=float)
    costs = np.empty(iterations + 1)
    for step in range(iterations):
        costs[step], grad = cost_grad(params)
        params = params - learning_rate * grad
    costs[iterations] = cost_grad(params)[0]
    return params, costs


def _with_intercept(X):
    return np.hstack([X, np.ones((X.shape[0], 1))])


def train_linear(train, kind, cfg=None, trace=None, feature_config=None):
    """
    Train a linear classifier on standardized features.

    ``'svm'`` and ``'lr'`` train one binary problem per class (the class
    against the rest); ``'mlr'`` trains one joint softmax problem. Every
    problem starts from zero, so training is deterministic.

    Parameters
    ----------
    train : Dataset
        At least two samples of at least two classes.
    kind : str
        ``'svm'``, ``'lr'`` or ``'mlr'``.
    cfg : TrainConfig
        Optimizer settings, defaults when None.
    trace : list
        If given, the cost sequence of every problem is appended to it.
    feature_config : dict
        Extractor settings recorded in the model.

    Returns
    -------
    model : LinearModel
    """
    cfg = cfg or TrainConfig()
    if kind not in KINDS:
        raise ValueError('Unknown linear model kind {!r}.'.format(kind))
    if len(train) < 2:
        raise EmptyDataset('At least two training samples are required.')
    if len(train.present_classes()) < 2:
        raise SingleClass('Training data must contain at least two classes.')

    standardizer = fit_standardizer(train)
    X = apply_standardizer(standardizer, train.features)
    n_classes, dims = len(train.labels), train.dims
    targets = train.targets

    if kind == 'mlr':
        Xa = _with_intercept(X)
        params, costs = gradient_descent(
            lambda p: _flat(softmax_cost_grad(p.reshape(n_classes, dims + 1), Xa, targets)),
            np.zeros(n_classes * (dims + 1)), cfg.learning_rate, cfg.iterations)
        params = params.reshape(n_classes, dims + 1)
        weights, bias = params[:, :dims], params[:, dims]
        results = [(costs, None)]
    else:
        def fit_class(c):
            if kind == 'svm':
                y = np.where(targets == c, 1.0, -1.0)

                def cost_grad(p):
                    cost, grad_w, grad_b = svm_cost_grad(p[:dims], p[dims], X, y, cfg.lam)
                    return cost, np.append(grad_w, grad_b)
            else:
                y = (targets == c).astype(float)
                Xa = _with_intercept(X)

                def cost_grad(p):
                    return lr_cost_grad(p, Xa, y)
            params, costs = gradient_descent(cost_grad, np.zeros(dims + 1),
                                             cfg.learning_rate, cfg.iterations)
            return costs, params

        results = ordered_map(fit_class, range(n_classes))
        weights = np.vstack([params[:dims] for _, params in results])
        bias = np.array([params[dims] for _, params in results])

    for index, (costs, _) in enumerate(results):
        log.debug('%s problem %d: cost %.6g -> %.6g', kind, index, costs[0], costs[-1])
        if trace is not None:
            trace.append(costs)

    return LinearModel(kind=kind, weights=weights, bias=bias, lam=cfg.lam,
                       standardizer=standardizer, labels=train.labels,
                       method=train.method,
                       feature_config=dict(feature_config or {}))


def _flat(cost_and_grad):
    cost, grad = cost_and_grad
    return cost, grad.ravel()


def linear_scores(m, x):
    """
    Per-class scores of a query.

    SVM scores are the margins ``w_c . x' - b_c``, LR scores are
    ``sigmoid(w_c . x' + b_c)`` and MLR scores are softmax probabilities,
    where ``x'`` is the standardized query.
    """
    values = _vector_values(m.method, m.dims, x)
    standardized = apply_standardizer(m.standardizer, values)
    raw = m.weights @ standardized
    if m.kind == 'svm':
        return raw - m.bias
    if m.kind == 'lr':
        return sigmoid(raw + m.bias)
    return softmax(raw + m.bias)


def linear_predict(m, x):
    """
    Classify with a linear model.

    Returns
    -------
    label : int
        The index of the highest score, ties to the lowest index.
    scores : :py:class:`~numpy.ndarray`
        Per-class scores, see :py:func:`linear_scores`.
    """
    scores = linear_scores(m, x)
    return int(np.argmax(scores)), scores


def train_model(train, classifier, cfg=None, k=1, weighting='uniform',
                feature_config=None):
    """
    Train the classifier named `classifier` (``'knn'``, ``'svm'``, ``'lr'``
    or ``'mlr'``).
    """
    if classifier == 'knn':
        return fit_knn(train, k=k, weighting=weighting, feature_config=feature_config)
    return train_linear(train, classifier, cfg, feature_config=feature_config)


def predict(model, x):
    """
    Label index and per-class scores from any model.

    KNN scores are the vote shares of the labels among the neighbors.
    """
    if isinstance(model, KnnModel):
        label, _ = knn_predict(model, x)
        return label, knn_scores(model, x)
    return linear_predict(model, x)


def _header(model):
    meta = {'method': model.method, 'labels': list(model.labels),
            'dims': int(model.dims), 'feature_config': model.feature_config}
    if isinstance(model, KnnModel):
        meta.update(k=model.k, weighting=model.weighting, samples=len(model.stored))
    else:
        meta.update(lam=model.lam)
    return json.dumps(meta, sort_keys=True, separators=(',', ':')).encode('utf-8')


def save_model(m, path):
    """
    Write a model to `path`.

    The file holds the magic ``SIDM``, a version byte, a kind byte, a
    length-prefixed JSON header (labels, dimensions, extractor settings) and
    the little-endian float64 arrays of the model.
    """
    kind = 'knn' if isinstance(m, KnnModel) else m.kind
    header = _header(m)
    parts = [MAGIC, struct.pack('<BBI', FORMAT_VERSION, _KIND_TAGS[kind], len(header)), header]
    if kind == 'knn':
        parts.append(np.ascontiguousarray(m.stored.features, dtype='<f8').tobytes())
        parts.append(np.ascontiguousarray(m.stored.targets, dtype='<i8').tobytes())
    else:
        for array in (m.weights, m.bias, m.standardizer.mean, m.standardizer.scale):
            parts.append(np.ascontiguousarray(array, dtype='<f8').tobytes())
    with open(path, 'wb') as handle:
        handle.write(b''.join(parts))
    log.info('Wrote %s model to %s.', kind, path)
    return path


def load_model(path):
    """
    Read a model written by :py:func:`save_model`.

    Raises
    ------
    CorruptModel
        If the file is truncated or malformed.
    VersionMismatch
        If the file was written by an unknown format version.
    """
    with open(path, 'rb') as handle:
        data = handle.read()

    prefix = len(MAGIC) + struct.calcsize('<BBI')
    if len(data) < prefix or data[:len(MAGIC)] != MAGIC:
        raise CorruptModel('{} is not a model file.'.format(path))
    version, tag, header_len = struct.unpack_from('<BBI', data, len(MAGIC))
    if version != FORMAT_VERSION:
        raise VersionMismatch('Model format version {} is not supported (expected {}).'
                              .format(version, FORMAT_VERSION))
    kinds = {value: key for key, value in _KIND_TAGS.items()}
    if tag not in kinds:
        raise CorruptModel('Unknown model kind tag {}.'.format(tag))
    kind = kinds[tag]

    try:
        meta = json.loads(data[prefix:prefix + header_len].decode('utf-8'))
        n_labels, dims = len(meta['labels']), int(meta['dims'])
        body = memoryview(data)[prefix + header_len:]
        if kind == 'knn':
            n = int(meta['samples'])
            expected = 8 * n * dims + 8 * n
        else:
            expected = 8 * (n_labels * dims + n_labels + 2 * dims)
        if len(body) != expected:
            raise CorruptModel('{} has {} payload bytes, expected {}.'
                               .format(path, len(body), expected))

        def take(count, dtype='<f8'):
            nonlocal body
            array = np.frombuffer(body[:8 * count], dtype=dtype).astype(
                np.int64 if dtype == '<i8' else float)
            body = body[8 * count:]
            return array

        if kind == 'knn':
            stored = Dataset(meta['method'], take(n * dims).reshape(n, dims),
                             take(n, '<i8'), meta['labels'])
            return KnnModel(k=int(meta['k']), stored=stored, weighting=meta['weighting'],
                            feature_config=meta['feature_config'])
        weights = take(n_labels * dims).reshape(n_labels, dims)
        bias = take(n_labels)
        standardizer = Standardizer(mean=take(dims), scale=take(dims))
        return LinearModel(kind=kind, weights=weights, bias=bias, lam=float(meta['lam']),
                           standardizer=standardizer, labels=meta['labels'],
                           method=meta['method'], feature_config=meta['feature_config'])
    except CorruptModel:
        raise
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as error:
        raise CorruptModel('Cannot read model {}: {}'.format(path, error))


if __name__ == "__main__":
    import doctest
    doctest.testmod(verbose = True)
