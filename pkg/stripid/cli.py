#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The ``stripid`` command line tool.

Subcommands synthesize a dataset, extract feature files, train and apply
models, and run the evaluation experiments. Exit codes are 0 on success,
2 on usage errors, 3 on I/O and decoding errors, 4 when the data cannot
support the request and 5 when a model and its input disagree.
"""

import argparse
import csv
import json
import logging
import sys
import numpy as np
from stripid import __version__
from stripid.classify import (Dataset, TrainConfig, CLASSIFIERS, WEIGHTINGS,
                              train_model, predict, save_model, load_model)
from stripid.errors import (StripIdError, UnsupportedFormat, CorruptImage,
                            CorruptModel, CorruptFeatureFile, VersionMismatch,
                            EmptyDataset, SingleClass, ClassTooSmall, TooFewSamples,
                            MethodMismatch, DimensionMismatch, LengthMismatch,
                            SizeTooLarge)
from stripid.evalx import (train_and_evaluate, size_sweep, accuracy_grid,
                           format_grid, format_report, report_to_dict)
from stripid.features import extract, config_from_dict, default_config
from stripid.features.cepstrum import CepstrumConfig
from stripid.features.cgpf import CgpfConfig, COLOR_VALUES, SHAPE_VALUES
from stripid.features.vector import METHODS
from stripid.imaging import load_image
from stripid.synth import AugmentSpec, gen_dataset, read_manifest
from stripid.utils import configure_logging, ordered_map

log = logging.getLogger(__name__)

FEATURE_FILE_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4
EXIT_MISMATCH = 5


def exit_code(error):
    """
    The exit code reporting `error`.

    Examples
    ---------
    >>> exit_code(SingleClass('One class.'))
    4
    >>> exit_code(FileNotFoundError('missing'))
    3
    """
    if isinstance(error, SizeTooLarge):
        return EXIT_USAGE
    if isinstance(error, (OSError, UnsupportedFormat, CorruptImage, CorruptModel,
                          CorruptFeatureFile, VersionMismatch)):
        return EXIT_IO
    if isinstance(error, (EmptyDataset, SingleClass, ClassTooSmall, TooFewSamples)):
        return EXIT_DATA
    if isinstance(error, (MethodMismatch, DimensionMismatch, LengthMismatch)):
        return EXIT_MISMATCH
    return EXIT_USAGE


# Feature files

def _format_value(value):
    return '{:.17g}'.format(value)


def feature_header(method, dims, bins):
    """
    The comment line opening a feature file.

    Examples
    ---------
    >>> feature_header('cgpf', 31, 0)
    '# method=cgpf,dims=31,bins=0,version=1'
    """
    return '# method={},dims={},bins={},version={}'.format(method, dims, bins,
                                                          FEATURE_FILE_VERSION)


def write_feature_file(path, method, rows, bins=0):
    """
    Write ``(label, FeatureVector)`` rows as a feature file.

    The first line is :py:func:`feature_header`, the second the CSV header
    ``label,f0,...``; values carry 17 significant digits.
    """
    rows = list(rows)
    if not rows:
        raise EmptyDataset('No feature rows to write.')
    dims = len(rows[0][1])
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        handle.write(feature_header(method, dims, bins) + '\n')
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['label'] + ['f{}'.format(i) for i in range(dims)])
        for label, vector in rows:
            if vector.method != method or len(vector) != dims:
                raise DimensionMismatch('Row {!r} does not match the file layout.'.format(label))
            writer.writerow([label] + [_format_value(v) for v in vector.values])
    return path


def _parse_header(line, path):
    if not line.startswith('#'):
        raise CorruptFeatureFile('{} lacks the feature header line.'.format(path))
    try:
        fields = dict(item.split('=', 1) for item in line[1:].strip().split(','))
        header = {'method': fields['method'], 'dims': int(fields['dims']),
                  'bins': int(fields['bins']), 'version': int(fields['version'])}
    except (KeyError, ValueError):
        raise CorruptFeatureFile('{} has a malformed header {!r}.'.format(path, line.strip()))
    if header['version'] != FEATURE_FILE_VERSION:
        raise VersionMismatch('{} has feature file version {}.'.format(path, header['version']))
    if header['method'] not in METHODS:
        raise CorruptFeatureFile('{} names unknown method {!r}.'.format(path, header['method']))
    return header


def read_feature_file(path):
    """
    Read a feature file.

    Returns
    -------
    header : dict
        ``method``, ``dims``, ``bins`` and ``version``.
    data : Dataset
        The rows, labels sorted by name.
    """
    with open(path, newline='', encoding='utf-8') as handle:
        header = _parse_header(handle.readline(), path)
        reader = csv.reader(handle)
        columns = next(reader, None)
        dims = header['dims']
        if columns is None or len(columns) != dims + 1 or columns[0] != 'label':
            raise CorruptFeatureFile('{} has a malformed column header.'.format(path))
        names, values = [], []
        for number, row in enumerate(reader, start=3):
            if not row:
                continue
            if len(row) != dims + 1:
                raise CorruptFeatureFile('{} line {} has {} fields, expected {}.'
                                         .format(path, number, len(row), dims + 1))
            try:
                values.append([float(v) for v in row[1:]])
            except ValueError:
                raise CorruptFeatureFile('{} line {} holds a non-number.'.format(path, number))
            names.append(row[0])

    if not names:
        raise EmptyDataset('{} holds no rows.'.format(path))
    labels = sorted(set(names))
    index = {label: i for i, label in enumerate(labels)}
    features = np.array(values, dtype=float)
    if not np.all(np.isfinite(features)):
        raise CorruptFeatureFile('{} holds non-finite values.'.format(path))
    data = Dataset(header['method'], features, [index[n] for n in names], labels)
    return header, data


def feature_config_for(header):
    """
    Rebuild the extractor settings described by a feature file header.
    """
    method, dims = header['method'], header['dims']
    if method == 'cepstrum':
        return CepstrumConfig(bin_count=header['bins'], coeff_count=dims)
    top, extra = divmod(dims - COLOR_VALUES, SHAPE_VALUES)
    if extra or top < 1:
        raise CorruptFeatureFile('{} CGPF values do not form whole region slots.'.format(dims))
    return CgpfConfig(top_regions=top)


def _extractor_config(method, bins=None, coeffs=None):
    if method == 'cepstrum':
        defaults = CepstrumConfig()
        return CepstrumConfig(
            bin_count=defaults.bin_count if bins is None else bins,
            coeff_count=defaults.coeff_count if coeffs is None else coeffs)
    return default_config(method)


def extract_manifest(manifest, method, cfg):
    """Extract the features of every image of a manifest, in manifest order."""
    entries = read_manifest(manifest)
    if not entries:
        raise EmptyDataset('Manifest {} lists no images.'.format(manifest))

    def run(entry):
        path, label = entry
        return label, extract(load_image(path), method, cfg)

    rows = ordered_map(run, entries)
    log.info('Extracted %d %s feature vectors.', len(rows), method)
    return rows


def _rows_to_dataset(rows):
    labels = sorted({label for label, _ in rows})
    index = {label: i for i, label in enumerate(labels)}
    return Dataset.from_samples([(vector, index[label]) for label, vector in rows], labels)


def _train_config(args):
    return TrainConfig(learning_rate=args.lr, iterations=args.iters,
                       lam=args.lam, seed=args.seed)


def _models(text):
    names = [name.strip() for name in text.split(',') if name.strip()]
    unknown = [name for name in names if name not in CLASSIFIERS]
    if not names or unknown:
        raise argparse.ArgumentTypeError('models must be among {}'.format(', '.join(CLASSIFIERS)))
    return names


def _sizes(text):
    try:
        sizes = [int(s) for s in text.split(',') if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('sizes must be comma separated integers')
    if not sizes:
        raise argparse.ArgumentTypeError('at least one size is required')
    return sizes


def _fraction(text):
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError('split must be in (0, 1)')
    return value


# Commands

def cmd_synth(args):
    """Generate a synthetic dataset and its manifest."""
    twins = []
    if args.hue_twin_of is not None:
        if not 1 <= args.hue_twin_of <= args.classes:
            raise ValueError('--hue-twin-of must name a class in 1..{}.'.format(args.classes))
        twins.append((args.hue_twin_of - 1, args.offset))
    aug = AugmentSpec.none() if args.no_augment else AugmentSpec()
    manifest = gen_dataset(args.classes, args.per_class, aug, args.seed, args.out, twins)
    print(manifest)
    return EXIT_OK


def cmd_extract(args):
    """Write the feature file of every image of a manifest."""
    cfg = _extractor_config(args.method, args.bins, args.coeffs)
    rows = extract_manifest(args.manifest, args.method, cfg)
    bins = cfg.bin_count if args.method == 'cepstrum' else 0
    write_feature_file(args.out, args.method, rows, bins)
    return EXIT_OK


def cmd_train(args):
    """Train a model on a whole feature file."""
    header, data = read_feature_file(args.features)
    if len(data.present_classes()) < 2:
        raise SingleClass('{} holds a single class.'.format(args.features))
    model = train_model(data, args.model, _train_config(args), k=args.k,
                        weighting=args.weighting,
                        feature_config=feature_config_for(header).to_dict())
    save_model(model, args.out)
    return EXIT_OK


def cmd_predict(args):
    """Classify one image, printing every label with its score."""
    model = load_model(args.model)
    cfg = config_from_dict(model.method, model.feature_config)
    features = extract(load_image(args.image), model.method, cfg)
    _, scores = predict(model, features)
    # Stable sort keeps label order among equal scores
    for index in np.argsort(-scores, kind='stable'):
        print('{}\t{:.6f}'.format(model.labels[index], scores[index]))
    return EXIT_OK


def cmd_eval(args):
    """Split a feature file, train, test and print the report."""
    _, data = read_feature_file(args.features)
    report = train_and_evaluate(data, args.model, args.split, args.seed,
                                _train_config(args), k=args.k, weighting=args.weighting)
    if args.json:
        print(json.dumps(report_to_dict(report), sort_keys=True))
    else:
        sys.stdout.write(format_report(report))
    return EXIT_OK


def cmd_sweep(args):
    """Write accuracy against per-class sample count as CSV."""
    cfg = _extractor_config(args.method, args.bins)
    data = _rows_to_dataset(extract_manifest(args.manifest, args.method, cfg))
    curve = size_sweep(data, args.sizes, args.models, seed=args.seed,
                       train_fraction=args.split, cfg=_train_config(args), k=args.k)
    with open(args.out, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['per_class_size', 'total_size', 'model', 'accuracy'])
        for per_class, total, name, accuracy in curve.rows():
            writer.writerow([per_class, total, name, '{:.6f}'.format(accuracy)])
    return EXIT_OK


def cmd_grid(args):
    """Print the accuracy of every model on every feature file."""
    feature_sets = {}
    for path in args.features:
        header, data = read_feature_file(path)
        if header['method'] in feature_sets:
            raise MethodMismatch('Two feature files use method {!r}.'.format(header['method']))
        feature_sets[header['method']] = data
    grid = accuracy_grid(feature_sets, args.models, args.split, args.seed,
                         _train_config(args), k=args.k)
    sys.stdout.write(format_grid(grid))
    return EXIT_OK


def _add_training_flags(parser, seed=True):
    parser.add_argument('--k', type=int, default=1, help='KNN neighbor count')
    parser.add_argument('--weighting', choices=WEIGHTINGS, default='uniform',
                        help='KNN vote weighting')
    parser.add_argument('--lambda', dest='lam', type=float, default=1e-3,
                        help='SVM regularization strength')
    parser.add_argument('--lr', type=float, default=0.1, help='gradient descent step')
    parser.add_argument('--iters', type=int, default=500, help='gradient descent steps')
    if seed:
        parser.add_argument('--seed', type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog='stripid',
                                     description='Medicine strip identification toolkit.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='more log output, repeat for debug')
    parser.add_argument('-q', '--quiet', action='count', default=0,
                        help='only log errors')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('synth', help='generate a synthetic dataset')
    p.add_argument('--classes', type=int, required=True)
    p.add_argument('--per-class', type=int, required=True)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out', required=True, help='output directory')
    p.add_argument('--hue-twin-of', type=int, help='add a hue-rotated copy of class N (1-based)')
    p.add_argument('--offset', type=float, default=20.0, help='hue offset in degrees')
    p.add_argument('--no-augment', action='store_true', help='render without perturbations')
    p.set_defaults(func=cmd_synth)

    p = commands.add_parser('extract', help='extract features of a manifest')
    p.add_argument('--method', choices=METHODS, required=True)
    p.add_argument('--manifest', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--bins', type=int, help='cepstral bin count')
    p.add_argument('--coeffs', type=int, help='cepstral coefficient count')
    p.set_defaults(func=cmd_extract)

    p = commands.add_parser('train', help='train a model on a feature file')
    p.add_argument('--model', choices=CLASSIFIERS, required=True)
    p.add_argument('--features', required=True)
    p.add_argument('--out', required=True)
    _add_training_flags(p)
    p.set_defaults(func=cmd_train)

    p = commands.add_parser('predict', help='classify one image')
    p.add_argument('--model', required=True)
    p.add_argument('--image', required=True)
    p.set_defaults(func=cmd_predict)

    p = commands.add_parser('eval', help='split, train and test one model')
    p.add_argument('--features', required=True)
    p.add_argument('--model', choices=CLASSIFIERS, required=True)
    p.add_argument('--split', type=_fraction, default=0.8)
    p.add_argument('--json', action='store_true', help='machine-readable output')
    _add_training_flags(p)
    p.set_defaults(func=cmd_eval)

    p = commands.add_parser('sweep', help='accuracy against data size')
    p.add_argument('--manifest', required=True)
    p.add_argument('--method', choices=METHODS, default='cepstrum')
    p.add_argument('--bins', type=int)
    p.add_argument('--sizes', type=_sizes, default=[5, 10, 20, 40])
    p.add_argument('--models', type=_models, default=['knn', 'svm', 'lr'])
    p.add_argument('--split', type=_fraction, default=0.8)
    p.add_argument('--out', required=True)
    _add_training_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = commands.add_parser('grid', help='accuracy of every model on every feature file')
    p.add_argument('--features', action='append', required=True)
    p.add_argument('--models', type=_models, default=['knn', 'svm', 'lr'])
    p.add_argument('--split', type=_fraction, default=0.8)
    _add_training_flags(p)
    p.set_defaults(func=cmd_grid)
    return parser


def main(argv=None):
    """
    Run the tool on `argv` and return the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code
    configure_logging(args.verbose - 2 * args.quiet)

    try:
        return args.func(args)
    except (StripIdError, OSError, ValueError) as error:
        print('stripid: error: {}'.format(error), file=sys.stderr)
        return exit_code(error)


def run():
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
