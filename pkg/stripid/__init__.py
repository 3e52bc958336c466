#!/usr/bin/env python
# -*- coding: utf-8 -*-

__version__ = '0.3.0'
__author__ = 'stripid developers'

from stripid.imaging import load_image, save_image, canonicalize
from stripid.features import extract, default_config, FeatureVector
from stripid.features.cepstrum import CepstrumConfig, cepstral_features
from stripid.features.cgpf import CgpfConfig, HogConfig, cgpf_features
from stripid.classify import (Dataset, TrainConfig, fit_knn, knn_predict,
                              train_linear, linear_predict, predict,
                              save_model, load_model)
from stripid.evalx import (stratified_split, evaluate, train_and_evaluate, size_sweep,
                           separation_ratio)
from stripid.synth import (AugmentSpec, StripSpec, gen_class_specs, render_sample,
                           render_dataset, gen_dataset)
