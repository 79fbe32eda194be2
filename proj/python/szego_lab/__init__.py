"""Python bindings for the szego C++ library.

Symbols and dilation vectors are passed as dicts in the library's JSON formats.
"""

import json

from . import _core
from ._core import (
    CapacityError,
    ConfigError,
    DomainError,
    Error,
    InvalidArgument,
    coprime_residuals,
    factorize,
    log2_floor_series,
    smooth_numbers,
)

__all__ = [
    "CapacityError",
    "ConfigError",
    "DomainError",
    "Error",
    "InvalidArgument",
    "additive_matrix",
    "block_spectrum",
    "coprime_residuals",
    "factorize",
    "geo_mean_additive",
    "geo_mean_natural",
    "gram_matrix",
    "limit_measure_moment",
    "log2_floor_series",
    "log_mean",
    "multiplicative_matrix",
    "run_criterion",
    "run_experiment",
    "smooth_numbers",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def multiplicative_matrix(symbol, labels):
    return _core.multiplicative_matrix(_dump(symbol), list(labels))


def additive_matrix(symbol, labels):
    return _core.additive_matrix(_dump(symbol), [list(l) for l in labels])


def geo_mean_natural(symbol, n):
    return _core.geo_mean_natural(_dump(symbol), n)


def geo_mean_additive(symbol, labels):
    return _core.geo_mean_additive(_dump(symbol), [list(l) for l in labels])


def block_spectrum(symbol, n, k):
    return _core.block_spectrum(_dump(symbol), n, k)


def log_mean(symbol):
    return _core.log_mean(_dump(symbol))


def limit_measure_moment(symbol, f, k, cutoff):
    return _core.limit_measure_moment(_dump(symbol), f, k, cutoff)


def gram_matrix(vector, labels):
    return _core.gram_matrix(_dump(vector), list(labels))


def run_experiment(config, seed=0, max_dim=2048):
    return json.loads(_core.run_experiment(_dump(config), seed, max_dim))


def run_criterion(criterion, seed=0):
    return _core.run_criterion(criterion, seed)
