"""Python front end for the dcsharp core."""

import json

from ._dcsharp import (
    ConstructionError,
    DomainError,
    HorizonError,
    UsageError,
    ValidationError,
    WeightSequence,
    __version__,
    parse_sequence,
    phi_log,
    selftest,
)
from . import _dcsharp


def _seq(s):
    return parse_sequence(s) if isinstance(s, str) else s


def log_convexity(M, K=200):
    return json.loads(_dcsharp._log_convexity(_seq(M), K))


def quasianalyticity(M, K=200):
    return json.loads(_dcsharp._quasianalyticity(_seq(M), K))


def compare(N, M, K=200):
    return json.loads(_dcsharp._compare(_seq(N), _seq(M), K))


def construct_flat(family="gevrey:1", E="sqrt", lambda_max=64):
    return json.loads(_dcsharp._gamma(family, E, lambda_max))


def lower_bound(gamma, lambdas):
    return json.loads(_dcsharp._lower_bound(json.dumps(gamma), list(lambdas)))


def sharpness(gamma, N="gevrey:1.5", lambdas=()):
    return json.loads(_dcsharp._sharpness(json.dumps(gamma), N, list(lambdas)))


def counterexample(pairs=8, K=5000):
    return json.loads(_dcsharp._counterexample(pairs, K))
