"""Copositivity of symmetric tensors.

Thin layer over the compiled core: values come back as ``fractions.Fraction``
where they are exact, documents as plain dicts.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DEFAULT_SEED,
    ParseError,
    SizeLimitError,
    Tensor,
    certify,
    check,
    compare,
    screen,
)

__version__ = _core.__version__

__all__ = [
    "DEFAULT_SEED",
    "ParseError",
    "SizeLimitError",
    "Tensor",
    "certify",
    "check",
    "compare",
    "evaluate",
    "expand",
    "expand_bruteforce",
    "grid_min",
    "load",
    "sample_min",
    "screen",
    "verify",
]


def load(path):
    with open(path, encoding="utf-8") as f:
        return Tensor.from_json(f.read())


def evaluate(tensor, x):
    return Fraction(tensor.eval([str(Fraction(v)) for v in x]))


def expand(tensor, level, route="direct"):
    return {theta: Fraction(v) for theta, v in _core.expand(tensor, level, route).items()}


def expand_bruteforce(tensor, level):
    return {gamma: Fraction(v) for gamma, v in _core.expand_bruteforce(tensor, level).items()}


def grid_min(tensor, resolution=50):
    value, point = _core.grid_min(tensor, resolution)
    return Fraction(value), [Fraction(c) for c in point]


def sample_min(tensor, samples=10000, seed=DEFAULT_SEED, probes=()):
    return _core.sample_min(tensor, samples, seed, [list(map(float, p)) for p in probes])


def verify(certificate, tensor):
    """Re-check a certificate (dict or JSON text). Returns (ok, messages)."""
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate)
    return _core.verify(certificate, tensor)
