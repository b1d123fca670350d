"""Differential invariants of space curves and their central and parallel projections."""

import json as _json

from . import _core
from ._core import (
    DEFAULT_ORDER,
    Curve,
    Projection,
    ProjinvError,
    Signature,
    builtin_curves,
    checks,
    compare,
    run_cli,
)

ProjinvError.kind = property(lambda self: self.args[0] if self.args else None)

__all__ = [
    "DEFAULT_ORDER",
    "Curve",
    "Projection",
    "ProjinvError",
    "Signature",
    "builtin_curves",
    "check",
    "checks",
    "classify",
    "compare",
    "fuzz",
    "invariants",
    "run_cli",
    "signature",
]


def _window(w):
    # "a:b:n" or (a, b, n)
    if isinstance(w, str):
        return w
    a, b, n = w
    return f"{float(a)!r}:{float(b)!r}:{int(n)}"


def _curve(c):
    return c if isinstance(c, Curve) else Curve.load(c)


def invariants(curve, group, window=(0.2, 1.5, 10), order=DEFAULT_ORDER):
    """Per-sample records {name, t, value, d1, d2, valid, reason}."""
    return _core.invariants(_curve(curve), group, _window(window), order)


def classify(curve, window=(0.2, 1.5, 10)):
    return _core.classify(_curve(curve), _window(window))


def check(curve, name, seed=42, window=(0.2, 1.5, 10), tolerance=None):
    """One identity check as a report dict; raises ProjinvError(AllPointsSingular) if nothing is regular."""
    return _json.loads(_core.check_json(_curve(curve), name, seed, _window(window), tolerance))


def fuzz(curve, quantity, group, trials=100, seed=42, tolerance=1e-7, window=(0.2, 1.5, 10)):
    return _json.loads(_core.fuzz_json(_curve(curve), quantity, group, trials, seed, tolerance, _window(window)))


def signature(curve, group, window=(0.2, 1.5, 200), order=DEFAULT_ORDER):
    return _core.signature(_curve(curve), group, _window(window), order)
