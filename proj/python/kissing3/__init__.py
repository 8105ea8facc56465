"""Exact verification tools for the kissing number bound in dimension 3."""

from fractions import Fraction
import json

from . import _core

__all__ = ["paper_f", "evaluate", "gegenbauer_values", "verify", "classical_bound", "positivity_check", "run_cli"]


def _frac(text):
    return Fraction(text)


def _pairs(coeffs):
    return [(int(k), str(Fraction(c))) for k, c in dict(coeffs).items()]


def paper_f():
    """Published expansion as {k: Fraction}."""
    return {k: _frac(c) for k, c in _core.paper_coefficients()}


def evaluate(t, coeffs=None, dim=3):
    coeffs = paper_f() if coeffs is None else coeffs
    return _frac(_core.evaluate(_pairs(coeffs), dim, str(Fraction(t))))


def gegenbauer_values(dim, kmax, t):
    return [_frac(v) for v in _core.gegenbauer_values(dim, kmax, str(Fraction(t)))]


def verify(coeffs=None, threshold=Fraction(123, 100)):
    """Certificate as a dict."""
    coeffs = paper_f() if coeffs is None else coeffs
    return json.loads(_core.verify(_pairs(coeffs), str(Fraction(threshold))))


def classical_bound(dim, degree, cos_theta=Fraction(1, 2), grid=512, rounds=30):
    """(bound, coeffs) or None when the LP has no certified solution."""
    r = _core.classical_bound(dim, str(Fraction(cos_theta)), degree, grid, rounds)
    if r is None:
        return None
    bound, coeffs = r
    return _frac(bound), {k: _frac(c) for k, c in coeffs}


def positivity_check(trials, seed=7, workers=1):
    return _core.positivity_check(trials, seed, workers)


def run_cli(*args):
    return _core.run_cli([str(a) for a in args])
