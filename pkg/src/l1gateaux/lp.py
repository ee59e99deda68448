"""Lp norms (1 < p < inf) on atomic spaces and their Frechet derivative.

For ``f != 0`` the derivative of ``||f||_p`` is the functional with density
``|f|^(p-1) sign(f) / ||f||_p^(p-1)``, which has unit norm in the dual Lq.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._exact import exact_dot
from .errors import InputError, PreconditionError
from .gateaux import DualElement
from .measure import MeasureSpace, SimpleFunction, finite_part, require_integrable, signum


def check_exponent(p) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InputError(f"exponent must be a number, got {p!r}") from None
    if not (1 < p < math.inf):
        raise InputError(f"exponent must satisfy 1 < p < inf, got {p!r}")
    return p


def conjugate_exponent(p: float) -> float:
    p = check_exponent(p)
    return p / (p - 1)


def _abs_pow(x: float, e: float) -> float:
    if x == 0:
        return 0.0
    return math.exp(e * math.log(abs(x)))


def lp_norm(space: MeasureSpace, f: SimpleFunction, p: float) -> float:
    p = check_exponent(p)
    require_integrable(space, f)
    w, v = finite_part(space, f)
    if p == 2:
        return math.sqrt(exact_dot(w, v, v))
    return math.fsum(wi * _abs_pow(x, p) for wi, x in zip(w, v)) ** (1 / p)


@dataclass(frozen=True)
class LpDualElement(DualElement):
    """Derivative functional of an Lp norm; its norm is the Lq norm of the density."""

    p: float = 2.0

    @property
    def q(self) -> float:
        return conjugate_exponent(self.p)

    @property
    def norm(self) -> float:
        w, g = finite_part(self.space, self.density)
        q = self.q
        return math.fsum(wi * _abs_pow(x, q) for wi, x in zip(w, g)) ** (1 / q)


def lp_frechet_derivative(space: MeasureSpace, f: SimpleFunction, p: float) -> LpDualElement:
    p = check_exponent(p)
    norm = lp_norm(space, f, p)
    if norm == 0:
        raise PreconditionError("the Lp norm has no derivative at f = 0 (a.e.)")
    density = tuple(signum(v) * _abs_pow(v / norm, p - 1) for v in f.values)
    return LpDualElement(SimpleFunction(space, density), p)


def lp_norm_increment(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction, p: float) -> float:
    """``N(f + h) - N(f)`` without the cancellation of subtracting two norms.

    Per atom ``|f + h|^p - |f|^p`` is formed as ``|f|^p expm1(p log1p(h / f))``
    while ``|h| < |f|``; the p-th root difference likewise goes through
    ``expm1``/``log1p``.
    """
    p = check_exponent(p)
    require_integrable(space, f, h)
    w, fv, hv = finite_part(space, f, h)
    base = math.fsum(wi * _abs_pow(x, p) for wi, x in zip(w, fv))
    deltas = []
    for wi, x, y in zip(w, fv, hv):
        if y == 0:
            continue
        if abs(y) < abs(x):
            d = _abs_pow(x, p) * math.expm1(p * math.log1p(y / x))
        else:
            d = _abs_pow(x + y, p) - _abs_pow(x, p)
        deltas.append(wi * d)
    delta = math.fsum(deltas)
    if base == 0:
        return delta ** (1 / p)
    rel = delta / base
    if abs(rel) > 0.5:
        # no cancellation to avoid; 1 + rel may itself be inaccurate
        new = math.fsum(wi * _abs_pow(x + y, p) for wi, x, y in zip(w, fv, hv))
        return new ** (1 / p) - base ** (1 / p)
    return base ** (1 / p) * math.expm1(math.log1p(rel) / p)


def lp_remainder_ratio(space: MeasureSpace, f: SimpleFunction, p: float, h: SimpleFunction) -> float:
    """``|N(f + h) - N(f) - N'(f) h| / N(h)`` for ``N = ||.||_p``."""
    hn = lp_norm(space, h, p)
    if hn == 0:
        raise InputError("direction must be nonzero")
    du = lp_frechet_derivative(space, f, p)
    r = lp_norm_increment(space, f, h, p) - du.evaluate(h)
    return abs(r) / hn


def remainder_table(space: MeasureSpace, f: SimpleFunction, p: float, h: SimpleFunction, steps: int = 20):
    """``[(k, N(h / 2^k), ratio)]`` for ``k = 0..steps``."""
    rows = []
    for k in range(steps + 1):
        hk = h * (0.5 ** k)
        rows.append((k, lp_norm(space, hk, p), lp_remainder_ratio(space, f, p, hk)))
    return rows
