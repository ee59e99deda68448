"""Gateaux differentiability of the L1 norm on atomic measure spaces.

The norm is differentiable at ``f`` exactly when ``f`` has no zero on an atom
of finite positive weight; there the derivative in direction ``h`` is the
integral of ``sign(f) * h``. At the remaining points the one-sided derivatives
split by twice the mass of ``|h|`` over the zero set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ._exact import exact_dot
from .errors import InputError, PreconditionError
from .measure import (
    INF,
    MeasureSpace,
    SimpleFunction,
    check_a1,
    finite_positive_subset,
    in_class_g,
    is_finite_positive,
    measure_of,
    require_integrable,
    signum,
    zero_set,
)


@dataclass(frozen=True)
class TwoSided:
    value: float

    @property
    def plus(self) -> float:
        return self.value

    @property
    def minus(self) -> float:
        return self.value

    @property
    def gap(self) -> float:
        return 0.0


@dataclass(frozen=True)
class OneSided:
    plus: float
    minus: float

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("equal one-sided values form a TwoSided limit")

    @property
    def gap(self) -> float:
        return self.plus - self.minus


DirectionalLimit = Union[TwoSided, OneSided]


def _limit(plus: float, minus: float) -> DirectionalLimit:
    if plus == minus:
        return TwoSided(plus)
    return OneSided(plus, minus)


# -- pointwise (single atom) --------------------------------------------------

def pointwise_quotient(f_x: float, h_x: float, t: float) -> float:
    if t == 0:
        raise InputError("t must be nonzero")
    return (abs(f_x + t * h_x) - abs(f_x)) / t


def pointwise_limit(f_x: float, h_x: float) -> DirectionalLimit:
    if h_x == 0:
        return TwoSided(0.0)
    if f_x != 0:
        return TwoSided(signum(f_x) * h_x)
    return OneSided(abs(h_x), -abs(h_x))


def sign_stability_radius(f_x: float, h_x: float) -> float:
    """Half-width of the ``t`` interval on which ``sign(f_x + t h_x)`` is frozen.

    Below this radius :func:`pointwise_quotient` equals ``sign(f_x) * h_x``.
    """
    if f_x == 0:
        raise PreconditionError("no sign-stability radius exists where f vanishes")
    if h_x == 0:
        return INF
    return abs(f_x) / (2 * abs(h_x))


def stability_radius(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction) -> float:
    """Smallest sign-stability radius over atoms where both ``f`` and ``h`` are nonzero."""
    radii = [
        sign_stability_radius(a, b)
        for w, a, b in zip(space.weights, f.values, h.values)
        if w > 0 and a != 0 and b != 0
    ]
    return min(radii, default=INF)


# -- the norm on a space ------------------------------------------------------

def _split(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction):
    """Weighted terms of the smooth part and of the kink part, atom by atom."""
    base_w, base_v, gap_w, gap_v = [], [], [], []
    for w, a, b in zip(space.weights, f.values, h.values):
        if not is_finite_positive(w) or b == 0:
            continue
        if a != 0:
            base_w.append(w)
            base_v.append(signum(a) * b)
        else:
            gap_w.append(w)
            gap_v.append(abs(b))
    return base_w, base_v, gap_w, gap_v


def _has_visible_zero(space: MeasureSpace, f: SimpleFunction) -> bool:
    return any(is_finite_positive(w) and v == 0 for w, v in zip(space.weights, f.values))


def gateaux_derivative(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction) -> float:
    require_integrable(space, f, h)
    if _has_visible_zero(space, f):
        raise PreconditionError(
            "the L1 norm is not Gateaux differentiable here (f vanishes on a set of "
            "finite positive measure); use directional_derivatives for one-sided values"
        )
    base_w, base_v, _, _ = _split(space, f, h)
    return exact_dot(base_w, base_v)


def directional_derivatives(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction) -> DirectionalLimit:
    require_integrable(space, f, h)
    base_w, base_v, gap_w, gap_v = _split(space, f, h)
    if not gap_w:
        return TwoSided(exact_dot(base_w, base_v))
    # each side rounded once from its exact value
    plus = exact_dot(base_w + gap_w, base_v + gap_v)
    minus = exact_dot(base_w + gap_w, base_v + [-v for v in gap_v])
    return _limit(plus, minus)


@dataclass(frozen=True)
class DifferentiabilityReport:
    differentiable: bool
    in_g: bool
    a1_holds: bool
    zero_atoms: tuple
    zero_measure: float
    witness: SimpleFunction | None = None


def classify(space: MeasureSpace, f: SimpleFunction) -> DifferentiabilityReport:
    require_integrable(space, f)
    zeros = zero_set(space, f)
    sub = finite_positive_subset(space, zeros)
    return DifferentiabilityReport(
        differentiable=sub is None,
        in_g=in_class_g(space, f),
        a1_holds=check_a1(space),
        zero_atoms=zeros,
        zero_measure=measure_of(space, zeros),
        witness=None if sub is None else space.indicator(sub),
    )


def witness_direction(space: MeasureSpace, f: SimpleFunction) -> SimpleFunction:
    """Indicator of a finite-positive-measure piece of the zero set of ``f``.

    Along this direction the difference quotient is ``sign(t) * mu(Z)``.
    """
    require_integrable(space, f)
    sub = finite_positive_subset(space, zero_set(space, f))
    if sub is None:
        raise PreconditionError("the L1 norm is Gateaux differentiable here; no witness exists")
    return space.indicator(sub)


# -- the derivative as a functional ------------------------------------------

@dataclass(frozen=True)
class DualElement:
    """Bounded linear functional ``h -> sum(w * density * h)`` on L1."""

    density: SimpleFunction

    @property
    def space(self) -> MeasureSpace:
        return self.density.space

    def evaluate(self, h: SimpleFunction) -> float:
        require_integrable(self.space, h)
        w, g, v = [], [], []
        for wi, gi, hi in zip(self.space.weights, self.density.values, h.values):
            if is_finite_positive(wi):
                w.append(wi)
                g.append(gi)
                v.append(hi)
        return exact_dot(w, g, v)

    __call__ = evaluate

    @property
    def norm(self) -> float:
        # essential sup over atoms of positive measure
        return max(
            (abs(g) for w, g in zip(self.space.weights, self.density.values) if w > 0),
            default=0.0,
        )


def derivative_functional(space: MeasureSpace, f: SimpleFunction) -> DualElement:
    require_integrable(space, f)
    if _has_visible_zero(space, f):
        raise PreconditionError("the L1 norm is not Gateaux differentiable here; no derivative functional")
    return DualElement(SimpleFunction(space, tuple(float(signum(v)) for v in f.values)))


__all__ = [
    "TwoSided",
    "OneSided",
    "DirectionalLimit",
    "DifferentiabilityReport",
    "DualElement",
    "pointwise_quotient",
    "pointwise_limit",
    "sign_stability_radius",
    "stability_radius",
    "gateaux_derivative",
    "directional_derivatives",
    "classify",
    "witness_direction",
    "derivative_functional",
]
