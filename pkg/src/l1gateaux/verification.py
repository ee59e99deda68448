"""Independent checks of the closed-form derivatives.

The finite-difference oracle evaluates the global difference quotient of the
L1 norm in exact dyadic arithmetic. On an atomic space that quotient is
piecewise constant in ``t``: once ``|t|`` is below the smallest sign-stability
radius it equals the one-sided derivative exactly, so a plateau of the
quotient sequence is a certificate rather than an approximation.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._exact import QuotientKernel
from .errors import InputError
from .gateaux import classify, directional_derivatives
from .measure import MeasureSpace, SimpleFunction, finite_part, require_integrable

GENERATOR = "numpy.random.Generator(PCG64), SeedSequence(seed).spawn(shards)"
SHARD_SIZE = 10_000


@dataclass(frozen=True)
class FDSchedule:
    t0: float = 1e-2
    shrink: float = 0.5
    steps: int = 20

    def __post_init__(self):
        if not (self.t0 > 0 and math.isfinite(self.t0)):
            raise InputError(f"t0 must be positive, got {self.t0!r}")
        if not (0 < self.shrink < 1):
            raise InputError(f"shrink must lie in (0, 1), got {self.shrink!r}")
        if not (isinstance(self.steps, int) and self.steps >= 1):
            raise InputError(f"steps must be a positive integer, got {self.steps!r}")
        if not self.t0 * self.shrink ** self.steps > 1e-300:
            raise InputError("schedule underflows: t0 * shrink**steps must exceed 1e-300")

    def ts(self) -> list[float]:
        """Step sizes ``t0 * shrink**k`` for ``k = 0..steps``."""
        return [self.t0 * self.shrink ** k for k in range(self.steps + 1)]

    @property
    def floor(self) -> float:
        return self.t0 * self.shrink ** self.steps


@dataclass(frozen=True)
class FDReport:
    plus_estimate: float
    minus_estimate: float
    stabilized: bool
    stabilization_step: int | None
    closed_form: float | None
    closed_plus: float
    closed_minus: float
    max_deviation: float
    plus_quotients: tuple[float, ...] = ()
    minus_quotients: tuple[float, ...] = ()

    @property
    def kink(self) -> bool:
        return self.plus_estimate != self.minus_estimate


def _kernel(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction) -> QuotientKernel:
    require_integrable(space, f, h)
    w, fv, hv = finite_part(space, f, h)
    return QuotientKernel(w, fv, hv)


def fd_quotient(space: MeasureSpace, f: SimpleFunction, h: SimpleFunction, t: float) -> float:
    """``(||f + t h||_1 - ||f||_1) / t``, exact up to one final rounding."""
    if t == 0:
        raise InputError("t must be nonzero")
    return _kernel(space, f, h)(t)


def _plateau_start(qs: list[float], tol: float) -> int | None:
    last = qs[-1]
    k = len(qs)
    while k > 0 and abs(qs[k - 1] - last) <= tol:
        k -= 1
    return k if len(qs) - k >= 3 else None


def fd_directional(
    space: MeasureSpace,
    f: SimpleFunction,
    h: SimpleFunction,
    schedule: FDSchedule = FDSchedule(),
    tol: float = 1e-12,
) -> FDReport:
    kernel = _kernel(space, f, h)
    ts = schedule.ts()
    plus = [kernel(t) for t in ts]
    minus = [kernel(-t) for t in ts]
    sp, sm = _plateau_start(plus, tol), _plateau_start(minus, tol)
    stabilized = sp is not None and sm is not None
    lim = directional_derivatives(space, f, h)
    deviation = max(abs(plus[-1] - lim.plus), abs(minus[-1] - lim.minus))
    return FDReport(
        plus_estimate=plus[-1],
        minus_estimate=minus[-1],
        stabilized=stabilized,
        stabilization_step=max(sp, sm) if stabilized else None,
        closed_form=lim.plus if lim.plus == lim.minus else None,
        closed_plus=lim.plus,
        closed_minus=lim.minus,
        max_deviation=deviation,
        plus_quotients=tuple(plus),
        minus_quotients=tuple(minus),
    )


def _count_shard(args) -> int:
    weights, child, n, zero_coordinate = args
    rng = np.random.Generator(np.random.PCG64(child))
    space = MeasureSpace.from_weights(weights)
    bad = 0
    for row in rng.standard_normal((n, len(weights))).tolist():
        if zero_coordinate is not None:
            row[zero_coordinate] = 0.0
        if not classify(space, SimpleFunction(space, row)).differentiable:
            bad += 1
    return bad


def monte_carlo_null(
    dimension: int,
    weights=None,
    samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
    zero_coordinate: int | None = None,
) -> float:
    """Fraction of standard Gaussian draws at which the L1 norm is not differentiable.

    Samples are split into fixed shards of ``SHARD_SIZE`` draws, each with its
    own child seed, so the result does not depend on ``workers``.
    ``zero_coordinate`` zeroes one coordinate of every draw after sampling.
    """
    if not (isinstance(dimension, int) and dimension >= 1):
        raise InputError(f"dimension must be a positive integer, got {dimension!r}")
    if not (isinstance(samples, int) and samples >= 1):
        raise InputError(f"samples must be a positive integer, got {samples!r}")
    weights = [1.0] * dimension if weights is None else [float(w) for w in weights]
    if len(weights) != dimension:
        raise InputError(f"expected {dimension} weights, got {len(weights)}")
    if not all(0 < w < math.inf for w in weights):
        raise InputError("weights must be finite and positive")
    if zero_coordinate is not None and not 0 <= zero_coordinate < dimension:
        raise InputError(f"zero_coordinate out of range: {zero_coordinate}")

    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(weights, c, n, zero_coordinate) for c, n in zip(children, sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_shard, jobs))
    else:
        counts = [_count_shard(j) for j in jobs]
    return sum(counts) / samples
