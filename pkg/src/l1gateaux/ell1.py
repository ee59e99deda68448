"""Sequences in l1(N) with a finite prefix and a geometric tail.

``x_n = prefix[n]`` for ``n < N`` and ``x_n = a * r**(n - N)`` for ``n >= N``,
with ``|r| < 1``. Norms are closed form, and directions have finite support,
so every quantity here is an exact finite computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from ._exact import exact_dot
from .errors import InputError, PreconditionError
from .measure import MeasureSpace, signum


@dataclass(frozen=True)
class GeoTailSequence:
    prefix: tuple[float, ...] = ()
    tail_coeff: float = 0.0
    tail_ratio: float = 0.0
    tail_start: int | None = None

    def __post_init__(self):
        prefix = tuple(float(v) for v in self.prefix)
        start = len(prefix) if self.tail_start is None else self.tail_start
        if start != len(prefix):
            raise InputError(f"tail_start must equal the prefix length ({len(prefix)}), got {start}")
        vals = prefix + (float(self.tail_coeff), float(self.tail_ratio))
        if not all(math.isfinite(v) for v in vals):
            raise InputError("sequence parameters must be finite")
        if not abs(self.tail_ratio) < 1:
            raise InputError(f"tail ratio must satisfy |r| < 1, got {self.tail_ratio!r}")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail_start", start)
        object.__setattr__(self, "tail_coeff", float(self.tail_coeff))
        object.__setattr__(self, "tail_ratio", float(self.tail_ratio))

    @classmethod
    def geometric(cls, a: float, r: float):
        """``x_n = a * r**n``."""
        return cls((), a, r)

    def __getitem__(self, n: int) -> float:
        if n < 0:
            raise IndexError(n)
        if n < self.tail_start:
            return self.prefix[n]
        k = n - self.tail_start
        if k == 0:
            return self.tail_coeff
        return self.tail_coeff * self.tail_ratio ** k

    def truncate(self, m: int) -> list[float]:
        return [self[n] for n in range(m)]


@dataclass(frozen=True)
class FiniteSupportDirection:
    entries: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, v in dict(self.entries).items():
            n = int(n)
            if n < 0:
                raise InputError(f"direction index must be nonnegative, got {n}")
            v = float(v)
            if not math.isfinite(v):
                raise InputError("direction values must be finite")
            clean[n] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def unit(cls, n: int, value: float = 1.0):
        return cls({n: value})

    @property
    def support(self) -> list[int]:
        return list(self.entries)

    @property
    def l1(self) -> float:
        return math.fsum(abs(v) for v in self.entries.values())

    def __getitem__(self, n: int) -> float:
        return self.entries.get(n, 0.0)


def seq_l1_norm(x: GeoTailSequence) -> float:
    return math.fsum(abs(v) for v in x.prefix) + abs(x.tail_coeff) / (1 - abs(x.tail_ratio))


def seq_in_g(x: GeoTailSequence) -> bool:
    return all(v != 0 for v in x.prefix) and x.tail_coeff != 0 and x.tail_ratio != 0


def first_zero(x: GeoTailSequence) -> int | None:
    for n, v in enumerate(x.prefix):
        if v == 0:
            return n
    N = x.tail_start
    if x.tail_coeff == 0:
        return N
    if x.tail_ratio == 0:
        return N + 1
    return None


def seq_gateaux(x: GeoTailSequence, h: FiniteSupportDirection) -> float:
    if not seq_in_g(x):
        raise PreconditionError(
            "the l1 norm is not Gateaux differentiable at a sequence with a zero coordinate; "
            "see seq_classify for the witness direction"
        )
    n = h.support
    return exact_dot([signum(x[i]) for i in n], [h[i] for i in n])


def seq_norm_increment(x: GeoTailSequence, h: FiniteSupportDirection) -> float:
    """``||x + h||_1 - ||x||_1``, summed over the support of ``h`` only."""
    return math.fsum(abs(x[n] + v) - abs(x[n]) for n, v in h.entries.items())


def seq_directional(x: GeoTailSequence, h: FiniteSupportDirection) -> tuple[float, float]:
    """One-sided derivatives ``(plus, minus)`` of the norm at ``x`` along ``h``."""
    base = [signum(x[n]) * v for n, v in h.entries.items() if x[n] != 0]
    gap = [abs(v) for n, v in h.entries.items() if x[n] == 0]
    ones = [1.0] * (len(base) + len(gap))
    return exact_dot(ones, base + gap), exact_dot(ones, base + [-g for g in gap])


@dataclass(frozen=True)
class SequenceReport:
    differentiable: bool
    first_zero: int | None
    witness: FiniteSupportDirection | None
    plus: float | None
    minus: float | None


def seq_classify(x: GeoTailSequence) -> SequenceReport:
    k = first_zero(x)
    if k is None:
        return SequenceReport(True, None, None, None, None)
    # counting measure: mu({k}) = 1, so the one-sided values are +-1
    e_k = FiniteSupportDirection.unit(k)
    plus, minus = seq_directional(x, e_k)
    return SequenceReport(False, k, e_k, plus, minus)


@dataclass(frozen=True)
class FrechetWitness:
    k: int
    index: int
    direction: FiniteSupportDirection
    direction_norm: float
    remainder_ratio: float


def frechet_failure_witness(x: GeoTailSequence, k: int) -> FrechetWitness:
    """Flip the sign of tail coordinate ``N + k``.

    The norm does not move, while the candidate derivative changes by
    ``-2|x_m|``; the remainder ratio is therefore 1 along directions of
    arbitrarily small norm.
    """
    if k < 1:
        raise InputError(f"k must be a positive integer, got {k}")
    if not seq_in_g(x):
        raise PreconditionError("no Gateaux derivative to test: the sequence has a zero coordinate")
    m = x.tail_start + k
    xm = x[m]
    if xm == 0:
        raise PreconditionError(f"coordinate {m} underflows to zero; choose a smaller k")
    h = FiniteSupportDirection.unit(m, -2 * xm)
    hn = h.l1
    r = seq_norm_increment(x, h) - seq_gateaux(x, h)
    return FrechetWitness(k, m, h, hn, abs(r) / hn)


def counting_truncation(x: GeoTailSequence, m: int):
    """The first ``m`` coordinates as a function on a counting-measure space."""
    space = MeasureSpace.counting(m)
    return space, space.function(x.truncate(m))
