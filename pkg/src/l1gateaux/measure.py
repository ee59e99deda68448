"""Finite atomic measure spaces and simple functions on them.

Weights are plain floats; ``math.inf`` is the infinite weight. A measure space
is an ordered tuple of ``(atom_id, weight)`` pairs, and a simple function is a
tuple of values aligned with that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from ._exact import exact_abs_dot
from .errors import InputError, PreconditionError

INF = math.inf


def check_weight(w) -> float:
    try:
        w = float(w)
    except (TypeError, ValueError):
        raise InputError(f"weight must be a number, got {w!r}") from None
    if math.isnan(w) or w < 0:
        raise InputError(f"weight must be nonnegative, got {w!r}")
    return w


def is_finite_positive(w: float) -> bool:
    return 0 < w < INF


@dataclass(frozen=True)
class MeasureSpace:
    atoms: tuple[tuple[Hashable, float], ...] = ()

    def __post_init__(self):
        atoms = tuple((a, check_weight(w)) for a, w in self.atoms)
        ids = [a for a, _ in atoms]
        if len(set(ids)) != len(ids):
            raise InputError("atom identifiers must be pairwise distinct")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(ids)})

    @classmethod
    def from_weights(cls, weights: Sequence[float], ids: Sequence[Hashable] | None = None):
        """Build a space from a weight list; ids default to ``0, 1, ...``."""
        if ids is None:
            ids = range(len(weights))
        return cls(tuple(zip(ids, weights)))

    @classmethod
    def counting(cls, n: int):
        return cls.from_weights([1.0] * n)

    def __len__(self):
        return len(self.atoms)

    @property
    def ids(self) -> tuple:
        return tuple(a for a, _ in self.atoms)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.atoms)

    def index(self, atom) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise InputError(f"unknown atom {atom!r}") from None

    def function(self, values: Sequence[float] | Mapping) -> "SimpleFunction":
        if isinstance(values, Mapping):
            return SimpleFunction.from_mapping(self, values)
        return SimpleFunction(self, tuple(values))

    def zeros(self) -> "SimpleFunction":
        return SimpleFunction(self, (0.0,) * len(self))

    def indicator(self, atoms: Iterable) -> "SimpleFunction":
        chosen = {self.index(a) for a in atoms}
        return SimpleFunction(self, tuple(1.0 if i in chosen else 0.0 for i in range(len(self))))

    def atom_set(self, atoms: Iterable) -> tuple:
        """Normalise a collection of ids to a tuple in space order."""
        idx = sorted({self.index(a) for a in atoms})
        return tuple(self.atoms[i][0] for i in idx)


@dataclass(frozen=True)
class SimpleFunction:
    space: MeasureSpace
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != len(self.space):
            raise InputError(
                f"function has {len(values)} values but the space has {len(self.space)} atoms"
            )
        if not all(math.isfinite(v) for v in values):
            raise InputError("function values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, space: MeasureSpace, mapping: Mapping):
        extra = set(mapping) - set(space.ids)
        if extra:
            raise InputError(f"unknown atom(s) {sorted(map(str, extra))}")
        missing = [a for a in space.ids if a not in mapping]
        if missing:
            raise InputError(f"no value given for atom(s) {[str(a) for a in missing]}")
        return cls(space, tuple(mapping[a] for a in space.ids))

    def __getitem__(self, atom) -> float:
        return self.values[self.space.index(atom)]

    def as_dict(self) -> dict:
        return dict(zip(self.space.ids, self.values))

    def _same_space(self, other: "SimpleFunction"):
        if not isinstance(other, SimpleFunction) or other.space != self.space:
            raise InputError("functions live on different measure spaces")

    def __add__(self, other):
        self._same_space(other)
        return SimpleFunction(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._same_space(other)
        return SimpleFunction(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, c):
        return SimpleFunction(self.space, tuple(c * v for v in self.values))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def snap(self, tol: float) -> "SimpleFunction":
        """Replace values with ``|v| <= tol`` by exact zero."""
        if tol < 0 or math.isnan(tol):
            raise InputError(f"zero tolerance must be nonnegative, got {tol!r}")
        return SimpleFunction(self.space, tuple(0.0 if abs(v) <= tol else v for v in self.values))


def signum(x: float) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def measure_of(space: MeasureSpace, atoms: Iterable) -> float:
    return math.fsum(space.atoms[space.index(a)][1] for a in atoms)


def check_a1(space: MeasureSpace) -> bool:
    """Every infinite-measure set has a subset of finite positive measure.

    For atomic spaces this fails exactly when some atom has infinite weight:
    the singleton of such an atom has no subset of finite positive measure.
    """
    return all(w < INF for w in space.weights)


def finite_positive_subset(space: MeasureSpace, atoms: Iterable) -> tuple | None:
    """Lowest-index atom of ``atoms`` with finite positive weight, as a 1-tuple."""
    for a in space.atom_set(atoms):
        if is_finite_positive(space.atoms[space.index(a)][1]):
            return (a,)
    return None


def is_integrable(space: MeasureSpace, f: SimpleFunction) -> bool:
    return all(v == 0 for w, v in zip(space.weights, f.values) if w == INF)


def _require_on(space: MeasureSpace, *fs: SimpleFunction):
    for f in fs:
        if f.space != space:
            raise InputError("function is not defined on the given measure space")


def require_integrable(space: MeasureSpace, *fs: SimpleFunction, error=InputError):
    _require_on(space, *fs)
    for f in fs:
        if not is_integrable(space, f):
            raise error("function is not integrable: nonzero value on an infinite-weight atom")


def finite_part(space: MeasureSpace, *fs: SimpleFunction):
    """Weights and values restricted to finite-weight atoms."""
    keep = [i for i, w in enumerate(space.weights) if w < INF]
    return ([space.weights[i] for i in keep],) + tuple([f.values[i] for i in keep] for f in fs)


def l1_norm(space: MeasureSpace, f: SimpleFunction) -> float:
    require_integrable(space, f, error=PreconditionError)
    w, v = finite_part(space, f)
    return exact_abs_dot(w, v)


def ae_equal(space: MeasureSpace, f: SimpleFunction, g: SimpleFunction) -> bool:
    _require_on(space, f, g)
    return all(a == b for w, a, b in zip(space.weights, f.values, g.values) if w > 0)


def in_class_g(space: MeasureSpace, f: SimpleFunction) -> bool:
    _require_on(space, f)
    return all(v != 0 for w, v in zip(space.weights, f.values) if w > 0)


def zero_set(space: MeasureSpace, f: SimpleFunction) -> tuple:
    _require_on(space, f)
    return tuple(a for (a, w), v in zip(space.atoms, f.values) if w > 0 and v == 0)
