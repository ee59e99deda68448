import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from l1gateaux import (
    INF,
    InputError,
    MeasureSpace,
    OneSided,
    PreconditionError,
    TwoSided,
    ae_equal,
    classify,
    derivative_functional,
    directional_derivatives,
    gateaux_derivative,
    in_class_g,
    l1_norm,
    pointwise_limit,
    pointwise_quotient,
    sign_stability_radius,
    stability_radius,
    witness_direction,
)

from conftest import random_g_member, random_space, random_values, spaces, functions_on


def space(*ws):
    return MeasureSpace.from_weights(list(ws), ids=list("abcdefgh"[: len(ws)]))


def brute_quotient(S, f, h, t):
    """Exact rational difference quotient of the norm; independent of the library."""
    t = Fraction(t)
    total = Fraction(0)
    for w, a, b in zip(S.weights, f.values, h.values):
        if w in (0.0, INF):
            continue
        a, b = Fraction(a), Fraction(b)
        total += Fraction(w) * (abs(a + t * b) - abs(a))
    return total / t


# -- pointwise --------------------------------------------------------------------

def test_pointwise_quotient_examples():
    assert pointwise_quotient(2, 3, 0.1) == pytest.approx(3.0, rel=1e-12)
    assert pointwise_quotient(0, 5, -0.2) == -5.0
    assert pointwise_quotient(-1.5, 0, 0.3) == 0.0
    with pytest.raises(InputError):
        pointwise_quotient(1, 1, 0)


def test_pointwise_limit_examples():
    assert pointwise_limit(2, 3) == TwoSided(3)
    for t in (1e-3, -1e-3):
        assert pointwise_quotient(2, 3, t) == pytest.approx(3.0, rel=1e-9)
    assert pointwise_limit(0, 5) == OneSided(5, -5)
    assert pointwise_limit(-4, 0) == TwoSided(0)


def test_one_sided_requires_distinct_values():
    with pytest.raises(ValueError):
        OneSided(1.0, 1.0)


def test_sign_stability_radius_examples():
    assert sign_stability_radius(3, -2) == 0.75
    assert sign_stability_radius(3, 0) == INF
    assert sign_stability_radius(-1, 4) == 0.125
    with pytest.raises(PreconditionError):
        sign_stability_radius(0, 1)


@given(
    st.floats(-1e3, 1e3).filter(lambda x: x != 0),
    st.floats(-1e3, 1e3),
    st.floats(1e-6, 1, exclude_max=True),
)
def test_quotient_frozen_below_radius(f_x, h_x, u):
    r = sign_stability_radius(f_x, h_x)
    t = u * min(r, 1.0)
    q = brute_quotient(MeasureSpace.counting(1), MeasureSpace.counting(1).function([f_x]),
                       MeasureSpace.counting(1).function([h_x]), t)
    lim = pointwise_limit(f_x, h_x)
    assert float(q) == lim.value


# -- derivative, one-sided derivatives -------------------------------------------

def test_gateaux_derivative_examples():
    S = space(1, 2, 0.5)
    f = S.function([3, -1, 2])
    assert gateaux_derivative(S, f, S.function([1, 1, -2])) == -2.0
    assert gateaux_derivative(S, f, f) == l1_norm(S, f)
    T = space(1, INF)
    assert gateaux_derivative(T, T.function([2, 0]), T.function([5, 0])) == 5.0


def test_gateaux_derivative_errors():
    S = space(1, 0.7)
    with pytest.raises(PreconditionError, match="directional_derivatives"):
        gateaux_derivative(S, S.function([2, 0]), S.function([0, 1]))
    T = space(1, INF)
    with pytest.raises(InputError):
        gateaux_derivative(T, T.function([2, 0]), T.function([5, 1]))


def test_directional_derivatives_examples():
    S = space(1, 0.7)
    assert directional_derivatives(S, S.function([2, 0]), S.function([0, 1])) == OneSided(0.7, -0.7)
    K = space(1, 1)
    f, h = K.function([1, 0]), K.function([2, 3])
    assert directional_derivatives(K, f, h) == OneSided(5, -1)
    assert float(brute_quotient(K, f, h, 0.1)) == 5.0
    assert float(brute_quotient(K, f, h, -0.1)) == -1.0
    G = space(1, 2, 0.5)
    g = G.function([3, -1, 2])
    d = G.function([0.25, 4, -1])
    assert directional_derivatives(G, g, d) == TwoSided(gateaux_derivative(G, g, d))


def test_directional_derivatives_against_brute_force(rng):
    for _ in range(300):
        S = random_space(rng, max_atoms=12)
        f = S.function(random_values(rng, len(S), 0.3))
        h = S.function(random_values(rng, len(S), 0.2))
        lim = directional_derivatives(S, f, h)
        t = min(stability_radius(S, f, h), 1.0) / 2
        assert lim.plus == float(brute_quotient(S, f, h, t))
        assert lim.minus == float(brute_quotient(S, f, h, -t))
        gap = sum(Fraction(w) * abs(Fraction(b)) for w, a, b in zip(S.weights, f.values, h.values)
                  if a == 0 and 0 < w < INF)
        assert abs(lim.gap - 2 * float(gap)) <= 1e-12
        assert lim.plus >= lim.minus


# -- classification and witness ---------------------------------------------------

def test_classify_examples():
    S = space(1, 2, 0.5)
    r = classify(S, S.function([3, -1, 2]))
    assert (r.differentiable, r.in_g, r.a1_holds, r.witness) == (True, True, True, None)

    K = space(1, 0.7)
    r = classify(K, K.function([2, 0]))
    assert not r.differentiable and r.a1_holds and not r.in_g
    assert r.witness.values == (0.0, 1.0)
    assert r.zero_measure == 0.7
    assert r.zero_atoms == ("b",)

    I = space(1, INF)
    r = classify(I, I.function([2, 0]))
    assert (r.differentiable, r.in_g, r.a1_holds) == (True, False, False)
    assert r.zero_measure == INF


def test_classify_rejects_non_integrable():
    I = space(1, INF)
    with pytest.raises(InputError):
        classify(I, I.function([2, 3]))


def test_witness_examples():
    K = space(1, 0.7)
    assert witness_direction(K, K.function([2, 0])).values == (0.0, 1.0)
    T = space(1, 5, 3)
    assert witness_direction(T, T.function([1, 0, 0])).values == (0.0, 1.0, 0.0)
    U = space(1, INF, 2)
    assert witness_direction(U, U.function([1, 0, 0])).values == (0.0, 0.0, 1.0)
    with pytest.raises(PreconditionError):
        witness_direction(K, K.function([2, 1]))


@given(spaces(max_atoms=6, allow_inf=True), st.data())
def test_report_invariants(S, data):
    f = data.draw(functions_on(S))
    r = classify(S, f)
    assert (r.witness is None) == r.differentiable
    if r.a1_holds:
        assert r.differentiable == r.in_g
    if r.witness is not None:
        z = [a for a, v in r.witness.as_dict().items() if v]
        assert set(z) <= set(r.zero_atoms)
        assert 0 < l1_norm(S, r.witness) < INF
        m = l1_norm(S, r.witness)
        assert directional_derivatives(S, f, r.witness) == OneSided(m, -m)


def test_exhaustive_dichotomy_small_spaces():
    for n in range(0, 4):
        for ws in itertools.product([0.0, 0.5, 1.0], repeat=n):
            S = MeasureSpace.from_weights(list(ws))
            for vs in itertools.product([-1.0, 0.0, 1.0], repeat=n):
                f = S.function(list(vs))
                assert classify(S, f).differentiable == in_class_g(S, f)


# -- derivative functional ------------------------------------------------------

def test_derivative_functional_examples():
    S = space(1, 2, 0.5)
    f = S.function([3, -1, 2])
    D = derivative_functional(S, f)
    assert D.density.values == (1.0, -1.0, 1.0)
    assert D.norm == 1.0
    assert abs(D.evaluate(D.density)) == l1_norm(S, D.density)
    E = MeasureSpace()
    assert derivative_functional(E, E.zeros()).norm == 0.0
    with pytest.raises(PreconditionError):
        derivative_functional(space(1, 1), space(1, 1).function([1, 0]))


def test_functional_properties(rng):
    for _ in range(300):
        S = random_space(rng)
        f = random_g_member(rng, S)
        h1 = S.function(random_values(rng, len(S), 0.2))
        h2 = S.function(random_values(rng, len(S), 0.2))
        a, b = rng.uniform(-1, 1, 2).tolist()
        D = derivative_functional(S, f)
        assert D.evaluate(h1) == gateaux_derivative(S, f, h1)
        lhs = gateaux_derivative(S, f, a * h1 + b * h2)
        rhs = a * gateaux_derivative(S, f, h1) + b * gateaux_derivative(S, f, h2)
        assert abs(lhs - rhs) <= 1e-12
        assert abs(D.evaluate(h1)) <= l1_norm(S, h1) + 1e-12
        c = float(rng.uniform(0.01, 100))
        assert derivative_functional(S, c * f).density == D.density
        assert derivative_functional(S, -c * f).density == -D.density


@given(spaces(), st.data())
def test_representative_independence(S, data):
    f = data.draw(functions_on(S))
    if not classify(S, f).differentiable:
        return
    g = S.function([v if w > 0 else data.draw(st.floats(-5, 5)) for w, v in zip(S.weights, f.values)])
    h = data.draw(functions_on(S))
    assert ae_equal(S, f, g)
    assert gateaux_derivative(S, f, h) == gateaux_derivative(S, g, h)
