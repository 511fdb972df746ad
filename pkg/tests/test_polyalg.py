from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import partition_count
from yk.graded import compare_on, linear_combination
from yk.polyalg import (AlphabetError, OperatorFactory, PowerSumPoly, apply, build_operator,
                        inner, make_mon, monomials, operator_identity_check)
from yk.scalar import ONE, ZERO, ModelParams, h1, h2, psi0, sigma3, w

P = PowerSumPoly


def test_products():
    assert P.p(1) * P.p(1) == P({make_mon([(1, 1, 2)]): 1})
    a, b = P.p(1, 1, 2), P.p(1, 2, 2)
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    assert (a + b) ** 2 == P({make_mon([(1, 1, 2)]): 1, make_mon([(1, 1), (2, 1)]): 2,
                              make_mon([(2, 1, 2)]): 1}, 2)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        P.p(1) + P.p(1, 1, 2)
    with pytest.raises(AlphabetError):
        P.p(1, 2, 1)
    with pytest.raises(AlphabetError):
        inner(P.p(1), P.p(1, 1, 2))


def test_inner_examples():
    p1, p2 = P.p(1), P.p(2)
    assert inner(p1, p1) == psi0(1)
    assert inner(p1 * p1, p2) == ZERO
    assert inner(p2 * p2, p2 * p2) == 8 * psi0(1) ** 2
    assert inner(P.p(3, 2, 2), P.p(3, 2, 2)) == 3 * psi0(2)
    assert inner(P.p(3, 1, 2), P.p(3, 2, 2)) == ZERO


def _count(d, N):
    # coefficient of q^d in prod_n (1 - q^n)^(-N)
    total = 0
    for parts in product(range(d + 1), repeat=N):
        if sum(parts) == d:
            c = 1
            for k in parts:
                c *= partition_count(k)
            total += c
    return total


@pytest.mark.parametrize("d", range(7))
@pytest.mark.parametrize("N", [1, 2, 3])
def test_monomial_counts(d, N):
    ms = monomials(d, N)
    assert len(ms) == len(set(ms)) == _count(d, N)


@pytest.mark.parametrize("d", range(5))
def test_gram_is_diagonal(d):
    ms = monomials(d, 2)
    for a in ms:
        for b in ms:
            v = inner(P({a: 1}, 2), P({b: 1}, 2))
            assert (v != ZERO) == (a == b)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", range(6))
def test_boson_adjointness(n, d):
    F = OperatorFactory(1)
    for ma in monomials(d + n, 1):
        for mb in monomials(d, 1):
            lower = P(F._word((n,), {ma: ONE}))
            raise_ = P(F._word((-n,), {mb: ONE}))
            assert inner(lower, P({mb: 1})) == inner(P({ma: 1}), raise_)


def test_w0_examples():
    F = OperatorFactory(1)
    p1, p2 = P.p(1), P.p(2)
    assert apply(F["W0_2d"], p1 * p1) == p2 + 2 * w * p1 * p1
    y2 = p2 / (h1 - h2) - h2 * p1 * p1 / (h1 - h2)
    assert apply(F["W0_2d"], y2) == (h1 + 2 * w) * y2
    assert apply(F["E1_2d"], P.one()) == w * p1


def test_2d_names_need_one_alphabet():
    with pytest.raises(AlphabetError):
        OperatorFactory(2)["W0_2d"]
    with pytest.raises(KeyError):
        OperatorFactory(1)["nonsense"]
    with pytest.raises(ValueError):
        build_operator("W0_2d", 1, degree_cap=0)


@pytest.mark.parametrize("name", ["W0", "E1", "Eminus1", "psi2", "psi3", "e0", "e1", "f0", "f1"])
def test_3d_reduces_to_2d(name):
    F = OperatorFactory(1)
    rep = operator_identity_check(F[f"{name}_3d"], F[f"{name}_2d"], 5)
    assert rep["status"] == "pass", rep


def _identities(F, dim):
    N = F.N
    g = lambda n: F[f"{n}_{dim}"]
    s = psi0(N) * sigma3
    yield g("W0"), linear_combination([(ONE / 6, g("psi3")), ((w - s / 3) / 2, g("psi2"))])
    yield g("E1"), linear_combination([(1, g("e1")), (w, g("e0"))])
    yield g("Eminus1"), linear_combination([(-1, g("f1")), (-w, g("f0"))])
    yield g("psi3").commutator(g("e0")), linear_combination([(6, g("e1")), (2 * s, g("e0"))])


@pytest.mark.parametrize("N,dim", [(1, "2d"), (1, "3d"), (2, "3d")])
def test_operator_identities(N, dim):
    F = OperatorFactory(ModelParams(N=N))
    for lhs, rhs in _identities(F, dim):
        rep = operator_identity_check(lhs, rhs, 5)
        assert rep["status"] == "pass", rep


def test_identity_check_reports_failure():
    F = OperatorFactory(1)
    rep = operator_identity_check(F["e0_2d"], F["e1_2d"], 3)
    assert rep["status"] == "fail" and rep["witness"]


def test_eminus1_lowers_to_zero_on_vacuum():
    F = OperatorFactory(2)
    assert apply(F["Eminus1_3d"], P.one(2)) == P({}, 2)
    assert apply(F["f0_3d"], P.p(1, 2, 2)) == P.one(2) / (h1 * h2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_inner_symmetric_bilinear(da, db, data):
    ma = data.draw(st.sampled_from(monomials(da, 2)))
    mb = data.draw(st.sampled_from(monomials(db, 2)))
    mc = data.draw(st.sampled_from(monomials(da, 2)))
    k = data.draw(st.fractions(-3, 3))
    a, b, c = P({ma: 1}, 2), P({mb: h1}, 2), P({mc: w}, 2)
    assert inner(a, b) == inner(b, a)
    assert inner(a * Fraction(k) + c, a) == inner(a, a) * Fraction(k) + inner(c, a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.data())
def test_leibniz_for_derivations(d, data):
    # e1_3d is a first-order operator, so it obeys the product rule
    F = OperatorFactory(2)
    ma = data.draw(st.sampled_from(monomials(d, 2)))
    mb = data.draw(st.sampled_from(monomials(2, 2)))
    a, b = P({ma: 1}, 2), P({mb: 1}, 2)
    D = F["e1_3d"]
    assert apply(D, a * b) == apply(D, a) * b + a * apply(D, b)


def test_compare_on_symmetric():
    F = OperatorFactory(1)
    ok, _ = compare_on(F["W0_2d"], F["W0_3d"], range(5))
    assert ok
