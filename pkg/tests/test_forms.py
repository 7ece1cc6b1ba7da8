"""Tests for the exact polynomial differential form algebra."""

import random

import pytest
import sympy

from feecsym.forms import PolyForm, alt_indices, monomial_exponents
from feecsym.rat import Q


def test_partition_of_unity_collapses():
    n = 3
    total = PolyForm.zero(n, 0)
    for i in range(n + 1):
        total = total + PolyForm.lam(n, i)
    assert total == PolyForm.one(n)


def test_differentials_sum_to_zero():
    n = 2
    total = PolyForm.zero(n, 1)
    for i in range(n + 1):
        total = total + PolyForm.dlam(n, i)
    assert total.is_zero()


def test_canonical_expansion_of_lambda0_square():
    # (1 - l1 - l2)^2 expanded
    f = PolyForm.monomial(2, (2, 0, 0), ()).canon()
    g = sympy.expand((1 - sympy.Symbol("l1") - sympy.Symbol("l2")) ** 2)
    terms = {}
    l1, l2 = sympy.symbols("l1 l2")
    for (e1, e2), c in g.as_poly(l1, l2).terms():
        terms[((0, e1, e2), ())] = Q(int(c))
    assert f == PolyForm(2, 0, terms)


def test_wedge_antisymmetry_and_square_zero():
    n = 3
    a = PolyForm.dlam(n, 1)
    b = PolyForm.dlam(n, 2)
    assert a.wedge(b) == -(b.wedge(a))
    assert a.wedge(a).is_zero()


def test_wedge_associative():
    n = 3
    a = PolyForm.lam(n, 0).wedge(PolyForm.dlam(n, 1))
    b = PolyForm.dlam(n, 2) + PolyForm.dlam(n, 3).scale(Q(2))
    c = PolyForm.dlam(n, 3)
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_volume_integral_against_sympy(n):
    """Monomial integrals match explicit iterated integration, with the
    volume normalized to one."""
    syms = sympy.symbols(f"x1:{n + 1}")
    rng = random.Random(7)
    for _ in range(5):
        exps = [rng.randrange(3) for _ in range(n + 1)]
        lam0 = 1 - sum(syms)
        integrand = lam0 ** exps[0]
        for s, e in zip(syms, exps[1:]):
            integrand *= s ** e
        expr = integrand
        for i in reversed(range(n)):
            upper = 1 - sum(syms[:i])
            expr = sympy.integrate(expr, (syms[i], 0, upper))
        scale = sympy.factorial(n)  # vol(T^n) normalized to 1
        expected = sympy.nsimplify(expr * scale)
        got = PolyForm.monomial(n, tuple(exps), ()).integrate_volume()
        assert sympy.Rational(int(got.numerator), int(got.denominator)) == expected


def test_inner_product_of_differentials():
    # metric g = I - J/(n+1) on the canonical differentials
    n = 2
    d1 = PolyForm.dlam(n, 1)
    d2 = PolyForm.dlam(n, 2)
    assert d1.inner(d1) == Q(2, 3)
    assert d1.inner(d2) == Q(-1, 3)
    d0 = PolyForm.dlam(n, 0)
    assert d0.inner(d0) == Q(2, 3)


def test_inner_product_is_permutation_invariant():
    n = 3
    rng = random.Random(21)
    a = PolyForm.lam(n, 0).wedge(PolyForm.dlam(n, 2))
    b = PolyForm.lam(n, 3).wedge(PolyForm.dlam(n, 1)) + \
        PolyForm.dlam(n, 0).scale(Q(1, 2))
    for _ in range(5):
        perm = list(range(n + 1))
        rng.shuffle(perm)
        assert a.pullback(perm).inner(b.pullback(perm)) == a.inner(b)


def test_trace_reindexes_to_face_coordinates():
    # l1*l2 traced to the edge {1, 2} becomes l0*l1 = (1 - l1)*l1 there
    f = PolyForm.monomial(2, (0, 1, 1), ())
    tr = f.trace((1, 2))
    expected = PolyForm.monomial(1, (1, 1), ())
    assert tr == expected.canon()


def test_trace_of_coefficient_17_form():
    f = PolyForm.monomial(2, (0, 1, 1), (), coeff=Q(17))
    tr = f.trace((1, 2))
    assert tr == PolyForm.monomial(1, (1, 1), (), coeff=Q(17)).canon()


def test_pullback_composition_law():
    n = 3
    rng = random.Random(3)
    f = PolyForm.monomial(n, (1, 0, 2, 0), (1, 3)) + \
        PolyForm.monomial(n, (0, 0, 0, 1), (0, 2), coeff=Q(-3, 5))
    for _ in range(10):
        p = list(range(n + 1))
        q = list(range(n + 1))
        rng.shuffle(p)
        rng.shuffle(q)
        qp = tuple(q[p[i]] for i in range(n + 1))
        assert f.pullback(qp) == f.pullback(p).pullback(q)


def test_contraction_basics():
    n = 2
    assert PolyForm.dlam(n, 1).contract() == PolyForm.lam(n, 1)
    # contracting twice is always zero
    w = PolyForm.dlam(n, 1).wedge(PolyForm.dlam(n, 2))
    assert w.contract().contract().is_zero()


def test_face_integrals_of_edge_differential():
    # integral of dl over an edge sees the endpoint difference
    n = 2
    f = PolyForm.dlam(n, 2)
    assert f.integrate_over_face((1, 2)) == Q(1)
    assert f.integrate_over_face((0, 1)) == Q(0)


def test_record_round_trip():
    f = PolyForm.monomial(3, (1, 0, 2, 0), (1, 3), coeff=Q(-7, 3)) + \
        PolyForm.monomial(3, (0, 1, 0, 0), (0, 2))
    g = PolyForm.from_record(f.to_record())
    assert g == f


def test_generators_counts():
    assert len(list(monomial_exponents(2, 4))) == 10
    # spanning index sets range over all n+1 differentials
    assert len(list(alt_indices(3, 2))) == 6
