"""Tests for the sphere-coordinate duality between full/trimmed spaces and
complementary-degree trace-free spaces."""

import pytest

from feecsym.duality import (DualityError, ExceptionalCaseError, SphereForm,
                             ambient_star, bubble, duality_map,
                             duality_target, phi_pullback, sphere_star,
                             verify_sign_equivariance)
from feecsym.duality import _normal_covector
from feecsym.forms import PolyForm
from feecsym.rat import Q
from feecsym.spaces import build_space


def test_sphere_relation_reduces_to_zero():
    n = 2
    terms = {}
    for i in range(n + 1):
        terms[(tuple(2 if j == i else 0 for j in range(n + 1)), ())] = Q(1)
    terms[((0,) * (n + 1), ())] = Q(-1)
    assert SphereForm(n, 0, terms).is_zero()


def test_normal_covector_is_killed_by_tangential_projection():
    for n in (1, 2, 3):
        assert _normal_covector(n).tangential().is_zero()


def test_tangential_projection_is_idempotent():
    b = phi_pullback(PolyForm.lam(2, 0).wedge(PolyForm.dlam(2, 1)))
    t = b.tangential()
    assert (t.tangential() - t).is_zero()


def test_ambient_star_is_an_involution_up_to_sign():
    n = 2  # forms live in R^{n+1}
    b = SphereForm(n, 1, {((0, 1, 0), (1,)): Q(1), ((2, 0, 0), (0,)): Q(3)},
                   reduced=True)
    twice = ambient_star(ambient_star(b))
    sign = (-1) ** (b.k * (n + 1 - b.k))
    assert (twice - b.scale(Q(sign))).is_zero()


def test_pullback_of_barycentric_coordinate():
    # l1 pulls back to u1^2
    s = phi_pullback(PolyForm.lam(2, 1).canon())
    assert s.terms == {((0, 2, 0), ()): Q(1)}
    # dl1 pulls back to 2 u1 du1
    s = phi_pullback(PolyForm.dlam(2, 1))
    assert s.terms == {((0, 1, 0), (1,)): Q(2)}


def test_sphere_star_of_constant_function_is_tangential_volume():
    one = phi_pullback(PolyForm.one(2))
    star = sphere_star(one)
    assert star.k == 2
    assert not star.is_zero()
    # top-degree tangential forms are fixed by the projection
    assert (star.tangential() - star).is_zero()


def test_duality_targets():
    assert duality_target("P", 2, 1, 3) == ("Pminus", 4, 2)
    assert duality_target("Pminus", 2, 1, 3) == ("P", 3, 2)


def test_exceptional_case_is_rejected():
    with pytest.raises(ExceptionalCaseError):
        duality_map(build_space("Pminus", 0, 0, 2))


def test_trace_free_input_is_rejected():
    with pytest.raises(DualityError):
        duality_map(build_space("P", 2, 1, 2, trace_free=True))


@pytest.mark.parametrize("family,r,k,n", [
    ("P", 0, 0, 1), ("P", 1, 0, 2), ("P", 0, 1, 2), ("Pminus", 1, 1, 2),
    ("P", 1, 1, 3), ("Pminus", 2, 2, 3), ("Pminus", 1, 0, 3),
])
def test_duality_is_a_sign_equivariant_bijection(family, r, k, n):
    D = duality_map(build_space(family, r, k, n))
    assert D.is_bijection()
    assert verify_sign_equivariance(D)
    assert D.target.trace_free


def test_apply_lands_in_target_and_matches_matrix():
    V = build_space("P", 0, 1, 2)
    D = duality_map(V)
    img = D.apply(V.basis[0])
    assert D.target.contains(img)
    assert img == D.images[0]


def test_bubble_has_full_support():
    b = bubble(3)
    assert list(b.terms) == [((1, 1, 1, 1), ())]
