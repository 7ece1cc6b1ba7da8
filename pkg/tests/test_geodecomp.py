"""Tests for the filtration, complements, decomposition map, lifting, and
extension operators."""

import pytest

from feecsym.forms import PolyForm
from feecsym.geodecomp import (DecompositionMap, DirectSumError,
                               custom_complement, decomposition_map,
                               extension_operator, filtration, lift_basis,
                               orthogonal_complements)
from feecsym.rat import Q
from feecsym.spaces import build_space
from feecsym.symmetry import SymmetricGroup, verify_invariant_up_to_sign


def test_filtration_of_quadratic_scalars_on_triangle():
    V = build_space("P", 2, 0, 2)
    filt = filtration(V)
    dims = [filt[d].dim for d in range(4)]
    assert dims == [6, 3, 0, 0]
    # V_1 is spanned by the three edge bubbles
    bubbles = [PolyForm.monomial(2, e, ())
               for e in ((0, 1, 1), (1, 0, 1), (1, 1, 0))]
    for b in bubbles:
        assert filt[1].contains(b)


def test_orthogonal_complement_dimensions():
    V = build_space("P", 2, 0, 2)
    comps = orthogonal_complements(filtration(V))
    assert [len(c) for c in comps] == [3, 3, 0]


def test_decomposition_is_isomorphism_for_positive_degree():
    for family, r, k, n in [("P", 2, 0, 2), ("P", 1, 1, 2), ("Pminus", 2, 1, 2),
                            ("P", 1, 1, 3), ("Pminus", 2, 2, 3)]:
        D = decomposition_map(build_space(family, r, k, n))
        assert D.is_isomorphism(), (family, r, k, n)


def test_constant_forms_inject_but_do_not_surject():
    for k, n in [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]:
        D = DecompositionMap(build_space("P", 0, k, n),
                             orthogonal_complements(
                                 filtration(build_space("P", 0, k, n))))
        assert D.is_injective()
        assert not D.is_isomorphism(), (k, n)


def test_block_action_is_equivariant():
    V = build_space("P", 2, 0, 2)
    D = decomposition_map(V)
    group = SymmetricGroup(2)
    for p in group.elements:
        for b in V.basis:
            assert D.block_action(p, D.apply(b)) == D.apply(b.pullback(p))


def test_lift_produces_an_invariant_basis():
    V = build_space("P", 2, 0, 2)
    D = decomposition_map(V)
    vertex_unit = PolyForm.one(0)
    edge_bubble = PolyForm.monomial(1, (1, 1), ())
    lifted = lift_basis(D, {0: [vertex_unit], 1: [edge_bubble]})
    assert len(lifted) == 6
    ok, _ = verify_invariant_up_to_sign(lifted, SymmetricGroup(2))
    assert ok


def test_solve_inverts_apply():
    V = build_space("Pminus", 2, 1, 2)
    D = decomposition_map(V)
    f = V.basis[0] + V.basis[2].scale(Q(5, 7))
    assert D.solve(D.apply(f)) == f.canon()


def test_custom_complement_with_coefficient_17():
    """A non-orthogonal vertex complement still splits the space, and its
    extension operator leaves a nonzero trace on the opposite edge."""
    V = build_space("P", 2, 0, 2)
    vertex_forms = []
    for i in range(3):
        sq = [0, 0, 0]
        sq[i] = 2
        prod = [1, 1, 1]
        prod[i] = 0
        vertex_forms.append(PolyForm.monomial(2, tuple(sq), ()) +
                            PolyForm.monomial(2, tuple(prod), (), coeff=Q(17)))
    D = custom_complement(V, {0: vertex_forms})
    assert D.is_isomorphism()
    assert D.stability[0]
    E = extension_operator(D, (0,))
    ext = E.apply(PolyForm.one(0))
    expected = (PolyForm.monomial(2, (2, 0, 0), ()) +
                PolyForm.monomial(2, (0, 1, 1), (), coeff=Q(17)))
    assert ext == expected.canon()
    tr = ext.trace((1, 2))
    assert tr == PolyForm.monomial(1, (1, 1), (), coeff=Q(17)).canon()


def test_custom_complement_rejects_non_complements():
    V = build_space("P", 2, 0, 2)
    bad = [PolyForm.monomial(2, (0, 1, 1), ())] * 3  # inside V_1, not a complement
    with pytest.raises(DirectSumError):
        custom_complement(V, {0: bad})


def test_orthogonal_extension_vanishes_at_other_vertices():
    V = build_space("P", 2, 0, 2)
    D = decomposition_map(V)
    E = extension_operator(D, (0,))
    ext = E.apply(PolyForm.one(0))
    assert ext.trace((0,)) == PolyForm.one(0)
    for v in ((1,), (2,)):
        assert ext.trace(v).is_zero()
