"""Tests for the invariant-basis construction routes and verdicts."""

import itertools

import pytest

from feecsym.bases import (ConstructionError, constant_basis_T3,
                           construct_invariant_basis,
                           geometric_decomposability, monomial_basis_scalar,
                           tensor_basis_T3, volume_basis, whitney_basis)
from feecsym.rat import Q
from feecsym.spaces import build_space
from feecsym.symmetry import SymmetricGroup, verify_invariant_up_to_sign


def test_whitney_face_integrals_are_kronecker():
    for n in range(1, 4):
        for k in range(0, n + 1):
            basis = whitney_basis(n, k)
            faces = list(itertools.combinations(range(n + 1), k + 1))
            assert len(basis) == len(faces)
            for i, phi in enumerate(basis):
                for j, face in enumerate(faces):
                    expected = Q(1) if i == j else Q(0)
                    assert phi.integrate_over_face(face) == expected, \
                        (n, k, i, face)


def test_explicit_families_are_invariant_up_to_sign():
    cases = [
        (monomial_basis_scalar(2, 3), 3),
        (volume_basis(1, 2), 2),
        (whitney_basis(3, 1), 3),
        (constant_basis_T3(1), 3),
        (constant_basis_T3(2), 3),
        (tensor_basis_T3(1, 1), 3),
    ]
    for basis, n in cases:
        ok, _ = verify_invariant_up_to_sign(basis, SymmetricGroup(n))
        assert ok


def test_constant_basis_spans_constant_forms():
    for k in (1, 2):
        V = build_space("P", 0, k, 3)
        basis = constant_basis_T3(k)
        assert len(basis) == V.dim == 3
        assert all(V.contains(b) for b in basis)


def test_verdict_carries_transcript_or_certificate():
    good = construct_invariant_basis("P", 2, 0, 3)
    assert good.exists and good.method == "monomial"
    assert len(good.transcript) == 24
    assert len(good.basis) == good.dim == 10
    bad = construct_invariant_basis("Pminus", 2, 1, 3)
    assert not bad.exists
    assert bad.obstruction.m < bad.obstruction.n2
    assert (bad.obstruction.m, bad.obstruction.n2) == (6, 7)


def test_verdict_record_shapes():
    rec = construct_invariant_basis("P", 1, 1, 2).to_record(
        include_transcript=True)
    assert rec["exists"] and len(rec["basis"]) == rec["dim"]
    assert len(rec["transcript"]) == 6
    rec = construct_invariant_basis("P", 0, 1, 2).to_record()
    assert not rec["exists"] and rec["obstruction"] == {"m": 0, "n2": 1}


def test_triangle_table_small_degrees():
    for r in range(0, 5):
        vP = construct_invariant_basis("P", r, 1, 2)
        assert vP.exists == (vP.dim == 0 or r % 3 != 0)
        vPm = construct_invariant_basis("Pminus", r, 1, 2)
        assert vPm.exists == (vPm.dim == 0 or r % 3 != 2)


def test_tetrahedron_rows_small_degrees():
    for r in range(0, 4):
        assert construct_invariant_basis("P", r, 1, 3).exists
        assert construct_invariant_basis("P", r, 2, 3).exists
        assert construct_invariant_basis("Pminus", r, 2, 3).exists
        v = construct_invariant_basis("Pminus", r, 1, 3)
        assert v.exists == (v.dim == 0 or r % 3 != 2)


def test_every_existing_basis_spans_and_verifies():
    for family, tf in itertools.product(("P", "Pminus"), (False, True)):
        for r in range(0, 4):
            for k in range(0, 3):
                v = construct_invariant_basis(family, r, k, 2, trace_free=tf)
                V = build_space(family, r, k, 2, trace_free=tf)
                assert v.dim == V.dim
                if v.exists:
                    assert len(v.basis) == V.dim
                    assert all(V.contains(b) for b in v.basis)


def test_decomposability_of_tetrahedral_one_forms():
    flag, verdicts = geometric_decomposability("P", 3, 1, 3)
    assert not flag
    assert not verdicts[2].exists  # the triangle face block obstructs
    # yet the full space has an invariant basis
    assert construct_invariant_basis("P", 3, 1, 3).exists
    assert geometric_decomposability("Pminus", 2, 2, 3)[0]


def test_out_of_range_inputs():
    with pytest.raises(ConstructionError):
        construct_invariant_basis("P", 1, 1, 4)
    with pytest.raises(ConstructionError):
        construct_invariant_basis("P", 1, 3, 2)
