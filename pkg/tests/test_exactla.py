"""Tests for the exact linear algebra layer, cross-checked against sympy."""

import random

import sympy

from feecsym.exactla import (Echelon, InconsistentSystemError, identity,
                             mat_det, mat_eq, mat_mul, nullspace, rank, solve)
from feecsym.rat import Q


def _random_matrix(rng, rows, cols, lo=-4, hi=4):
    return [[Q(rng.randrange(lo, hi + 1)) for _ in range(cols)]
            for _ in range(rows)]


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(10):
        m = _random_matrix(rng, rng.randrange(1, 6), rng.randrange(1, 6))
        sm = sympy.Matrix([[int(x.numerator) for x in row] for row in m])
        assert rank(m) == sm.rank()


def test_nullspace_annihilates():
    rng = random.Random(13)
    for _ in range(10):
        m = _random_matrix(rng, 3, 5)
        null = nullspace(m)
        sm = sympy.Matrix([[sympy.Rational(int(x.numerator),
                                           int(x.denominator))
                            for x in row] for row in m])
        assert len(null) == 5 - sm.rank()
        for v in null:
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_solve_and_inconsistency():
    a = [[Q(1), Q(2)], [Q(3), Q(4)]]
    x = solve(a, [Q(5), Q(6)])
    assert [sum(r * v for r, v in zip(row, x)) for row in a] == [Q(5), Q(6)]
    bad = [[Q(1), Q(1)], [Q(2), Q(2)]]
    try:
        solve(bad, [Q(1), Q(3)])
        assert False, "expected inconsistency"
    except InconsistentSystemError:
        pass


def test_determinant_matches_sympy():
    rng = random.Random(17)
    for _ in range(8):
        n = rng.randrange(1, 5)
        m = _random_matrix(rng, n, n)
        sm = sympy.Matrix([[int(x.numerator) for x in row] for row in m])
        d = mat_det(m)
        assert sympy.Rational(int(d.numerator), int(d.denominator)) == sm.det()


def test_echelon_reports_exact_combinations():
    rng = random.Random(19)
    vecs = []
    for _ in range(12):
        vecs.append({j: Q(rng.randrange(-3, 4)) for j in range(6)
                     if rng.random() < 0.7})
    ech = Echelon()
    inserted = []
    for i, v in enumerate(vecs):
        combo = ech.insert(dict(v), i)
        if combo is None:
            inserted.append((i, v))
        else:
            # rebuild v from the reported combination, exactly
            acc = {}
            for tag, c in combo.items():
                for j, x in vecs[tag].items():
                    acc[j] = acc.get(j, Q(0)) + c * x
            acc = {j: x for j, x in acc.items() if x}
            assert acc == {j: x for j, x in v.items() if x}
    dense = [[vecs[i].get(j, Q(0)) for j in range(6)] for i, _ in inserted]
    assert ech.rank == rank(dense) == len(inserted)


def test_echelon_solve_round_trip():
    ech = Echelon()
    ech.insert({0: Q(1), 1: Q(2)}, "a")
    ech.insert({1: Q(1), 2: Q(1)}, "b")
    combo = ech.solve({0: Q(2), 1: Q(5), 2: Q(1)})
    assert combo == {"a": Q(2), "b": Q(1)}
    assert not ech.contains({2: Q(1), 3: Q(1)})


def test_matrix_helpers():
    a = [[Q(1), Q(2)], [Q(0), Q(1)]]
    assert mat_eq(mat_mul(a, identity(2)), a)
