"""Exact rational linear algebra: sparse echelon structures plus the small
dense rank / nullspace / solve surface used throughout.

Vectors are dicts key -> rational with totally ordered keys; matrices on the
dense surface are lists of rows.  Pivoting is deterministic (smallest key /
first nonzero), so every downstream basis is reproducible.
"""

from __future__ import annotations

import heapq

from .rat import Q, QONE


class InconsistentSystemError(ValueError):
    pass


class Echelon:
    """Incremental sparse echelon form with coefficient tracking.

    Each inserted vector either increases the rank (a new pivot, keyed by the
    smallest remaining key) or is reported as a combination of the previously
    inserted vectors.  Pivot rows are normalized to pivot coefficient 1 and
    only contain keys >= their pivot key, so reduction in ascending key order
    terminates.
    """

    def __init__(self):
        self.pivots = {}  # pivot key -> (row dict, history dict tag -> coeff)
        self.tags = []

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Return (remainder, combo) with vec = sum combo[tag]*v_tag + remainder."""
        rem = {k: v for k, v in vec.items() if v}
        combo = {}
        heap = list(rem)
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            key = heapq.heappop(heap)
            seen.discard(key)
            if key not in rem or key not in self.pivots:
                continue
            row, hist = self.pivots[key]
            f = rem.pop(key)
            for rk, rv in row.items():
                if rk == key:
                    continue
                cur = rem.get(rk)
                cur = -f * rv if cur is None else cur - f * rv
                if cur:
                    rem[rk] = cur
                    if rk not in seen:
                        heapq.heappush(heap, rk)
                        seen.add(rk)
                elif rk in rem:
                    del rem[rk]
            for t, hv in hist.items():
                cur = combo.get(t)
                cur = f * hv if cur is None else cur + f * hv
                if cur:
                    combo[t] = cur
                elif t in combo:
                    del combo[t]
        return rem, combo

    def insert(self, vec, tag):
        """Insert a vector.  Returns None if it was independent, else the
        combo dict expressing it in terms of earlier tags."""
        rem, combo = self.reduce(vec)
        if not rem:
            return combo
        pivot = min(rem)
        inv = 1 / rem[pivot]
        row = {k: v * inv for k, v in rem.items()}
        hist = {t: -v * inv for t, v in combo.items()}
        hist[tag] = inv
        # hist satisfies: row = sum hist[t] * v_t
        self.pivots[pivot] = (row, hist)
        self.tags.append(tag)
        return None

    def contains(self, vec):
        rem, _ = self.reduce(vec)
        return not rem

    def solve(self, vec):
        """Express vec in the inserted vectors; raises if not in the span."""
        rem, combo = self.reduce(vec)
        if rem:
            raise InconsistentSystemError("vector is not in the span")
        return combo


# ---------------------------------------------------------------------------
# dense helpers (lists of rows of rationals)


def _rref(rows):
    m = [[Q(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    _, pivots = _rref(rows)
    return len(pivots)


def nullspace(rows):
    """Basis of the right nullspace, one vector per free column."""
    if not rows:
        return []
    m, pivots = _rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Q(0)] * ncols
        vec[fc] = QONE
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """Solve A x = b; raises InconsistentSystemError if no solution exists.

    When the solution is underdetermined, free variables are set to zero.
    """
    if not rows:
        if any(rhs):
            raise InconsistentSystemError("no solution")
        return []
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = _rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        raise InconsistentSystemError("no solution")
    x = [Q(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def mat_mul(a, b):
    bn = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Q(0)] * bn
        for i, v in enumerate(row):
            if v:
                brow = b[i]
                for j in range(bn):
                    if brow[j]:
                        acc[j] += v * brow[j]
        out.append(acc)
    return out


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
               for ra, rb in zip(a, b))


def identity(n):
    return [[QONE if i == j else Q(0) for j in range(n)] for i in range(n)]


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), Q(0))


def mat_det(a):
    m = [row[:] for row in a]
    n = len(m)
    det = QONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Q(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for cc in range(c, n):
                    m[r][cc] -= f * m[c][cc]
    return det
