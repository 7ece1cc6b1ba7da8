"""Construction of the polynomial form spaces on the simplex.

FormSpace holds an ordered basis of PolyForms together with a lazily built
echelon structure over canonical term coordinates, giving exact membership
tests and coordinates.  The P and trimmed (Pminus) families are built from
spanning sets and reduced to bases by exact rank; dimensions are never taken
from closed-form formulas.
"""

from __future__ import annotations

from itertools import combinations

from .exactla import Echelon, InconsistentSystemError, nullspace, rank, solve  # noqa: F401 (re-exported surface)
from .forms import PolyForm, alt_indices, monomial_exponents
from .rat import Q


class SpaceError(ValueError):
    pass


class FormSpace:
    """A finite-dimensional space of k-forms on T^n with an ordered basis."""

    def __init__(self, family, r, k, n, trace_free, basis):
        self.family = family
        self.r = r
        self.k = k
        self.n = n
        self.trace_free = trace_free
        self.basis = list(basis)
        self._ech = None

    @property
    def dim(self):
        return len(self.basis)

    def echelon(self):
        if self._ech is None:
            ech = Echelon()
            for i, b in enumerate(self.basis):
                if ech.insert(b.canon().terms, i) is not None:
                    raise SpaceError("stored basis is linearly dependent")
            self._ech = ech
        return self._ech

    def contains(self, form):
        if form.n != self.n or form.k != self.k:
            return False
        return self.echelon().contains(form.canon().terms)

    def coords(self, form):
        """Coordinates of a form in the stored basis; raises if outside."""
        if form.n != self.n or form.k != self.k:
            raise SpaceError("form has wrong (n, k) for this space")
        try:
            combo = self.echelon().solve(form.canon().terms)
        except InconsistentSystemError as e:
            raise SpaceError("form is not in the space") from e
        return [combo.get(i, Q(0)) for i in range(self.dim)]

    def from_coords(self, coords):
        out = PolyForm.zero(self.n, self.k)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out.canon()

    def is_subspace_of(self, other):
        return all(other.contains(b) for b in self.basis)

    def same_space(self, other):
        return (self.dim == other.dim and self.is_subspace_of(other))

    def to_record(self):
        return {
            "family": self.family,
            "r": self.r,
            "k": self.k,
            "n": self.n,
            "trace_free": self.trace_free,
            "dim": self.dim,
            "basis": [b.to_record() for b in self.basis],
        }

    def __repr__(self):
        ring = "trace-free " if self.trace_free else ""
        return (f"FormSpace({ring}{self.family}, r={self.r}, k={self.k}, "
                f"n={self.n}, dim={self.dim})")


def reduce_to_basis(forms):
    """Filter a spanning list down to an independent sublist, in order."""
    ech = Echelon()
    basis = []
    for f in forms:
        c = f.canon()
        if not c.terms:
            continue
        if ech.insert(c.terms, len(basis)) is None:
            basis.append(c)
    return basis


_P_CACHE = {}
_PMINUS_CACHE = {}
_TF_CACHE = {}


def build_P(r, k, n):
    """The space of k-forms on T^n with polynomial coefficients of degree <= r."""
    if not 0 <= k <= n:
        raise SpaceError(f"form degree k={k} out of range for n={n}")
    key = (r, k, n)
    if key not in _P_CACHE:
        if r < 0:
            basis = []
        else:
            span = [PolyForm.monomial(n, exps, alt)
                    for alt in alt_indices(n, k)
                    for exps in monomial_exponents(r, n + 1)]
            basis = reduce_to_basis(span)
        _P_CACHE[key] = FormSpace("P", r, k, n, False, basis)
    return _P_CACHE[key]


def build_Pminus(r, k, n):
    """The trimmed space: restrictions of contractions of degree-(r-1)
    (k+1)-forms, together with the lower-degree full space it contains."""
    if not 0 <= k <= n:
        raise SpaceError(f"form degree k={k} out of range for n={n}")
    key = (r, k, n)
    if key not in _PMINUS_CACHE:
        if r <= 0:
            basis = []
        else:
            span = []
            if k + 1 <= n + 1:
                for alt in combinations(range(n + 1), k + 1):
                    for exps in monomial_exponents(r - 1, n + 1):
                        span.append(PolyForm.monomial(n, exps, alt).contract())
            if k >= 1:
                span.extend(build_P(r - 1, k, n).basis)
            else:
                # scalar case: the trimmed space coincides with the full one
                span.extend(build_P(r, 0, n).basis)
            basis = reduce_to_basis(span)
        _PMINUS_CACHE[key] = FormSpace("Pminus", r, k, n, False, basis)
    return _PMINUS_CACHE[key]


def facets(n):
    """The (n-1)-dimensional faces of T^n, as increasing vertex tuples."""
    return list(combinations(range(n + 1), n))


def trace_free_subspace(V):
    """The subspace of V with vanishing trace on every facet of T^n."""
    if V.n == 0:
        return FormSpace(V.family, V.r, V.k, V.n, True, V.basis)
    ech = Echelon()
    kernel = []
    kept = []
    for b in V.basis:
        vec = {}
        for fi, face in enumerate(facets(V.n)):
            tr = b.trace(face)
            for t, c in tr.terms.items():
                vec[(fi, t)] = c
        if not vec:
            kernel.append(b)
            continue
        combo = ech.insert(vec, len(kept))
        if combo is None:
            kept.append(b)
        else:
            f = b
            for t, c in combo.items():
                f = f - kept[t].scale(c)
            kernel.append(f.canon())
    return FormSpace(V.family, V.r, V.k, V.n, True, kernel)


def build_space(family, r, k, n, trace_free=False):
    """Uniform cached entry point for the four space families."""
    if family not in ("P", "Pminus"):
        raise SpaceError(f"unknown family {family!r}")
    base = build_P(r, k, n) if family == "P" else build_Pminus(r, k, n)
    if not trace_free:
        return base
    key = (family, r, k, n)
    if key not in _TF_CACHE:
        _TF_CACHE[key] = trace_free_subspace(base)
    return _TF_CACHE[key]
