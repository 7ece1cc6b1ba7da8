"""The duality isomorphism between full/trimmed spaces and trace-free spaces
of complementary degree, realized through square-root sphere coordinates.

The pipeline for a form a on T^n is: pull back along the coordinate map
lambda_i = u_i^2 to a polynomial form on the unit sphere, apply the sphere
Hodge star (computed algebraically as tangential projection, ambient star,
then contraction with the position field), multiply by the bubble
u_0...u_n, and solve the result back through the pullback of a spanning set
of the target space.

Sphere forms are stored modulo the relation sum u_i^2 = 1 (u_0^2
eliminated); for linear solves they are additionally projected tangentially,
which quotients out the normal ideal exactly.
"""

from __future__ import annotations

from .exactla import Echelon
from .forms import PolyForm, sort_with_sign
from .rat import Q, QONE
from .spaces import build_space
from .symmetry import SymmetricGroup, action_matrix, perm_sign
from .exactla import mat_mul, mat_scale, mat_eq


class DualityError(ValueError):
    pass


class ExceptionalCaseError(DualityError):
    """The single excluded input: the degree-0 trimmed scalar space."""


# ---------------------------------------------------------------------------
# sphere forms


class SphereForm:
    """Polynomial differential form in u_0..u_n, reduced so that the exponent
    of u_0 is at most 1 (modulo the unit-sphere relation)."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n, k, terms=None, reduced=False):
        self.n = n
        self.k = k
        if terms and not reduced:
            terms = _reduce_u0(n, terms)
        self.terms = {t: c for t, c in (terms or {}).items() if c}

    @staticmethod
    def zero(n, k):
        return SphereForm(n, k, {})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t)
            v = c if v is None else v + c
            if v:
                out[t] = v
            elif t in out:
                del out[t]
        return SphereForm(self.n, self.k, out, reduced=True)

    def scale(self, c):
        c = Q(c)
        return SphereForm(self.n, self.k, {t: c * v for t, v in self.terms.items()},
                          reduced=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def wedge(self, other):
        out = {}
        for (ea, aa), ca in self.terms.items():
            for (eb, ab), cb in other.terms.items():
                sgn, merged = sort_with_sign(aa + ab)
                if sgn == 0:
                    continue
                key = (tuple(x + y for x, y in zip(ea, eb)), merged)
                add = ca * cb * sgn
                cur = out.get(key)
                cur = add if cur is None else cur + add
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return SphereForm(self.n, self.k + other.k, out)

    def contract(self):
        """Contraction with the position field sum u_i d/du_i."""
        if self.k == 0:
            raise DualityError("cannot contract a 0-form")
        out = {}
        for (exps, alt), c in self.terms.items():
            for j, v in enumerate(alt):
                key = (tuple(e + 1 if i == v else e for i, e in enumerate(exps)),
                       alt[:j] + alt[j + 1:])
                add = c if j % 2 == 0 else -c
                cur = out.get(key)
                cur = add if cur is None else cur + add
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return SphereForm(self.n, self.k - 1, out)

    def tangential(self):
        """Projection onto tangential forms: b - nu ^ (i_X b)."""
        if self.k == 0:
            return self
        nu = _normal_covector(self.n)
        return self - nu.wedge(self.contract())

    def key(self):
        return (self.n, self.k, tuple(sorted(self.terms.items())))


def _reduce_u0(n, terms):
    """Eliminate u_0^e for e >= 2 via u_0^2 = 1 - sum_{i>=1} u_i^2."""
    out = {}
    stack = list(terms.items())
    while stack:
        (exps, alt), c = stack.pop()
        if not c:
            continue
        e0 = exps[0]
        if e0 <= 1:
            key = (exps, alt)
            cur = out.get(key)
            cur = c if cur is None else cur + c
            if cur:
                out[key] = cur
            elif key in out:
                del out[key]
            continue
        rest = (e0 - 2,) + exps[1:]
        stack.append(((rest, alt), c))
        for i in range(1, n + 1):
            dec = tuple(e + 2 if j == i else e for j, e in enumerate(rest))
            stack.append(((dec, alt), -c))
    return out


def _normal_covector(n):
    terms = {}
    for i in range(n + 1):
        exps = tuple(1 if j == i else 0 for j in range(n + 1))
        terms[(exps, (i,))] = QONE
    return SphereForm(n, 1, terms, reduced=True)


def bubble(n):
    """The product u_0 u_1 ... u_n as a 0-form."""
    return SphereForm(n, 0, {((1,) * (n + 1), ()): QONE}, reduced=True)


def phi_pullback(a):
    """Pullback along lambda_i = u_i^2, dlambda_i = 2 u_i du_i."""
    n = a.n
    out = {}
    for (exps, alt), c in a.terms.items():
        uexps = [2 * e for e in exps]
        for j in alt:
            uexps[j] += 1
        coeff = c * (2 ** len(alt))
        key = (tuple(uexps), alt)
        cur = out.get(key)
        cur = coeff if cur is None else cur + coeff
        if cur:
            out[key] = cur
        elif key in out:
            del out[key]
    return SphereForm(n, a.k, out)


def ambient_star(b):
    """Euclidean Hodge star on R^{n+1} applied termwise."""
    n = b.n
    full = tuple(range(n + 1))
    out = {}
    for (exps, alt), c in b.terms.items():
        comp = tuple(i for i in full if i not in alt)
        sgn, _ = sort_with_sign(alt + comp)
        key = (exps, comp)
        add = c * sgn
        cur = out.get(key)
        cur = add if cur is None else cur + add
        if cur:
            out[key] = cur
        elif key in out:
            del out[key]
    return SphereForm(n, n + 1 - b.k, out, reduced=True)


def sphere_star(b):
    """Hodge star on the unit sphere: contract the ambient star of the
    tangential part with the position field (outward-normal-first sign)."""
    return ambient_star(b.tangential()).contract()


def sphere_normal_form(b):
    """Tangentially projected, u_0-reduced representative: two sphere forms
    restrict to the same form on S^n iff these representatives coincide."""
    return b.tangential()


# ---------------------------------------------------------------------------
# the duality map


def duality_target(family, r, k, n):
    if family == "P":
        return ("Pminus", r + k + 1, n - k)
    if family == "Pminus":
        return ("P", r + k, n - k)
    raise DualityError(f"unknown family {family!r}")


class DualityMap:
    """The bijection from a full or trimmed space onto the trace-free space of
    complementary form degree."""

    def __init__(self, V):
        if V.family not in ("P", "Pminus") or V.trace_free:
            raise DualityError("duality is defined on the full and trimmed spaces")
        if V.family == "Pminus" and V.r == 0 and V.k == 0:
            raise ExceptionalCaseError(
                "the degree-0 trimmed scalar space is excluded from duality")
        self.V = V
        fam, tr, tk = duality_target(V.family, V.r, V.k, V.n)
        self.target = build_space(fam, tr, tk, V.n, trace_free=True)
        self._ech = Echelon()
        for i, t in enumerate(self.target.basis):
            vec = sphere_normal_form(phi_pullback(t.canon())).terms
            if self._ech.insert(vec, i) is not None:
                raise DualityError("target pullbacks are unexpectedly dependent")
        bub = bubble(V.n)
        self.images = []
        cols = []
        for b in V.basis:
            img = bub.wedge(sphere_star(phi_pullback(b.canon())))
            vec = sphere_normal_form(img).terms
            try:
                combo = self._ech.solve(vec)
            except Exception as e:
                raise DualityError(
                    "duality image is not in the target space") from e
            coords = [combo.get(i, Q(0)) for i in range(self.target.dim)]
            cols.append(coords)
            self.images.append(self.target.from_coords(coords))
        self.matrix = [[cols[j][i] for j in range(len(cols))]
                       for i in range(self.target.dim)]

    def is_bijection(self):
        if self.V.dim != self.target.dim:
            return False
        ech = Echelon()
        for j, img in enumerate(self.images):
            if ech.insert(img.canon().terms, j) is not None:
                return False
        return True

    def apply(self, form):
        coords = self.V.coords(form)
        out = PolyForm.zero(self.target.n, self.target.k)
        for c, img in zip(coords, self.images):
            if c:
                out = out + img.scale(c)
        return out.canon()

    def to_record(self):
        return {
            "source": {"family": self.V.family, "r": self.V.r, "k": self.V.k,
                       "n": self.V.n, "dim": self.V.dim},
            "target": {"family": self.target.family, "r": self.target.r,
                       "k": self.target.k, "n": self.target.n,
                       "trace_free": True, "dim": self.target.dim},
            "bijection": self.is_bijection(),
        }


def duality_map(V):
    return DualityMap(V)


def verify_sign_equivariance(D):
    """Exact matrix identity: the map commutes with even vertex permutations
    and anti-commutes with odd ones, on every group generator."""
    group = SymmetricGroup(D.V.n)
    for p in group.generators():
        lhs = mat_mul(D.matrix, action_matrix(D.V, p))
        rhs = mat_scale(mat_mul(action_matrix(D.target, p), D.matrix),
                        Q(perm_sign(p)))
        if not mat_eq(lhs, rhs):
            return False
    return True
