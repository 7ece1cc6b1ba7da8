"""Exact algebra of polynomial differential forms in barycentric coordinates.

A form lives on the standard simplex T^n inside R^{n+1}, with coordinates
lambda_0..lambda_n.  A term is a pair (exps, alt): `exps` is the exponent
vector of the monomial lambda^exps (length n+1), and `alt` is the strictly
increasing tuple of indices of the differential factor
dlambda_{alt[0]} ^ ... ^ dlambda_{alt[k-1]}.

Two representations are used:

* ambient: any polynomial k-form on R^{n+1};
* canonical: index 0 eliminated via lambda_0 = 1 - sum lambda_i and
  dlambda_0 = -sum dlambda_i.  Canonical representations are unique, so
  equality of forms on T^n is decided by comparing them.

All coefficients are exact rationals; all operations are pure.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import factorial

from .rat import Q, QONE, qstr


class FormError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small combinatorial helpers


def sort_with_sign(indices):
    """Sort a tuple of distinct indices, returning (sign, sorted tuple).

    Returns (0, ()) if two indices coincide (the wedge term vanishes).
    """
    idx = list(indices)
    sign = 1
    # insertion sort; counts transpositions exactly
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, ()
    return sign, tuple(idx)


def merge_alt(a, b):
    """Concatenate two increasing alt tuples, returning (sign, merged) or (0, ())."""
    return sort_with_sign(a + b)


def _mul_poly(p, q):
    """Multiply two scalar polynomials given as dicts exps -> coeff."""
    out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(key)
            c = ca * cb if c is None else c + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


@lru_cache(maxsize=None)
def _lambda0_power(n, e):
    """(1 - lambda_1 - ... - lambda_n)^e as a dict exps -> coeff (slot 0 unused)."""
    zero = (0,) * (n + 1)
    if e == 0:
        return {zero: QONE}
    base = {zero: QONE}
    for i in range(1, n + 1):
        ei = tuple(1 if j == i else 0 for j in range(n + 1))
        base[ei] = Q(-1)
    out = _lambda0_power(n, e - 1)
    return _mul_poly(out, base)


@lru_cache(maxsize=None)
def _monomial_volume_integral(exps, n):
    """Integral of lambda^exps over T^n, normalized so vol(T^n) = 1.

    The closed form is n! * prod(exps_i!) / (|exps| + n)!.
    """
    num = factorial(n)
    for e in exps:
        num *= factorial(e)
    return Q(num, factorial(sum(exps) + n))


@lru_cache(maxsize=None)
def _metric_det(sigma, tau, n):
    """Pointwise inner product <dlambda_sigma, dlambda_tau> on T^n.

    Determinant of the k x k matrix with entries g_{ij} = delta_ij - 1/(n+1),
    the Gram matrix of the dlambda_i restricted to the tangent plane of T^n.
    """
    k = len(sigma)
    if k == 0:
        return QONE
    off = Q(-1, n + 1)
    rows = [[(QONE + off if i == j else off) for j in tau] for i in sigma]
    # exact fraction Gaussian determinant on a tiny matrix
    det = QONE
    m = [row[:] for row in rows]
    for c in range(k):
        piv = None
        for r in range(c, k):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return Q(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, k):
            if m[r][c]:
                f = m[r][c] * inv
                for cc in range(c, k):
                    m[r][cc] -= f * m[c][cc]
    return det


# ---------------------------------------------------------------------------


class PolyForm:
    """A polynomial differential k-form on T^n (or on R^{n+1}) with exact
    rational coefficients.  Immutable by convention."""

    __slots__ = ("n", "k", "terms", "canonical", "_key")

    def __init__(self, n, k, terms=None, canonical=False):
        if not 0 <= k <= n + 1:
            raise FormError(f"form degree {k} out of range for n={n}")
        self.n = n
        self.k = k
        self.terms = dict(terms) if terms else {}
        for (exps, alt), c in list(self.terms.items()):
            if not c:
                del self.terms[(exps, alt)]
        self.canonical = canonical or not self.terms
        self._key = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n, k):
        return PolyForm(n, k, {}, canonical=True)

    @staticmethod
    def monomial(n, exps, alt, coeff=QONE):
        exps = tuple(exps)
        alt = tuple(alt)
        if len(exps) != n + 1:
            raise FormError("exponent vector has wrong length")
        if list(alt) != sorted(set(alt)):
            raise FormError("alt indices must be strictly increasing")
        return PolyForm(n, len(alt), {(exps, alt): Q(coeff)})

    @staticmethod
    def one(n):
        return PolyForm.monomial(n, (0,) * (n + 1), ())

    @staticmethod
    def lam(n, i):
        exps = tuple(1 if j == i else 0 for j in range(n + 1))
        return PolyForm.monomial(n, exps, ())

    @staticmethod
    def dlam(n, i):
        return PolyForm.monomial(n, (0,) * (n + 1), (i,))

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.canon().terms

    def term_order_key(self):
        return sorted(self.terms)

    def __neg__(self):
        return PolyForm(self.n, self.k, {t: -c for t, c in self.terms.items()},
                        canonical=self.canonical)

    def scale(self, c):
        c = Q(c)
        if not c:
            return PolyForm.zero(self.n, self.k)
        return PolyForm(self.n, self.k, {t: c * v for t, v in self.terms.items()},
                        canonical=self.canonical)

    def __add__(self, other):
        if self.n != other.n or self.k != other.k:
            raise FormError("cannot add forms of different (n, k)")
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t)
            v = c if v is None else v + c
            if v:
                out[t] = v
            elif t in out:
                del out[t]
        return PolyForm(self.n, self.k, out,
                        canonical=self.canonical and other.canonical)

    def __sub__(self, other):
        return self + (-other)

    # -- canonicalization ---------------------------------------------------

    def canon(self):
        """Canonical representation: no lambda_0, no dlambda_0.  Idempotent."""
        if self.canonical:
            return self
        n = self.n
        out = {}

        def emit(exps, alt, c):
            key = (exps, alt)
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]

        for (exps, alt), c in self.terms.items():
            pieces = [(c, alt)]
            if alt and alt[0] == 0:
                rest = alt[1:]
                pieces = []
                for i in range(1, n + 1):
                    if i in rest:
                        continue
                    # the -1 comes from dlambda_0 = -sum dlambda_i
                    sgn, merged = sort_with_sign((i,) + rest)
                    pieces.append((-c * sgn, merged))
            e0 = exps[0]
            if e0 == 0:
                for cc, aa in pieces:
                    emit(exps, aa, cc)
            else:
                expansion = _lambda0_power(n, e0)
                rest_exps = (0,) + exps[1:]
                for cc, aa in pieces:
                    for mono, mc in expansion.items():
                        newexps = tuple(x + y for x, y in zip(mono, rest_exps))
                        emit(newexps, aa, cc * mc)
        return PolyForm(n, self.k, out, canonical=True)

    def key(self):
        """Hashable canonical key; equal keys iff equal as forms on T^n."""
        if self._key is None:
            c = self.canon()
            self._key = (self.n, self.k, tuple(sorted(c.terms.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        c = self.canon()
        if not c.terms:
            return f"PolyForm(n={self.n}, k={self.k}, 0)"
        bits = []
        for (exps, alt), coeff in sorted(c.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = "".join(f"l{i}^{e}" if e > 1 else f"l{i}"
                           for i, e in enumerate(exps) if e)
            diff = "^".join(f"dl{i}" for i in alt)
            body = "*".join(x for x in (mono, diff) if x) or "1"
            bits.append(f"{coeff}*{body}")
        return f"PolyForm(n={self.n}, k={self.k}, " + " + ".join(bits) + ")"

    # -- exterior algebra ---------------------------------------------------

    def wedge(self, other):
        if self.n != other.n:
            raise FormError("wedge of forms on different simplices")
        if self.k + other.k > self.n + 1:
            raise FormError("wedge degree exceeds ambient dimension")
        out = {}
        for (ea, aa), ca in self.terms.items():
            for (eb, ab), cb in other.terms.items():
                sgn, merged = merge_alt(aa, ab)
                if sgn == 0:
                    continue
                exps = tuple(x + y for x, y in zip(ea, eb))
                key = (exps, merged)
                c = out.get(key)
                add = ca * cb * sgn
                c = add if c is None else c + add
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
        return PolyForm(self.n, self.k + other.k, out)

    def contract(self):
        """Contraction i_X with the position vector field on R^{n+1}.

        Acts on the stored (ambient) representation:
        i_X(lambda^a dlambda_sigma) =
            sum_j (-1)^j lambda^a lambda_{sigma_j} dlambda_{sigma minus sigma_j}.
        """
        if self.k == 0:
            raise FormError("cannot contract a 0-form")
        out = {}
        for (exps, alt), c in self.terms.items():
            for j, v in enumerate(alt):
                newexps = tuple(e + 1 if i == v else e for i, e in enumerate(exps))
                newalt = alt[:j] + alt[j + 1:]
                key = (newexps, newalt)
                add = c if j % 2 == 0 else -c
                cur = out.get(key)
                cur = add if cur is None else cur + add
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return PolyForm(self.n, self.k - 1, out)

    # -- trace and pullback -------------------------------------------------

    def trace(self, face):
        """Trace (restriction) to the face with the given increasing vertex
        tuple, reindexed to the face's own barycentric labels."""
        face = tuple(face)
        if not face or list(face) != sorted(set(face)) or face[-1] > self.n:
            raise FormError(f"bad face {face} for n={self.n}")
        a = self.canon()
        d = len(face) - 1
        pos = {v: i for i, v in enumerate(face)}
        keep = set(face)
        out = {}
        for (exps, alt), c in a.terms.items():
            if any(e and i not in keep for i, e in enumerate(exps)):
                continue
            if any(j not in keep for j in alt):
                continue
            newexps = [0] * (d + 1)
            for i, e in enumerate(exps):
                if e:
                    newexps[pos[i]] = e
            newalt = tuple(pos[j] for j in alt)
            out[(tuple(newexps), newalt)] = c
        return PolyForm(d, self.k, out).canon()

    def pullback(self, perm):
        """Pullback along the vertex-permutation map S_pi, substituting
        lambda_i -> lambda_{perm[i]} and dlambda_i -> dlambda_{perm[i]}."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.n + 1)):
            raise FormError("not a permutation of 0..n")
        out = {}
        for (exps, alt), c in self.terms.items():
            newexps = [0] * (self.n + 1)
            for i, e in enumerate(exps):
                if e:
                    newexps[perm[i]] = e
            sgn, newalt = sort_with_sign(tuple(perm[j] for j in alt))
            if sgn == 0:
                continue
            key = (tuple(newexps), newalt)
            add = c * sgn
            cur = out.get(key)
            cur = add if cur is None else cur + add
            if cur:
                out[key] = cur
            elif key in out:
                del out[key]
        return PolyForm(self.n, self.k, out).canon()

    # -- integration and inner product --------------------------------------

    def integrate_volume(self):
        """Integral over T^n of a 0-form, normalized so vol(T^n) = 1."""
        if self.k != 0:
            raise FormError("integrate_volume requires a 0-form")
        total = Q(0)
        for (exps, _alt), c in self.terms.items():
            total += c * _monomial_volume_integral(exps, self.n)
        return total

    def inner(self, other):
        """Invariant inner product: integrate the pointwise inner product of
        the canonical representations under the metric g = I - J/(n+1)."""
        if self.n != other.n or self.k != other.k:
            raise FormError("inner product requires matching (n, k)")
        a = self.canon()
        b = other.canon()
        n = self.n
        total = Q(0)
        for (ea, sa), ca in a.terms.items():
            for (eb, sb), cb in b.terms.items():
                det = _metric_det(sa, sb, n)
                if det:
                    exps = tuple(x + y for x, y in zip(ea, eb))
                    total += ca * cb * det * _monomial_volume_integral(exps, n)
        return total

    def integrate_over_face(self, face):
        """Integral over a face of dimension k, with the orientation given by
        increasing vertex order."""
        face = tuple(face)
        d = len(face) - 1
        if self.k != d:
            raise FormError(f"integrating a {self.k}-form over a {d}-face")
        tr = self.trace(face)
        if d == 0:
            return tr.integrate_volume()
        top = tuple(range(1, d + 1))
        coeff = {}
        for (exps, alt), c in tr.terms.items():
            if alt != top:
                raise FormError("trace is not in top-degree canonical form")
            coeff[(exps, ())] = c
        return PolyForm(d, 0, coeff, canonical=True).integrate_volume()

    # -- serialization ------------------------------------------------------

    def to_record(self):
        c = self.canon()
        items = sorted(c.terms.items(), key=lambda t: (t[0][1], t[0][0]))
        return {
            "n": self.n,
            "k": self.k,
            "terms": [
                {"exponents": list(exps), "differentials": list(alt),
                 "coefficient": qstr(coeff)}
                for (exps, alt), coeff in items
            ],
        }

    @staticmethod
    def from_record(rec):
        from .rat import qparse
        n, k = rec["n"], rec["k"]
        terms = {}
        for t in rec["terms"]:
            terms[(tuple(t["exponents"]), tuple(t["differentials"]))] = qparse(t["coefficient"])
        return PolyForm(n, k, terms, canonical=True)


# ---------------------------------------------------------------------------
# convenience generators


def monomial_exponents(total, slots):
    """All exponent tuples of the given length summing to `total`, lex order."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in monomial_exponents(total - first, slots - 1):
            yield (first,) + rest


def alt_indices(n, k):
    """All increasing k-tuples from {0..n}."""
    return combinations(range(n + 1), k)
