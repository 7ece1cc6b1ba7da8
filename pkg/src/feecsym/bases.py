"""Construction of bases that are invariant up to sign under all vertex
permutations, for the full and trimmed families and their trace-free
subspaces in dimensions up to three.

Every route produces an explicit list of forms which is then checked against
the actual space (exact span comparison) and against the full symmetric
group (up-to-sign permutation of the list).  When no route applies, the
restriction to a 3-cycle is decomposed over Z/3 and the resulting
multiplicities certify that no such basis can exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import PolyForm, monomial_exponents
from .geodecomp import decomposition_map, lift_basis
from .spaces import FormSpace, build_space
from .symmetry import (SymmetricGroup, Z3Decomposition,
                       verify_invariant_up_to_sign, z3_decompose)


class ConstructionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# explicit families


def monomial_basis_scalar(r, n):
    """All barycentric monomials of total degree exactly r (spans degree <= r
    after dehomogenization); permuted among themselves by vertex relabeling."""
    if r < 0:
        return []
    return [PolyForm.monomial(n, exps, ())
            for exps in monomial_exponents(r, n + 1)]


def volume_basis(r, n):
    """Monomials times the top-degree form; each vertex permutation sends an
    element to plus or minus another."""
    if r < 0:
        return []
    vol = PolyForm.monomial(n, (0,) * (n + 1), tuple(range(1, n + 1)))
    return [PolyForm.monomial(n, exps, ()).wedge(vol).canon()
            for exps in monomial_exponents(r, n + 1)]


def whitney_basis(n, k):
    """The classical lowest-degree trimmed basis.  With face volumes
    normalized to one, the integral over the associated face is exactly one
    without any factorial prefactor."""
    from itertools import combinations
    if k == 0:
        return [PolyForm.lam(n, i) for i in range(n + 1)]
    out = []
    for sigma in combinations(range(n + 1), k + 1):
        phi = PolyForm.zero(n, k)
        for j, v in enumerate(sigma):
            rest = sigma[:j] + sigma[j + 1:]
            term = PolyForm.lam(n, v)
            for w in rest:
                term = term.wedge(PolyForm.dlam(n, w))
            phi = phi + (term if j % 2 == 0 else -term)
        out.append(phi.canon())
    return out


def constant_basis_T3(k):
    """Three constant forms on the tetrahedron permuted up to sign by all
    vertex relabelings (each pairs two vertices against the other two)."""
    if k not in (1, 2):
        raise ConstructionError("constant tetrahedral basis needs k in {1, 2}")
    ones = [(PolyForm.dlam(3, 0) + PolyForm.dlam(3, i)).canon()
            for i in (1, 2, 3)]
    if k == 1:
        return ones
    return [ones[0].wedge(ones[1]).canon(),
            ones[0].wedge(ones[2]).canon(),
            ones[1].wedge(ones[2]).canon()]


def tensor_basis_T3(r, k):
    """Monomials of degree r times the constant tetrahedral forms."""
    const = constant_basis_T3(k)
    return [PolyForm.monomial(3, exps, ()).wedge(c).canon()
            for exps in monomial_exponents(r, 4) for c in const]


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class ExistenceVerdict:
    family: str
    r: int
    k: int
    n: int
    trace_free: bool
    exists: bool
    dim: int
    method: str
    basis: list = field(default_factory=list)
    obstruction: Z3Decomposition = None
    transcript: list = field(default_factory=list)

    def to_record(self, include_transcript=False):
        rec = {
            "family": self.family,
            "r": self.r,
            "k": self.k,
            "n": self.n,
            "trace_free": self.trace_free,
            "exists": self.exists,
            "dim": self.dim,
            "method": self.method,
        }
        if self.exists:
            rec["basis"] = [b.to_record() for b in self.basis]
            if include_transcript:
                rec["transcript"] = [t.to_record() for t in self.transcript]
        else:
            rec["obstruction"] = {"m": self.obstruction.m,
                                  "n2": self.obstruction.n2}
        return rec


_VERDICT_CACHE = {}


def construct_invariant_basis(family, r, k, n, trace_free=False):
    """Existence verdict, with an explicit verified basis or a Z/3
    obstruction certificate, for the requested space on T^n (n <= 3)."""
    if n > 3 or n < 0:
        raise ConstructionError("only dimensions up to three are supported")
    if not 0 <= k <= n:
        raise ConstructionError(f"form degree k={k} out of range for n={n}")
    key = (family, r, k, n, trace_free)
    if key not in _VERDICT_CACHE:
        _VERDICT_CACHE[key] = _construct(family, r, k, n, trace_free)
    return _VERDICT_CACHE[key]


def _finish(family, r, k, n, trace_free, method, basis):
    """Validate a proposed basis: exact span equality with the actual space
    and up-to-sign invariance under the full vertex symmetry group."""
    V = build_space(family, r, k, n, trace_free=trace_free)
    basis = [b.canon() for b in basis]
    cand = FormSpace(family, r, k, n, trace_free, basis)
    cand.echelon()  # raises if dependent
    if not (cand.dim == V.dim and cand.is_subspace_of(V)):
        raise ConstructionError(
            f"{method}: constructed set does not span the space "
            f"({family}, r={r}, k={k}, n={n}, trace_free={trace_free})")
    ok, transcript = verify_invariant_up_to_sign(basis, SymmetricGroup(n))
    if not ok:
        raise ConstructionError(
            f"{method}: constructed basis is not invariant up to sign "
            f"(witness {transcript.to_record()})")
    return ExistenceVerdict(family, r, k, n, trace_free, True, V.dim,
                            method, basis=basis, transcript=transcript)


def _obstructed(family, r, k, n, trace_free, method):
    V = build_space(family, r, k, n, trace_free=trace_free)
    dec = z3_decompose(V)
    if dec.m >= dec.n2:
        raise ConstructionError(
            f"no construction route but no Z/3 obstruction either for "
            f"({family}, r={r}, k={k}, n={n}, trace_free={trace_free})")
    return ExistenceVerdict(family, r, k, n, trace_free, False, V.dim,
                            method, obstruction=dec)


def _construct(family, r, k, n, trace_free):
    if family not in ("P", "Pminus"):
        raise ConstructionError(f"unknown family {family!r}")
    V = build_space(family, r, k, n, trace_free=trace_free)
    if V.dim == 0:
        return ExistenceVerdict(family, r, k, n, trace_free, True, 0, "zero")
    if trace_free:
        return _construct_trace_free(family, r, k, n)
    if k == 0:
        return _finish(family, r, k, n, False, "monomial",
                       monomial_basis_scalar(r, n))
    if k == n:
        rr = r if family == "P" else r - 1
        return _finish(family, r, k, n, False, "volume", volume_basis(rr, n))
    if family == "P" and n == 3:
        return _finish(family, r, k, n, False, "tensor", tensor_basis_T3(r, k))
    if family == "Pminus" and r == 1:
        return _finish(family, r, k, n, False, "whitney", whitney_basis(n, k))
    if r >= 1:
        blocks = {}
        for d in range(k, n + 1):
            sub = construct_invariant_basis(family, r, k, d, trace_free=True)
            if not sub.exists:
                return _obstructed(family, r, k, n, False, "obstruction")
            blocks[d] = sub.basis
        D = decomposition_map(V, cache_key=(family, r, k, n))
        return _finish(family, r, k, n, False, "lift", lift_basis(D, blocks))
    return _obstructed(family, r, k, n, False, "obstruction")


def _construct_trace_free(family, r, k, n):
    from .duality import duality_map
    if k == n:
        # top-degree forms have no trace, so the full construction applies
        inner = construct_invariant_basis(family, r, k, n, trace_free=False)
        if not inner.exists:
            return _obstructed(family, r, k, n, True, "obstruction")
        return _finish(family, r, k, n, True, inner.method, inner.basis)
    if family == "P":
        src = ("Pminus", r - (n - k), n - k)
    else:
        src = ("P", r - (n - k) - 1, n - k)
    sfam, sr, sk = src
    if sr <= 0 if sfam == "Pminus" else sr < 0:
        raise ConstructionError(
            "nonzero trace-free space with an empty duality source")
    inner = construct_invariant_basis(sfam, sr, sk, n, trace_free=False)
    if not inner.exists:
        return _obstructed(family, r, k, n, True, "obstruction")
    D = duality_map(build_space(sfam, sr, sk, n))
    if not D.is_bijection():
        raise ConstructionError("duality map failed to be a bijection")
    return _finish(family, r, k, n, True, "duality",
                   [D.apply(b) for b in inner.basis])


def geometric_decomposability(family, r, k, n):
    """Whether every trace-free face block (dimensions k..n) admits an
    invariant basis, so that an invariant basis compatible with the geometric
    decomposition exists.  Returns (flag, per-dimension verdicts)."""
    if r < 1:
        raise ConstructionError("decomposability is asked for degree >= 1")
    verdicts = {d: construct_invariant_basis(family, r, k, d, trace_free=True)
                for d in range(k, n + 1)}
    return all(v.exists for v in verdicts.values()), verdicts
