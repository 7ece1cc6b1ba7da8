"""Geometric decomposition: the vanishing-trace filtration, invariant
complements, the face-block decomposition map, basis lifting, and the
extension operators recovered from complements.
"""

from __future__ import annotations

from itertools import combinations

from .exactla import Echelon
from .forms import PolyForm, _metric_det, _monomial_volume_integral
from .rat import Q
from .spaces import FormSpace, reduce_to_basis, trace_free_subspace
from .symmetry import SymmetricGroup, compose, inverse


class DecompositionError(ValueError):
    pass


class DirectSumError(DecompositionError):
    pass


def faces_of_dim(n, d):
    return list(combinations(range(n + 1), d + 1))


# ---------------------------------------------------------------------------
# filtration and complements


class Filtration:
    """Subspaces V = V_0 >= V_1 >= ... >= V_{n+1} = 0, where V_d is the set
    of forms whose traces vanish on every (d-1)-dimensional face."""

    def __init__(self, V, levels):
        self.V = V
        self.levels = levels  # list of FormSpace, length n+2

    def __getitem__(self, d):
        return self.levels[d]


def _vanishing_on_faces(V, faces):
    """Subspace of V whose traces to every listed face vanish."""
    faces = [f for f in faces if len(f) - 1 >= V.k]  # lower traces vanish anyway
    if not faces:
        return V
    ech = Echelon()
    kernel = []
    kept = []
    for b in V.basis:
        vec = {}
        for fi, face in enumerate(faces):
            for t, c in b.trace(face).terms.items():
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
    return FormSpace("custom", V.r, V.k, V.n, V.trace_free, kernel)


def filtration(V):
    n = V.n
    levels = [V]
    for d in range(1, n + 2):
        levels.append(_vanishing_on_faces(V, faces_of_dim(n, d - 1)))
    return Filtration(V, levels)


def _metric_dual(form, term_keys):
    """The linear functional <., form> evaluated on canonical term keys."""
    n = form.n
    c = form.canon()
    out = {}
    for t in term_keys:
        (ea, sa) = t
        total = Q(0)
        for (eb, sb), cb in c.terms.items():
            det = _metric_det(sa, sb, n)
            if det:
                exps = tuple(x + y for x, y in zip(ea, eb))
                total += cb * det * _monomial_volume_integral(exps, n)
        if total:
            out[t] = total
    return out


def orthogonal_complements(filt):
    """W_d = orthogonal complement of V_{d+1} inside V_d under the invariant
    inner product; returns a list of lists of PolyForms."""
    n = filt.V.n
    out = []
    for d in range(n + 1):
        Vd = filt[d]
        Vd1 = filt[d + 1]
        if Vd1.dim == 0:
            out.append(list(Vd.basis))
            continue
        term_keys = set()
        for b in Vd.basis:
            term_keys |= set(b.canon().terms)
        duals = [_metric_dual(u, term_keys) for u in Vd1.basis]
        ech = Echelon()
        kernel = []
        kept = []
        for b in Vd.basis:
            bc = b.canon().terms
            vec = {}
            for i, du in enumerate(duals):
                val = sum((c * du[t] for t, c in bc.items() if t in du), Q(0))
                if val:
                    vec[i] = val
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
        if len(kernel) != Vd.dim - Vd1.dim:
            raise DecompositionError("orthogonal complement has wrong dimension")
        out.append(kernel)
    return out


# ---------------------------------------------------------------------------
# the decomposition map


def local_face_permutation(n, perm, face):
    """The permutation of the face's local labels realizing the pullback
    S_pi restricted to the face: source face is perm^{-1}(face)."""
    inv = inverse(perm)
    src = tuple(sorted(inv[v] for v in face))
    pos = {v: i for i, v in enumerate(face)}
    rho = tuple(pos[perm[v]] for v in src)
    return src, rho


class DecompositionMap:
    """Block matrix of the trace map from V (split along complements W_d)
    into the direct sum of trace-free face spaces."""

    def __init__(self, V, complements):
        self.V = V
        n = V.n
        self.complements = complements  # list over d of list of PolyForm
        self.domain_basis = [w for Wd in complements for w in Wd]
        self._domain_ech = None
        # face spaces: trace of V to each face, then trace-free part
        # (faces of dimension below the form degree carry no trace)
        self.faces = {d: faces_of_dim(n, d) if d >= V.k else []
                      for d in range(n + 1)}
        self.face_spaces = {}
        for d in range(n + 1):
            for face in self.faces[d]:
                traced = reduce_to_basis(b.trace(face) for b in V.basis)
                VF = FormSpace("custom", V.r, V.k, d, False, traced)
                self.face_spaces[face] = trace_free_subspace(VF)
        # codomain coordinates: (face, i) for i < dim face space
        self.codomain_index = []
        for d in range(n + 1):
            for face in self.faces[d]:
                for i in range(self.face_spaces[face].dim):
                    self.codomain_index.append((face, i))
        # columns: image of each complement basis element
        self._columns = []
        self._ech = Echelon()
        self._independent = True
        col_tag = 0
        for d, Wd in enumerate(complements):
            for w in Wd:
                col = {}
                for face in self.faces[d]:
                    tr = w.trace(face)
                    VF = self.face_spaces[face]
                    coords = VF.coords(tr)  # raises if trace not trace-free on face
                    for i, c in enumerate(coords):
                        if c:
                            col[(face, i)] = c
                self._columns.append(col)
                if self._ech.insert(col, col_tag) is not None:
                    self._independent = False
                col_tag += 1

    @property
    def codomain_dim(self):
        return len(self.codomain_index)

    def is_injective(self):
        return self._independent

    def is_isomorphism(self):
        return self.is_injective() and self.V.dim == self.codomain_dim

    def apply(self, form):
        """Image of a form of V as a sparse codomain vector."""
        if self._domain_ech is None:
            ech = Echelon()
            for i, b in enumerate(self.domain_basis):
                ech.insert(b.canon().terms, i)
            self._domain_ech = ech
        combo = self._domain_ech.solve(form.canon().terms)
        coords = [combo.get(i, Q(0)) for i in range(len(self.domain_basis))]
        out = {}
        for c, col in zip(coords, self._columns):
            if c:
                for key, v in col.items():
                    cur = out.get(key)
                    cur = c * v if cur is None else cur + c * v
                    if cur:
                        out[key] = cur
                    elif key in out:
                        del out[key]
        return out

    def block_action(self, perm, vec):
        """The permutation action on the codomain: the component at face F is
        the local pullback of the component at the source face perm^{-1}(F)."""
        out = {}
        for d in range(self.V.n + 1):
            for face in self.faces[d]:
                src, rho = local_face_permutation(self.V.n, perm, face)
                VF_src = self.face_spaces[src]
                acc = PolyForm.zero(d, self.V.k)
                for i in range(VF_src.dim):
                    c = vec.get((src, i))
                    if c:
                        acc = acc + VF_src.basis[i].scale(c)
                if acc.is_zero():
                    continue
                img = acc.pullback(rho)
                for i, c in enumerate(self.face_spaces[face].coords(img)):
                    if c:
                        out[(face, i)] = c
        return out

    def solve(self, vec):
        """Preimage of a codomain vector as a form in V (map must be injective
        and the vector must be in the image)."""
        combo = self._ech.solve(vec)
        out = PolyForm.zero(self.V.n, self.V.k)
        for tag, c in combo.items():
            out = out + self.domain_basis[tag].scale(c)
        return out.canon()

    def to_record(self):
        return {
            "space": {"family": self.V.family, "r": self.V.r, "k": self.V.k,
                      "n": self.V.n, "trace_free": self.V.trace_free,
                      "dim": self.V.dim},
            "blocks": [{"face": list(face), "dim": self.face_spaces[face].dim}
                       for d in range(self.V.n + 1) for face in self.faces[d]],
            "complement_dims": [len(Wd) for Wd in self.complements],
            "injective": self.is_injective(),
            "isomorphism": self.is_isomorphism(),
        }


_DECOMP_CACHE = {}


def decomposition_map(V, cache_key=None):
    """Decomposition map with the default orthogonal complements."""
    if cache_key is not None and cache_key in _DECOMP_CACHE:
        return _DECOMP_CACHE[cache_key]
    filt = filtration(V)
    D = DecompositionMap(V, orthogonal_complements(filt))
    if not D.is_injective():
        raise DecompositionError("decomposition map is not injective")
    if cache_key is not None:
        _DECOMP_CACHE[cache_key] = D
    return D


def check_iso(V):
    return decomposition_map(V).is_isomorphism()


def complement_is_stable(V, Wd):
    """Whether a complement block is preserved by the full vertex symmetry."""
    if not Wd:
        return True
    group = SymmetricGroup(V.n)
    ech = Echelon()
    for i, w in enumerate(Wd):
        ech.insert(w.canon().terms, i)
    return all(ech.contains(w.pullback(p).terms)
               for p in group.generators() for w in Wd)


def custom_complement(V, spans):
    """Decomposition map built from user-supplied complements.

    `spans` maps a dimension d to a proposed spanning set of W_d; missing
    dimensions fall back to the orthogonal complement.  The direct-sum
    condition V_d = W_d + V_{d+1} is checked; symmetry-stability of each
    supplied block is checked and reported in `D.stability`.
    """
    filt = filtration(V)
    defaults = orthogonal_complements(filt)
    complements = []
    stability = {}
    for d in range(V.n + 1):
        if d not in spans:
            complements.append(defaults[d])
            stability[d] = True
            continue
        Wd = [f.canon() for f in spans[d]]
        Vd, Vd1 = filt[d], filt[d + 1]
        for w in Wd:
            if not Vd.contains(w):
                raise DirectSumError("proposed complement is not inside V_d")
        ech = Echelon()
        for i, u in enumerate(Vd1.basis):
            ech.insert(u.canon().terms, ("v", i))
        indep = 0
        for i, w in enumerate(Wd):
            if ech.insert(w.terms, ("w", i)) is None:
                indep += 1
        if indep != len(Wd) or len(Wd) != Vd.dim - Vd1.dim:
            raise DirectSumError(
                f"V_{d} is not the direct sum of the proposed W_{d} and V_{d+1}")
        complements.append(Wd)
        stability[d] = complement_is_stable(V, Wd)
    D = DecompositionMap(V, complements)
    if not D.is_injective():
        raise DecompositionError("decomposition map is not injective")
    D.stability = stability
    return D


# ---------------------------------------------------------------------------
# lifting and extension


def lift_basis(D, face_bases):
    """Pull a family of per-dimension trace-free bases back through the
    decomposition map, placing each reference basis element on every face via
    the increasing-vertex-order coset representative.

    `face_bases` maps d to an (up-to-sign invariant) basis of the trace-free
    block on the standard d-simplex.  Requires the map to be a bijection.
    """
    if not D.is_isomorphism():
        raise DecompositionError("decomposition map is not a bijection")
    out = []
    for d in range(D.V.n + 1):
        betas = face_bases.get(d, [])
        for face in D.faces[d]:
            VF = D.face_spaces[face]
            for beta in betas:
                coords = VF.coords(beta)
                vec = {(face, i): c for i, c in enumerate(coords) if c}
                out.append(D.solve(vec))
    if len(out) != D.V.dim:
        raise DecompositionError("face bases do not fill the decomposition")
    return out


class ExtensionOperator:
    """E = D^{-1} composed with inclusion of one face summand: a right inverse
    of the trace to that face, vanishing on the other faces of its dimension."""

    def __init__(self, D, face):
        if not D.is_isomorphism():
            raise DecompositionError("decomposition map is not a bijection")
        self.D = D
        self.face = tuple(face)
        self.face_space = D.face_spaces[self.face]
        self.images = []
        for i in range(self.face_space.dim):
            self.images.append(D.solve({(self.face, i): Q(1)}))

    def apply(self, face_form):
        coords = self.face_space.coords(face_form)
        out = PolyForm.zero(self.D.V.n, self.D.V.k)
        for c, img in zip(coords, self.images):
            if c:
                out = out + img.scale(c)
        return out.canon()


def extension_operator(D, face):
    return ExtensionOperator(D, face)
