"""Symmetric group actions on form spaces and the representation-theoretic
machinery for up-to-sign invariant bases.

A permutation is a tuple `p` with p[i] the image of i.  Characters are stored
as dicts element -> integer value, which is convenient for the induction
formula and for restriction to subgroups; the class-function view is derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .exactla import mat_trace
from .rat import Q
from .spaces import SpaceError


class SymmetryError(ValueError):
    pass


class UnsupportedSizeError(SymmetryError):
    pass


def compose(p, q):
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cycle_type(p):
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


class SymmetricGroup:
    """The group S_{n+1} of permutations of the vertices {0..n} of T^n."""

    _cache = {}

    def __new__(cls, n):
        if n not in cls._cache:
            obj = super().__new__(cls)
            obj._init(n)
            cls._cache[n] = obj
        return cls._cache[n]

    def _init(self, n):
        self.n = n
        self.elements = sorted(permutations(range(n + 1)))
        self.identity = tuple(range(n + 1))
        classes = {}
        for p in self.elements:
            classes.setdefault(cycle_type(p), []).append(p)
        self.conjugacy_classes = dict(sorted(classes.items()))
        assert sum(len(c) for c in self.conjugacy_classes.values()) == len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def class_representatives(self):
        return [c[0] for c in self.conjugacy_classes.values()]

    def generators(self):
        if self.n == 0:
            return [self.identity]
        swap = list(range(self.n + 1))
        swap[0], swap[1] = 1, 0
        cyc = tuple(list(range(1, self.n + 1)) + [0])
        return [tuple(swap), cyc]

    def z3_generator(self):
        """The designated 3-cycle 0 -> 1 -> 2 -> 0 (fixing all other vertices)."""
        if self.n < 2:
            raise SymmetryError("Z/3 needs at least three vertices")
        images = list(range(self.n + 1))
        images[0], images[1], images[2] = 1, 2, 0
        return tuple(images)

    def z3_subgroup(self):
        g = self.z3_generator()
        return (self.identity, g, compose(g, g))


# ---------------------------------------------------------------------------
# actions on FormSpaces


def action_matrix(V, perm):
    """Exact matrix of the pullback action in V's stored basis (columns are
    the coordinates of the images of the basis elements)."""
    cols = []
    for b in V.basis:
        img = b.pullback(perm)
        try:
            cols.append(V.coords(img))
        except SpaceError as e:
            raise SymmetryError(
                "space is not closed under the group action") from e
    return [[cols[j][i] for j in range(V.dim)] for i in range(V.dim)]


def character(V, group):
    """Character of the action of S_{n+1} on V, as a dict element -> value."""
    if group.n != V.n:
        raise SymmetryError("group does not act on this simplex dimension")
    values = {}
    for ctype, members in group.conjugacy_classes.items():
        tr = mat_trace(action_matrix(V, members[0]))
        if tr.denominator != 1:
            raise SymmetryError("non-integer character value")
        for p in members:
            values[p] = int(tr)
    return values


def character_on_classes(values, group):
    return {ctype: values[members[0]]
            for ctype, members in group.conjugacy_classes.items()}


@dataclass(frozen=True)
class Z3Decomposition:
    """Multiplicities V = m * (trivial) + n2 * (rotation plane) over Z/3."""
    m: int
    n2: int

    @property
    def dim(self):
        return self.m + 2 * self.n2


def z3_decompose(V):
    group = SymmetricGroup(V.n)
    g = group.z3_generator()
    chi = mat_trace(action_matrix(V, g))
    d = V.dim
    m = (Q(d) + 2 * chi) / 3
    n2 = (Q(d) - chi) / 3
    if m.denominator != 1 or n2.denominator != 1 or m < 0 or n2 < 0:
        raise SymmetryError(
            f"invalid Z/3 multiplicities m={m}, n2={n2} for dim {d}")
    return Z3Decomposition(int(m), int(n2))


def z3_obstruction(V):
    """(has_invariant_basis_over_Z3, certificate).  True iff m >= n2."""
    dec = z3_decompose(V)
    return dec.m >= dec.n2, dec


# ---------------------------------------------------------------------------
# up-to-sign verification


@dataclass(frozen=True)
class SignedPermutationImage:
    """For one group element: basis element i maps to signs[i]*basis[targets[i]]."""
    perm: tuple
    targets: tuple
    signs: tuple

    def to_record(self):
        return {"perm": list(self.perm), "targets": list(self.targets),
                "signs": list(self.signs)}


@dataclass(frozen=True)
class FailureWitness:
    perm: tuple
    index: int

    def to_record(self):
        return {"perm": list(self.perm), "index": self.index}


def verify_invariant_up_to_sign(basis, group):
    """Check that every group element maps every basis element to plus or
    minus a basis element.  Returns (True, [SignedPermutationImage per
    element]) or (False, FailureWitness)."""
    lookup = {}
    for i, b in enumerate(basis):
        kb = b.canon().key()
        if kb in lookup:
            raise SymmetryError("duplicate basis element")
        lookup[kb] = (i, 1)
        nk = (-b).canon().key()
        if nk not in lookup:  # a zero form would collide with its negative
            lookup[nk] = (i, -1)
    transcript = []
    for p in group.elements:
        targets = []
        signs = []
        for i, b in enumerate(basis):
            img = b.pullback(p)
            hit = lookup.get(img.key())
            if hit is None:
                return False, FailureWitness(p, i)
            targets.append(hit[0])
            signs.append(hit[1])
        if sorted(targets) != list(range(len(basis))):
            return False, FailureWitness(p, targets.index(max(targets)))
        transcript.append(SignedPermutationImage(p, tuple(targets), tuple(signs)))
    return True, transcript


# ---------------------------------------------------------------------------
# subgroup enumeration and induced characters


def _closure(group, gens):
    elems = {group.identity}
    frontier = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for h in list(elems):
                for prod in (compose(g, h), compose(h, g)):
                    if prod not in elems:
                        elems.add(prod)
                        nxt.append(prod)
            if g not in elems:
                elems.add(g)
                nxt.append(g)
        frontier = nxt
    return frozenset(elems)


def all_subgroups(group):
    """Every subgroup of S_{n+1}, n <= 3, via closure of generating sets."""
    if group.n > 3:
        raise UnsupportedSizeError("subgroup enumeration supports n <= 3 only")
    found = {frozenset({group.identity})}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for g in group.elements:
                if g in H:
                    continue
                K = _closure(group, set(H) | {g})
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def conjugate_subgroup(group, H, g):
    gi = inverse(g)
    return frozenset(compose(g, compose(h, gi)) for h in H)


def subgroups(group):
    """Conjugacy-class representatives of all subgroups, deterministically
    ordered by (order, sorted elements)."""
    reps = []
    seen = set()
    for H in all_subgroups(group):
        if H in seen:
            continue
        orbit = {conjugate_subgroup(group, H, g) for g in group.elements}
        seen |= orbit
        reps.append(min(orbit, key=lambda K: sorted(K)))
    return sorted(reps, key=lambda H: (len(H), sorted(H)))


def _subgroups_within(group, H):
    """All subgroups of a given subgroup H."""
    found = {frozenset({group.identity})}
    frontier = list(found)
    elems = sorted(H)
    while frontier:
        nxt = []
        for K in frontier:
            for g in elems:
                if g in K:
                    continue
                L = _closure(group, set(K) | {g})
                if L <= H and L not in found:
                    found.add(L)
                    nxt.append(L)
        frontier = nxt
    return found


def sign_characters(H, group):
    """All homomorphisms H -> {plus or minus 1}: the real one-dimensional
    representations of H.  Found via index-2 subgroups (which are normal)."""
    chars = [{h: 1 for h in H}]
    kernels = sorted((K for K in _subgroups_within(group, H)
                      if 2 * len(K) == len(H)), key=lambda K: sorted(K))
    for K in kernels:
        chars.append({h: (1 if h in K else -1) for h in H})
    return chars


def induced_character(H, L, group):
    """Character of Ind_H^G L: chi(g) = (1/|H|) sum over x in G with
    x^-1 g x in H of L(x^-1 g x)."""
    values = {}
    for g in group.elements:
        total = 0
        for x in group.elements:
            c = compose(inverse(x), compose(g, x))
            if c in H:
                total += L[c]
        q, rem = divmod(total, len(H))
        if rem:
            raise SymmetryError("induced character value is not an integer")
        values[g] = q
    return values


# ---------------------------------------------------------------------------
# irreducible characters (standard tables, keyed by cycle type)

_IRREDUCIBLE_TABLES = {
    0: {"triv": {(1,): 1}},
    1: {"triv": {(1, 1): 1, (2,): 1},
        "sign": {(1, 1): 1, (2,): -1}},
    2: {"triv": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
        "sign": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
        "std": {(1, 1, 1): 2, (2, 1): 0, (3,): -1}},
    3: {"triv": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
        "sign": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
        "plane": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
        "std": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
        "std-sign": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1}},
}


def irreducible_characters(group):
    if group.n not in _IRREDUCIBLE_TABLES:
        raise UnsupportedSizeError("irreducible tables cover n <= 3 only")
    table = _IRREDUCIBLE_TABLES[group.n]
    out = []
    for name, by_class in table.items():
        out.append((name, {p: by_class[cycle_type(p)] for p in group.elements}))
    return out


def irreducible_multiplicities(chi, group):
    """Multiplicity vector of a character over the irreducibles; raises if the
    input is not the character of a genuine real representation."""
    mults = []
    order = group.order
    for name, irr in irreducible_characters(group):
        total = sum(chi[g] * irr[g] for g in group.elements)
        q, rem = divmod(total, order)
        if rem or q < 0:
            raise SymmetryError(f"not a genuine character (multiplicity of "
                                f"{name} is {total}/{order})")
        mults.append(q)
    return tuple(mults)


# ---------------------------------------------------------------------------
# the monomial-representation cone test


@dataclass(frozen=True)
class ConeVerdict:
    exists: bool
    decomposition: tuple  # ((label, count), ...) when exists
    generators_tried: int

    def to_record(self):
        return {"exists": self.exists,
                "decomposition": [{"induced_from": lbl, "count": c}
                                  for lbl, c in self.decomposition],
                "generators_tried": self.generators_tried}


def monomial_generators(group):
    """Multiplicity vectors of all characters induced from one-dimensional
    (sign-valued) representations of subgroups, deduplicated."""
    gens = {}
    for hi, H in enumerate(subgroups(group)):
        for li, L in enumerate(sign_characters(H, group)):
            ind = induced_character(H, L, group)
            vec = irreducible_multiplicities(ind, group)
            label = f"H{len(H)}#{hi}/chi{li}"
            gens.setdefault(vec, label)
    items = [(vec, label) for vec, label in gens.items()]
    # big representations first: they constrain the search the most
    items.sort(key=lambda t: (-sum(t[0]), t[0]))
    return items


def monomial_cone_test(chi, group):
    """Decide whether a character lies in the cone of characters induced from
    one-dimensional subgroup representations; bounded exhaustive search."""
    target = irreducible_multiplicities(chi, group)
    gens = monomial_generators(group)
    n_irr = len(target)
    suffix_support = [None] * (len(gens) + 1)
    support = tuple(False for _ in range(n_irr))
    suffix_support[len(gens)] = support
    for i in range(len(gens) - 1, -1, -1):
        vec = gens[i][0]
        support = tuple(s or v > 0 for s, v in zip(suffix_support[i + 1], vec))
        suffix_support[i] = support
    failed = set()

    def search(idx, rem):
        if not any(rem):
            return []
        if idx == len(gens):
            return None
        state = (idx, rem)
        if state in failed:
            return None
        if any(r > 0 and not s for r, s in zip(rem, suffix_support[idx])):
            failed.add(state)
            return None
        vec, label = gens[idx]
        bound = min((r // v for r, v in zip(rem, vec) if v), default=0)
        for count in range(bound + 1):
            new_rem = tuple(r - count * v for r, v in zip(rem, vec))
            sub = search(idx + 1, new_rem)
            if sub is not None:
                return ([(label, count)] if count else []) + sub
        failed.add(state)
        return None

    result = search(0, target)
    if result is None:
        return ConeVerdict(False, (), len(gens))
    return ConeVerdict(True, tuple(result), len(gens))
