"""Isotropic-plane (1-cusp) classification for the four maximal families.

The quotient J-perp/J of an isotropic plane inside one of the period
lattices T is computed two ways:

* directly, by saturating a plane spanned by a vector and its image
  under the order-3 action and taking the induced form on J-perp/J;
* combinatorially, by embedding the complementary definite lattice P
  into the root systems of the two relevant rank-24 even unimodular
  lattices (E8^3, and the index-9 glue overlattice of E6^4) and reading
  off orthogonal complements of root subsystems.

The embedding search walks simple roots of the factors of P through the
component's root system, requiring the Cartan pairings at every step.
Candidates at each level are reduced to orbit representatives under the
reflections fixing everything chosen so far; this preserves the set of
reachable complement isometry types while collapsing the enormous
redundancy of the raw search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exactla import (
    IntMatrix,
    hnf,
    index_in,
    int_express,
    int_mat_inv,
    rat,
    rat_mul,
    saturate,
)
from .lattice import (
    Lattice,
    LatticeError,
    Overlattice,
    Sublattice,
    direct_sum,
    disc_group,
    glue_overlattice,
    hyperbolic,
    is_p_elementary,
    quotient_by_isotropic,
    rescale,
    root_lattice,
    signature,
)
from .roots import (
    EMPTY_TYPE,
    RootSystemType,
    enumerate_norm,
    root_system,
    _type_of_root_subset,
)
from .eisenstein import (
    RhoLattice,
    assemble,
    fixed_sublattice,
    fpf_order3,
    is_estar,
    rho3_u_u,
    rho3_u_u3,
    rho_lattice,
)

Symbol = Tuple[str, int]


class CuspError(LatticeError):
    pass


# -- families ----------------------------------------------------------

FAMILY_GENUS = {(0, 2): 5, (0, 1): 4, (1, 1): 3, (2, 1): 2}

_FAMILY_S: Dict[Tuple[int, int], Tuple] = {
    (0, 2): (("U", 1),),
    (0, 1): (("U", 3),),
    (1, 1): (("U", 3), ("A", 2)),
    (2, 1): (("U", 3), ("A", 2), ("A", 2)),
}

_FAMILY_T: Dict[Tuple[int, int], Tuple] = {
    (0, 2): (("U", 1), ("U", 1), ("E", 8), ("E", 8)),
    (0, 1): (("U", 1), ("U", 3), ("E", 8), ("E", 8)),
    (1, 1): (("U", 1), ("U", 3), ("E", 6), ("E", 8)),
    (2, 1): (("U", 1), ("U", 3), ("E", 6), ("E", 6)),
}

_FAMILY_P: Dict[Tuple[int, int], Tuple[Symbol, ...]] = {
    (0, 2): (("E", 8),),
    (0, 1): (("E", 6), ("A", 2)),
    (1, 1): (("E", 6), ("A", 2), ("A", 2)),
    (2, 1): (("E", 6), ("A", 2), ("A", 2), ("A", 2)),
}


@dataclass(frozen=True)
class FamilyId:
    n: int
    k: int

    def __post_init__(self):
        if (self.n, self.k) not in FAMILY_GENUS:
            raise CuspError(f"unknown family ({self.n},{self.k})")

    @property
    def g(self) -> int:
        return FAMILY_GENUS[(self.n, self.k)]

    def __str__(self) -> str:
        return f"({self.n},{self.k})"


@dataclass
class FamilyData:
    family: FamilyId
    s: Lattice
    t: Lattice
    p: Lattice
    p_factors: Tuple[Symbol, ...]
    rho_t: RhoLattice


def _sum_from_symbols(symbols, negative_roots=True) -> Lattice:
    parts = []
    for sym, n in symbols:
        if sym == "U":
            parts.append(hyperbolic(n))
        else:
            l = root_lattice(sym, n)
            parts.append(rescale(l, -1) if negative_roots else l)
    return direct_sum(*parts)


def family_data(n: int, k: int) -> FamilyData:
    fam = FamilyId(n, k)
    s = _sum_from_symbols(_FAMILY_S[(n, k)])
    t = _sum_from_symbols(_FAMILY_T[(n, k)])
    p = _sum_from_symbols(_FAMILY_P[(n, k)])

    blocks: List[RhoLattice] = []
    first_two = _FAMILY_T[(n, k)][:2]
    if first_two == (("U", 1), ("U", 1)):
        blocks.append(rho3_u_u())
    else:
        blocks.append(rho3_u_u3())
    for sym, m in _FAMILY_T[(n, k)][2:]:
        fpf = fpf_order3(sym, m)
        blocks.append(rho_lattice(rescale(fpf.lattice, -1), fpf.rho.matrix))
    rho_t = assemble(blocks)
    if rho_t.lattice.gram != t.gram:
        raise CuspError("assembled action lives on the wrong lattice")

    # structural checks
    if signature(t) != (2, t.rank - 2):
        raise CuspError("period lattice has the wrong signature")
    if signature(p) != (0, p.rank):
        raise CuspError("complement lattice is not negative definite")
    if t.rank + p.rank != 28:
        raise CuspError("ranks do not sum to the rank of the ambient unimodular lattice")
    if abs(t.det()) != abs(p.det()):
        raise CuspError("discriminant orders of T and P disagree")
    if not is_p_elementary(t, 3):
        raise CuspError("period lattice is not 3-elementary")
    if fixed_sublattice(rho_t).rank != 0:
        raise CuspError("period action has fixed vectors")
    if not is_estar(rho_t):
        raise CuspError("period action is not trivial on the discriminant group")
    return FamilyData(fam, s, t, p, _FAMILY_P[(n, k)], rho_t)


# -- root-system machinery per component -------------------------------


class ComponentSystem:
    """Precomputed root data for one irreducible component (E6 or E8)."""

    def __init__(self, sym: str, n: int):
        self.symbol: Symbol = (sym, n)
        self.lattice = root_lattice(sym, n)
        self.roots: List[Tuple[int, ...]] = enumerate_norm(self.lattice, 2)
        self.nroots = len(self.roots)
        self.index = {v: i for i, v in enumerate(self.roots)}
        g = self.lattice.gram.entries
        rk = n
        gv = [
            [sum(g[i][j] * v[j] for j in range(rk)) for i in range(rk)]
            for v in self.roots
        ]
        self.pair = [
            [sum(v[i] * gw[i] for i in range(rk)) for gw in gv] for v in self.roots
        ]
        # masks[i][v+2] = bitmask of roots pairing v with root i
        self.masks = [
            [0] * 5 for _ in range(self.nroots)
        ]
        for i in range(self.nroots):
            row = self.pair[i]
            masks_i = self.masks[i]
            for j in range(self.nroots):
                masks_i[row[j] + 2] |= 1 << j
        # reflection permutations: s_i(r_j) = r_j - <r_j, r_i> r_i
        self.refl: List[Tuple[int, ...]] = []
        for i in range(self.nroots):
            ri = self.roots[i]
            perm = []
            for j in range(self.nroots):
                c = self.pair[j][i]
                v = tuple(a - c * b for a, b in zip(self.roots[j], ri))
                perm.append(self.index[v])
            self.refl.append(tuple(perm))
        # canonical representative per +- pair: first index wins
        self.pos_reps = [
            i for i, v in enumerate(self.roots) if self.index[tuple(-c for c in v)] > i
        ]
        self.all_mask = (1 << self.nroots) - 1
        # dual class data: order of each class of L*/L and minimal norms
        self._dual = None

    def orbit_reps(self, cand_mask: int, refl_mask: int) -> List[int]:
        """One representative per orbit of the candidate set under the
        reflections whose roots lie in ``refl_mask``."""
        cands = _bits(cand_mask)
        if not cands:
            return []
        refls = [i for i in self.pos_reps if (refl_mask >> i) & 1]
        cand_set = set(cands)
        seen: set = set()
        reps = []
        for c in cands:
            if c in seen:
                continue
            reps.append(c)
            stack = [c]
            seen.add(c)
            while stack:
                x = stack.pop()
                for i in refls:
                    y = self.refl[i][x]
                    if y in cand_set and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return reps


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


_COMPONENTS: Dict[Symbol, ComponentSystem] = {}


def component_system(sym: str, n: int) -> ComponentSystem:
    key = (sym, n)
    if key not in _COMPONENTS:
        _COMPONENTS[key] = ComponentSystem(sym, n)
    return _COMPONENTS[key]


_FACTOR_ORDERS = {
    ("A", 1): [1],
    ("A", 2): [1, 2],
    ("A", 3): [1, 2, 3],
    ("E", 6): [1, 3, 4, 2, 5, 6],
    ("E", 8): [1, 3, 4, 2, 5, 6, 7, 8],
}


def _factor_requirements(sym: str, n: int) -> List[List[int]]:
    """Pairing requirements of each simple root against the earlier ones,
    in a connectivity-friendly choice order."""
    from .lattice import cartan_gram

    order = _FACTOR_ORDERS.get((sym, n))
    if order is None:
        order = list(range(1, n + 1))
    c = cartan_gram(sym, n).entries
    reqs = []
    for k, idx in enumerate(order):
        reqs.append([c[idx - 1][order[j] - 1] for j in range(k)])
    return reqs


@dataclass(frozen=True)
class ComponentOutcome:
    """Distinct result of embedding a factor multiset into one component."""

    factors: Tuple[Symbol, ...]
    complement_type: RootSystemType
    complement_rank: int
    rootspan_index: int  # [complement : span of its roots]
    dual_image_order: int  # [P-perp taken in the dual : P-perp in the component]
    witness: Tuple[Tuple[int, ...], ...]  # root indices per factor
    complement_mask: int


def _component_dual_order(cs: ComponentSystem, chosen: Sequence[int]) -> int:
    """Order of the image of the dual-side complement in the discriminant group."""
    rk = cs.lattice.rank
    if not chosen:
        return abs(cs.lattice.det())
    rows = IntMatrix([list(cs.roots[i]) for i in chosen], cols=rk)
    from .exactla import kernel_basis

    pairing = cs.lattice.gram * rows.transpose()
    comp = kernel_basis(pairing.transpose())  # complement inside the lattice
    dual_side = kernel_basis(rows)  # y with y . rows^T = 0; x = y G^-1
    if comp.rows == 0:
        return 1
    ginv = int_mat_inv(cs.lattice.gram)
    dual_rows = rat_mul(rat(dual_side), ginv)
    from .exactla import rat_express

    coeff = rat_express(rat(comp), dual_rows)
    d = 1
    # index = |det| of the coefficient matrix expressing the sublattice in
    # the superlattice basis
    n = len(coeff)
    mat = [[x for x in row] for row in coeff]
    # fraction-free determinant of a small rational matrix
    from fractions import Fraction as F

    detv = F(1)
    m = [row[:] for row in mat]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise CuspError("degenerate dual complement")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            detv = -detv
        detv *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] * inv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    if detv.denominator != 1:
        raise CuspError("dual complement index is not integral")
    return abs(detv.numerator)


def _outcome_from_leaf(
    cs: ComponentSystem, factors: Tuple[Symbol, ...], flat: List[int], sizes: List[int]
) -> ComponentOutcome:
    rk = cs.lattice.rank
    comp_mask = cs.all_mask
    for i in flat:
        comp_mask &= cs.masks[i][0 + 2]
    comp_roots = [cs.roots[i] for i in _bits(comp_mask)]
    ctype = _type_of_root_subset(comp_roots, cs.lattice)
    if flat:
        rows = IntMatrix([list(cs.roots[i]) for i in flat], cols=rk)
        from .exactla import kernel_basis

        pairing = cs.lattice.gram * rows.transpose()
        comp_basis = kernel_basis(pairing.transpose())
    else:
        comp_basis = IntMatrix.identity(rk)
    crank = comp_basis.rows
    if ctype.rank != crank:
        raise CuspError("complement is not rationally spanned by its roots")
    if comp_roots:
        h, _ = hnf(IntMatrix([list(v) for v in comp_roots], cols=rk))
        span = IntMatrix([r for r in h.entries if any(r)], cols=rk)
        rootspan_index = index_in(span, comp_basis)
    else:
        rootspan_index = 1
    dual_order = _component_dual_order(cs, flat)
    witness = []
    pos = 0
    for s in sizes:
        witness.append(tuple(flat[pos : pos + s]))
        pos += s
    return ComponentOutcome(
        factors, ctype, crank, rootspan_index, dual_order, tuple(witness), comp_mask
    )


_EMBED_CACHE: Dict[Tuple[Symbol, Tuple[Symbol, ...]], Tuple[ComponentOutcome, ...]] = {}


def embed_multiset(comp: Symbol, factors: Sequence[Symbol]) -> Tuple[ComponentOutcome, ...]:
    """All distinct ways to embed a multiset of ADE factors orthogonally
    into one component, up to the data that determines the quotients."""
    factors = tuple(sorted(factors, key=lambda s: (-s[1], s[0])))
    key = (comp, factors)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    cs = component_system(*comp)
    total_rank = sum(n for _, n in factors)
    if total_rank > cs.lattice.rank:
        _EMBED_CACHE[key] = ()
        return ()
    # flatten requirement lists: within factors Cartan pairings, across
    # factors orthogonality
    reqs: List[List[int]] = []
    sizes = []
    for sym, n in factors:
        freqs = _factor_requirements(sym, n)
        base = len(reqs)
        for k, req in enumerate(freqs):
            reqs.append([0] * base + req)
        sizes.append(len(freqs))
    total = len(reqs)
    outcomes: Dict[Tuple, ComponentOutcome] = {}
    full_rank = total_rank == cs.lattice.rank
    found_full = [False]

    def search(depth: int, chosen: List[int], orth_mask: int):
        if depth == total:
            out = _outcome_from_leaf(cs, factors, chosen, sizes)
            dkey = (str(out.complement_type), out.rootspan_index, out.dual_image_order)
            outcomes.setdefault(dkey, out)
            if full_rank:
                found_full[0] = True
            return
        mask = cs.all_mask
        for j, val in enumerate(reqs[depth]):
            mask &= cs.masks[chosen[j]][val + 2]
        for rep in cs.orbit_reps(mask, orth_mask):
            if full_rank and found_full[0]:
                # complement is empty either way; one witness suffices
                return
            chosen.append(rep)
            search(depth + 1, chosen, orth_mask & cs.masks[rep][2])
            chosen.pop()

    search(0, [], cs.all_mask)
    result = tuple(sorted(outcomes.values(), key=lambda o: str(o.complement_type)))
    _EMBED_CACHE[key] = result
    return result


# -- rank-24 unimodular models ------------------------------------------


@dataclass
class NiemeierModel:
    kind: str
    comp: Symbol
    ncomp: int
    r: Lattice
    n: Lattice
    overlattice: Optional[Overlattice]
    glue_code: Tuple[Tuple[int, ...], ...]  # all nonzero codewords, or ()
    perm_group: Tuple[Tuple[int, ...], ...]
    root_count: int

    def component_offset(self, c: int) -> int:
        return c * self.comp[1]


def _e6_dual_class_min() -> Fraction:
    """Minimal norm of the nontrivial discriminant classes of E6 (both
    classes have the same minimum by symmetry), derived by enumeration."""
    l = root_lattice("E", 6)
    ginv = int_mat_inv(l.gram)
    # dual lattice rescaled by 3 is integral: gram 3 * G^-1
    entries = []
    for row in rat_mul(ginv, rat(IntMatrix.identity(6).scale(3))):
        entries.append([x.numerator if x.denominator == 1 else None for x in row])
    if any(x is None for r in entries for x in r):
        raise CuspError("rescaled dual of E6 is not integral")
    dual3 = Lattice(IntMatrix(entries))
    best: Dict[int, Fraction] = {}
    # classes are detected through the pairing with a fixed generator
    for m in range(1, 7):
        for v in enumerate_norm(dual3, m):
            # v has dual-basis coordinates; its class in Z/3 is the total
            # pairing with the root basis mod 3 detected via G^-1 action
            cls = _e6_class_of_dual_coords(v)
            if cls != 0 and cls not in best:
                best[cls] = Fraction(m, 3)
        if len(best) == 2:
            break
    if set(best) != {1, 2}:
        raise CuspError("failed to locate the nontrivial dual classes of E6")
    return min(best.values())


_E6_CLASS_ROW: List[int] | None = None


def _e6_class_of_dual_coords(v: Sequence[int]) -> int:
    """Class in A = Z/3 of an E6-dual vector given in dual-basis coordinates."""
    global _E6_CLASS_ROW
    if _E6_CLASS_ROW is None:
        l = root_lattice("E", 6)
        ginv = int_mat_inv(l.gram)
        # class of dual basis row i: the multiple t_i of the generator
        # (row 0) with row_i - t_i*row_0 integral
        gen = ginv[0]
        ts = []
        for i in range(6):
            for t in range(3):
                diff = [a - t * b for a, b in zip(ginv[i], gen)]
                if all(x.denominator == 1 for x in diff):
                    ts.append(t)
                    break
            else:
                raise CuspError("dual row is not a multiple of the generator class")
        _E6_CLASS_ROW = ts
    return sum(c * t for c, t in zip(v, _E6_CLASS_ROW)) % 3


def _e6_dual_generator() -> Tuple[Fraction, ...]:
    """A dual vector of E6 generating the discriminant group."""
    l = root_lattice("E", 6)
    ginv = int_mat_inv(l.gram)
    row = ginv[0]
    if all(x.denominator == 1 for x in row):
        raise CuspError("chosen dual row lies in the lattice")
    return row


def _subspaces_f3_4() -> List[Tuple[Tuple[int, ...], ...]]:
    """All 2-dimensional subspaces of F_3^4, each as its tuple of nonzero
    vectors sorted lexicographically."""
    vectors = [
        (a, b, c, d)
        for a in range(3)
        for b in range(3)
        for c in range(3)
        for d in range(3)
    ][1:]
    seen = set()
    out = []
    for i, v in enumerate(vectors):
        for w in vectors[i + 1 :]:
            # independent iff w is not a multiple of v
            if w == tuple((2 * x) % 3 for x in v):
                continue
            span = set()
            for s in range(3):
                for t in range(3):
                    span.add(tuple((s * x + t * y) % 3 for x, y in zip(v, w)))
            span.discard((0, 0, 0, 0))
            key = tuple(sorted(span))
            if key not in seen:
                seen.add(key)
                out.append(key)
    return sorted(out)


def _code_perm_group(code: FrozenSet[Tuple[int, ...]], ncomp: int) -> Tuple[Tuple[int, ...], ...]:
    """Component permutations extending to isometries of the overlattice.

    A permutation of components combined with per-component sign flips
    acts on the discriminant group as a monomial transformation; each
    sign is realized by the negation isometry of that component, so any
    monomial transformation preserving the glue code lifts to an
    isometry of the overlattice.  Assignments of factors to components
    are deduplicated by the permutation images of these.
    """
    from itertools import product as _product

    perms = []
    signs = [tuple(s) for s in _product((1, 2), repeat=ncomp)]
    for p in permutations(range(ncomp)):
        for s in signs:
            image = {
                tuple((s[i] * v[p[i]]) % 3 for i in range(ncomp)) for v in code
            }
            if image == set(code):
                perms.append(p)
                break
    return tuple(perms)


_NIEMEIER_CACHE: Dict[str, NiemeierModel] = {}


def build_niemeier(kind: str) -> NiemeierModel:
    """The two rank-24 even unimodular lattices used by the classifier."""
    if kind in _NIEMEIER_CACHE:
        return _NIEMEIER_CACHE[kind]
    if kind == "E8^3":
        comp = ("E", 8)
        r = direct_sum(*[root_lattice("E", 8) for _ in range(3)])
        count = 3 * len(component_system("E", 8).roots)
        model = NiemeierModel(
            kind, comp, 3, r, r, None, (), tuple(permutations(range(3))), count
        )
    elif kind == "E6^4":
        comp = ("E", 6)
        r = direct_sum(*[root_lattice("E", 6) for _ in range(4)])
        gen = _e6_dual_generator()
        zero = tuple(Fraction(0) for _ in range(6))

        def glue_vector(word: Tuple[int, ...]) -> Tuple[Fraction, ...]:
            parts = []
            for c in word:
                if c == 0:
                    parts.extend(zero)
                else:
                    parts.extend(x * c for x in gen)
            return tuple(parts)

        min_nontrivial = _e6_dual_class_min()
        chosen = None
        for span in _subspaces_f3_4():
            gens = [v for v in span][:2]
            # pick two independent generators from the span list
            g1 = span[0]
            g2 = next(
                w
                for w in span
                if w != g1 and w != tuple((2 * x) % 3 for x in g1)
            )
            try:
                over = glue_overlattice(r, [glue_vector(g1), glue_vector(g2)])
            except LatticeError:
                continue
            if over.index != 9 or abs(over.lattice.det()) != 1 or not over.lattice.is_even:
                continue
            # no new roots: each nonzero coset has minimal norm > 2
            ok = True
            for w in span:
                weight = sum(1 for c in w if c)
                if weight * min_nontrivial <= 2:
                    ok = False
                    break
            if not ok:
                continue
            chosen = (span, over)
            break
        if chosen is None:
            raise CuspError("no valid glue found for E6^4")
        span, over = chosen
        # the defining property of the glue: one zero coordinate per word
        for w in span:
            if sum(1 for c in w if c == 0) != 1:
                raise CuspError("glue word without exactly one zero coordinate")
        count = 4 * len(component_system("E", 6).roots)
        model = NiemeierModel(
            kind,
            comp,
            4,
            r,
            over.lattice,
            over,
            tuple(span),
            _code_perm_group(frozenset(span), 4),
            count,
        )
    else:
        raise CuspError(f"unknown model kind {kind!r}")
    _NIEMEIER_CACHE[kind] = model
    return _NIEMEIER_CACHE[kind]


# -- embeddings of P ----------------------------------------------------


@dataclass(frozen=True)
class EmbeddingRecord:
    model_kind: str
    assignment: Tuple[Tuple[Symbol, ...], ...]  # factor multiset per component
    outcomes: Tuple[ComponentOutcome, ...]
    total_complement: RootSystemType
    starred: bool
    sat_index: int
    glue_intersection: int  # order of code ∩ image of the dual complement

    def rows(self) -> List[Tuple[str, str, int]]:
        """Per-component rows (assigned factors, complement type, dual order)."""
        out = []
        for fs, oc in zip(self.assignment, self.outcomes):
            fstr = str(RootSystemType.of(fs)) if fs else "0"
            out.append((fstr, str(oc.complement_type), oc.dual_image_order))
        return out


def _assignments(factors: Sequence[Symbol], ncomp: int) -> List[Tuple[Tuple[Symbol, ...], ...]]:
    """All ordered distributions of the factor multiset over components."""
    out: set = set()

    def place(rem: Tuple[Symbol, ...], acc: Tuple[Tuple[Symbol, ...], ...]):
        if not rem:
            out.add(acc)
            return
        f, rest = rem[0], rem[1:]
        for c in range(ncomp):
            new = tuple(
                tuple(sorted(acc[i] + ((f,) if i == c else ()), key=lambda s: (-s[1], s[0])))
                for i in range(ncomp)
            )
            place(rest, new)

    place(tuple(sorted(factors, key=lambda s: (-s[1], s[0]))), tuple(() for _ in range(ncomp)))
    return sorted(out)


def _canonical_assignment(
    assignment: Tuple[Tuple[Symbol, ...], ...], group: Sequence[Tuple[int, ...]]
) -> Tuple[Tuple[Symbol, ...], ...]:
    return min(tuple(assignment[p[i]] for i in range(len(p))) for p in group)


def enumerate_embeddings(
    p_factors: Sequence[Symbol], model: NiemeierModel
) -> List[EmbeddingRecord]:
    """Embeddings of the direct sum of the given ADE factors into the model,
    one record per inequivalent assignment and complement configuration."""
    classes: Dict[Tuple, Tuple[Tuple[Symbol, ...], ...]] = {}
    for assignment in _assignments(p_factors, model.ncomp):
        canon = _canonical_assignment(assignment, model.perm_group)
        classes.setdefault(canon, canon)
    records: List[EmbeddingRecord] = []
    for assignment in sorted(classes.values()):
        per_comp = [embed_multiset(model.comp, fs) for fs in assignment]
        if any(not oc for oc in per_comp):
            continue
        # cartesian product over the (few) outcomes of each component
        def combos(i: int, acc: List[ComponentOutcome]):
            if i == len(per_comp):
                yield tuple(acc)
                return
            for oc in per_comp[i]:
                acc.append(oc)
                yield from combos(i + 1, acc)
                acc.pop()

        for outcome_tuple in combos(0, []):
            total = EMPTY_TYPE
            for oc in outcome_tuple:
                total = total + oc.complement_type
            rootspan_prod = 1
            for oc in outcome_tuple:
                rootspan_prod *= oc.rootspan_index
            if model.glue_code:
                full_positions = [
                    i for i, oc in enumerate(outcome_tuple) if oc.dual_image_order == 3
                ]
                for oc in outcome_tuple:
                    if oc.dual_image_order not in (1, 3):
                        raise CuspError("unexpected dual image order")
                inter = sum(
                    1
                    for w in model.glue_code
                    if all(w[i] == 0 for i in range(model.ncomp) if i not in full_positions)
                )
                glue_intersection = inter + 1  # include the zero word
            else:
                glue_intersection = 1
            sat_index = glue_intersection * rootspan_prod
            if sat_index not in (1, 3):
                raise CuspError(f"saturation index {sat_index} outside {{1,3}}")
            starred = sat_index == 3
            records.append(
                EmbeddingRecord(
                    model.kind,
                    assignment,
                    outcome_tuple,
                    total.with_star(starred),
                    starred,
                    sat_index,
                    glue_intersection,
                )
            )
    records.sort(key=lambda r: (str(r.total_complement), r.assignment))
    return records


def embedded_p_rows(record: EmbeddingRecord, model: NiemeierModel) -> IntMatrix:
    """The embedded copy of P as rows in N coordinates."""
    rows: List[List[int]] = []
    rank_r = model.r.rank
    for c, oc in enumerate(record.outcomes):
        cs = component_system(*model.comp)
        off = model.component_offset(c)
        for witness in oc.witness:
            for i in witness:
                vec = [0] * rank_r
                for j, x in enumerate(cs.roots[i]):
                    vec[off + j] = x
                rows.append(vec)
    m = IntMatrix(rows, cols=rank_r) if rows else IntMatrix([], cols=rank_r)
    if model.overlattice is None:
        return m
    return m * model.overlattice.old_in_new


def star_of(record: EmbeddingRecord, model: NiemeierModel) -> bool:
    """Concrete saturation test inside the unimodular model.

    Computes the orthogonal complement of the embedded copy of P inside
    N (saturated by construction), spans its roots, and compares; the
    result must agree with the glue bookkeeping carried by the record.
    """
    p_rows = embedded_p_rows(record, model)
    n = model.n
    sat = Sublattice(n, p_rows).orth_complement() if p_rows.rows else Sublattice(
        n, IntMatrix.identity(n.rank)
    )
    # roots of N orthogonal to P: all components' complement roots
    root_rows: List[List[int]] = []
    rank_r = model.r.rank
    for c, oc in enumerate(record.outcomes):
        cs = component_system(*model.comp)
        off = model.component_offset(c)
        for i in _bits(oc.complement_mask):
            vec = [0] * rank_r
            for j, x in enumerate(cs.roots[i]):
                vec[off + j] = x
            root_rows.append(vec)
    if model.overlattice is not None and root_rows:
        root_mat = IntMatrix(root_rows, cols=rank_r) * model.overlattice.old_in_new
    else:
        root_mat = IntMatrix(root_rows, cols=rank_r) if root_rows else IntMatrix([], cols=rank_r)
    h, _ = hnf(root_mat)
    span = IntMatrix([r for r in h.entries if any(r)], cols=n.rank)
    if span.rows != sat.rank:
        raise CuspError("complement is not rationally spanned by its roots")
    idx = index_in(span, sat.basis)
    if idx not in (1, 3):
        raise CuspError(f"saturation index {idx} outside {{1,3}}")
    starred = idx == 3
    if starred != record.starred or idx != record.sat_index:
        raise CuspError("glue bookkeeping disagrees with the concrete saturation")
    return starred


def cusp_quotient_lattice(record: EmbeddingRecord, model: NiemeierModel) -> Lattice:
    """The saturated orthogonal complement of the embedded P inside N,
    which realizes the quotient lattice of the corresponding cusp."""
    p_rows = embedded_p_rows(record, model)
    if p_rows.rows:
        sat = Sublattice(model.n, p_rows).orth_complement()
    else:
        sat = Sublattice(model.n, IntMatrix.identity(model.n.rank))
    return sat.lattice()


@dataclass
class CuspRecord:
    family: FamilyId
    jperp_root: RootSystemType  # star flag included
    witnesses: Tuple[EmbeddingRecord, ...]


def classify_cusps(n: int, k: int) -> List[CuspRecord]:
    """All 1-cusp quotient types of the family, from both unimodular models."""
    fam = family_data(n, k)
    by_type: Dict[str, List[EmbeddingRecord]] = {}
    for kind in ("E8^3", "E6^4"):
        model = build_niemeier(kind)
        for rec in enumerate_embeddings(fam.p_factors, model):
            star_of(rec, model)  # concrete verification of the star flag
            by_type.setdefault(str(rec.total_complement), []).append(rec)
    out = []
    for key in sorted(by_type):
        recs = by_type[key]
        out.append(
            CuspRecord(fam.family, recs[0].total_complement, tuple(recs))
        )
    return out


# -- direct route: isotropic planes -------------------------------------


def isotropic_plane(r: RhoLattice, e: Sequence[int]) -> Sublattice:
    """The saturated invariant isotropic plane spanned by e and its image."""
    t = r.lattice
    if all(x == 0 for x in e):
        raise CuspError("zero vector spans no plane")
    if t.norm(e) != 0:
        raise CuspError("vector is not isotropic")
    re = r.rho.apply(e)
    rows = IntMatrix([list(e), list(re)], cols=t.rank)
    from .exactla import rank as _rank

    if _rank(rows) != 2:
        raise CuspError("vector and its image are dependent")
    j = Sublattice(t, saturate(rows))
    if not j.is_isotropic():
        raise CuspError("span of the orbit is not isotropic")
    img = IntMatrix(
        [list(r.rho.apply(v)) for v in j.basis.entries], cols=t.rank
    )
    int_express(img, j.basis)  # invariance
    return j


def cusp_of_plane(r: RhoLattice, j: Sublattice) -> RootSystemType:
    """Root type (with star flag) of the quotient J-perp/J."""
    q, _ = quotient_by_isotropic(j)
    rtype, span = root_system(q)
    if rtype.rank != q.rank:
        raise CuspError("quotient roots do not span rationally")
    idx = index_in(span.basis, IntMatrix.identity(q.rank))
    if idx not in (1, 3):
        raise CuspError(f"root-span index {idx} outside {{1,3}}")
    return rtype.with_star(idx == 3)
