"""Picard-lattice calculus for two-component degenerate surfaces.

Each component is modeled purely lattice-theoretically: a rank-10
hyperbolic unimodular Picard lattice I(1,9) with an order-3 isometry, a
distinguished isotropic anticanonical class D fixed by the action, and
the bookkeeping of which exceptional classes form 3-cycles.  Components
are built bottom-up from a terminal model (the plane, or a degree-1 or
degree-3 del Pezzo with the order-3 action extended from its
anticanonical-orthogonal root lattice) by appending orbits of
exceptional classes:

* a 3-cycle of exceptional classes contributes an A2 to the primitive
  part (spanned by differences of the cycled classes);
* a fixed exceptional class contributes nothing to the primitive part.

Gluing two components along D produces the rank-18 even unimodular
lattice of numerically Cartier divisor classes: pairs agreeing in
degree on the double curve, modulo the radical spanned by (D, -D).
Its primitive part reproduces the quotient lattice of a boundary
component, and the semifan attached to each quotient is the saturation
of the span of the A2 factors coming from the cycled classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import (
    IntMatrix,
    det,
    hnf,
    index_in,
    int_express,
    int_mat_inv,
    kernel_basis,
    rat,
    rat_express,
    rat_mul,
    saturate,
    snf,
)
from .lattice import (
    Lattice,
    LatticeError,
    Sublattice,
    cartan_gram,
    diag_lattice,
    direct_sum,
    disc_group,
    glue_overlattice,
    hyperbolic,
    nikulin_2elem,
    quotient_by_isotropic,
    rescale,
    root_lattice,
    signature,
)
from .roots import EMPTY_TYPE, RootSystemType, root_system
from .eisenstein import (
    Isometry,
    RhoLattice,
    assemble,
    fixed_sublattice,
    fpf_order3,
    isometry_order,
    primitive_part,
    rho4_a1a1,
    rho4_d4,
    rho4_u_u2,
    rho_lattice,
)

Symbol = Tuple[str, int]


class KulikovError(LatticeError):
    pass


# -- triple-cover component rows ----------------------------------------

COMPONENT_ROWS: Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...] = (
    (0, ((1, 3),)),
    (0, ((0, 1), (2, 2))),
    (1, ((0, 3),)),
    (1, ((0, 1), (1, 2))),
    (2, ((0, 1), (0, 2))),
    (3, ((0, 1), (0, 1), (0, 1))),
)

_ROW_RECIPE: Dict[Tuple[int, Tuple[Tuple[int, int], ...]], Tuple[Optional[int], int, int]] = {
    # spec -> (terminal del Pezzo degree or None for the plane,
    #          number of 3-cycles of exceptional classes,
    #          number of fixed exceptional classes)
    (0, ((1, 3),)): (3, 1, 0),
    (0, ((0, 1), (2, 2))): (1, 0, 1),
    (1, ((0, 3),)): (None, 3, 0),
    (1, ((0, 1), (1, 2))): (3, 0, 3),
    (2, ((0, 1), (0, 2))): (None, 2, 3),
    (3, ((0, 1), (0, 1), (0, 1))): (None, 1, 6),
}


@dataclass(frozen=True)
class ComponentSpec:
    m: int  # number of pinch points
    parts: Tuple[Tuple[int, int], ...]  # (genus, degree) of the cover pieces

    def __post_init__(self):
        if (self.m, self.parts) not in _ROW_RECIPE:
            raise KulikovError(f"unknown component ({self.m}, {self.parts})")


@dataclass
class ComponentModel:
    spec: ComponentSpec
    picard: Lattice
    rho: RhoLattice
    d: Tuple[int, ...]  # anticanonical fiber class, = -K
    kperp_core: Sublattice  # del Pezzo root part of the terminal model
    exceptional_orbits: Tuple[Tuple[str, Tuple[int, ...]], ...]


_DP_ROOT_TYPE = {1: ("E", 8), 3: ("E", 6)}


def _dp_kperp_rows(degree: int) -> IntMatrix:
    """Simple roots of the anticanonical-orthogonal lattice of a del Pezzo
    of the given degree, in I(1, 9-d) coordinates and Bourbaki order."""
    n = 9 - degree  # number of exceptional coordinates
    dim = n + 1
    rows: List[List[int]] = []
    chain = []
    for i in range(n - 1):
        v = [0] * dim
        v[1 + i] = 1
        v[2 + i] = -1
        chain.append(v)
    branch = [1, -1, -1, -1] + [0] * (dim - 4)
    rows.append(chain[0])
    rows.append(branch)
    rows.extend(chain[1:])
    return IntMatrix(rows, cols=dim)


def _terminal_model(degree: Optional[int]) -> Tuple[Lattice, IntMatrix, Sublattice]:
    """Picard lattice, order-3 action and root core of a terminal surface."""
    if degree is None:
        lat = diag_lattice([1], label="I(1,0)")
        return lat, IntMatrix.identity(1), Sublattice(lat, IntMatrix([], cols=1))
    sym, n = _DP_ROOT_TYPE[degree]
    dim = 10 - degree
    lat = diag_lattice([1] + [-1] * (dim - 1), label=f"I(1,{dim - 1})")
    b = _dp_kperp_rows(degree)
    core = Sublattice(lat, b)
    if core.gram() != cartan_gram(sym, n).scale(-1):
        raise KulikovError("del Pezzo root core has the wrong Gram matrix")
    k_row = [[-3] + [1] * (dim - 1)]
    s = b.stack(IntMatrix(k_row, cols=dim))
    s_inv = int_mat_inv(s)
    fpf = fpf_order3(sym, n)
    for candidate in (fpf.rho.matrix, fpf.rho.matrix * fpf.rho.matrix):
        block = [[0] * dim for _ in range(dim)]
        for i in range(n):
            for j in range(n):
                block[i][j] = candidate.entries[i][j]
        block[n][n] = 1
        # acting on rows: x -> x * (S^-1 D S), coordinates taken in the
        # (root basis, canonical class) frame
        conj = rat_mul(rat_mul(s_inv, rat(IntMatrix(block, cols=dim))), rat(s))
        if all(x.denominator == 1 for row in conj for x in row):
            m = IntMatrix([[x.numerator for x in row] for row in conj], cols=dim)
            r = rho_lattice(lat, m)
            if r.order != 3:
                continue
            k_vec = k_row[0]
            if r.rho.apply(k_vec) != tuple(k_vec):
                raise KulikovError("extension does not fix the canonical class")
            return lat, m, core
    raise KulikovError("order-3 action does not extend integrally to the Picard lattice")


_COMPONENT_CACHE: Dict[Tuple[int, Tuple[Tuple[int, int], ...]], "ComponentModel"] = {}


def build_component(spec: ComponentSpec) -> ComponentModel:
    """Picard lattice with order-3 action for one triple-cover component."""
    cache_key = (spec.m, spec.parts)
    if cache_key in _COMPONENT_CACHE:
        return _COMPONENT_CACHE[cache_key]
    degree, cycles, fixed = _ROW_RECIPE[(spec.m, spec.parts)]
    lat, m, core = _terminal_model(degree)
    orbits: List[Tuple[str, Tuple[int, ...]]] = []
    gram_rows = [list(r) for r in lat.gram.entries]
    mat_rows = [list(r) for r in m.entries]

    def append_classes(count: int, cycle: bool):
        nonlocal gram_rows, mat_rows
        dim = len(gram_rows)
        for row in gram_rows:
            row.extend([0] * count)
        for row in mat_rows:
            row.extend([0] * count)
        for i in range(count):
            gram_rows.append([0] * dim + [0] * count)
            gram_rows[dim + i][dim + i] = -1
            mat_rows.append([0] * (dim + count))
        if cycle:
            # e_a -> e_b -> e_c -> e_a
            for i in range(count):
                mat_rows[dim + i][dim + (i + 1) % count] = 1
            orbits.append(("cycle", tuple(range(dim, dim + count))))
        else:
            for i in range(count):
                mat_rows[dim + i][dim + i] = 1
                orbits.append(("fixed", (dim + i,)))

    for _ in range(cycles):
        append_classes(3, cycle=True)
    if fixed:
        append_classes(fixed, cycle=False)
    picard = Lattice(IntMatrix(gram_rows, cols=len(gram_rows)))
    if picard.rank != 10:
        raise KulikovError("component Picard lattice must have rank 10")
    rho = rho_lattice(picard, IntMatrix(mat_rows, cols=picard.rank))
    if rho.order != 3:
        raise KulikovError("component action does not have order 3")
    k = tuple([-3] + [1] * 9)
    d = tuple(-x for x in k)
    if picard.norm(d) != 0:
        raise KulikovError("anticanonical class is not isotropic")
    if rho.rho.apply(d) != d:
        raise KulikovError("anticanonical class is not fixed")
    core_rows = IntMatrix(
        [list(r) + [0] * (10 - core.basis.cols) for r in core.basis.entries],
        cols=10,
    )
    model = ComponentModel(
        spec,
        picard,
        rho,
        d,
        Sublattice(picard, core_rows) if core_rows.rows else Sublattice(picard, IntMatrix([], cols=10)),
        tuple(orbits),
    )
    _COMPONENT_CACHE[cache_key] = model
    return model


def primitive_picard(c: ComponentModel) -> Tuple[Sublattice, RootSystemType]:
    """Primitive part of the component action and its root type."""
    prim = primitive_part(c.rho)
    lat = prim.lattice()
    p, q = signature(lat) if lat.rank else (0, 0)
    if p != 0:
        raise KulikovError("primitive part is not negative definite")
    rtype, _ = root_system(lat) if lat.rank else (EMPTY_TYPE, None)
    if rtype.rank != lat.rank:
        raise KulikovError("primitive part is not rationally spanned by roots")
    return prim, rtype


# -- two-component gluing ------------------------------------------------


@dataclass
class KulikovLattice:
    lattice: Lattice  # rank 18, even, unimodular
    rho: RhoLattice
    prim: Sublattice
    ambient: Lattice  # P0 + P1
    tilde_basis: IntMatrix  # rank-19 sublattice of the ambient
    xi: Tuple[int, ...]  # radical generator (D0, -D1)
    lift: IntMatrix  # quotient basis lifted to ambient coordinates

    def to_quotient_coords(self, rows: IntMatrix) -> IntMatrix:
        """Coordinates in the quotient of ambient rows lying in the kernel."""
        adapted = IntMatrix([list(self.xi)], cols=self.ambient.rank).stack(self.lift)
        coeff = int_express(rows, adapted)
        return IntMatrix([list(r)[1:] for r in coeff.entries], cols=self.lift.rows)


def glue_lambda(c0: ComponentModel, c1: ComponentModel) -> KulikovLattice:
    """The reduced divisor-class lattice of the two-component surface.

    Pairs of classes agreeing in degree on the double curve, modulo the
    radical (D0, -D1); the result is even unimodular of rank 18 with the
    componentwise order-3 action descending to it.
    """
    amb = direct_sum(c0.picard, c1.picard)
    n = amb.rank
    u = list(c0.d) + [-x for x in c1.d]
    pair_row = amb.gram * IntMatrix([u], cols=n).transpose()
    tilde = kernel_basis(pair_row.transpose())
    if tilde.rows != n - 1:
        raise KulikovError("degree-matching kernel has the wrong rank")
    xi_coeff = int_express(IntMatrix([u], cols=n), tilde)
    res = snf(xi_coeff)
    if res.d != (1,):
        raise KulikovError("radical generator is not primitive in the kernel")
    r_inv = int_mat_inv(res.right)
    lift_coeff = IntMatrix(
        [[x.numerator for x in row] for row in r_inv[1:]], cols=tilde.rows
    )
    lift = lift_coeff * tilde
    gram = lift * amb.gram * lift.transpose()
    lam = Lattice(gram)
    if lam.rank != 18 or abs(lam.det()) != 1 or not lam.is_even:
        raise KulikovError("glued lattice is not even unimodular of rank 18")
    if signature(lam) != (1, 17):
        raise KulikovError("glued lattice has the wrong signature")
    # componentwise action descends to the quotient
    rho_amb = [[0] * n for _ in range(n)]
    for i in range(10):
        for j in range(10):
            rho_amb[i][j] = c0.rho.rho.matrix.entries[i][j]
            rho_amb[10 + i][10 + j] = c1.rho.rho.matrix.entries[i][j]
    rho_amb_m = IntMatrix(rho_amb, cols=n)
    adapted = IntMatrix([u], cols=n).stack(lift)
    images = lift * rho_amb_m
    coeff = int_express(images, adapted)
    rho_q = IntMatrix([list(r)[1:] for r in coeff.entries], cols=18)
    rq = rho_lattice(lam, rho_q)
    if rq.order != 3:
        raise KulikovError("glued action does not have order 3")
    prim = primitive_part(rq)
    fix = fixed_sublattice(rq)
    if prim.rank + fix.rank != 18:
        raise KulikovError("fixed and primitive parts do not fill the lattice")
    out = KulikovLattice(lam, rq, prim, amb, tilde, tuple(u), lift)
    return out


def _embed_component_rows(rows: IntMatrix, side: int) -> IntMatrix:
    """Pad rank-10 component rows into the rank-20 ambient sum."""
    padded = []
    for r in rows.entries:
        v = [0] * 20
        for j, x in enumerate(r):
            v[side * 10 + j] = x
        padded.append(v)
    return IntMatrix(padded, cols=20)


def root_split_check(k: KulikovLattice, c0: ComponentModel, c1: ComponentModel) -> Tuple[bool, int]:
    """Roots of the primitive part split over the two components, and the
    component primitive parts span a finite-index sublattice; returns the
    verdict together with the computed index."""
    prim_lat = k.prim.lattice()
    rtype, _ = root_system(prim_lat) if prim_lat.rank else (EMPTY_TYPE, None)
    p0, t0 = primitive_picard(c0)
    p1, t1 = primitive_picard(c1)
    expected = t0 + t1
    rows0 = _embed_component_rows(p0.basis, 0)
    rows1 = _embed_component_rows(p1.basis, 1)
    stacked = rows0.stack(rows1) if rows0.rows or rows1.rows else IntMatrix([], cols=20)
    image = k.to_quotient_coords(stacked)
    # express the image inside the primitive part and measure the index
    coeff = int_express(image, k.prim.basis)
    if coeff.rows != k.prim.rank:
        return False, 0
    idx = abs(det(coeff))
    return (rtype == expected and idx >= 1), idx


# -- semifan records -----------------------------------------------------


@dataclass
class SemifanRecord:
    family: str
    cusp: RootSystemType
    fj_rank: int
    fj_disc: Tuple[int, ...]
    primitive: bool
    rho_invariant: bool
    model: Lattice
    fj_basis: IntMatrix


_A2_DUAL_GEN_CACHE: Dict[Symbol, Tuple[Fraction, ...]] = {}


def _slot_dual_generator(sym: str, n: int) -> Tuple[Fraction, ...]:
    key = (sym, n)
    if key not in _A2_DUAL_GEN_CACHE:
        l = root_lattice(sym, n)
        ginv = int_mat_inv(l.gram)
        row = ginv[0]
        if all(x.denominator == 1 for x in row):
            raise KulikovError("dual generator lies in the lattice")
        _A2_DUAL_GEN_CACHE[key] = row
    return _A2_DUAL_GEN_CACHE[key]


def _starred_model(
    factors: Sequence[Symbol],
) -> Tuple[Lattice, IntMatrix, "object", Tuple[int, ...]]:
    """Index-3 even overlattice of the negative definite factor sum whose
    nonzero glue cosets contain no roots, together with the descended
    order-3 action.  Returns (lattice, action, overlattice, glue word)."""
    from .lattice import Overlattice

    lats = [rescale(root_lattice(sym, n), -1) for sym, n in factors]
    base = direct_sum(*lats)
    offsets = []
    off = 0
    for sym, n in factors:
        offsets.append(off)
        off += n
    rho_blocks = []
    for sym, n in factors:
        fpf = fpf_order3(sym, n)
        rho_blocks.append(rho_lattice(rescale(fpf.lattice, -1), fpf.rho.matrix))
    rho_base = assemble(rho_blocks)
    # candidate glue words over the factor discriminants (all of order 3)
    n_slots = len(factors)
    from itertools import product

    def coset_min(word: Tuple[int, ...]) -> Fraction:
        total = Fraction(0)
        for c, (sym, n) in zip(word, factors):
            if c:
                total += Fraction(4, 3) if sym == "E" else Fraction(2, 3)
        return total

    found = None
    for word in product((0, 1, 2), repeat=n_slots):
        if not any(word):
            continue
        glue_row = []
        for c, (sym, n) in zip(word, factors):
            gen = _slot_dual_generator(sym, n)
            glue_row.extend(x * c for x in gen)
        if coset_min(word) <= 2:
            continue
        try:
            over = glue_overlattice(base, [glue_row])
        except LatticeError:
            continue
        if over.index != 3:
            continue
        # action must descend to the overlattice
        basis = over.basis
        images = rat_mul(basis, rat(rho_base.rho.matrix))
        try:
            coeff = rat_express(images, basis)
        except Exception:
            continue
        if any(x.denominator != 1 for row in coeff for x in row):
            continue
        m = IntMatrix([[x.numerator for x in row] for row in coeff], cols=base.rank)
        found = (over.lattice, m, over, word)
        break
    if found is None:
        raise KulikovError("no valid index-3 glue for the starred quotient model")
    return found


TABLE1_SEMIFANS: Dict[Tuple[int, int], Tuple[Tuple[str, int], ...]] = {
    # (family) -> ((cusp type, rank of the semifan sublattice), ...)
    (0, 2): (("E8^2", 0),),
    (0, 1): (("E6^2+A2^2*", 4), ("E8+E6+A2", 2), ("E8^2", 0)),
    (1, 1): (
        ("E6+A2^4*", 8),
        ("E8+A2^3", 6),
        ("E6^2+A2", 2),
        ("E8+E6", 0),
    ),
    (2, 1): (
        ("A2^6*", 12),
        ("E6+A2^3", 6),
        ("E6^2", 0),
        ("E8+A2^2", 4),
    ),
}


def semifan(n: int, k: int, cusp: RootSystemType | str) -> SemifanRecord:
    """The semifan sublattice of a quotient model: the saturation of the
    span of the A2 factors, checked primitive and invariant."""
    if isinstance(cusp, str):
        cusp = RootSystemType.parse(cusp)
    table = dict(TABLE1_SEMIFANS.get((n, k), ()))
    if str(cusp) not in table:
        raise KulikovError(f"({n},{k}) with cusp {cusp} is not a boundary case")
    factors = list(cusp.components)
    if cusp.starred:
        model, rho_m, over, word = _starred_model(factors)
    else:
        lats = [rescale(root_lattice(sym, m), -1) for sym, m in factors]
        model = direct_sum(*lats)
        blocks = []
        for sym, m in factors:
            fpf = fpf_order3(sym, m)
            blocks.append(rho_lattice(rescale(fpf.lattice, -1), fpf.rho.matrix))
        rho_m = assemble(blocks).rho.matrix
        over = None
        word = None
    rho_model = rho_lattice(model, rho_m)
    if rho_model.order not in (1, 3):
        raise KulikovError("model action has unexpected order")
    # rows of the A2 slots in model coordinates
    slot_rows: List[List[int]] = []
    off = 0
    total = model.rank
    for sym, m in factors:
        if (sym, m) == ("A", 2):
            for i in range(2):
                v = [0] * total
                v[off + i] = 1
                slot_rows.append(v)
        off += m
    if cusp.starred:
        # coordinates in the overlattice basis
        conv = []
        for v in slot_rows:
            coeff = rat_express(rat(IntMatrix([v], cols=total)), over.basis)[0]
            if any(x.denominator != 1 for x in coeff):
                raise KulikovError("factor basis missing from the overlattice")
            conv.append([x.numerator for x in coeff])
        slot_rows = conv
    if slot_rows:
        fj = saturate(IntMatrix(slot_rows, cols=total))
    else:
        fj = IntMatrix([], cols=total)
    primitive = saturate(fj) == fj if fj.rows else True
    if fj.rows:
        images = fj * rho_m
        try:
            int_express(images, fj)
            invariant = True
        except Exception:
            invariant = False
        sub = Sublattice(model, fj)
        fj_disc = disc_group(sub.lattice()).elementary_divisors if sub.rank else ()
    else:
        invariant = True
        fj_disc = ()
    rank = fj.rows
    if rank != table[str(cusp)]:
        raise KulikovError(
            f"semifan rank {rank} differs from the tabulated {table[str(cusp)]}"
        )
    return SemifanRecord(
        f"({n},{k})", cusp, rank, tuple(fj_disc), primitive, invariant, model, fj
    )


def quotient_model_fingerprint(l: Lattice) -> Tuple[int, int, Tuple[int, ...]]:
    return (l.rank, abs(l.det()), disc_group(l).elementary_divisors)


# -- the order-4 story ---------------------------------------------------


def order4_suite() -> List[Tuple[str, bool, str]]:
    """All lattice checks of the order-4 family: invariant matching of the
    two rank-10 models, the assembled order-4 action, the invariant
    isotropic plane with quotient D4^2 + A1^2, the exceptional-class
    span, and the semifan summand.  Returns (check id, passed, detail)."""
    out: List[Tuple[str, bool, str]] = []

    # (a) the two 2-elementary models share the invariants (1,9,4,0)
    l1 = direct_sum(hyperbolic(2), rescale(root_lattice("D", 8), -1))
    l2 = direct_sum(hyperbolic(), rescale(root_lattice("D", 4), -1), rescale(root_lattice("D", 4), -1))
    n1 = nikulin_2elem(l1).as_tuple()
    n2 = nikulin_2elem(l2).as_tuple()
    out.append(
        (
            "nikulin-invariants",
            n1 == (1, 9, 4, 0) and n2 == (1, 9, 4, 0),
            f"U(2)+D8: {n1}, U+D4^2: {n2}",
        )
    )

    # (b) assembled order-4 action with square -1
    t4 = assemble([rho4_u_u2(), rho4_d4(), rho4_d4(), rho4_a1a1()])
    sq = t4.rho.matrix * t4.rho.matrix
    is_minus = sq == IntMatrix.identity(t4.lattice.rank).scale(-1)
    out.append(
        (
            "order-4-action",
            t4.order == 4 and is_minus,
            f"order {t4.order}, square is -1: {is_minus}",
        )
    )

    # (c) invariant isotropic plane with quotient D4^2 + A1^2
    t = t4.lattice
    e = [0] * t.rank
    e[0] = 1
    ep = [0] * t.rank
    ep[2] = 1
    j = Sublattice(t, IntMatrix([e, ep], cols=t.rank))
    iso = j.is_isotropic()
    prim_flag = j.is_primitive
    images = IntMatrix(
        [list(t4.rho.apply(v)) for v in j.basis.entries], cols=t.rank
    )
    try:
        int_express(images, j.basis)
        inv_flag = True
    except Exception:
        inv_flag = False
    q, lift = quotient_by_isotropic(j)
    rtype, _ = root_system(q)
    out.append(
        (
            "quotient-root-type",
            iso and prim_flag and inv_flag and str(rtype) == "D4^2+A1^2",
            f"isotropic {iso}, saturated {prim_flag}, invariant {inv_flag}, type {rtype}",
        )
    )

    # (d) four cycled norm -1 classes: differences span a copy of A1^2
    e4 = diag_lattice([-1, -1, -1, -1])
    cyc = rho_lattice(
        e4,
        [
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 0, 0, 0],
        ],
    )
    m_rows = IntMatrix([[1, 0, -1, 0], [0, 1, 0, -1]])
    m_gram = m_rows * e4.gram * m_rows.transpose()
    gram_ok = m_gram == IntMatrix([[-2, 0], [0, -2]])
    im1 = cyc.rho.apply((1, 0, -1, 0))
    im2 = cyc.rho.apply((0, 1, 0, -1))
    rho_ok = im1 == (0, 1, 0, -1) and im2 == (-1, 0, 1, 0)
    sat_ok = saturate(m_rows) == hnf(m_rows)[0]
    # the A1^2 block of the quotient model is a saturated direct summand
    block = direct_sum(
        rescale(root_lattice("D", 4), -1),
        rescale(root_lattice("D", 4), -1),
        diag_lattice([-2, -2]),
    )
    a1_rows = IntMatrix(
        [[0] * 8 + [1, 0], [0] * 8 + [0, 1]], cols=10
    )
    a1_sub = Sublattice(block, a1_rows)
    comp = a1_sub.orth_complement()
    summand_ok = (
        a1_sub.is_primitive
        and comp.rank + a1_sub.rank == block.rank
        and abs(det(a1_sub.gram())) * abs(det(comp.gram())) == abs(block.det())
    )
    out.append(
        (
            "exceptional-span",
            gram_ok and rho_ok and sat_ok and summand_ok,
            f"gram 2I: {gram_ok}, four-cycle action: {rho_ok}, saturated: {sat_ok}, "
            f"direct summand: {summand_ok}",
        )
    )

    # (e) the semifan summand: primitive and invariant under the block action
    block_rho = assemble([rho4_d4(), rho4_d4(), rho4_a1a1()])
    imgs = a1_rows * block_rho.rho.matrix
    try:
        int_express(imgs, a1_rows)
        inv2 = True
    except Exception:
        inv2 = False
    fp_q = quotient_model_fingerprint(q)
    fp_b = quotient_model_fingerprint(block)
    out.append(
        (
            "semifan-summand",
            inv2 and a1_sub.is_primitive and fp_q == fp_b,
            f"invariant {inv2}, primitive {a1_sub.is_primitive}, "
            f"quotient fingerprint {fp_q} vs block {fp_b}",
        )
    )
    return out
