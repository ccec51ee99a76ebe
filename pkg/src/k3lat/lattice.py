"""Integral lattices with symmetric bilinear forms.

A lattice is a free Z-module of finite rank carrying an integer Gram
matrix; elements are row vectors and the form evaluates as
``x * G * y^T``.  The ADE Gram matrices are stored positive definite
(Cartan matrices in Bourbaki numbering); negative definite copies are
obtained by ``rescale(L, -1)`` when a lattice is used inside an
indefinite ambient.

Signatures are computed by exact rational symmetric diagonalization
(Sylvester's law), never by floating point.  Discriminant groups come
from Smith normal forms of the Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactla import (
    ExactLAError,
    IntMatrix,
    det,
    hnf,
    index_in,
    int_express,
    kernel_basis,
    rat,
    rat_express,
    rat_mat,
    rat_mul,
    saturate,
    snf,
)


class LatticeError(ValueError):
    pass


class DegenerateFormError(LatticeError):
    def __init__(self, radical_rank: int):
        super().__init__(f"degenerate form with radical of rank {radical_rank}")
        self.radical_rank = radical_rank


class Lattice:
    """Free Z-module with an integer symmetric bilinear form."""

    __slots__ = ("gram", "label", "_det", "_sig")

    def __init__(self, gram: IntMatrix | Sequence[Sequence[int]], label: str | None = None):
        if not isinstance(gram, IntMatrix):
            gram = IntMatrix(gram, cols=len(gram) if gram else 0)
        if not gram.is_symmetric():
            raise LatticeError("gram matrix must be symmetric")
        self.gram = gram
        self.label = label
        self._det: int | None = None
        self._sig: Tuple[int, int, int] | None = None

    @property
    def rank(self) -> int:
        return self.gram.rows

    def det(self) -> int:
        if self._det is None:
            self._det = det(self.gram)
        return self._det

    @property
    def is_even(self) -> bool:
        return all(self.gram.entries[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    @property
    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram.entries
        gy = [sum(g[i][j] * y[j] for j in range(self.rank)) for i in range(self.rank)]
        return sum(x[i] * gy[i] for i in range(self.rank))

    def norm(self, x: Sequence[int]) -> int:
        return self.pair(x, x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        name = self.label or f"rank-{self.rank} lattice"
        return f"Lattice({name})"


# -- constructors ------------------------------------------------------


def hyperbolic(n: int = 1, label: str | None = None) -> Lattice:
    """The hyperbolic plane U rescaled by ``n``: Gram [[0, n], [n, 0]]."""
    if n == 0:
        raise LatticeError("rescale by zero")
    return Lattice([[0, n], [n, 0]], label=label or ("U" if n == 1 else f"U({n})"))


_ADE_EDGES = {
    "E": {6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
          7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
          8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]},
}


def cartan_gram(symbol: str, n: int) -> IntMatrix:
    """Positive definite Cartan matrix of an ADE root system (Bourbaki order)."""
    if symbol == "A":
        if n < 1:
            raise LatticeError(f"A{n} is not a root system")
        edges = [(i, i + 1) for i in range(1, n)]
    elif symbol == "D":
        if n < 4:
            raise LatticeError(f"D{n} is not in the D-series (need n >= 4)")
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif symbol == "E":
        if n not in (6, 7, 8):
            raise LatticeError(f"E{n} is not a root system")
        edges = _ADE_EDGES["E"][n]
    else:
        raise LatticeError(f"unknown root-system symbol {symbol!r}")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i, j in edges:
        g[i - 1][j - 1] = -1
        g[j - 1][i - 1] = -1
    return IntMatrix(g)


def root_lattice(symbol: str, n: int) -> Lattice:
    return Lattice(cartan_gram(symbol, n), label=f"{symbol}{n}")


def diag_lattice(entries: Sequence[int], label: str | None = None) -> Lattice:
    return Lattice(IntMatrix.diagonal(list(entries)), label=label)


def direct_sum(*lats: Lattice) -> Lattice:
    n = sum(l.rank for l in lats)
    g = [[0] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram.entries[i][j]
        off += l.rank
    label = "+".join(l.label or "?" for l in lats) if all(l.label for l in lats) else None
    return Lattice(IntMatrix(g, cols=n), label=label)


def rescale(l: Lattice, n: int) -> Lattice:
    if n == 0:
        raise LatticeError("rescale by zero")
    if n == 1:
        return l
    label = f"{l.label}({n})" if l.label else None
    return Lattice(l.gram.scale(n), label=label)


def d4_z4_model() -> Tuple[Lattice, IntMatrix]:
    """D4 as the even-coordinate-sum sublattice of Z^4.

    Returns the lattice in its simple-root basis together with the basis
    rows expressed in standard Z^4 coordinates; the Gram matrix computed
    from the dot product is checked against the Cartan model, which is
    the verified isometry between the two descriptions.
    """
    basis = IntMatrix([
        [1, -1, 0, 0],
        [0, 1, -1, 0],
        [0, 0, 1, -1],
        [0, 0, 1, 1],
    ])
    gram = basis * basis.transpose()
    if gram != cartan_gram("D", 4):
        raise LatticeError("Z^4 model of D4 does not match the Cartan model")
    return Lattice(gram, label="D4"), basis


# -- signatures --------------------------------------------------------


def signature_with_radical(l: Lattice) -> Tuple[int, int, int]:
    """(positive, negative, radical) inertia by rational diagonalization."""
    if l._sig is not None:
        return l._sig
    n = l.rank
    m = [[Fraction(x) for x in row] for row in l.gram.entries]
    pos = neg = 0
    alive = list(range(n))
    while alive:
        piv = next((i for i in alive if m[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in alive for j in alive if i != j and m[i][j] != 0),
                None,
            )
            if pair is None:
                break  # what remains is the radical
            i, j = pair
            # push the off-diagonal entry onto the diagonal: x_i -> x_i + x_j
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(piv)
        for i in alive:
            if m[i][piv] != 0:
                f = m[i][piv] / d
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
    rad = n - pos - neg
    l._sig = (pos, neg, rad)
    return l._sig


def signature(l: Lattice) -> Tuple[int, int]:
    pos, neg, rad = signature_with_radical(l)
    if rad:
        raise DegenerateFormError(rad)
    return pos, neg


def definite_sign(l: Lattice) -> int:
    """+1 for positive definite, -1 for negative definite; error otherwise."""
    if l.rank == 0:
        return 1
    p, q = signature(l)
    if q == 0:
        return 1
    if p == 0:
        return -1
    raise LatticeError(f"lattice is indefinite with signature ({p},{q})")


# -- discriminant data -------------------------------------------------


@dataclass(frozen=True)
class DiscGroup:
    elementary_divisors: Tuple[int, ...]
    a_p: Dict[int, int]

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def __str__(self) -> str:
        if not self.elementary_divisors:
            return "0"
        return "+".join(f"Z/{d}" for d in self.elementary_divisors)


def _prime_factors(n: int) -> List[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def disc_group(l: Lattice) -> DiscGroup:
    if not l.is_nondegenerate:
        raise DegenerateFormError(signature_with_radical(l)[2])
    divisors = tuple(d for d in snf(l.gram).d if d > 1)
    a_p: Dict[int, int] = {}
    for d in divisors:
        for p in _prime_factors(d):
            a_p[p] = a_p.get(p, 0) + 1
    return DiscGroup(divisors, a_p)


def is_p_elementary(l: Lattice, p: int) -> bool:
    return all(d == p for d in disc_group(l).elementary_divisors)


@dataclass(frozen=True)
class NikulinInvariants:
    t_plus: int
    t_minus: int
    a: int
    delta: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.t_plus, self.t_minus, self.a, self.delta)


def nikulin_2elem(l: Lattice) -> NikulinInvariants:
    """(t+, t-, a, delta) for an even 2-elementary lattice.

    delta = 0 exactly when the discriminant quadratic form x^2 mod 2Z
    takes integer values on all of A_L, which it suffices to test on the
    Smith-form generators (1/2) * (left-transform rows).
    """
    if not l.is_even:
        raise LatticeError("lattice is not even")
    if not is_p_elementary(l, 2):
        raise LatticeError("lattice is not 2-elementary")
    t_plus, t_minus = signature(l)
    res = snf(l.gram)
    gens = [res.left.entries[i] for i, d in enumerate(res.d) if d == 2]
    a = len(gens)
    delta = 0
    for g in gens:
        q = Fraction(l.norm(g), 4)  # (g/2)^2
        if q.denominator != 1:
            delta = 1
            break
    return NikulinInvariants(t_plus, t_minus, a, delta)


def divisibility(l: Lattice, v: Sequence[int]) -> int:
    """gcd of the pairings of v against a basis: v . L = div(v) Z."""
    if all(x == 0 for x in v):
        raise LatticeError("divisibility of the zero vector")
    pairings = [l.pair(v, row) for row in IntMatrix.identity(l.rank).entries]
    return math.gcd(*pairings) if len(pairings) > 1 else abs(pairings[0])


# -- sublattices -------------------------------------------------------


class Sublattice:
    """A sublattice given by basis rows in ambient coordinates."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: Lattice, basis: IntMatrix | Sequence[Sequence[int]]):
        if not isinstance(basis, IntMatrix):
            basis = IntMatrix(basis, cols=ambient.rank)
        if basis.cols != ambient.rank:
            raise LatticeError("basis rows do not match ambient rank")
        from .exactla import rank as _rank

        if _rank(basis) != basis.rows:
            raise LatticeError("sublattice basis rows are dependent")
        self.ambient = ambient
        self.basis = basis

    @property
    def rank(self) -> int:
        return self.basis.rows

    def gram(self) -> IntMatrix:
        return self.basis * self.ambient.gram * self.basis.transpose()

    def lattice(self, label: str | None = None) -> Lattice:
        return Lattice(self.gram(), label=label)

    def saturation(self) -> "Sublattice":
        return Sublattice(self.ambient, saturate(self.basis))

    @property
    def is_primitive(self) -> bool:
        return saturate(self.basis) == hnf(self.basis)[0]

    def saturation_index(self) -> int:
        return index_in(self.basis, saturate(self.basis))

    def orth_complement(self) -> "Sublattice":
        """Saturated orthogonal complement inside the ambient lattice."""
        pairing = self.ambient.gram * self.basis.transpose()
        return Sublattice(self.ambient, kernel_basis(pairing.transpose()))

    def contains(self, v: Sequence[int]) -> bool:
        try:
            int_express(IntMatrix([list(v)], cols=self.ambient.rank), self.basis)
            return True
        except ExactLAError:
            return False

    def is_isotropic(self) -> bool:
        return self.gram().is_zero()

    def __repr__(self) -> str:
        return f"Sublattice(rank {self.rank} of {self.ambient!r})"


def quotient_by_isotropic(j: Sublattice) -> Tuple[Lattice, IntMatrix]:
    """The lattice J^perp/J with its induced form, for isotropic saturated J.

    Returns the quotient lattice and one choice of lift basis (rows in
    ambient coordinates); the induced Gram matrix does not depend on the
    choice of lifts because J pairs to zero with all of J^perp.
    """
    if not j.is_isotropic():
        raise LatticeError("sublattice is not isotropic")
    if not j.is_primitive:
        raise LatticeError("sublattice is not saturated; saturate it first")
    perp = j.orth_complement()
    bperp = perp.basis
    # J sits inside its own orthogonal complement
    coeff = int_express(j.basis, bperp)
    # adapt a basis of Z^(rank perp) so the first rows span the image of J
    res = snf(coeff)
    if any(d != 1 for d in res.d):
        raise LatticeError("isotropic sublattice is not saturated in its complement")
    from .exactla import int_mat_inv

    q_inv = int_mat_inv(res.right)
    # rows of right^-1 beyond rank(J) lift a basis of the quotient
    lift_coeffs = [
        [x.numerator for x in row] for row in q_inv[j.rank:]
    ]
    lift = IntMatrix(lift_coeffs, cols=bperp.rows) * bperp
    lat = Lattice(lift * j.ambient.gram * lift.transpose())
    return lat, lift


@dataclass
class Overlattice:
    lattice: Lattice
    basis: Tuple[Tuple[Fraction, ...], ...]  # new basis in old coordinates
    old_in_new: IntMatrix
    index: int


def glue_overlattice(l: Lattice, glue: Sequence[Sequence[Fraction]]) -> Overlattice:
    """Finite-index even overlattice generated by L and dual glue vectors.

    Every glue vector must lie in the dual lattice, pair integrally with
    the other glue vectors, and have even integer norm; otherwise the
    resulting form would not be an even integral lattice and the glue is
    rejected.
    """
    n = l.rank
    g = rat(l.gram)
    glue_rows = [tuple(Fraction(x) for x in row) for row in glue]
    for v in glue_rows:
        pair_with_l = rat_mul((v,), g)[0]
        if any(x.denominator != 1 for x in pair_with_l):
            raise LatticeError("glue vector is not in the dual lattice")
    for v in glue_rows:
        for w in glue_rows:
            val = sum(rat_mul((v,), g)[0][i] * w[i] for i in range(n))
            if val.denominator != 1:
                raise LatticeError("glue vectors do not pair integrally")
            if v == w and val.numerator % 2 != 0:
                raise LatticeError("glue vector has odd norm; overlattice not even")
    denom = 1
    for v in glue_rows:
        for x in v:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    scaled = [[x * denom for x in row] for row in IntMatrix.identity(n).entries]
    scaled += [[int(x * denom) for x in v] for v in glue_rows]
    h, _ = hnf(IntMatrix(scaled, cols=n))
    rows = [r for r in h.entries if any(x != 0 for x in r)]
    if len(rows) != n:
        raise LatticeError("glue vectors do not preserve the rank")
    basis = tuple(tuple(Fraction(x, denom) for x in row) for row in rows)
    new_gram_rat = rat_mul(rat_mul(basis, g), tuple(zip(*basis)))
    entries = []
    for row in new_gram_rat:
        out_row = []
        for x in row:
            if x.denominator != 1:
                raise LatticeError("overlattice form is not integral: invalid glue")
            out_row.append(x.numerator)
        entries.append(out_row)
    lat = Lattice(IntMatrix(entries, cols=n))
    if not lat.is_even:
        raise LatticeError("overlattice form is not even: invalid glue")
    old_coeff = rat_express(rat(IntMatrix.identity(n)), basis)
    rows_int = []
    for row in old_coeff:
        if any(x.denominator != 1 for x in row):
            raise LatticeError("original basis not contained in the overlattice")
        rows_int.append([x.numerator for x in row])
    old_in_new = IntMatrix(rows_int, cols=n)
    index = abs(det(old_in_new))
    return Overlattice(lat, basis, old_in_new, index)
