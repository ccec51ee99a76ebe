"""Short-vector enumeration in definite lattices and ADE root systems.

Enumeration is exact: a rational LDL decomposition of the Gram matrix
(definite, so all pivots nonzero and of one sign) feeds a
Fincke--Pohst traversal whose interval bounds are computed with exact
integer square-root comparisons.  A brute-force coefficient-box
enumerator is kept alongside as an independent oracle; the two are
cross-checked in the test suite on every standard root lattice.

Vectors are returned closed under negation, sorted lexicographically on
their coefficient tuples, so output order is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .exactla import IntMatrix, hnf, index_in, rat
from .lattice import Lattice, LatticeError, Sublattice, definite_sign

Vector = Tuple[int, ...]


class EnumerationError(LatticeError):
    pass


def _positive_gram(l: Lattice) -> IntMatrix:
    sign = definite_sign(l)  # raises on indefinite input
    return l.gram if sign > 0 else l.gram.scale(-1)


def _ldl(gram: IntMatrix) -> List[List[Fraction]]:
    """Fincke-Pohst coefficients q with Q(x) = sum_k q[k][k](x_k + sum_{l>k} q[k][l] x_l)^2."""
    n = gram.rows
    q = [[Fraction(x) for x in row] for row in gram.entries]
    for i in range(n):
        if q[i][i] <= 0:
            raise EnumerationError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _coeff_range(u: Fraction, c: Fraction) -> Tuple[int, int]:
    """Integers x with (x + u)^2 <= c, as an inclusive range (lo, hi)."""
    if c < 0:
        return 1, 0
    # hi = floor(-u + sqrt(c)), lo = ceil(-u - sqrt(c))
    num, den = c.numerator, c.denominator
    # sqrt(c) = isqrt(num*den)/den up to rounding; refine exactly
    s = math.isqrt(num * den)

    def ok_hi(t: int) -> bool:
        v = Fraction(t) + u
        return v <= 0 or v * v <= c

    def ok_lo(t: int) -> bool:
        v = Fraction(t) + u
        return v >= 0 or v * v <= c

    hi = math.floor(-u + Fraction(s + 1, den))
    while not ok_hi(hi):
        hi -= 1
    lo = math.ceil(-u - Fraction(s + 1, den))
    while not ok_lo(lo):
        lo += 1
    return lo, hi


def _size_reduce(gram: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Exact greedy basis reduction: returns (reduced gram, transform V)
    with ``V * G * V^T`` reduced.

    Alternates integer shear sweeps (subtracting the rounded projection
    coefficient) with norm-sorting swaps until stable.  All arithmetic
    is integral or rational; this is only a preconditioner that keeps
    the enumeration intervals short on skew bases coming from quotient
    constructions, not a reduction algorithm with guarantees.
    """
    n = gram.rows
    g = [list(row) for row in gram.entries]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def shear(i: int, j: int, r: int) -> None:
        for k in range(n):
            g[i][k] -= r * g[j][k]
        for k in range(n):
            g[k][i] -= r * g[k][j]
        for k in range(n):
            v[i][k] -= r * v[j][k]

    def swap(i: int, j: int) -> None:
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]

    for _ in range(60):
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or g[j][j] == 0:
                    continue
                r = round(Fraction(g[i][j], g[j][j]))
                if r:
                    shear(i, j, r)
                    changed = True
        for i in range(n - 1):
            if g[i + 1][i + 1] < g[i][i]:
                swap(i, i + 1)
                changed = True
        if not changed:
            break
    return IntMatrix(g, cols=n), IntMatrix(v, cols=n)


def enumerate_norm(l: Lattice, m: int) -> List[Vector]:
    """All lattice vectors of norm exactly ``m`` (absolute value for
    negative definite input), closed under negation, in canonical order."""
    if m < 1:
        raise EnumerationError("norm bound must be a positive integer")
    if l.rank == 0:
        return []
    gram_pos = _positive_gram(l)
    gram_red, v = _size_reduce(gram_pos)
    q = _ldl(gram_red)
    n = gram_red.rows
    found: List[Vector] = []
    x = [0] * n

    def descend(k: int, budget: Fraction, us: List[Fraction]) -> None:
        # us[j] = sum_{l>k} q[k][l] x_l accumulated lazily per level
        u = us[k]
        lo, hi = _coeff_range(u, budget / q[k][k])
        for t in range(lo, hi + 1):
            x[k] = t
            used = q[k][k] * (t + u) ** 2
            if k == 0:
                if budget - used == 0 and any(x):
                    found.append(tuple(x))
            else:
                nus = list(us)
                for j in range(k):
                    nus[j] += q[j][k] * t
                descend(k - 1, budget - used, nus)
        x[k] = 0

    descend(n - 1, Fraction(m), [Fraction(0)] * n)
    # map back through the size-reduction transform: rows enumerated in the
    # reduced basis correspond to x*V in the original coordinates
    out = set()
    for vec in found:
        orig = tuple(
            sum(vec[i] * v.entries[i][j] for i in range(n)) for j in range(n)
        )
        out.add(orig)
        out.add(tuple(-c for c in orig))
    return sorted(out)


def enumerate_norm_box(l: Lattice, m: int, bound: int) -> List[Vector]:
    """Brute-force oracle: scan every coefficient vector with sup-norm <= bound.

    The whole box is visited (no branch is ever skipped); the quadratic
    form is evaluated incrementally along the recursion so the scan stays
    usable for boxes with a few million points.  Completeness holds for
    vectors whose coefficients all lie within the bound; callers compare
    against the main enumerator restricted to the same box.
    """
    gram = _positive_gram(l)
    n = gram.rows
    g = gram.entries
    out: List[Vector] = []
    x = [0] * n
    span = range(-bound, bound + 1)

    def scan(k: int, partial: int, sums: Tuple[int, ...]) -> None:
        if k == n:
            if partial == m and any(x):
                out.append(tuple(x))
            return
        row = g[k]
        for t in span:
            x[k] = t
            if t == 0:
                scan(k + 1, partial, sums)
            else:
                scan(
                    k + 1,
                    partial + 2 * t * sums[k] + t * t * row[k],
                    tuple(s + t * c for s, c in zip(sums, row)),
                )
        x[k] = 0

    scan(0, 0, tuple([0] * n))
    return sorted(out)


def restrict_to_box(vectors: Sequence[Vector], bound: int) -> List[Vector]:
    """Vectors whose coefficients all have absolute value <= bound."""
    return sorted(v for v in vectors if all(abs(c) <= bound for c in v))


# -- root systems ------------------------------------------------------

_TYPE_BY_RANK_COUNT: Dict[Tuple[int, int], Tuple[str, int]] = {}
for _n in range(1, 25):
    _TYPE_BY_RANK_COUNT[(_n, _n * (_n + 1))] = ("A", _n)
for _n in range(4, 25):
    _TYPE_BY_RANK_COUNT[(_n, 2 * _n * (_n - 1))] = ("D", _n)
_TYPE_BY_RANK_COUNT[(6, 72)] = ("E", 6)
_TYPE_BY_RANK_COUNT[(7, 126)] = ("E", 7)
_TYPE_BY_RANK_COUNT[(8, 240)] = ("E", 8)
# rank 3 with 12 roots is reported as A3 by convention


@dataclass(frozen=True, order=True)
class RootSystemType:
    """Multiset of ADE symbols, optionally starred (index-3 overlattice marker)."""

    components: Tuple[Tuple[str, int], ...]  # sorted, e.g. (("E", 8), ("A", 2))
    starred: bool = False

    @staticmethod
    def sort_key(comp: Tuple[str, int]) -> Tuple[int, str]:
        sym, n = comp
        return (-n, {"E": 0, "D": 1, "A": 2}[sym])

    @staticmethod
    def of(components: Sequence[Tuple[str, int]], starred: bool = False) -> "RootSystemType":
        return RootSystemType(tuple(sorted(components, key=RootSystemType.sort_key)), starred)

    @staticmethod
    def parse(text: str) -> "RootSystemType":
        """Parse strings like 'E8+E6', 'A2^6*', 'E6^2+A2^2*' or '0'."""
        text = text.strip()
        starred = text.endswith("*")
        if starred:
            text = text[:-1]
        comps: List[Tuple[str, int]] = []
        if text not in ("", "0"):
            for part in text.split("+"):
                part = part.strip()
                if "^" in part:
                    base, mult = part.split("^")
                    k = int(mult)
                else:
                    base, k = part, 1
                comps.extend([(base[0], int(base[1:]))] * k)
        return RootSystemType.of(comps, starred)

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def root_count(self) -> int:
        total = 0
        for sym, n in self.components:
            if sym == "A":
                total += n * (n + 1)
            elif sym == "D":
                total += 2 * n * (n - 1)
            else:
                total += {6: 72, 7: 126, 8: 240}[n]
        return total

    def unstarred(self) -> "RootSystemType":
        return RootSystemType(self.components, False)

    def with_star(self, starred: bool) -> "RootSystemType":
        return RootSystemType(self.components, starred)

    def __add__(self, other: "RootSystemType") -> "RootSystemType":
        return RootSystemType.of(self.components + other.components, self.starred or other.starred)

    def __str__(self) -> str:
        if not self.components:
            return "0" + ("*" if self.starred else "")
        runs: List[Tuple[Tuple[str, int], int]] = []
        for comp in self.components:
            if runs and runs[-1][0] == comp:
                runs[-1] = (comp, runs[-1][1] + 1)
            else:
                runs.append((comp, 1))
        parts = [
            f"{sym}{n}" + (f"^{k}" if k > 1 else "") for (sym, n), k in runs
        ]
        return "+".join(parts) + ("*" if self.starred else "")


EMPTY_TYPE = RootSystemType.of([])


def _identify_component(rank: int, count: int) -> Tuple[str, int]:
    t = _TYPE_BY_RANK_COUNT.get((rank, count))
    if t is None:
        raise EnumerationError(
            f"component with rank {rank} and {count} roots matches no ADE type"
        )
    return t


def root_system(l: Lattice) -> Tuple[RootSystemType, Sublattice]:
    """Root-system type of a definite lattice and the sublattice its roots span."""
    roots = enumerate_norm(l, 2)
    if not roots:
        return EMPTY_TYPE, Sublattice(l, IntMatrix([], cols=l.rank))
    sign = definite_sign(l)
    gram = l.gram if sign > 0 else l.gram.scale(-1)
    glat = Lattice(gram)
    # connected components of the graph "pairing is nonzero"
    parent = list(range(len(roots)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if glat.pair(roots[i], roots[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: Dict[int, List[Vector]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    comps = []
    for vecs in groups.values():
        h, _ = hnf(IntMatrix(vecs, cols=l.rank))
        rk = sum(1 for row in h.entries if any(row))
        comps.append(_identify_component(rk, len(vecs)))
    span_h, _ = hnf(IntMatrix(roots, cols=l.rank))
    span_rows = [r for r in span_h.entries if any(r)]
    return RootSystemType.of(comps), Sublattice(l, IntMatrix(span_rows, cols=l.rank))


def root_span_index(l: Lattice) -> int:
    """Index of the root span inside the full lattice (requires equal ranks)."""
    rtype, span = root_system(l)
    if rtype.rank != l.rank:
        raise EnumerationError("roots do not span the lattice rationally")
    return index_in(span.basis, IntMatrix.identity(l.rank))


def complement_root_type(s: Sublattice, ambient: Lattice | None = None) -> RootSystemType:
    """Root type of the orthogonal complement of a root-spanned sublattice."""
    r = s.ambient if ambient is None else ambient
    all_roots = enumerate_norm(r, 2)
    # the sublattice must be spanned by roots of the ambient lattice
    in_span = [v for v in all_roots if _in_rational_span(v, s.basis)]
    if in_span:
        h, _ = hnf(IntMatrix(in_span, cols=r.rank))
        span_rows = IntMatrix([row for row in h.entries if any(row)], cols=r.rank)
    else:
        span_rows = IntMatrix([], cols=r.rank)
    sh, _ = hnf(s.basis)
    if span_rows != IntMatrix([row for row in sh.entries if any(row)], cols=r.rank):
        raise LatticeError("sublattice is not spanned by roots of the ambient lattice")
    comp_roots = [
        v for v in all_roots if all(r.pair(v, b) == 0 for b in s.basis.entries)
    ]
    return _type_of_root_subset(comp_roots, r)


def _in_rational_span(v: Vector, basis: IntMatrix) -> bool:
    if basis.rows == 0:
        return not any(v)
    from .exactla import rat_express, ExactLAError

    try:
        rat_express(rat(IntMatrix([list(v)], cols=basis.cols)), rat(basis))
        return True
    except ExactLAError:
        return False


def _type_of_root_subset(roots: List[Vector], ambient: Lattice) -> RootSystemType:
    """Type of a set of roots, using ambient pairings (set must be closed under -)."""
    if not roots:
        return EMPTY_TYPE
    parent = list(range(len(roots)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if ambient.pair(roots[i], roots[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: Dict[int, List[Vector]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    comps = []
    for vecs in groups.values():
        h, _ = hnf(IntMatrix(vecs, cols=ambient.rank))
        rk = sum(1 for row in h.entries if any(row))
        comps.append(_identify_component(rk, len(vecs)))
    return RootSystemType.of(comps)
