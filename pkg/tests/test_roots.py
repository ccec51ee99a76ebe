import pytest

from k3lat.exactla import IntMatrix
from k3lat.lattice import (
    Lattice,
    Sublattice,
    diag_lattice,
    direct_sum,
    hyperbolic,
    rescale,
    root_lattice,
)
from k3lat.roots import (
    EnumerationError,
    RootSystemType,
    complement_root_type,
    enumerate_norm,
    enumerate_norm_box,
    restrict_to_box,
    root_span_index,
    root_system,
)

T = RootSystemType.parse


def test_enumerate_a1():
    vecs = enumerate_norm(diag_lattice([2]), 2)
    assert vecs == [(-1,), (1,)]


def test_enumerate_a2():
    assert len(enumerate_norm(root_lattice("A", 2), 2)) == 6


def test_enumerate_e8_count():
    assert len(enumerate_norm(root_lattice("E", 8), 2)) == 240


def test_enumerate_negative_definite():
    vecs = enumerate_norm(rescale(root_lattice("A", 2), -1), 2)
    assert len(vecs) == 6


def test_enumerate_closed_under_negation_and_sorted():
    vecs = enumerate_norm(root_lattice("D", 4), 2)
    s = set(vecs)
    assert all(tuple(-c for c in v) in s for v in vecs)
    assert vecs == sorted(vecs)


def test_enumerate_rejects_indefinite():
    with pytest.raises(Exception):
        enumerate_norm(hyperbolic(), 2)


def test_enumerate_rejects_bad_norm():
    with pytest.raises(EnumerationError):
        enumerate_norm(root_lattice("A", 2), 0)


@pytest.mark.parametrize(
    "sym,n,count",
    [("A", 2, 6), ("D", 4, 24), ("E", 6, 72), ("E", 7, 126), ("E", 8, 240)],
)
def test_standard_root_counts(sym, n, count):
    assert len(enumerate_norm(root_lattice(sym, n), 2)) == count


@pytest.mark.parametrize(
    "sym,n,bound",
    [("A", 2, 1), ("A", 4, 1), ("D", 4, 2), ("D", 5, 2), ("E", 6, 3)],
)
def test_box_oracle_full_agreement(sym, n, bound):
    # the bound covers the highest root, so the box sees every root
    l = root_lattice(sym, n)
    assert enumerate_norm_box(l, 2, bound) == enumerate_norm(l, 2)


def test_box_oracle_regional_agreement_e8():
    l = root_lattice("E", 8)
    full = enumerate_norm(l, 2)
    assert enumerate_norm_box(l, 2, 2) == restrict_to_box(full, 2)


def test_root_system_e6_a2():
    t, span = root_system(direct_sum(root_lattice("E", 6), root_lattice("A", 2)))
    assert t == T("E6+A2")
    assert span.rank == 8


def test_root_system_d4d4a1a1():
    l = direct_sum(
        root_lattice("D", 4), root_lattice("D", 4), diag_lattice([2, 2])
    )
    t, _ = root_system(l)
    assert t == T("D4^2+A1^2")
    assert str(t) == "D4^2+A1^2"


def test_root_system_no_roots():
    t, span = root_system(diag_lattice([4]))
    assert t == T("0")
    assert span.rank == 0


def test_root_system_additive_over_sums():
    a = root_lattice("A", 2)
    e6 = root_lattice("E", 6)
    ta, _ = root_system(a)
    te, _ = root_system(e6)
    tsum, _ = root_system(direct_sum(a, e6))
    assert tsum == ta + te


def test_root_span_index_trivial():
    assert root_span_index(root_lattice("E", 8)) == 1


def test_complement_a2_in_e8():
    e8 = root_lattice("E", 8)
    # alpha1, alpha3 are adjacent nodes spanning an A2
    s = Sublattice(e8, [[1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0]])
    assert complement_root_type(s) == T("E6")


def test_complement_e6_in_e8():
    e8 = root_lattice("E", 8)
    s = Sublattice(e8, IntMatrix.identity(8).submatrix(range(6)))
    assert complement_root_type(s) == T("A2")


def test_complement_a2_in_e6():
    e6 = root_lattice("E", 6)
    s = Sublattice(e6, [[1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    assert complement_root_type(s) == T("A2^2")


def test_complement_a2a2_in_e8():
    e8 = root_lattice("E", 8)
    s = Sublattice(
        e8,
        [
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
        ],
    )
    assert complement_root_type(s) == T("A2^2")


def test_complement_rejects_non_root_sublattice():
    e8 = root_lattice("E", 8)
    s = Sublattice(e8, [[2, 0, 0, 0, 0, 0, 0, 0]])
    with pytest.raises(Exception):
        complement_root_type(s)


def test_type_parsing_and_str_roundtrip():
    for text in ["E8^2", "E6^2+A2^2*", "A2^6*", "E8+E6+A2", "0"]:
        assert str(T(text)) == text


def test_type_rank_and_counts():
    t = T("E8+E6+A2")
    assert t.rank == 16
    assert t.root_count() == 240 + 72 + 6
