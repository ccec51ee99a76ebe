from fractions import Fraction

import pytest

from k3lat.exactla import IntMatrix, index_in, saturate
from k3lat.lattice import (
    DegenerateFormError,
    LatticeError,
    Lattice,
    Sublattice,
    cartan_gram,
    d4_z4_model,
    diag_lattice,
    direct_sum,
    disc_group,
    divisibility,
    glue_overlattice,
    hyperbolic,
    is_p_elementary,
    nikulin_2elem,
    quotient_by_isotropic,
    rescale,
    root_lattice,
    signature,
)


def neg(sym, n):
    return rescale(root_lattice(sym, n), -1)


def test_make_table_row_rank():
    t = direct_sum(hyperbolic(), hyperbolic(3), neg("E", 8), neg("E", 8))
    assert t.rank == 20
    assert t.is_even


def test_rescale_identity():
    u = hyperbolic()
    assert rescale(u, 1) is u


def test_rescale_three():
    assert hyperbolic(3).gram == IntMatrix([[0, 3], [3, 0]])
    assert rescale(hyperbolic(), 3).gram == IntMatrix([[0, 3], [3, 0]])


def test_rescale_zero_rejected():
    with pytest.raises(LatticeError):
        rescale(hyperbolic(), 0)


def test_signature_hyperbolic():
    assert signature(hyperbolic()) == (1, 1)


def test_signature_table3_t01():
    t = direct_sum(hyperbolic(), hyperbolic(3), neg("E", 8), neg("E", 8))
    assert signature(t) == (2, 18)


def test_signature_definite_sum():
    p = direct_sum(neg("E", 6), neg("A", 2), neg("A", 2), neg("A", 2))
    assert signature(p) == (0, 12)


def test_signature_degenerate_reports_radical():
    l = Lattice([[0, 0], [0, 2]])
    with pytest.raises(DegenerateFormError) as exc:
        signature(l)
    assert exc.value.radical_rank == 1


def test_signature_additivity_and_rescale_swap():
    a = direct_sum(hyperbolic(), neg("A", 2))
    p, q = signature(a)
    assert (p, q) == (1, 3)
    assert signature(rescale(a, -1)) == (q, p)
    assert signature(rescale(a, 5)) == (p, q)


def test_disc_group_e6():
    d = disc_group(root_lattice("E", 6))
    assert d.elementary_divisors == (3,)
    assert d.a_p == {3: 1}


def test_disc_group_u3():
    d = disc_group(hyperbolic(3))
    assert d.elementary_divisors == (3, 3)
    assert d.a_p == {3: 2}


def test_disc_group_e8_trivial():
    d = disc_group(root_lattice("E", 8))
    assert d.elementary_divisors == ()
    assert root_lattice("E", 8).is_unimodular


def test_3_elementary():
    assert is_p_elementary(hyperbolic(3), 3)
    assert is_p_elementary(hyperbolic(), 3)  # no divisors at all
    assert is_p_elementary(direct_sum(root_lattice("E", 6), root_lattice("A", 2)), 3)
    assert not is_p_elementary(hyperbolic(2), 3)


def test_nikulin_u2_d8():
    l = direct_sum(hyperbolic(2), neg("D", 8))
    assert nikulin_2elem(l).as_tuple() == (1, 9, 4, 0)


def test_nikulin_u_d4_d4():
    l = direct_sum(hyperbolic(), neg("D", 4), neg("D", 4))
    assert nikulin_2elem(l).as_tuple() == (1, 9, 4, 0)


def test_nikulin_u():
    assert nikulin_2elem(hyperbolic()).as_tuple() == (1, 1, 0, 0)


def test_divisibility():
    u = hyperbolic()
    assert divisibility(u, (1, 0)) == 1
    assert divisibility(u, (2, 0)) == 2
    assert divisibility(hyperbolic(3), (0, 1)) == 3
    with pytest.raises(LatticeError):
        divisibility(u, (0, 0))


def test_orth_complement_ranks():
    t = direct_sum(hyperbolic(), hyperbolic(3))
    s = Sublattice(t, [[1, 0, 0, 0], [0, 1, 0, 0]])
    c = s.orth_complement()
    assert s.rank + c.rank == t.rank
    cc = c.orth_complement()
    assert saturate(cc.basis) == saturate(s.saturation().basis)


def test_complement_of_isotropic_line_in_u():
    u = hyperbolic()
    e = Sublattice(u, [[1, 0]])
    c = e.orth_complement()
    assert c.basis == IntMatrix([[1, 0]])


def test_quotient_d4_a1_example():
    t = direct_sum(
        hyperbolic(),
        hyperbolic(2),
        neg("D", 4),
        neg("D", 4),
        diag_lattice([-2, -2]),
    )
    j = Sublattice(t, [[1, 0, 0, 0] + [0] * 10, [0, 0, 1, 0] + [0] * 10])
    assert j.is_isotropic()
    q, _ = quotient_by_isotropic(j)
    assert q.rank == 10
    assert signature(q) == (0, 10)
    assert abs(q.det()) == 4 * 4 * 2 * 2


def test_quotient_unimodular_rank_drop():
    l = direct_sum(hyperbolic(), hyperbolic(), neg("E", 8))
    j = Sublattice(l, [[1, 0, 0, 0] + [0] * 8, [0, 0, 1, 0] + [0] * 8])
    q, _ = quotient_by_isotropic(j)
    assert q.rank == l.rank - 4
    assert abs(q.det()) == 1
    assert q.is_even


def test_quotient_rejects_unsaturated():
    u2 = direct_sum(hyperbolic(), hyperbolic())
    j = Sublattice(u2, [[2, 0, 0, 0], [0, 0, 1, 0]])
    with pytest.raises(LatticeError, match="saturate"):
        quotient_by_isotropic(j)


def test_quotient_rejects_non_isotropic():
    u = hyperbolic()
    j = Sublattice(u, [[1, 1]])
    with pytest.raises(LatticeError, match="isotropic"):
        quotient_by_isotropic(j)


def test_glue_empty_is_identity():
    l = root_lattice("A", 2)
    o = glue_overlattice(l, [])
    assert o.index == 1
    assert o.lattice.gram == l.gram


def test_glue_rejects_odd_overlattice():
    # (1/3)(a - b) in the dual of A2 has norm 2/3: not an even glue
    a2 = root_lattice("A", 2)
    with pytest.raises(LatticeError):
        glue_overlattice(a2, [[Fraction(1, 3), Fraction(-1, 3)]])


def test_glue_a2_to_dual_scale():
    # gluing A2(3) by its dual generators recovers an even lattice of index 3
    l = rescale(root_lattice("A", 2), 3)
    # dual vector (1/3)(2a+b) of A2(3): norm 3*(2/3)^2*2... check integrality via op
    o = glue_overlattice(l, [[Fraction(2, 3), Fraction(1, 3)]])
    assert o.index == 3
    assert o.lattice.is_even
    assert abs(o.lattice.det()) == abs(l.det()) // 9


def test_d4_z4_model_matches_cartan():
    lat, basis = d4_z4_model()
    assert lat.gram == cartan_gram("D", 4)
    # all basis rows have even coordinate sum in Z^4
    assert all(sum(r) % 2 == 0 for r in basis.entries)
    assert index_in(basis, IntMatrix.identity(4)) == 2


def test_invalid_symbols_rejected():
    with pytest.raises(LatticeError):
        root_lattice("E", 9)
    with pytest.raises(LatticeError):
        root_lattice("D", 3)
