import pytest

from k3lat.exactla import IntMatrix, index_in
from k3lat.kulikov import (
    COMPONENT_ROWS,
    TABLE1_SEMIFANS,
    ComponentSpec,
    KulikovError,
    build_component,
    glue_lambda,
    order4_suite,
    primitive_picard,
    quotient_model_fingerprint,
    root_split_check,
    semifan,
)
from k3lat.lattice import signature
from k3lat.roots import RootSystemType, root_system

T = RootSystemType.parse

EXPECTED_PRIM = {
    (0, ((1, 3),)): "E6+A2",
    (0, ((0, 1), (2, 2))): "E8",
    (1, ((0, 3),)): "A2^3",
    (1, ((0, 1), (1, 2))): "E6",
    (2, ((0, 1), (0, 2))): "A2^2",
    (3, ((0, 1), (0, 1), (0, 1))): "A2",
}


def test_component_rows_cover_spec_table():
    assert set(COMPONENT_ROWS) == set(EXPECTED_PRIM)


@pytest.mark.parametrize("row", COMPONENT_ROWS)
def test_component_primitive_types(row):
    c = build_component(ComponentSpec(*row))
    assert c.picard.rank == 10
    assert abs(c.picard.det()) == 1
    assert c.picard.norm(c.d) == 0
    assert c.rho.rho.apply(c.d) == c.d
    _, rtype = primitive_picard(c)
    assert str(rtype) == EXPECTED_PRIM[row]


def test_unknown_component_rejected():
    with pytest.raises(KulikovError):
        ComponentSpec(2, ((1, 3),))


def test_glue_shape_and_action():
    c = build_component(ComponentSpec(0, ((1, 3),)))
    k = glue_lambda(c, c)
    assert k.lattice.rank == 18
    assert abs(k.lattice.det()) == 1
    assert k.lattice.is_even
    assert signature(k.lattice) == (1, 17)
    assert k.rho.order == 3
    assert k.prim.rank == 16


GLUE_PAIRINGS = [
    ((0, ((0, 1), (2, 2))), (0, ((0, 1), (2, 2))), "E8^2", False),
    ((0, ((1, 3),)), (0, ((1, 3),)), "E6^2+A2^2", True),
    ((0, ((0, 1), (2, 2))), (0, ((1, 3),)), "E8+E6+A2", False),
    ((0, ((1, 3),)), (1, ((0, 3),)), "E6+A2^4", True),
    ((0, ((0, 1), (2, 2))), (1, ((0, 3),)), "E8+A2^3", False),
    ((0, ((1, 3),)), (1, ((0, 1), (1, 2))), "E6^2+A2", False),
    ((0, ((0, 1), (2, 2))), (1, ((0, 1), (1, 2))), "E8+E6", False),
    ((1, ((0, 3),)), (1, ((0, 3),)), "A2^6", True),
    ((1, ((0, 1), (1, 2))), (1, ((0, 3),)), "E6+A2^3", False),
    ((1, ((0, 1), (1, 2))), (1, ((0, 1), (1, 2))), "E6^2", False),
    ((0, ((0, 1), (2, 2))), (2, ((0, 1), (0, 2))), "E8+A2^2", False),
    ((0, ((1, 3),)), (2, ((0, 1), (0, 2))), "E6+A2^3", False),
]


@pytest.mark.parametrize("s0,s1,expected,starred", GLUE_PAIRINGS[:4])
def test_glue_pairing_types_fast(s0, s1, expected, starred):
    _check_pairing(s0, s1, expected, starred)


@pytest.mark.slow
@pytest.mark.parametrize("s0,s1,expected,starred", GLUE_PAIRINGS[4:])
def test_glue_pairing_types_rest(s0, s1, expected, starred):
    _check_pairing(s0, s1, expected, starred)


def _check_pairing(s0, s1, expected, starred):
    c0 = build_component(ComponentSpec(*s0))
    c1 = build_component(ComponentSpec(*s1))
    k = glue_lambda(c0, c1)
    prim_lat = k.prim.lattice()
    rtype, span = root_system(prim_lat)
    assert str(rtype) == expected
    star_idx = index_in(span.basis, IntMatrix.identity(prim_lat.rank))
    assert star_idx == (3 if starred else 1)
    ok, idx = root_split_check(k, c0, c1)
    assert ok
    assert idx >= 1


def test_root_split_trivial_case():
    # a component with empty primitive part would make the union law
    # trivial; the smallest actual case still splits correctly
    c = build_component(ComponentSpec(3, ((0, 1), (0, 1), (0, 1))))
    k = glue_lambda(c, c)
    ok, idx = root_split_check(k, c, c)
    assert ok and idx >= 1


def test_semifan_table_ranks():
    for (n, k), entries in TABLE1_SEMIFANS.items():
        for cusp, rank in entries:
            rec = semifan(n, k, cusp)
            assert rec.fj_rank == rank
            assert rec.primitive
            assert rec.rho_invariant


def test_semifan_whole_lattice_case():
    rec = semifan(2, 1, "A2^6*")
    assert rec.fj_rank == 12
    # the semifan is the whole quotient model here
    assert index_in(rec.fj_basis, IntMatrix.identity(12)) == 1


def test_semifan_zero_cases():
    for n, k, cusp in [(0, 2, "E8^2"), (1, 1, "E8+E6"), (2, 1, "E6^2")]:
        rec = semifan(n, k, cusp)
        assert rec.fj_rank == 0


def test_semifan_rejects_unknown_pair():
    with pytest.raises(KulikovError):
        semifan(0, 2, "E6^2")


def test_semifan_fingerprints_match_concrete_quotients():
    from k3lat.cusps import build_niemeier, classify_cusps, cusp_quotient_lattice

    for fam in [(0, 1), (2, 1)]:
        for rec in classify_cusps(*fam):
            w = rec.witnesses[0]
            sat = cusp_quotient_lattice(w, build_niemeier(w.model_kind))
            sf = semifan(fam[0], fam[1], rec.jperp_root)
            assert quotient_model_fingerprint(sat) == quotient_model_fingerprint(sf.model)


def test_order4_suite_all_pass():
    results = order4_suite()
    assert len(results) == 5
    for cid, ok, detail in results:
        assert ok, f"{cid}: {detail}"
