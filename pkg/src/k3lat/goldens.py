"""Reference values checked by the verification suites.

Everything here is reproduced independently by the library; the suites
compare computed output against these tables entry by entry.  Embedding
descriptors are stored per component in expanded form: one row per
component, ``(assigned factors, complement type, dual quotient order)``,
as a sorted tuple so comparisons are order-free.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

FAMILIES = ((0, 2), (0, 1), (1, 1), (2, 1))

# family -> genus of the fixed curve
GENUS = {(0, 2): 5, (0, 1): 4, (1, 1): 3, (2, 1): 2}

# family -> summands of the three lattices (S, T, P)
LATTICE_TABLE: Dict[Tuple[int, int], Dict[str, Tuple]] = {
    (0, 2): {
        "S": (("U", 1),),
        "T": (("U", 1), ("U", 1), ("E", 8), ("E", 8)),
        "P": (("E", 8),),
        "a3": 0,
    },
    (0, 1): {
        "S": (("U", 3),),
        "T": (("U", 1), ("U", 3), ("E", 8), ("E", 8)),
        "P": (("E", 6), ("A", 2)),
        "a3": 2,
    },
    (1, 1): {
        "S": (("U", 3), ("A", 2)),
        "T": (("U", 1), ("U", 3), ("E", 6), ("E", 8)),
        "P": (("E", 6), ("A", 2), ("A", 2)),
        "a3": 3,
    },
    (2, 1): {
        "S": (("U", 3), ("A", 2), ("A", 2)),
        "T": (("U", 1), ("U", 3), ("E", 6), ("E", 6)),
        "P": (("E", 6), ("A", 2), ("A", 2), ("A", 2)),
        "a3": 4,
    },
}

# family -> quotient root types at the 1-cusps (stars mark index-3
# overlattices of the root span)
CUSP_TABLE: Dict[Tuple[int, int], List[str]] = {
    (0, 2): ["E8^2"],
    (0, 1): ["E8^2", "E8+E6+A2", "E6^2+A2^2*"],
    (1, 1): ["E8+E6", "E6^2+A2", "E8+A2^3", "E6+A2^4*"],
    (2, 1): ["E8+A2^2", "E6^2", "E6+A2^3", "A2^6*"],
}

# the five orthogonal-complement identities inside E8 and E6
COMPLEMENT_FACTS = (
    ("A2", "E8", "E6"),
    ("E6", "E8", "A2"),
    ("A2", "E6", "A2^2"),
    ("A2^2", "E6", "A2"),
    ("A2^2", "E8", "A2^2"),
)

Row = Tuple[str, str, int]
Embedding = Tuple[Row, ...]


def _emb(*rows: Row) -> Embedding:
    return tuple(sorted(rows))


# (family, model) -> distinct embedding descriptors.  The reference list
# for the (2,1) embeddings into E6^4 contains one column twice with
# identical data; descriptors collapse such duplicates.
EMBEDDING_TABLES: Dict[Tuple[Tuple[int, int], str], List[Embedding]] = {
    ((0, 2), "E8^3"): [
        _emb(("E8", "0", 1), ("0", "E8", 1), ("0", "E8", 1)),
    ],
    ((0, 2), "E6^4"): [],
    ((0, 1), "E8^3"): [
        _emb(("E6+A2", "0", 1), ("0", "E8", 1), ("0", "E8", 1)),
        _emb(("E6", "A2", 1), ("A2", "E6", 1), ("0", "E8", 1)),
    ],
    ((0, 1), "E6^4"): [
        _emb(("E6", "0", 1), ("A2", "A2^2", 3), ("0", "E6", 3), ("0", "E6", 3)),
    ],
    ((1, 1), "E8^3"): [
        _emb(("E6+A2", "0", 1), ("A2", "E6", 1), ("0", "E8", 1)),
        _emb(("E6", "A2", 1), ("A2^2", "A2^2", 1), ("0", "E8", 1)),
        _emb(("E6", "A2", 1), ("A2", "E6", 1), ("A2", "E6", 1)),
    ],
    ((1, 1), "E6^4"): [
        _emb(("E6", "0", 1), ("A2^2", "A2", 1), ("0", "E6", 3), ("0", "E6", 3)),
        _emb(("E6", "0", 1), ("A2", "A2^2", 3), ("A2", "A2^2", 3), ("0", "E6", 3)),
    ],
    ((2, 1), "E8^3"): [
        _emb(("E6+A2", "0", 1), ("A2^2", "A2^2", 1), ("0", "E8", 1)),
        _emb(("E6+A2", "0", 1), ("A2", "E6", 1), ("A2", "E6", 1)),
        _emb(("E6", "A2", 1), ("A2^3", "A2", 1), ("0", "E8", 1)),
        _emb(("E6", "A2", 1), ("A2^2", "A2^2", 1), ("A2", "E6", 1)),
    ],
    ((2, 1), "E6^4"): [
        _emb(("E6", "0", 1), ("A2^3", "0", 1), ("0", "E6", 3), ("0", "E6", 3)),
        _emb(("E6", "0", 1), ("A2^2", "A2", 1), ("A2", "A2^2", 3), ("0", "E6", 3)),
        _emb(("E6", "0", 1), ("A2", "A2^2", 3), ("A2", "A2^2", 3), ("A2", "A2^2", 3)),
    ],
}

# embedding-class counts per (family, model)
EMBEDDING_COUNTS = {
    ((0, 2), "E8^3"): 1,
    ((0, 2), "E6^4"): 0,
    ((0, 1), "E8^3"): 2,
    ((0, 1), "E6^4"): 1,
    ((1, 1), "E8^3"): 3,
    ((1, 1), "E6^4"): 2,
    ((2, 1), "E8^3"): 4,
    ((2, 1), "E6^4"): 3,
}

# the six triple-cover component rows: (pinch count, cover pieces) ->
# root type of the primitive Picard part
COMPONENT_TABLE: Tuple[Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], str], ...] = (
    ((0, ((1, 3),)), "E6+A2"),
    ((0, ((0, 1), (2, 2))), "E8"),
    ((1, ((0, 3),)), "A2^3"),
    ((1, ((0, 1), (1, 2))), "E6"),
    ((2, ((0, 1), (0, 2))), "A2^2"),
    ((3, ((0, 1), (0, 1), (0, 1))), "A2"),
)

# family -> component pairings of the two-component degenerations and the
# root type (with star) of the resulting primitive part
GLUE_PAIRINGS: Dict[Tuple[int, int], List[Tuple[Tuple, Tuple, str, bool]]] = {
    (0, 2): [
        ((0, ((0, 1), (2, 2))), (0, ((0, 1), (2, 2))), "E8^2", False),
    ],
    (0, 1): [
        ((0, ((1, 3),)), (0, ((1, 3),)), "E6^2+A2^2", True),
        ((0, ((0, 1), (2, 2))), (0, ((1, 3),)), "E8+E6+A2", False),
        ((0, ((0, 1), (2, 2))), (0, ((0, 1), (2, 2))), "E8^2", False),
    ],
    (1, 1): [
        ((0, ((1, 3),)), (1, ((0, 3),)), "E6+A2^4", True),
        ((0, ((0, 1), (2, 2))), (1, ((0, 3),)), "E8+A2^3", False),
        ((0, ((1, 3),)), (1, ((0, 1), (1, 2))), "E6^2+A2", False),
        ((0, ((0, 1), (2, 2))), (1, ((0, 1), (1, 2))), "E8+E6", False),
    ],
    (2, 1): [
        ((1, ((0, 3),)), (1, ((0, 3),)), "A2^6", True),
        ((1, ((0, 1), (1, 2))), (1, ((0, 3),)), "E6+A2^3", False),
        ((1, ((0, 1), (1, 2))), (1, ((0, 1), (1, 2))), "E6^2", False),
        ((0, ((0, 1), (2, 2))), (2, ((0, 1), (0, 2))), "E8+A2^2", False),
        ((0, ((1, 3),)), (2, ((0, 1), (0, 2))), "E6+A2^3", False),
    ],
}

# (family, cusp with star flag) -> rank of the semifan sublattice
SEMIFAN_TABLE: Dict[Tuple[int, int], Tuple[Tuple[str, int], ...]] = {
    (0, 2): (("E8^2", 0),),
    (0, 1): (("E6^2+A2^2*", 4), ("E8+E6+A2", 2), ("E8^2", 0)),
    (1, 1): (("E6+A2^4*", 8), ("E8+A2^3", 6), ("E6^2+A2", 2), ("E8+E6", 0)),
    (2, 1): (("A2^6*", 12), ("E6+A2^3", 6), ("E6^2", 0), ("E8+A2^2", 4)),
}
