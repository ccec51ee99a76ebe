"""Exact-arithmetic toolkit for integral lattices with finite-order isometries.

Subpackages cover integer/rational linear algebra, lattices and their
invariants, short-vector and root-system enumeration, order-3 and
order-4 isometry structure, boundary-component classification via
rank-24 unimodular overlattices, and the surface-side gluing calculus,
plus a command-line verification harness.
"""

__version__ = "0.1.0"
