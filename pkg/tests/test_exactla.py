import random

import pytest

from k3lat.exactla import (
    ExactLAError,
    IntMatrix,
    det,
    hnf,
    index_in,
    int_express,
    int_mat_inv,
    kernel_basis,
    rank,
    rat,
    rat_express,
    rat_mul,
    saturate,
    snf,
)


def test_hnf_identity():
    a = IntMatrix.identity(3)
    h, u = hnf(a)
    assert h == a
    assert u == a


def test_hnf_already_diagonal():
    a = IntMatrix([[2, 0], [0, 2]])
    h, u = hnf(a)
    assert h == a
    assert u * a == h


def test_hnf_row_swap():
    a = IntMatrix([[0, 3], [3, 0]])
    h, u = hnf(a)
    assert h == IntMatrix([[3, 0], [0, 3]])
    assert u * a == h
    assert abs(det(u)) == 1


def test_snf_u3_gram():
    res = snf(IntMatrix([[0, 3], [3, 0]]))
    assert res.d == (3, 3)


def test_snf_u_gram():
    res = snf(IntMatrix([[0, 1], [1, 0]]))
    assert res.d == (1, 1)


def test_snf_zero_matrix():
    res = snf(IntMatrix.zero(2, 2))
    assert res.d == (0, 0)


def test_kernel_identity_empty():
    k = kernel_basis(IntMatrix.identity(4))
    assert k.rows == 0


def test_kernel_one_relation():
    k = kernel_basis(IntMatrix([[1, 1]]))
    assert k.rows == 1
    assert tuple(map(abs, k.entries[0])) == (1, 1)
    assert sum(k.entries[0]) == 0


def test_kernel_2x4():
    k = kernel_basis(IntMatrix([[2, 4]]))
    # 2x + 4y = 0 over Z has primitive solution (2, -1)
    assert k.rows == 1
    x, y = k.entries[0]
    assert 2 * x + 4 * y == 0
    assert abs(x) == 2 and abs(y) == 1


def test_saturate_scalar():
    s = saturate(IntMatrix([[2, 0]]))
    assert s == IntMatrix([[1, 0]])


def test_saturate_already_saturated():
    s = saturate(IntMatrix([[1, 0]]))
    assert s == IntMatrix([[1, 0]])


def test_saturate_rank_two():
    # full-rank rows span all of Q^2, so the saturation is Z^2 itself
    s = saturate(IntMatrix([[2, 2], [0, 4]]))
    assert s == IntMatrix.identity(2)
    assert index_in(IntMatrix([[2, 2], [0, 4]]), s) == 8


def test_saturate_proper_sublattice():
    # rank-1 case where saturation strictly divides out the content
    s = saturate(IntMatrix([[2, 4, 6]]))
    assert s == IntMatrix([[1, 2, 3]])


def test_saturate_rejects_dependent_rows():
    with pytest.raises(ExactLAError):
        saturate(IntMatrix([[1, 2], [2, 4]]))


def test_index_in():
    sub = IntMatrix([[2, 0], [0, 3]])
    sup = IntMatrix.identity(2)
    assert index_in(sub, sup) == 6


def test_int_express_roundtrip():
    basis = IntMatrix([[1, 2, 0], [0, 1, 1]])
    targets = IntMatrix([[2, 5, 1], [1, 2, 0]])
    c = int_express(targets, basis)
    assert c * basis == targets


def test_rat_express_detects_outside_span():
    with pytest.raises(ExactLAError):
        rat_express(rat(IntMatrix([[0, 0, 1]])), rat(IntMatrix([[1, 0, 0]])))


def test_int_mat_inv():
    a = IntMatrix([[2, 1], [1, 1]])
    inv = int_mat_inv(a)
    assert rat_mul(rat(a), inv) == rat(IntMatrix.identity(2))


@pytest.mark.parametrize("seed", range(6))
def test_snf_random_transform_identity(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 6)
    n = rng.randint(1, 6)
    a = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
    res = snf(a)
    prod = res.left * a * res.right
    for i in range(m):
        for j in range(n):
            expect = res.d[i] if (i == j and i < len(res.d)) else 0
            assert prod.entries[i][j] == expect
    for i in range(len(res.d) - 1):
        if res.d[i] != 0:
            assert res.d[i + 1] % res.d[i] == 0
        else:
            assert res.d[i + 1] == 0
    assert abs(det(res.left)) == 1
    assert abs(det(res.right)) == 1


@pytest.mark.parametrize("seed", range(6))
def test_saturation_idempotent_random(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 6)
    k = rng.randint(1, n)
    while True:
        rows = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)])
        if rank(rows) == k:
            break
    s = saturate(rows)
    assert saturate(s) == s
    # the saturation index is the product of the elementary divisors of
    # the inclusion, hence finite and positive
    assert index_in(rows, s) >= 1


def test_kernel_rows_annihilate_and_are_saturated():
    a = IntMatrix([[1, 2, 3], [2, 4, 6]])
    k = kernel_basis(a)
    assert (k * a.transpose()).is_zero()
    assert saturate(k) == k
