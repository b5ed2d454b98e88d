"""GF(2) core: multiplication, rank, inverse, GL enumeration, affine solve."""
import random

import pytest

from f2geo.gf2 import (
    AffineSolutionSpace,
    DimensionMismatch,
    GF2Matrix,
    Inconsistent,
    Singular,
    enumerate_gl,
    gl_order,
    mat_from_lists,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_rank,
    mat_transpose,
    mat_vec,
    solve_affine,
)


def naive_mul(a, b):
    """Triple-loop product oracle, independent of the packed implementation."""
    al, bl = a.to_lists(), b.to_lists()
    n, k, m = len(al), len(bl), len(bl[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(k):
                s ^= al[i][t] & bl[t][j]
            out[i][j] = s
    return mat_from_lists(out)


def random_matrix(rng, n, m):
    return mat_from_lists([[rng.randint(0, 1) for _ in range(m)] for _ in range(n)])


def test_mat_mul_identity():
    i2 = mat_identity(2)
    assert mat_mul(i2, i2) == i2


def test_mat_mul_group_elements():
    # u.v = uv among the six invertible 2x2 matrices.
    u = mat_from_lists([[1, 0], [1, 1]])
    v = mat_from_lists([[1, 1], [0, 1]])
    uv = mat_from_lists([[1, 1], [1, 0]])
    assert mat_mul(u, v) == uv


def test_mat_mul_against_naive_oracle():
    rng = random.Random(7)
    for _ in range(50):
        a = random_matrix(rng, 3, 3)
        b = random_matrix(rng, 3, 3)
        assert mat_mul(a, b) == naive_mul(a, b)
    for _ in range(100):
        a = random_matrix(rng, 4, 4)
        b = random_matrix(rng, 4, 4)
        assert mat_mul(a, b) == naive_mul(a, b)
    # All 2x2 pairs.
    all2 = [mat_from_lists([[b >> 3 & 1, b >> 2 & 1], [b >> 1 & 1, b & 1]]) for b in range(16)]
    for a in all2:
        for b in all2:
            assert mat_mul(a, b) == naive_mul(a, b)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(mat_identity(2), mat_identity(3))


def test_rank_zero_and_identity():
    assert mat_rank(GF2Matrix((0, 0, 0), 3)) == 0
    assert mat_rank(mat_identity(4)) == 4


def test_rank_paper_metric_matrix():
    # metric of g_{C.I} for n=3 in basis de,dx,dy.
    g = mat_from_lists([[0, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert mat_rank(g) == 3


def test_inverse_identity_and_swap():
    assert mat_inverse(mat_identity(3)) == mat_identity(3)
    w = mat_from_lists([[0, 1], [1, 0]])
    assert mat_inverse(w) == w


def test_inverse_multiply_back():
    g_b = mat_from_lists([[1, 1, 1], [1, 0, 1], [1, 1, 0]])
    inv = mat_inverse(g_b)
    assert mat_mul(g_b, inv) == mat_identity(3)
    assert mat_mul(inv, g_b) == mat_identity(3)


def test_inverse_singular():
    with pytest.raises(Singular):
        mat_inverse(mat_from_lists([[1, 1], [1, 1]]))


def test_gl_orders():
    assert gl_order(2) == 6
    assert gl_order(3) == 168
    assert gl_order(4) == 20160


def test_enumerate_gl_counts_and_uniqueness():
    for n in (1, 2, 3):
        mats = list(enumerate_gl(n))
        assert len(mats) == gl_order(n)
        assert len(set(mats)) == len(mats)
        assert all(mat_rank(m) == n for m in mats)


def test_enumerate_gl_n4_count():
    mats = list(enumerate_gl(4))
    assert len(mats) == 20160


def test_enumerate_gl_order_is_deterministic():
    first = list(enumerate_gl(2))
    second = list(enumerate_gl(2))
    assert first == second
    # Lexicographic on row-major bits with (0,0) most significant.
    keys = []
    for m in first:
        key = 0
        for i in range(2):
            for j in range(2):
                key = (key << 1) | m.entry(i, j)
        keys.append(key)
    assert keys == sorted(keys)


def test_transpose_and_matvec():
    m = mat_from_lists([[1, 1, 0], [0, 1, 1]])
    t = mat_transpose(m)
    assert t.to_lists() == [[1, 0], [1, 1], [0, 1]]
    # (1,1,0).(1,0,1) parity by row
    assert mat_vec(m, 0b101) == 0b11


def test_solve_affine_empty_system():
    space = solve_affine([], 3)
    assert space.dim == 3
    assert sorted(space.members()) == list(range(8))


def test_solve_affine_unique():
    # x1 + x2 = 1, x2 = 1  ->  particular (0, 1)
    space = solve_affine([(0b11, 1), (0b10, 1)], 2)
    assert space.dim == 0
    assert space.particular == 0b10


def test_solve_affine_inconsistent():
    with pytest.raises(Inconsistent):
        solve_affine([(0b1, 1), (0b1, 0)], 1)


def test_solve_affine_members_satisfy_system():
    rng = random.Random(11)
    for _ in range(20):
        nvars = rng.randint(2, 10)
        eqs = []
        secret = rng.getrandbits(nvars)
        for _ in range(rng.randint(1, 8)):
            mask = rng.getrandbits(nvars)
            eqs.append((mask, (mask & secret).bit_count() & 1))
        space = solve_affine(eqs, nvars)
        assert space.contains(secret)
        members = list(space.members())
        sample = members if len(members) <= 50 else random.Random(1).sample(members, 50)
        for m in sample:
            for mask, rhs in eqs:
                assert (mask & m).bit_count() & 1 == rhs
        assert len(set(members[: min(len(members), 1 << 12)])) == min(len(members), 1 << 12)


def test_affine_member_count_matches_dim():
    space = solve_affine([(0b11, 0)], 2)
    assert isinstance(space, AffineSolutionSpace)
    assert space.size() == 2 ** space.dim == len(set(space.members()))
