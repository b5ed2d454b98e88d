"""Structure constants: predicates, unit detection, action, enumeration counts."""
import itertools

import pytest

from f2geo.algebra import (
    EnumerationMode,
    SearchCapExceeded,
    StructureConstants,
    act,
    calculus_relations,
    enumerate_algebras,
    find_unit,
    is_associative,
    is_commutative,
)
from f2geo.gf2 import mat_from_lists, mat_identity

# n=2 display basis (e, x): indices 0, 1.
CASE_A2 = StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], (1, 1): []})
CASE_B2 = StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], (1, 1): [1]})
CASE_C2 = StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], (1, 1): [0, 1]})

# n=3 display basis (e, x, y): indices 0, 1, 2.  Relations of case F:
# [dx,y] = de+dx, [dx,x] = de+dx+dy, [dy,y] = dx.
CASE_F3 = StructureConstants.from_products(
    3,
    {
        (0, 0): [0], (0, 1): [1], (0, 2): [2],
        (1, 2): [0, 1], (1, 1): [0, 1, 2], (2, 2): [1],
    },
)


def theta_slice(n, theta):
    return list(enumerate_algebras(n, EnumerationMode.inner(theta)))


def test_zero_tensor_predicates():
    z = StructureConstants(2, 0)
    assert is_commutative(z)
    assert is_associative(z)
    assert find_unit(z) is None


def test_case_a_commutative_and_unit():
    assert is_commutative(CASE_A2)
    assert is_associative(CASE_A2)
    unit = find_unit(CASE_A2)
    assert unit is not None and unit.theta == 0b01  # theta = de


def test_single_asymmetric_entry_not_commutative():
    v = StructureConstants(2, 1 << ((0 * 2 + 1) * 2 + 0))  # only V^{01}_0 = 1
    assert not is_commutative(v)


def test_case_f_associative():
    assert is_commutative(CASE_F3)
    assert is_associative(CASE_F3)
    unit = find_unit(CASE_F3)
    assert unit is not None and unit.theta == 0b001


def test_brute_force_finds_nonassociative_example():
    # Oracle: scan all symmetric 2-dim products, pick a failing one.
    bad = None
    for bits in range(1 << 8):
        v = StructureConstants(2, bits)
        if is_commutative(v) and not is_associative(v):
            bad = v
            break
    assert bad is not None
    assert not is_associative(bad)


def s_solutions_n2():
    """The twelve inner solutions for n=2, grouped by theta."""
    return {theta: theta_slice(2, theta) for theta in (1, 2, 3)}


def test_enumerate_n2_counts():
    per_theta = s_solutions_n2()
    assert all(len(v) == 4 for v in per_theta.values())
    sols = list(enumerate_algebras(2, EnumerationMode.inner_any()))
    assert len(sols) == 12
    assert sorted(s.bits for s in sols) == [s.bits for s in sols]
    for s in sols:
        assert is_commutative(s) and is_associative(s)
        assert find_unit(s) is not None


def test_enumerate_n3_counts():
    sols = list(enumerate_algebras(3, EnumerationMode.inner_any()))
    assert len(sols) == 448
    single = theta_slice(3, 1)
    assert len(single) == 64
    assert len(sols) == 7 * len(single)


def test_theta_slices_disjoint_n2():
    per_theta = s_solutions_n2()
    all_bits = [s.bits for sols in per_theta.values() for s in sols]
    assert len(all_bits) == len(set(all_bits))


def test_enumerate_all_n1():
    sols = list(enumerate_algebras(1, EnumerationMode.all()))
    assert len(sols) == 2  # x o x = 0 and e o e = e


def test_search_cap():
    with pytest.raises(SearchCapExceeded):
        list(enumerate_algebras(3, EnumerationMode.all(), cap=2))


def test_act_identity():
    assert act(mat_identity(2), CASE_B2) == CASE_B2


def s1_and_s4():
    # theta = dx^1 slice for n=2 in coordinates x^1, x^2 (indices 0, 1):
    # s1: [dx^2, x^2] = 0 ; s4: [dx^2, x^2] = dx^1.
    s1 = StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], (1, 1): []})
    s4 = StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], (1, 1): [0]})
    return s1, s4


def test_act_u_maps_s1_to_s4():
    s1, s4 = s1_and_s4()
    u = mat_from_lists([[1, 0], [1, 1]])
    assert act(u, s1) == s4


def test_act_n3_s1_to_s9():
    # s1: all non-unit products zero; image has V^{23}_2 = V^{32}_2 = 1, V^{33}_1 = 1
    s1 = StructureConstants.from_products(
        3, {(0, 0): [0], (0, 1): [1], (0, 2): [2], (1, 1): [], (1, 2): [], (2, 2): []}
    )
    s9 = StructureConstants.from_products(
        3, {(0, 0): [0], (0, 1): [1], (0, 2): [2], (1, 2): [1], (1, 1): [], (2, 2): [0]}
    )
    m = mat_from_lists([[1, 0, 0], [0, 0, 1], [1, 1, 0]])
    assert act(m, s1) == s9


def test_act_preserves_structure():
    s1, _ = s1_and_s4()
    for g in (mat_from_lists([[0, 1], [1, 0]]), mat_from_lists([[1, 1], [0, 1]])):
        w = act(g, s1)
        assert is_commutative(w) and is_associative(w)
        assert find_unit(w) is not None


def test_calculus_relations_render():
    rels = calculus_relations(CASE_B2)
    assert "[dx,x]=dx" in rels
    rels_f = calculus_relations(CASE_F3)
    assert "[dx,x]=de+dx+dy" in rels_f
    z = StructureConstants(2, 0)
    assert all(r.endswith("=0") for r in calculus_relations(z))


def test_inner_any_count_is_slice_count_times_thetas():
    for n in (2, 3):
        any_count = len(list(enumerate_algebras(n, EnumerationMode.inner_any())))
        one = len(theta_slice(n, 1))
        assert any_count == ((1 << n) - 1) * one


def test_serialization_roundtrip():
    for v in (CASE_A2, CASE_B2, CASE_F3):
        assert StructureConstants.from_hex(v.n, v.to_hex()) == v
