import random
from math import gcd, lcm

import pytest

from zerosum import (
    Group,
    all_elements,
    all_subgroups,
    d_star,
    elem_add,
    elem_neg,
    elem_order,
    elem_scale,
    make_group,
    order_two_subgroups,
    parse_group,
    quotient_group,
    smith_normal_form,
    subgroup_closure,
    subgroup_invariants,
)
from zerosum.groups import element_index

from helpers import determinant, gcd_of_k_minors, groups_up_to_order, matmul


def test_make_group_canonical_examples():
    assert make_group([6]).invariants == (6,)
    assert make_group([2, 4]).invariants == (2, 4)
    assert make_group([2, 3]).invariants == (6,)
    assert make_group([]).invariants == ()
    assert make_group([1, 1]).order == 1


def test_make_group_crt_preserves_element_orders():
    # C2 x C3 and its normalization C6 must have the same multiset of
    # element orders; computed directly on the raw product here.
    def cyclic_orders(n):
        return [n // gcd(k, n) for k in range(n)]

    raw = sorted(
        lcm(a, b) for a in cyclic_orders(2) for b in cyclic_orders(3)
    )
    G = make_group([2, 3])
    normalized = sorted(elem_order(G, e) for e in all_elements(G))
    assert raw == normalized


def test_make_group_idempotent():
    for G in groups_up_to_order(16):
        assert make_group(G.invariants) == G


def test_make_group_rejects_nonpositive():
    with pytest.raises(ValueError):
        make_group([0])
    with pytest.raises(ValueError):
        make_group([3, -2])


def test_group_constructor_validates():
    with pytest.raises(ValueError):
        Group((3, 2))  # not a divisibility chain
    with pytest.raises(ValueError):
        Group((1,))


def test_parse_group():
    assert parse_group("C2xC4").invariants == (2, 4)
    assert parse_group("c2 x c4").invariants == (2, 4)
    assert parse_group("C1").order == 1
    assert parse_group("C2xC3").spec() == "C6"
    with pytest.raises(ValueError):
        parse_group("C0")
    with pytest.raises(ValueError):
        parse_group("D4")
    with pytest.raises(ValueError):
        parse_group("C2+C4")


def test_element_arithmetic_examples():
    G = make_group([2, 4])
    assert elem_add(G, (1, 3), (1, 2)) == (0, 1)
    assert elem_neg(G, (0, 3)) == (0, 1)
    assert elem_order(G, (0, 2)) == 2
    assert elem_scale(G, 3, (1, 1)) == (1, 3)
    with pytest.raises(ValueError):
        elem_add(G, (1,), (0, 0))


def test_all_elements_order_and_count():
    G = make_group([2, 4])
    elems = all_elements(G)
    assert len(elems) == 8
    assert elems[0] == (0, 0)
    assert list(elems) == sorted(elems)
    assert all_elements(make_group([])) == ((),)
    assert all_elements(make_group([3])) == ((0,), (1,), (2,))


def test_element_orders_divide_group_order():
    for G in groups_up_to_order(16):
        for a in all_elements(G):
            assert G.order % elem_order(G, a) == 0


def test_order_two_subgroups():
    assert order_two_subgroups(make_group([3])) == []
    (only,) = order_two_subgroups(make_group([2]))
    assert only.elements == {(0,), (1,)}
    gens = {H.generators[0] for H in order_two_subgroups(make_group([2, 4]))}
    assert gens == {(1, 0), (0, 2), (1, 2)}


def test_subgroup_closure():
    G = make_group([2, 2])
    assert subgroup_closure(G, []).elements == {(0, 0)}
    assert subgroup_closure(G, [(1, 1)]).elements == {(0, 0), (1, 1)}
    C4 = make_group([4])
    assert subgroup_closure(C4, [(2,)]).elements == {(0,), (2,)}


def test_all_subgroups_counts():
    assert len(all_subgroups(make_group([2, 2]))) == 5
    assert len(all_subgroups(make_group([4]))) == 3
    assert len(all_subgroups(make_group([]))) == 1
    with pytest.raises(ValueError):
        all_subgroups(make_group([65]))


def test_all_subgroups_lagrange_and_closure():
    for G in groups_up_to_order(16):
        for H in all_subgroups(G):
            assert G.order % H.order == 0
            for x in H.elements:
                for y in H.elements:
                    assert elem_add(G, x, y) in H.elements


def test_smith_normal_form_examples():
    assert smith_normal_form([[2, 0], [0, 4]]) == [2, 4]
    assert smith_normal_form([[2, 0, 0], [0, 4, 2]]) == [2, 2]
    assert smith_normal_form([[0, 0], [0, 0]]) == [0, 0]
    assert smith_normal_form([]) == []


def test_smith_normal_form_random_properties():
    rng = random.Random(20240817)
    for _ in range(120):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        diag, U, V = smith_normal_form(M, transforms=True)
        # divisibility chain, zeros last
        for i in range(len(diag) - 1):
            assert diag[i] >= 0
            if diag[i] == 0:
                assert diag[i + 1] == 0
            else:
                assert diag[i + 1] % diag[i] == 0
        # unimodular transforms reproduce the diagonal
        assert abs(determinant(U)) == 1
        assert abs(determinant(V)) == 1
        D = matmul(matmul(U, M), V)
        for i in range(m):
            for j in range(n):
                expected = diag[i] if i == j and i < len(diag) else 0
                assert D[i][j] == expected
        # prefix products equal gcds of k x k minors
        prod = 1
        for k in range(1, min(m, n) + 1):
            prod *= diag[k - 1]
            assert abs(prod) == gcd_of_k_minors(M, k)


def test_quotient_group_examples():
    G = make_group([2, 4])
    Q, _ = quotient_group(G, subgroup_closure(G, [(0, 2)]))
    assert Q.invariants == (2, 2)
    C4 = make_group([4])
    Q, _ = quotient_group(C4, subgroup_closure(C4, [(2,)]))
    assert Q.invariants == (2,)
    Q, _ = quotient_group(G, subgroup_closure(G, []))
    assert Q == G


def test_quotient_group_projection_laws():
    for G in groups_up_to_order(16):
        for H in all_subgroups(G):
            Q, proj = quotient_group(G, H)
            assert Q.order * H.order == G.order
            image = {proj(a) for a in all_elements(G)}
            assert image == set(all_elements(Q))
            kernel = {a for a in all_elements(G) if proj(a) == Q.zero()}
            assert kernel == set(H.elements)
            for a in all_elements(G):
                for b in all_elements(G):
                    assert proj(elem_add(G, a, b)) == elem_add(Q, proj(a), proj(b))


def test_quotient_rejects_foreign_subgroup():
    G = make_group([2, 4])
    bad = subgroup_closure(make_group([2, 2]), [(1, 1)])
    with pytest.raises(ValueError):
        quotient_group(G, bad)


def test_subgroup_invariants_matches_order_multisets():
    for G in groups_up_to_order(16):
        for H in all_subgroups(G):
            K = subgroup_invariants(G, H)
            assert K.order == H.order
            inside = sorted(elem_order(G, x) for x in H.elements)
            abstract = sorted(elem_order(K, e) for e in all_elements(K))
            assert inside == abstract


def test_d_star():
    assert d_star(make_group([7])) == 6
    assert d_star(make_group([3, 3])) == 4
    assert d_star(make_group([])) == 0


def test_element_index_consistent():
    G = make_group([2, 4])
    idx = element_index(G)
    for i, e in enumerate(all_elements(G)):
        assert idx[e] == i
