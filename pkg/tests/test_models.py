from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given

from schubquiver.models import (
    SwapClass,
    a_type_codim_identity,
    all_orders,
    canonical_partition,
    classify_swap,
    decompose,
    discrepancies,
    enumerate_minimal_orders,
    flop_graph,
    has_ih_small_resolution,
    holes_compatible,
    is_minimal_order,
    is_smooth_model,
    is_variety_smooth,
    minimality_formulations,
    model_report,
    non_small_witness,
    order_decomposition,
    relative_canonical,
)
from schubquiver.quiver import ambient_quiver, bruhat_leq, empty_quiver, enumerate_schubert
from schubquiver.reference import D6_EXAMPLE_DISCREPANCIES, d6_example
from schubquiver.rootcore import RootSystemId, is_minuscule_node

from conftest import PAIRS, gr24, schubert_quivers

A3 = RootSystemId("A", 3)


def two_pic_gr24():
    (q,) = [q for q in gr24() if len(q.annotations.pics) == 2]
    return q


def test_single_pic():
    q = gr24()[0]
    assert enumerate_minimal_orders(q) == [(1,)]
    d = decompose(q, [[1]])
    assert d.n == 1 and d.blocks == (frozenset(q.vertices),)
    assert relative_canonical(d) == (4,)
    fg = flop_graph(q)
    assert len(fg.classes) == 1 and fg.edges == ()


def test_two_equal_pics_flop():
    q = two_pic_gr24()
    orders = enumerate_minimal_orders(q)
    assert orders == [(1, 2), (2, 1)]
    assert classify_swap(q, (1, 2), 1) is SwapClass.FLOP
    fg = flop_graph(q)
    assert len(fg.classes) == 2 and fg.edges == ((0, 1),)
    d = order_decomposition(q, (1, 2))
    assert relative_canonical(d)[0] == 0
    assert canonical_partition(q) == [frozenset({1, 2})]


def test_d6_example_models():
    q = d6_example()
    pics = sorted(q.annotations.pics)
    assert enumerate_minimal_orders(q) == [tuple(pics), tuple(reversed(pics))]
    d = order_decomposition(q, pics)
    assert sum(len(b) for b in d.blocks) == 11
    single = decompose(q, [pics])
    assert sorted(discrepancies(single).values()) == list(D6_EXAMPLE_DISCREPANCIES)
    assert len(canonical_partition(q)) == 1
    fg = flop_graph(q)
    assert len(fg.classes) == 2 and len(fg.edges) == 1
    assert not any(is_smooth_model(q, o) for o in all_orders(q))
    rep = model_report(q)
    assert rep.canonical_is_identity and not rep.smooth_orders and not rep.ih_small


def test_canonical_partition_grouping():
    qs = [q for sys, w in PAIRS for q in enumerate_schubert(sys, w) if len(set(q.annotations.pic_heights)) > 2]
    assert qs
    for q in qs:
        blocks = canonical_partition(q)
        hs = [{q.annotations.height[p] for p in b} for b in blocks]
        assert all(len(x) == 1 for x in hs)
        assert [min(x) for x in hs] == sorted(min(x) for x in hs)


def test_flip_example():
    # two pics of heights 2 < 3 linked by f: the higher one must come later
    found = False
    for sys, w in PAIRS:
        for q in enumerate_schubert(sys, w):
            if len(q.annotations.pics) != 2:
                continue
            lo, hi = sorted(q.annotations.pics, key=lambda p: q.annotations.height[p])
            if q.annotations.height[lo] == q.annotations.height[hi]:
                continue
            d = order_decomposition(q, (hi, lo))
            if d.f[0] != 2:
                continue
            found = True
            assert enumerate_minimal_orders(q) == [(lo, hi)]
            assert classify_swap(q, (lo, hi), 1) is SwapClass.FLIP
            dl = order_decomposition(q, (lo, hi))
            assert relative_canonical(dl)[0] == dl.block_height(1) - dl.block_height(2) < 0
            w_ = non_small_witness(q, (hi, lo))
            assert w_ is not None and w_.ok
    assert found


def test_non_small_formula():
    from schubquiver.models import NonSmallWitness

    w = NonSmallWitness(pic=1, f_pic=2, vertex=3, codim=3 - 1 + 2 - 1 + 1, fiber_lb=3 - 1)
    assert (w.codim, w.fiber_lb, w.ok) == (4, 2, True)


def test_empty_quiver_models():
    e = empty_quiver(A3, 2)
    assert enumerate_minimal_orders(e) == [()]
    assert has_ih_small_resolution(e).admits
    assert non_small_witness(e, ()) is None


@pytest.mark.parametrize("sys,w", PAIRS)
def test_model_invariants(sys, w):
    for q in enumerate_schubert(sys, w):
        orders = enumerate_minimal_orders(q)
        assert orders
        if not q.size:
            continue
        h = q.annotations.height
        pics = sorted(q.annotations.pics)
        assert tuple(sorted(pics, key=lambda p: (h[p], p))) in orders
        brute = [o for o in permutations(pics) if is_minimal_order(q, o)]
        assert sorted(brute) == orders
        if len(set(h[p] for p in pics)) == 1:
            assert len(orders) == len(list(permutations(pics)))
        for o in orders:
            d = order_decomposition(q, o)
            disc = discrepancies(d)
            assert all(v >= 0 for v in disc.values())
            assert {k for k, v in disc.items() if v == 0} == set(pics)
            c = relative_canonical(d)
            assert all(x <= 0 for x in c[:-1])
            assert non_small_witness(q, o) is None
            for k in range(1, len(o)):
                if classify_swap(q, o, k) is SwapClass.ISOMORPHISM:
                    o2 = o[: k - 1] + (o[k], o[k - 1]) + o[k + 1:]
                    assert set(order_decomposition(q, o2).blocks) == set(d.blocks)
        assert flop_graph(q).connected
        if sys.family == "A" or (len(pics) == 1 and is_minuscule_node(sys, q.color(pics[0]), q.support)):
            assert has_ih_small_resolution(q).admits
        if is_variety_smooth(q):
            assert is_smooth_model(q, orders[0])
    assert is_variety_smooth(ambient_quiver(sys, w))


def _disagreements(pairs):
    out = []
    for sys, w in pairs:
        for q in enumerate_schubert(sys, w):
            for o in all_orders(q):
                fm, adj = minimality_formulations(q, o)
                if fm != adj:
                    out.append((q, o, fm, adj))
    return out


def test_minimality_formulations_disagreement_is_one_sided():
    # the adjacency version is weaker: it accepts a few orders whose f-link
    # skips a block
    bad = _disagreements(PAIRS)
    assert len(bad) == 18
    for q, o, fm, adj in bad:
        assert adj and not fm
        d = order_decomposition(q, o)
        assert any(d.f[k - 1] > k + 1 for k in range(1, d.n))


def test_quadric_singular_strata_have_one_hole():
    # D_n/P_1 is a quadric; its singular Schubert varieties are the cones
    # of dimension n .. 2n-3
    for n in (4, 5, 6):
        for q in enumerate_schubert(RootSystemId("D", n), 1):
            singular = n <= q.size <= 2 * n - 3
            assert is_variety_smooth(q) != singular
            assert len(q.annotations.holes) == (1 if singular else 0)


def test_a_type_identity_examples():
    qs = gr24()
    for q in qs:
        r = a_type_codim_identity(q, q)
        assert (r.gamma, r.qterm, r.codim) == (0, Fraction(0), 0)
    # one hole removed to depth one: gamma = a_1 + b_1 and q = 1
    seen = 0
    for n, p in ((4, 2), (5, 2), (5, 3)):
        qs = enumerate_schubert(RootSystemId("A", n), p)
        for q in qs:
            if len(q.annotations.holes) != 1:
                continue
            (hole,) = q.annotations.holes
            h = q.annotations.height
            a, b = (h[x] - h[hole] for x in sorted(q.annotations.pics, key=q.color))
            for s in qs:
                if bruhat_leq(s, q) and s != q and holes_compatible(q, s):
                    r = a_type_codim_identity(q, s)
                    assert r.ok
                    if r.qterm == 1:
                        seen += 1
                        assert r.gamma == a + b
    assert seen


@pytest.mark.parametrize("p", [1, 2, 3])
def test_a_type_identity_gr36(p):
    sys = RootSystemId("A", 5)
    qs = enumerate_schubert(sys, p)
    n = 0
    for q in qs:
        for s in qs:
            if bruhat_leq(s, q) and holes_compatible(q, s):
                n += 1
                assert a_type_codim_identity(q, s).ok
    assert n


def test_a_type_identity_guards():
    with pytest.raises(ValueError):
        q = enumerate_schubert(RootSystemId("D", 4), 1)[0]
        a_type_codim_identity(q, q)
    qs = gr24()
    with pytest.raises(ValueError):
        a_type_codim_identity(qs[-1], qs[0])


@given(schubert_quivers())
def test_report_consistency(q):
    rep = model_report(q)
    assert rep.ih_small.admits == has_ih_small_resolution(q).admits
    assert set(rep.smooth_orders) <= set(rep.minimal_orders)
    assert rep.to_dict()["smooth"] == is_variety_smooth(q)


def test_minimal_iff_no_positive_relative_canonical():
    for sys, w in PAIRS:
        for q in enumerate_schubert(sys, w):
            if not q.size:
                continue
            for o in all_orders(q):
                c = relative_canonical(order_decomposition(q, o))
                assert is_minimal_order(q, o) == all(x <= 0 for x in c[:-1])
