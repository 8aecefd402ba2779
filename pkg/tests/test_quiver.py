from itertools import combinations

import pytest
from hypothesis import given

from schubquiver.quiver import (
    NotAnAntichainError,
    ambient_quiver,
    antichain_of,
    antichains,
    bruhat_leq,
    build_quiver,
    check_axioms,
    codimension_in,
    dimension,
    empty_quiver,
    enumerate_schubert,
    holes_from_antichain,
    intrinsic_holes,
    longest_path_heights,
    recursive_heights,
    schubert_from_antichain,
    stabilizer_excluded_roots,
    virtual_hole_colors,
)
from schubquiver.reference import d6_example
from schubquiver.rootcore import CosetWord, RootSystemId, coset_dimension, pairing, weight_walk
from schubquiver.models import has_no_hole, is_variety_smooth

from conftest import PAIRS, coset_words, gr24, schubert_quivers

A3 = RootSystemId("A", 3)


def test_gr24_word():
    q = build_quiver(CosetWord(A3, 2, (2, 1, 3, 2)))
    assert q.size == 4
    assert set(q.arrows) == {(1, 2), (1, 3), (2, 4), (3, 4)}
    assert q.s(1) == 4 and q.s(2) is None
    ann = q.annotations
    assert [ann.height[i] for i in q.vertices] == [3, 2, 2, 1]
    assert ann.pics == {1} and ann.holes == set()


def test_commuting_letters_give_equal_quivers():
    a = build_quiver(CosetWord(A3, 2, (2, 1, 3, 2)))
    b = build_quiver(CosetWord(A3, 2, (2, 3, 1, 2)))
    assert a == b and a.letters == (2, 1, 3, 2)


def test_single_letter_and_chain():
    q = build_quiver(CosetWord(A3, 2, (2,)))
    assert q.size == 1 and q.arrows == ()
    n = 5
    chain = build_quiver(CosetWord(RootSystemId("A", n), 1, tuple(range(n, 0, -1))))
    assert chain.arrows == tuple((i, i + 1) for i in range(1, n))
    assert chain.annotations.height == {i: n - i + 1 for i in range(1, n + 1)}
    assert chain.annotations.pics == {1}


def test_d6_example_shape():
    q = d6_example()
    assert dimension(q) == 11
    assert q.annotations.pic_heights == (6, 6)


@pytest.mark.parametrize("n,p", [(3, 2), (4, 2), (5, 3), (6, 1), (6, 4)])
def test_grassmannian_grid(n, p):
    q = ambient_quiver(RootSystemId("A", n), p)
    assert q.size == p * (n + 1 - p)
    # grid: each color appears min(...) times, longest chain spans both sides
    assert max(q.annotations.height.values()) == n
    assert len(antichains(q)) == len(enumerate_schubert(RootSystemId("A", n), p))


def test_spinor_triangle():
    for n in (4, 5, 6, 7):
        q = ambient_quiver(RootSystemId("D", n), n)
        assert q.size == n * (n - 1) // 2
        assert len(enumerate_schubert(RootSystemId("D", n), n)) == 2 ** (n - 1)


def test_ambient_sizes():
    assert ambient_quiver(RootSystemId("E", 6), 1).size == 16
    assert ambient_quiver(RootSystemId("E", 7), 7).size == 27


def test_antichain_construction():
    amb = ambient_quiver(A3, 2)
    assert schubert_from_antichain(amb, []) == amb
    q = schubert_from_antichain(amb, [1])
    assert q.size == 3 and sorted(q.embedding) == [2, 3, 4]
    assert stabilizer_excluded_roots(q) == {2}
    with pytest.raises(NotAnAntichainError):
        schubert_from_antichain(amb, [1, 4])


def test_enumeration_counts():
    assert len(gr24()) == 6
    assert len(enumerate_schubert(RootSystemId("E", 6), 1)) == 27
    assert len(enumerate_schubert(RootSystemId("E", 7), 7)) == 56
    dims = [q.size for q in gr24()]
    assert dims == [4, 3, 2, 2, 1, 0]


def test_bruhat_basics():
    qs = gr24()
    for q in qs:
        assert bruhat_leq(q, q)
        assert bruhat_leq(qs[-1], q)
        assert bruhat_leq(q, qs[0])
    a, b = qs[2], qs[3]
    assert not bruhat_leq(a, b) and not bruhat_leq(b, a)
    assert codimension_in(qs[0], qs[-1]) == 4


def test_empty_quiver():
    e = empty_quiver(A3, 2)
    assert dimension(e) == 0
    assert virtual_hole_colors(e) == {2}
    assert is_variety_smooth(e)


def test_ambient_stabilizer_is_everything():
    for sys, w in PAIRS:
        assert stabilizer_excluded_roots(ambient_quiver(sys, w)) == set()


@pytest.mark.parametrize("sys,w", PAIRS)
def test_enumerated_quivers(sys, w):
    qs = enumerate_schubert(sys, w)
    amb = ambient_quiver(sys, w)
    assert amb.size == coset_dimension(sys, w)
    assert len(qs) == len(antichains(amb)) == len(set(qs))
    for q in qs:
        check_axioms(q)
        assert longest_path_heights(q) == recursive_heights(q)
        # every vertex reaches r
        if q.size:
            assert all(q.size in q.up_sets[i] for i in q.vertices)
        # holes: intrinsic definition against the defining antichain
        holes, virtual = holes_from_antichain(q)
        assert holes == intrinsic_holes(q) == q.annotations.holes
        assert virtual == virtual_hole_colors(q)
        # stabilizer: roots pairing to -1 with the end of the walk
        mu = weight_walk(sys, w, q.letters)[-1]
        assert stabilizer_excluded_roots(q) == {b for b in sys.nodes if mu[b - 1] == -1}
        # re-reading the word rebuilds the same quiver
        rebuilt = build_quiver(q.word)
        assert rebuilt == q and rebuilt.embedding == q.embedding
        assert schubert_from_antichain(amb, antichain_of(q)) == q
        # smoothness implies homogeneity under the stabilizer
        if is_variety_smooth(q):
            assert has_no_hole(q)


@given(coset_words())
def test_random_words_are_schubert(word):
    q = build_quiver(word)
    check_axioms(q)
    assert q in enumerate_schubert(word.system, word.weight_index)
    for a, b in q.arrows:
        assert pairing(q.system, q.color(a), q.color(b)) == -1


@given(schubert_quivers())
def test_order_ideals_match_bruhat_interval(q):
    below = [s for s in enumerate_schubert(q.system, q.weight_index) if bruhat_leq(s, q)]
    assert len(below) == len(antichains(q))


def test_antichains_brute_force():
    q = ambient_quiver(RootSystemId("A", 5), 3)
    brute = 0
    verts = list(q.vertices)
    for k in range(len(verts) + 1):
        for c in combinations(verts, k):
            brute += all(not q.leq(a, b) for a in c for b in c if a != b)
    assert brute == len(antichains(q)) == 20
