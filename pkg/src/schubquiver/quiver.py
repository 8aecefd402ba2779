"""Colored quivers of minuscule Schubert varieties.

A quiver is stored in canonical form: its letters are listed in the
topological order obtained by repeatedly taking the available vertex of
smallest color.  Two commutation-equivalent words therefore give equal
:class:`Quiver` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .rootcore import (
    CosetWord,
    Root,
    RootSystemId,
    boundary,
    check_minuscule,
    longest_coset_word,
    pairing,
    reflect_root,
    simple_root,
    validate_coset_word,
)


class QuiverAxiomError(RuntimeError):
    """A constructed quiver violates the structural axioms (internal bug)."""


class NotAnAntichainError(ValueError):
    pass


def successor_map(letters: Sequence[int]) -> list[int | None]:
    """s(i) for each 1-based vertex: next position with the same color."""
    out: list[int | None] = [None] * len(letters)
    last: dict[int, int] = {}
    for i in range(len(letters), 0, -1):
        out[i - 1] = last.get(letters[i - 1])
        last[letters[i - 1]] = i
    return out


def predecessor_map(letters: Sequence[int]) -> list[int | None]:
    out: list[int | None] = [None] * len(letters)
    last: dict[int, int] = {}
    for i in range(1, len(letters) + 1):
        out[i - 1] = last.get(letters[i - 1])
        last[letters[i - 1]] = i
    return out


def arrows_of(sys: RootSystemId, letters: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Arrows (i, j): <beta_j^vee, beta_i> != 0 and i < j < s(i)."""
    r = len(letters)
    succ = successor_map(letters)
    out = []
    for i in range(1, r + 1):
        stop = succ[i - 1] or r + 1
        for j in range(i + 1, stop):
            if pairing(sys, letters[j - 1], letters[i - 1]) != 0:
                out.append((i, j))
    return tuple(out)


def vertex_roots(sys: RootSystemId, letters: Sequence[int]) -> tuple[Root, ...]:
    """Root s_{beta_r} ... s_{beta_{k+1}}(beta_k) attached to each vertex k.

    These labels are invariant under commutations and identify a Schubert
    quiver with a subquiver of the ambient one.
    """
    out = []
    r = len(letters)
    for k in range(1, r + 1):
        v = simple_root(sys, letters[k - 1])
        for m in range(k + 1, r + 1):
            v = reflect_root(sys, letters[m - 1], v)
        out.append(v)
    return tuple(out)


def _canonical_permutation(sys: RootSystemId, letters: Sequence[int]) -> list[int]:
    """Old vertex ids in canonical (smallest-color Kahn) order."""
    r = len(letters)
    arrows = arrows_of(sys, letters)
    indeg = [0] * (r + 1)
    outs: dict[int, list[int]] = {i: [] for i in range(1, r + 1)}
    for a, b in arrows:
        indeg[b] += 1
        outs[a].append(b)
    avail = {i for i in range(1, r + 1) if indeg[i] == 0}
    order = []
    while avail:
        colors = [letters[i - 1] for i in avail]
        if len(set(colors)) != len(colors):
            raise QuiverAxiomError("two available vertices share a color")
        v = min(avail, key=lambda i: letters[i - 1])
        avail.remove(v)
        order.append(v)
        for b in outs[v]:
            indeg[b] -= 1
            if indeg[b] == 0:
                avail.add(b)
    if len(order) != r:
        raise QuiverAxiomError("quiver has a cycle")
    return order


def canonical_letters(sys: RootSystemId, letters: Sequence[int]) -> tuple[int, ...]:
    perm = _canonical_permutation(sys, letters)
    return tuple(letters[i - 1] for i in perm)


@dataclass(frozen=True)
class Quiver:
    """Quiver of a minuscule Schubert variety in canonical numbering.

    ``letters[i-1]`` is the color of vertex ``i``.  ``embedding`` maps each
    vertex to its id in the ambient quiver of G/P; it does not take part in
    equality.
    """

    system: RootSystemId
    weight_index: int
    letters: tuple[int, ...]
    embedding: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def vertices(self) -> range:
        return range(1, len(self.letters) + 1)

    def color(self, i: int) -> int:
        return self.letters[i - 1]

    @property
    def word(self) -> CosetWord:
        return CosetWord(self.system, self.weight_index, self.letters)

    @cached_property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        return arrows_of(self.system, self.letters)

    @cached_property
    def out_arrows(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in self.vertices}
        for a, b in self.arrows:
            out[a].append(b)
        return {i: tuple(v) for i, v in out.items()}

    @cached_property
    def in_arrows(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in self.vertices}
        for a, b in self.arrows:
            out[b].append(a)
        return {i: tuple(v) for i, v in out.items()}

    @cached_property
    def succ(self) -> tuple[int | None, ...]:
        return tuple(successor_map(self.letters))

    @cached_property
    def pred(self) -> tuple[int | None, ...]:
        return tuple(predecessor_map(self.letters))

    def s(self, i: int) -> int | None:
        return self.succ[i - 1]

    def p(self, i: int) -> int | None:
        return self.pred[i - 1]

    @cached_property
    def up_sets(self) -> dict[int, frozenset[int]]:
        """up_sets[i] = {j : i <= j}, reflexive."""
        ups: dict[int, frozenset[int]] = {}
        for i in reversed(self.vertices):
            acc = {i}
            for j in self.out_arrows[i]:
                acc |= ups[j]
            ups[i] = frozenset(acc)
        return ups

    @cached_property
    def down_sets(self) -> dict[int, frozenset[int]]:
        downs: dict[int, set[int]] = {i: set() for i in self.vertices}
        for i, up in self.up_sets.items():
            for j in up:
                downs[j].add(i)
        return {i: frozenset(v) for i, v in downs.items()}

    def leq(self, i: int, j: int) -> bool:
        return j in self.up_sets[i]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.letters)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return vertex_roots(self.system, self.letters)

    @cached_property
    def annotations(self) -> VertexAnnotations:
        return annotate(self)

    def to_dict(self) -> dict:
        return {
            "family": self.system.family,
            "rank": self.system.rank,
            "weight": self.weight_index,
            "vertices": [{"id": i, "color": c} for i, c in enumerate(self.letters, 1)],
            "arrows": [[a, b] for a, b in self.arrows],
        }


@dataclass(frozen=True)
class VertexAnnotations:
    height: dict[int, int]
    pics: frozenset[int]
    holes: frozenset[int]
    virtual_holes: frozenset[int]
    up_sets: dict[int, frozenset[int]]

    def precedes(self, i: int, j: int) -> bool:
        return j in self.up_sets[i]

    @property
    def pic_heights(self) -> tuple[int, ...]:
        return tuple(sorted(self.height[p] for p in self.pics))


def check_axioms(q: Quiver) -> None:
    """Raise :class:`QuiverAxiomError` unless ``q`` has the structure of a
    minuscule Schubert quiver."""
    r = q.size
    if r == 0:
        return
    sys = q.system
    if q.out_arrows[r]:
        raise QuiverAxiomError("an arrow leaves the last vertex")
    if q.color(r) != q.weight_index:
        raise QuiverAxiomError("last vertex is not colored by the weight")
    for i in range(1, r):
        n_out = len(q.out_arrows[i])
        want = 1 if q.s(i) is None else 2
        if n_out != want:
            raise QuiverAxiomError(f"vertex {i} has {n_out} outgoing arrows, expected {want}")
    for a, b in q.arrows:
        if pairing(sys, q.color(b), q.color(a)) != -1:
            raise QuiverAxiomError(f"arrow {a}->{b} has pairing != -1")
    for i in q.vertices:
        if r not in q.up_sets[i]:
            raise QuiverAxiomError(f"no path from vertex {i} to {r}")


def longest_path_heights(q: Quiver) -> dict[int, int]:
    h: dict[int, int] = {}
    for i in reversed(q.vertices):
        outs = q.out_arrows[i]
        h[i] = 1 + max((h[j] for j in outs), default=0)
    return h


def recursive_heights(q: Quiver) -> dict[int, int]:
    """Heights by descending induction with the two-branch chain rule.

    Raises :class:`QuiverAxiomError` when the chain structure is not as
    expected or the chain values are inconsistent.
    """
    r = q.size
    h: dict[int, int] = {}
    for i in reversed(q.vertices):
        if i == r:
            h[i] = 1
            continue
        si = q.s(i)
        if si is None:
            (k,) = q.out_arrows[i]
            h[i] = h[k] + 1
            continue
        chain = [i]
        partners = [si]
        cur = i
        while True:
            t1, t2 = sorted(q.out_arrows[cur])
            if q.color(t1) != q.color(t2):
                last = (t1, t2)
                break
            if q.s(t1) != t2:
                raise QuiverAxiomError(f"chain at {cur}: {t2} is not s({t1})")
            chain.append(t1)
            partners.append(t2)
            cur = t1
        n = len(chain) - 1
        base = h[si]
        h[i] = 2 * n + 2 + base
        for k in range(1, n + 1):
            if h[chain[k]] != 2 * n + 2 - k + base or h[partners[k]] != k + base:
                raise QuiverAxiomError(f"height chain mismatch below vertex {i}")
        if any(h[t] != n + 1 + base for t in last):
            raise QuiverAxiomError(f"height chain end mismatch below vertex {i}")
    return h


def intrinsic_holes(q: Quiver) -> frozenset[int]:
    """Vertices without a same-color predecessor having exactly two vertices
    strictly below them whose color is adjacent."""
    out = set()
    for i in q.vertices:
        if q.p(i) is not None:
            continue
        below = q.down_sets[i] - {i}
        n = sum(1 for j in below if pairing(q.system, q.color(i), q.color(j)) != 0)
        if n == 2:
            out.add(i)
    return frozenset(out)


def virtual_hole_colors(q: Quiver) -> frozenset[int]:
    if q.size == 0:
        return frozenset({q.weight_index})
    return boundary(q.system, q.support)


def annotate(q: Quiver) -> VertexAnnotations:
    h = longest_path_heights(q)
    h2 = recursive_heights(q)
    if h != h2:
        raise QuiverAxiomError("longest-path and recursive heights disagree")
    pics = frozenset(i for i in q.vertices if not q.in_arrows[i])
    return VertexAnnotations(
        height=h,
        pics=pics,
        holes=intrinsic_holes(q),
        virtual_holes=virtual_hole_colors(q),
        up_sets=q.up_sets,
    )


def height_of(q: Quiver) -> int | None:
    """h(w): the minimal pic height (the common one when Gorenstein)."""
    ann = q.annotations
    if not ann.pics:
        return None
    return min(ann.height[p] for p in ann.pics)


def stabilizer_excluded_roots(q: Quiver) -> frozenset[int]:
    """Colors of holes and virtual holes; the stabilizer is P_J for J the
    complement."""
    ann = q.annotations
    return frozenset(q.color(i) for i in ann.holes) | ann.virtual_holes


def _from_letters(sys: RootSystemId, weight_index: int, letters: Sequence[int], embed: bool) -> Quiver:
    canon = canonical_letters(sys, letters)
    q = Quiver(sys, weight_index, canon)
    # the relabeled word must rebuild the same arrow set up to the permutation
    perm = _canonical_permutation(sys, letters)
    pos = {old: new for new, old in enumerate(perm, 1)}
    moved = sorted((pos[a], pos[b]) for a, b in arrows_of(sys, letters))
    if tuple(moved) != q.arrows:
        raise QuiverAxiomError("canonical relabeling changed the arrow set")
    check_axioms(q)
    if embed:
        q = Quiver(sys, weight_index, canon, _embed(q))
    return q


def _embed(q: Quiver) -> tuple[int, ...]:
    amb = ambient_quiver(q.system, q.weight_index)
    index = {root: i for i, root in enumerate(amb.roots, 1)}
    try:
        return tuple(index[root] for root in q.roots)
    except KeyError:
        raise QuiverAxiomError("vertex root missing from the ambient quiver") from None


def build_quiver(word: CosetWord) -> Quiver:
    """Quiver of a reduced minuscule coset word, in canonical numbering."""
    validate_coset_word(word)
    return _from_letters(word.system, word.weight_index, word.letters, embed=True)


@lru_cache(maxsize=None)
def ambient_quiver(sys: RootSystemId, weight_index: int) -> Quiver:
    check_minuscule(sys, weight_index)
    word = longest_coset_word(sys, weight_index)
    q = _from_letters(sys, weight_index, word.letters, embed=False)
    return Quiver(sys, weight_index, q.letters, tuple(q.vertices))


def empty_quiver(sys: RootSystemId, weight_index: int) -> Quiver:
    check_minuscule(sys, weight_index)
    return Quiver(sys, weight_index, (), ())


def is_antichain(q: Quiver, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for a in vs:
        if a not in q.up_sets:
            return False
    return all(a == b or not q.leq(a, b) for a in vs for b in vs)


def schubert_from_antichain(ambient: Quiver, antichain: Iterable[int]) -> Quiver:
    """Q_A: the ambient quiver minus every vertex lying below some a in A."""
    A = sorted(set(antichain))
    if not is_antichain(ambient, A):
        raise NotAnAntichainError(f"{A} is not an antichain")
    removed = set()
    for a in A:
        removed |= ambient.down_sets[a]
    keep = [i for i in ambient.vertices if i not in removed]
    letters = [ambient.color(i) for i in keep]
    sys, wt = ambient.system, ambient.weight_index
    validate_coset_word(CosetWord(sys, wt, letters))
    if not keep:
        return empty_quiver(sys, wt)
    q = _from_letters(sys, wt, letters, embed=False)
    perm = _canonical_permutation(sys, letters)
    return Quiver(sys, wt, q.letters, tuple(keep[i - 1] for i in perm))


def antichain_of(q: Quiver) -> frozenset[int]:
    """The ambient antichain A with Q_A = q: maximal elements of the removed set."""
    amb = ambient_quiver(q.system, q.weight_index)
    kept = set(q.embedding or ())
    removed = [i for i in amb.vertices if i not in kept]
    rem = set(removed)
    return frozenset(
        a for a in removed if not any(b in rem for b in amb.up_sets[a] if b != a)
    )


def holes_from_antichain(q: Quiver) -> tuple[frozenset[int], frozenset[int]]:
    """(holes, virtual hole colors) through the ambient successor of each
    element of the defining antichain."""
    amb = ambient_quiver(q.system, q.weight_index)
    local = {e: i for i, e in enumerate(q.embedding or (), 1)}
    holes, virtual = set(), set()
    for a in antichain_of(q):
        sa = amb.s(a)
        if sa is None:
            virtual.add(amb.color(a))
        else:
            holes.add(local[sa])
    return frozenset(holes), frozenset(virtual)


def antichains(q: Quiver) -> list[frozenset[int]]:
    """Every antichain of q, including the empty one."""
    verts = list(q.vertices)
    comparable = {
        v: frozenset(q.up_sets[v] | q.down_sets[v]) for v in verts
    }
    out: list[frozenset[int]] = []

    def rec(idx: int, chosen: tuple[int, ...], blocked: frozenset[int]):
        if idx == len(verts):
            out.append(frozenset(chosen))
            return
        v = verts[idx]
        rec(idx + 1, chosen, blocked)
        if v not in blocked:
            rec(idx + 1, chosen + (v,), blocked | comparable[v])

    rec(0, (), frozenset())
    return out


def _listing_key(q: Quiver):
    return (-q.size, tuple(sorted(q.embedding or ())))


def enumerate_schubert(sys: RootSystemId, weight_index: int) -> list[Quiver]:
    """One quiver per ambient antichain, by dimension descending then
    lexicographic ambient vertex set."""
    return list(_enumerate_cached(sys, weight_index))


@lru_cache(maxsize=None)
def _enumerate_cached(sys: RootSystemId, weight_index: int) -> tuple[Quiver, ...]:
    amb = ambient_quiver(sys, weight_index)
    qs = [schubert_from_antichain(amb, A) for A in antichains(amb)]
    return tuple(sorted(qs, key=_listing_key))


def bruhat_leq(q1: Quiver, q2: Quiver) -> bool:
    if (q1.system, q1.weight_index) != (q2.system, q2.weight_index):
        raise ValueError("quivers live in different ambient quivers")
    return set(q1.embedding or ()) <= set(q2.embedding or ())


def dimension(q: Quiver) -> int:
    return q.size


def codimension_in(q: Quiver, sub: Quiver) -> int:
    """dim q - dim sub, requiring sub <= q in the Bruhat order."""
    if not bruhat_leq(sub, q):
        raise ValueError("quivers are not comparable")
    return q.size - sub.size


def induced_subquiver(q: Quiver, vertices: Iterable[int]) -> Quiver:
    """Quiver of the subword of q on the given vertex set.

    The result is expressed with the color of its own last vertex as
    weight, so it can be a quiver in a smaller subsystem; no embedding.
    """
    keep = sorted(set(vertices))
    letters = [q.color(i) for i in keep]
    if not letters:
        return Quiver(q.system, q.weight_index, (), ())
    return _sub_quiver_letters(q.system, letters)


def _sub_quiver_letters(sys: RootSystemId, letters: Sequence[int]) -> Quiver:
    canon = canonical_letters(sys, letters)
    sub = Quiver(sys, canon[-1], canon)
    check_axioms(sub)
    return sub
