"""Partial resolutions from pic orders: blocks, the f-map, minimal and
canonical models, flips and flops, smoothness and IH-small resolutions."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

import networkx as nx

from .quiver import Quiver, induced_subquiver, stabilizer_excluded_roots
from .rootcore import is_minuscule_node

Order = tuple[int, ...]


class ModelConsistencyError(RuntimeError):
    pass


class SwapClass(enum.Enum):
    ISOMORPHISM = "Isomorphism"
    FLIP = "Flip"
    FLOP = "Flop"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Decomposition:
    """Blocks Q_{w_1} .. Q_{w_n} of a pic partition.

    Block indices are 1-based.  ``f[i-1]`` is the block of the minimal block
    maximum strictly above the maximum of block ``i``, or ``n + 1``.
    """

    quiver: Quiver
    blocks: tuple[frozenset[int], ...]
    pics: tuple[frozenset[int], ...]
    maxima: tuple[int, ...]
    heights: tuple[int, ...]
    f: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    def block_height(self, i: int) -> int:
        """h(w_i), with the sentinel n+1 at -1."""
        return -1 if i == self.n + 1 else self.heights[i - 1]

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks, 1):
            if x in b:
                return i
        raise KeyError(x)


def _components(q: Quiver, verts: frozenset[int]) -> list[frozenset[int]]:
    g = nx.Graph()
    g.add_nodes_from(verts)
    g.add_edges_from((a, b) for a, b in q.arrows if a in verts and b in verts)
    comps = [frozenset(c) for c in nx.connected_components(g)]
    return sorted(comps, key=min)


def decompose(q: Quiver, partition: Sequence[Iterable[int]]) -> Decomposition:
    """Split q along an ordered partition of its pics.

    A vertex x goes to the last block having a pic below x.  Disconnected
    blocks are replaced by their components, kept consecutive.
    """
    ann = q.annotations
    parts = [frozenset(a) for a in partition]
    seen: set[int] = set()
    for a in parts:
        if not a or a & seen or not a <= ann.pics:
            raise ValueError("not an ordered partition of the pics")
        seen |= a
    if seen != ann.pics:
        raise ValueError("not an ordered partition of the pics")
    owner: dict[int, int] = {}
    for k, a in enumerate(parts):
        for p in a:
            for x in q.up_sets[p]:
                owner[x] = k
    raw: list[set[int]] = [set() for _ in parts]
    for x, k in owner.items():
        raw[k].add(x)
    blocks, pics, maxima, heights = [], [], [], []
    h = ann.height
    for k, verts in enumerate(raw):
        for comp in _components(q, frozenset(verts)):
            tops = [x for x in comp if not any(y in comp for y in q.out_arrows[x])]
            if len(tops) != 1:
                raise ModelConsistencyError("block component without a unique maximum")
            cp = frozenset(x for x in comp if not any(y in comp for y in q.in_arrows[x]))
            if not cp <= parts[k]:
                raise ModelConsistencyError("block component has a pic outside its part")
            hw = max(h[x] for x in comp)
            if any(h[p] != hw for p in cp):
                raise ModelConsistencyError("pics of a block component differ in height")
            blocks.append(comp)
            pics.append(cp)
            maxima.append(tops[0])
            heights.append(hw)
    n = len(blocks)
    f = []
    for i, m in enumerate(maxima):
        above = [j for j, mj in enumerate(maxima) if j != i and q.leq(m, mj)]
        for a in above:
            for b in above:
                if not (q.leq(maxima[a], maxima[b]) or q.leq(maxima[b], maxima[a])):
                    raise ModelConsistencyError("block maxima above a maximum are not a chain")
        if not above:
            f.append(n + 1)
        else:
            # in a chain the lowest element has the largest up-set
            low = max(above, key=lambda j: len(q.up_sets[maxima[j]]))
            f.append(low + 1)
    d = Decomposition(q, tuple(blocks), tuple(pics), tuple(maxima), tuple(heights), tuple(f))
    for i in range(1, n + 1):
        if d.f[i - 1] <= i:
            raise ModelConsistencyError("f does not point to a later block")
    return d


def _check_order(q: Quiver, order: Sequence[int]) -> Order:
    order = tuple(order)
    if sorted(order) != sorted(q.annotations.pics) or len(set(order)) != len(order):
        raise ValueError("order must list every pic exactly once")
    return order


def order_decomposition(q: Quiver, order: Sequence[int]) -> Decomposition:
    order = _check_order(q, order)
    d = decompose(q, [[p] for p in order])
    if d.n != len(order):
        raise ModelConsistencyError("single-pic block is disconnected")
    return d


def minimality_formulations(q: Quiver, order: Sequence[int]) -> tuple[bool, bool]:
    """(f-map version, adjacency version) of the minimality condition.

    The adjacency version only constrains consecutive pics whose blocks are
    linked by f.
    """
    if not q.size:
        return True, True
    d = order_decomposition(q, order)
    n = d.n
    fmap = all(d.block_height(k) <= d.block_height(d.f[k - 1]) for k in range(1, n))
    adj = all(
        d.block_height(k) <= d.block_height(k + 1) for k in range(1, n) if d.f[k - 1] == k + 1
    )
    return fmap, adj


def is_minimal_order(q: Quiver, order: Sequence[int]) -> bool:
    return minimality_formulations(q, order)[0]


def _minimal_orders_search(q: Quiver) -> list[Order]:
    """Orders built from the last pic backwards, pruning as soon as the new
    first block breaks h(i_k) <= h(f(i_k))."""
    ann = q.annotations
    pics = sorted(ann.pics)
    h = ann.height
    out: list[Order] = []

    def rec(suffix: tuple[int, ...], covered: frozenset[int], maxima: tuple[tuple[int, int], ...]):
        # maxima: (block max, pic) for chosen blocks, earliest first
        if len(suffix) == len(pics):
            out.append(suffix)
            return
        for p in pics:
            if p in suffix:
                continue
            block = q.up_sets[p] - covered
            tops = [x for x in block if not any(y in block for y in q.out_arrows[x])]
            if len(tops) != 1:
                raise ModelConsistencyError("single-pic block without a unique maximum")
            m = tops[0]
            above = [(mj, pj) for mj, pj in maxima if q.leq(m, mj)]
            if above:
                _, fp = max(above, key=lambda t: len(q.up_sets[t[0]]))
                if h[p] > h[fp]:
                    continue
            rec((p,) + suffix, covered | q.up_sets[p], ((m, p),) + maxima)

    rec((), frozenset(), ())
    return sorted(out)


def enumerate_minimal_orders(q: Quiver) -> list[Order]:
    if not q.size:
        return [()]
    out = _minimal_orders_search(q)
    h = q.annotations.height
    by_height = tuple(sorted(q.annotations.pics, key=lambda p: (h[p], p)))
    if by_height not in out:
        raise ModelConsistencyError("height-sorted order is not minimal")
    return out


def all_orders(q: Quiver) -> list[Order]:
    return sorted(permutations(sorted(q.annotations.pics)))


def canonical_partition(q: Quiver) -> list[frozenset[int]]:
    """Pics grouped by height, lowest first."""
    ann = q.annotations
    levels = sorted({ann.height[p] for p in ann.pics})
    return [frozenset(p for p in ann.pics if ann.height[p] == lv) for lv in levels]


def relative_canonical(d: Decomposition) -> tuple[int, ...]:
    """-K coefficient on M_i: h(w_i) - h(w_{f(i)})."""
    return tuple(d.block_height(i) - d.block_height(d.f[i - 1]) for i in range(1, d.n + 1))


def discrepancies(d: Decomposition) -> dict[int, int]:
    """h(w_i) - h(k) for vertex k in block i."""
    h = d.quiver.annotations.height
    out: dict[int, int] = {}
    for hw, block, pics in zip(d.heights, d.blocks, d.pics):
        for k in block:
            a = hw - h[k]
            if a < 0 or (a == 0) != (k in pics):
                raise ModelConsistencyError(f"bad discrepancy {a} at vertex {k}")
            out[k] = a
    return dict(sorted(out.items()))


def swap(order: Sequence[int], k: int) -> Order:
    o = list(order)
    o[k - 1], o[k] = o[k], o[k - 1]
    return tuple(o)


def classify_swap(q: Quiver, order: Sequence[int], k: int) -> SwapClass:
    """Class of exchanging the pics at positions k and k+1 (1-based)."""
    d = order_decomposition(q, order)
    if not 1 <= k < d.n:
        raise IndexError("swap position out of range")
    if d.f[k - 1] != k + 1:
        return SwapClass.ISOMORPHISM
    if d.block_height(k) == d.block_height(k + 1):
        return SwapClass.FLOP
    return SwapClass.FLIP


@dataclass(frozen=True)
class FlopGraph:
    classes: tuple[tuple[Order, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.classes)))
        g.add_edges_from(self.edges)
        return len(self.classes) == 0 or nx.is_connected(g)

    def to_dict(self) -> dict:
        return {
            "nodes": [[list(o) for o in c] for c in self.classes],
            "edges": [list(e) for e in self.edges],
            "connected": self.connected,
        }


def flop_graph(q: Quiver, orders: Sequence[Order] | None = None) -> FlopGraph:
    """Minimal orders up to Isomorphism swaps, linked by Flop swaps."""
    orders = list(enumerate_minimal_orders(q) if orders is None else orders)
    index = {o: i for i, o in enumerate(orders)}
    iso = nx.Graph()
    iso.add_nodes_from(range(len(orders)))
    flops = []
    for o in orders:
        for k in range(1, len(o)):
            c = classify_swap(q, o, k)
            o2 = swap(o, k)
            if c is SwapClass.FLIP:
                continue
            if o2 not in index:
                raise ModelConsistencyError(f"{c} swap left the minimal orders")
            if c is SwapClass.ISOMORPHISM:
                iso.add_edge(index[o], index[o2])
            else:
                flops.append((index[o], index[o2]))
    comps = sorted((tuple(sorted(orders[i] for i in c)) for c in nx.connected_components(iso)))
    where = {o: ci for ci, c in enumerate(comps) for o in c}
    edges = sorted(
        {tuple(sorted((where[orders[a]], where[orders[b]]))) for a, b in flops}
    )
    g = FlopGraph(tuple(comps), tuple(e for e in edges if e[0] != e[1]))
    if not g.connected:
        raise ModelConsistencyError("flop graph is disconnected")
    return g


def is_variety_smooth(q: Quiver) -> bool:
    """One pic whose color is a minuscule node of the diagram on the support."""
    if not q.size:
        return True
    pics = q.annotations.pics
    if len(pics) != 1:
        return False
    (p,) = pics
    return is_minuscule_node(q.system, q.color(p), q.support)


def has_no_hole(q: Quiver) -> bool:
    """Homogeneity under the stabilizer: no non-virtual hole."""
    return not q.annotations.holes


def block_quivers(d: Decomposition) -> list[Quiver]:
    return [induced_subquiver(d.quiver, b) for b in d.blocks]


def is_smooth_model(q: Quiver, order: Sequence[int]) -> bool:
    if not q.size:
        return True
    d = order_decomposition(q, order)
    return all(is_variety_smooth(b) for b in block_quivers(d))


@dataclass(frozen=True)
class IHSmallResult:
    admits: bool
    witness: Order | None

    def __bool__(self) -> bool:
        return self.admits


def has_ih_small_resolution(q: Quiver) -> IHSmallResult:
    for o in enumerate_minimal_orders(q):
        if is_smooth_model(q, o):
            return IHSmallResult(True, o)
    return IHSmallResult(False, None)


@dataclass(frozen=True)
class NonSmallWitness:
    pic: int
    f_pic: int
    vertex: int
    codim: int
    fiber_lb: int

    @property
    def ok(self) -> bool:
        return self.codim <= 2 * self.fiber_lb


def non_small_witness(q: Quiver, order: Sequence[int]) -> NonSmallWitness | None:
    """Witness at the first pic i with h(f(i)) < h(i); None for minimal orders."""
    if not q.size:
        return None
    d = order_decomposition(q, order)
    h = q.annotations.height
    for k in range(1, d.n):
        fk = d.f[k - 1]
        if d.block_height(k) <= d.block_height(fk):
            continue
        (i,) = d.pics[k - 1]
        (fi,) = d.pics[fk - 1]
        common = q.up_sets[i] & q.up_sets[fi]
        lows = [x for x in common if not any(y in common for y in q.in_arrows[x])]
        if len(lows) != 1:
            raise ModelConsistencyError("no unique minimal common upper bound")
        j = lows[0]
        w = NonSmallWitness(
            pic=i,
            f_pic=fi,
            vertex=j,
            codim=h[i] - h[j] + h[fi] - h[j] + 1,
            fiber_lb=h[i] - h[j],
        )
        if not w.ok:
            raise ModelConsistencyError("non-small witness violates codim <= 2 fiber")
        return w
    return None


@dataclass(frozen=True)
class CodimIdentity:
    gamma: int
    qterm: Fraction
    codim: int

    @property
    def ok(self) -> bool:
        return self.gamma + self.qterm == self.codim


def holes_compatible(q: Quiver, sub: Quiver) -> bool:
    """Hole colors of ``sub``, seen inside the support of ``q``, are hole
    colors of ``q``; this is what stability under Stab(X(w)) forces."""
    hole_colors = {q.color(t) for t in q.annotations.holes}
    return (stabilizer_excluded_roots(sub) & q.support) <= hole_colors


def a_type_codim_identity(q: Quiver, sub: Quiver) -> CodimIdentity:
    """Gamma + q against |Q_w| - |Q_w'| for a Schubert subvariety with
    compatible holes, in type A."""
    if q.system.family != "A":
        raise ValueError("identity is only stated for family A")
    if (q.system, q.weight_index) != (sub.system, sub.weight_index):
        raise ValueError("quivers live in different ambient quivers")
    big = set(q.embedding or ())
    small = set(sub.embedding or ())
    if not small <= big:
        raise ValueError("second quiver is not contained in the first")
    if not holes_compatible(q, sub):
        raise ValueError("hole colors of the subquiver are not among those of the quiver")
    if not q.size:
        return CodimIdentity(0, Fraction(0), 0)
    ann = q.annotations
    h = ann.height
    holes = sorted(ann.holes, key=q.color)
    pics = sorted(ann.pics, key=q.color)
    if len(pics) != len(holes) + 1:
        raise ModelConsistencyError("pics and holes do not interleave")
    amb_color = {e: q.color(i) for i, e in enumerate(q.embedding or (), 1)}
    removed = big - small
    c = [0] + [sum(1 for e in removed if amb_color[e] == q.color(t)) for t in holes] + [0]
    s = len(holes)
    gamma = 0
    for i in range(1, s + 1):
        a = h[pics[i - 1]] - h[holes[i - 1]]
        b = h[pics[i]] - h[holes[i - 1]]
        gamma += c[i] * (a + b)
    qterm = Fraction(sum((c[i] - c[i - 1]) ** 2 for i in range(1, s + 2)), 2)
    return CodimIdentity(gamma, qterm, q.size - sub.size)


@dataclass(frozen=True)
class ModelReport:
    minimal_orders: tuple[Order, ...]
    canonical_partition: tuple[tuple[int, ...], ...]
    canonical_is_identity: bool
    flop_graph: FlopGraph
    swap_classes: dict[Order, tuple[str, ...]]
    discrepancies: dict[Order, dict[int, int]]
    relative_canonical: dict[Order, tuple[int, ...]]
    smooth_orders: tuple[Order, ...]
    smooth: bool
    ih_small: IHSmallResult

    def to_dict(self) -> dict:
        def key(o):
            return ",".join(map(str, o))

        return {
            "minimal_orders": [list(o) for o in self.minimal_orders],
            "canonical_partition": [list(b) for b in self.canonical_partition],
            "canonical_is_identity": self.canonical_is_identity,
            "flop_graph": self.flop_graph.to_dict(),
            "swap_classes": {key(o): list(v) for o, v in self.swap_classes.items()},
            "discrepancies": {
                key(o): {str(k): v for k, v in d.items()} for o, d in self.discrepancies.items()
            },
            "relative_canonical": {key(o): list(v) for o, v in self.relative_canonical.items()},
            "smooth_orders": [list(o) for o in self.smooth_orders],
            "smooth": self.smooth,
            "ih_small": self.ih_small.admits,
            "ih_small_witness": None if self.ih_small.witness is None else list(self.ih_small.witness),
        }


def model_report(q: Quiver) -> ModelReport:
    orders = enumerate_minimal_orders(q)
    can = canonical_partition(q)
    swaps, disc, rel = {}, {}, {}
    smooth_orders = []
    for o in orders:
        if q.size:
            d = order_decomposition(q, o)
            disc[o] = discrepancies(d)
            rel[o] = relative_canonical(d)
            swaps[o] = tuple(str(classify_swap(q, o, k)) for k in range(1, len(o)))
        else:
            disc[o], rel[o], swaps[o] = {}, (), ()
        if is_smooth_model(q, o):
            smooth_orders.append(o)
    return ModelReport(
        minimal_orders=tuple(orders),
        canonical_partition=tuple(tuple(sorted(b)) for b in can),
        canonical_is_identity=len(can) <= 1,
        flop_graph=flop_graph(q, orders),
        swap_classes=swaps,
        discrepancies=disc,
        relative_canonical=rel,
        smooth_orders=tuple(smooth_orders),
        smooth=is_variety_smooth(q),
        ih_small=IHSmallResult(bool(smooth_orders), smooth_orders[0] if smooth_orders else None),
    )
