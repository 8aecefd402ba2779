"""Simply-laced root system arithmetic in Bourbaki numbering.

Weights are integer vectors in the fundamental-weight basis, roots are
integer vectors in the simple-root basis.  Indices of simple roots are
1-based throughout, as in Bourbaki's tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Weight = tuple[int, ...]
Root = tuple[int, ...]


class InvalidWordError(ValueError):
    """A letter sequence is not a reduced minuscule coset word.

    ``position`` is the 1-based index of the leftmost failing letter.
    """

    def __init__(self, position: int, message: str | None = None):
        self.position = position
        super().__init__(message or f"invalid word at position {position}")


@dataclass(frozen=True, order=True)
class RootSystemId:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam == "B":
            raise ValueError(
                f"B{self.rank} is not simply laced; its minuscule variety "
                f"B{self.rank}/P{self.rank} is isomorphic to D{self.rank + 1}/P{self.rank + 1}"
            )
        if fam == "C":
            raise ValueError(
                f"C{self.rank} is not simply laced; its minuscule variety "
                f"C{self.rank}/P1 is isomorphic to A{2 * self.rank - 1}/P1"
            )
        if fam not in ("A", "D", "E"):
            raise ValueError(f"unsupported family {self.family!r}; expected A, D or E")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")
        if fam == "D" and self.rank < 4:
            raise ValueError("family D requires rank >= 4")
        if fam == "E" and self.rank not in (6, 7, 8):
            raise ValueError("family E requires rank 6, 7 or 8")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def edges(self) -> frozenset[frozenset[int]]:
        n = self.rank
        if self.family == "A":
            pairs = [(i, i + 1) for i in range(1, n)]
        elif self.family == "D":
            pairs = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        else:
            pairs = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
        return frozenset(frozenset(p) for p in pairs)

    @cached_property
    def neighbours(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {i: set() for i in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            out[a].add(b)
            out[b].add(a)
        return {i: frozenset(v) for i, v in out.items()}

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(pairing(self, i, j) for j in self.nodes) for i in self.nodes)


def parse_system(text: str) -> RootSystemId:
    """Parse strings such as ``"E6"`` or ``"d5"``."""
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"cannot parse root system {text!r}")
    return RootSystemId(text[0].upper(), int(text[1:]))


def _check_index(sys: RootSystemId, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= sys.rank:
        raise IndexError(f"simple root index {i!r} out of range for {sys}")


def pairing(sys: RootSystemId, i: int, j: int) -> int:
    """Cartan integer <alpha_i^vee, alpha_j>."""
    _check_index(sys, i)
    _check_index(sys, j)
    if i == j:
        return 2
    return -1 if frozenset((i, j)) in sys.edges else 0


def simple_root_as_weight(sys: RootSystemId, i: int) -> Weight:
    _check_index(sys, i)
    return sys.cartan[i - 1]


def fundamental_weight(sys: RootSystemId, i: int) -> Weight:
    _check_index(sys, i)
    return tuple(1 if k == i else 0 for k in sys.nodes)


def reflect(sys: RootSystemId, i: int, mu: Sequence[int]) -> Weight:
    """Simple reflection s_i acting on a weight in the fundamental basis."""
    if len(mu) != sys.rank:
        raise ValueError("weight has wrong length")
    c = mu[i - 1]
    row = simple_root_as_weight(sys, i)
    return tuple(m - c * a for m, a in zip(mu, row))


def root_pairing(sys: RootSystemId, a: Sequence[int], b: Sequence[int]) -> int:
    """<a^vee, b> for roots given in the simple-root basis (simply laced)."""
    cart = sys.cartan
    n = sys.rank
    return sum(a[i] * cart[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])


def reflect_root(sys: RootSystemId, i: int, v: Sequence[int]) -> Root:
    """Simple reflection on a vector in the simple-root basis."""
    c = sum(sys.cartan[i - 1][j] * v[j] for j in range(sys.rank))
    out = list(v)
    out[i - 1] -= c
    return tuple(out)


def simple_root(sys: RootSystemId, i: int) -> Root:
    _check_index(sys, i)
    return tuple(1 if k == i else 0 for k in sys.nodes)


@lru_cache(maxsize=None)
def _positive_roots_on(sys: RootSystemId, support: frozenset[int]) -> tuple[Root, ...]:
    seen = {simple_root(sys, i) for i in support}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for i in support:
                u = reflect_root(sys, i, v)
                if all(x >= 0 for x in u) and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


def positive_roots(sys: RootSystemId, support: Iterable[int] | None = None) -> tuple[Root, ...]:
    """Positive roots of the subsystem spanned by ``support`` (default: all nodes)."""
    supp = frozenset(sys.nodes if support is None else support)
    for i in supp:
        _check_index(sys, i)
    return _positive_roots_on(sys, supp)


def highest_root(sys: RootSystemId, support: Iterable[int] | None = None) -> Root:
    roots = positive_roots(sys, support)
    return max(roots, key=sum)


def is_minuscule_node(sys: RootSystemId, i: int, support: Iterable[int] | None = None) -> bool:
    """Whether the fundamental weight of node ``i`` is minuscule for the
    (connected) subdiagram ``support``.

    For simply-laced diagrams this holds iff alpha_i has coefficient 1 in the
    highest root.
    """
    supp = frozenset(sys.nodes if support is None else support)
    if i not in supp:
        raise ValueError(f"node {i} not in support {sorted(supp)}")
    if not is_connected_support(sys, supp):
        raise ValueError(f"support {sorted(supp)} is not connected")
    return highest_root(sys, supp)[i - 1] == 1


def is_connected_support(sys: RootSystemId, support: Iterable[int]) -> bool:
    supp = set(support)
    if not supp:
        return True
    start = min(supp)
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in sys.neighbours[a]:
            if b in supp and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen == supp


def boundary(sys: RootSystemId, support: Iterable[int]) -> frozenset[int]:
    """Nodes outside ``support`` adjacent to it."""
    supp = frozenset(support)
    return frozenset(
        b for a in supp for b in sys.neighbours[a] if b not in supp
    )


def minuscule_weights(sys: RootSystemId) -> frozenset[int]:
    n = sys.rank
    if sys.family == "A":
        return frozenset(range(1, n + 1))
    if sys.family == "D":
        return frozenset({1, n - 1, n})
    return {6: frozenset({1, 6}), 7: frozenset({7}), 8: frozenset()}[n]


def check_minuscule(sys: RootSystemId, weight_index: int) -> None:
    _check_index(sys, weight_index)
    if weight_index not in minuscule_weights(sys):
        raise ValueError(f"weight {weight_index} is not minuscule for {sys}")


def coset_dimension(sys: RootSystemId, weight_index: int) -> int:
    """Number of positive roots alpha with <varpi, alpha^vee> = 1."""
    return sum(1 for r in positive_roots(sys) if r[weight_index - 1] == 1)


@dataclass(frozen=True)
class CosetWord:
    """Letters beta_1 .. beta_r of w = s_{beta_1} ... s_{beta_r}, read left to right."""

    system: RootSystemId
    weight_index: int
    letters: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        _check_index(self.system, self.weight_index)

    def __len__(self) -> int:
        return len(self.letters)


def invalid_positions(sys: RootSystemId, weight_index: int, letters: Sequence[int]) -> list[int]:
    """All 1-based positions k whose pairing <beta_k^vee, w_{k+1}(-varpi)> is not -1.

    The walk runs right to left starting from -varpi and reflects at every
    letter regardless of failures.
    """
    for b in letters:
        _check_index(sys, b)
    mu = tuple(-x for x in fundamental_weight(sys, weight_index))
    bad = []
    for k in range(len(letters), 0, -1):
        b = letters[k - 1]
        if mu[b - 1] != -1:
            bad.append(k)
        mu = reflect(sys, b, mu)
    return sorted(bad)


def validate_coset_word(word: CosetWord) -> None:
    """Raise :class:`InvalidWordError` unless ``word`` is a reduced minimal
    coset word for its minuscule weight."""
    check_minuscule(word.system, word.weight_index)
    bad = invalid_positions(word.system, word.weight_index, word.letters)
    if bad:
        raise InvalidWordError(bad[0])


def is_valid_coset_word(word: CosetWord) -> bool:
    try:
        validate_coset_word(word)
    except InvalidWordError:
        return False
    return True


def weight_walk(sys: RootSystemId, weight_index: int, letters: Sequence[int]) -> list[Weight]:
    """Weights w_k(-varpi) for k = r+1, r, ..., 1 (w_{r+1} = identity)."""
    mu = tuple(-x for x in fundamental_weight(sys, weight_index))
    out = [mu]
    for b in reversed(letters):
        mu = reflect(sys, b, mu)
        out.append(mu)
    return out


def longest_coset_word(sys: RootSystemId, weight_index: int, tie_break=min) -> CosetWord:
    """Word of the longest minimal coset representative, built by greedily
    prepending letters whose coroot pairs to -1 with the current weight."""
    check_minuscule(sys, weight_index)
    mu = tuple(-x for x in fundamental_weight(sys, weight_index))
    rev: list[int] = []
    while True:
        cands = [b for b in sys.nodes if mu[b - 1] == -1]
        if not cands:
            break
        b = tie_break(cands)
        rev.append(b)
        mu = reflect(sys, b, mu)
    return CosetWord(sys, weight_index, tuple(reversed(rev)))


def minuscule_pairs(max_rank: int = 7) -> list[tuple[RootSystemId, int]]:
    """Every (system, minuscule weight) with rank <= max_rank."""
    out = []
    for n in range(1, max_rank + 1):
        systems = [RootSystemId("A", n)]
        if n >= 4:
            systems.append(RootSystemId("D", n))
        if n in (6, 7, 8):
            systems.append(RootSystemId("E", n))
        for s in systems:
            out.extend((s, w) for w in sorted(minuscule_weights(s)))
    return out
