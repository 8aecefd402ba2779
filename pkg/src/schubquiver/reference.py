"""Reference quivers recovered by search rather than from a printed word."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .quiver import Quiver, enumerate_schubert, height_of
from .rootcore import RootSystemId

D6_EXAMPLE_DISCREPANCIES = (0, 0, 1, 1, 1, 2, 2, 3, 3, 4, 5)


def find_quivers(sys: RootSystemId, weight_index: int, size: int, pic_heights, discrepancies) -> list[Quiver]:
    """Quivers of the given size whose pic heights and single-block
    discrepancy multiset h(w) - h(k) match."""
    want = Counter(discrepancies)
    out = []
    for q in enumerate_schubert(sys, weight_index):
        if q.size != size:
            continue
        ann = q.annotations
        if ann.pic_heights != tuple(sorted(pic_heights)):
            continue
        hw = height_of(q)
        if Counter(hw - ann.height[i] for i in q.vertices) == want:
            out.append(q)
    return out


@lru_cache(maxsize=None)
def d6_example() -> Quiver:
    """The 11-vertex Gorenstein Schubert quiver in D6/P6 with two pics of
    height 6; it is unique with these data."""
    found = find_quivers(RootSystemId("D", 6), 6, 11, (6, 6), D6_EXAMPLE_DISCREPANCIES)
    if len(found) != 1:
        raise LookupError(f"expected a unique D6 example, found {len(found)}")
    return found[0]
