"""Acceptance checks shared by ``schubquiver selftest`` and the test suite."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .chow import (
    canonical_bs,
    curve_Y_in_C,
    identity,
    line_bundle_dot_C,
    line_bundle_matrix,
    matmul,
    transpose,
)
from .models import (
    a_type_codim_identity,
    all_orders,
    discrepancies,
    enumerate_minimal_orders,
    flop_graph,
    has_ih_small_resolution,
    holes_compatible,
    is_minimal_order,
    is_variety_smooth,
    non_small_witness,
    order_decomposition,
)
from .quiver import (
    Quiver,
    antichains,
    bruhat_leq,
    enumerate_schubert,
    longest_path_heights,
    recursive_heights,
)
from .reference import d6_example
from .rootcore import RootSystemId, minuscule_pairs
from .stringy import crepant_obstruction, stringy_euler

MAX_RANK = 7


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def all_quivers(max_rank: int = MAX_RANK) -> Iterator[Quiver]:
    for sys, w in minuscule_pairs(max_rank):
        yield from enumerate_schubert(sys, w)


def check_d6_example() -> tuple[bool, str]:
    q = d6_example()
    e = stringy_euler(q)
    obs = crepant_obstruction(q)
    ih = has_ih_small_resolution(q)
    ok = e == Fraction(105, 2) and obs.obstructed is True and not ih.admits
    return ok, f"e_st={e}, obstructed={obs.obstructed}, ih_small={ih.admits}"


def check_exceptional_counts() -> tuple[bool, str]:
    parts, ok = [], True
    for sys, w, n_want, ih_want in ((RootSystemId("E", 6), 1, 27, 16), (RootSystemId("E", 7), 7, 56, 19)):
        qs = enumerate_schubert(sys, w)
        n_ih = sum(1 for q in qs if has_ih_small_resolution(q).admits)
        good = len(qs) == n_want and n_ih == ih_want
        ok &= good
        parts.append(f"{sys}: {len(qs)} quivers, {n_ih} IH-small (expected {n_want}, {ih_want})")
    return ok, "; ".join(parts)


def check_canonical_heights() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        if not q.size:
            continue
        k = canonical_bs(q.word)
        h = q.annotations.height
        for v in q.vertices:
            n += 1
            bad += k[v - 1] != h[v] + 1
    return bad == 0, f"{n} vertices, {bad} mismatches"


def check_a_type_codim() -> tuple[bool, str]:
    n, bad = 0, 0
    for rank in range(1, 8):
        sys = RootSystemId("A", rank)
        for w in sys.nodes:
            qs = enumerate_schubert(sys, w)
            for q in qs:
                for sub in qs:
                    if bruhat_leq(sub, q) and holes_compatible(q, sub):
                        n += 1
                        bad += not a_type_codim_identity(q, sub).ok
    return bad == 0 and n > 0, f"{n} nested pairs, {bad} failures"


def check_terminality() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        if not q.size:
            continue
        for o in enumerate_minimal_orders(q):
            d = order_decomposition(q, o)
            n += 1
            try:
                disc = discrepancies(d)
            except RuntimeError:
                bad += 1
                continue
            zeros = {k for k, a in disc.items() if a == 0}
            pics = set().union(*d.pics)
            bad += any(a < 0 for a in disc.values()) or zeros != pics
    return bad == 0, f"{n} minimal decompositions, {bad} failures"


def check_flop_connectivity() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        n += 1
        try:
            bad += not flop_graph(q).connected
        except RuntimeError:
            bad += 1
    return bad == 0, f"{n} quivers, {bad} disconnected"


def check_duality() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        if not q.size:
            continue
        n += 1
        w = q.word
        Y = transpose([v.coeffs for v in curve_Y_in_C(w)])
        L = line_bundle_matrix(w)
        # L_i . Y_j through L_i . C_m, then L_r against the all-ones vector
        bad += matmul(line_bundle_dot_C(w), Y) != identity(q.size) or L[-1] != (1,) * q.size
    return bad == 0, f"{n} words, {bad} failures"


def check_smooth_euler() -> tuple[bool, str]:
    n, bad = 0, 0
    for sys, w in minuscule_pairs(MAX_RANK):
        qs = enumerate_schubert(sys, w)
        for q in qs:
            if not is_variety_smooth(q):
                continue
            n += 1
            # two independent counts of Schubert subvarieties
            below = sum(1 for sub in qs if bruhat_leq(sub, q))
            ideals = len(antichains(q))
            bad += below != ideals or stringy_euler(q) != ideals
    gr24 = enumerate_schubert(RootSystemId("A", 3), 2)[0]
    e = stringy_euler(gr24)
    return bad == 0 and e == 6, f"{n} smooth quivers, {bad} mismatches, Gr(2,4) -> {e}"


def check_heights() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        n += q.size
        try:
            bad += longest_path_heights(q) != recursive_heights(q)
        except RuntimeError:
            bad += 1
    return bad == 0, f"{n} vertices, {bad} quivers disagreeing"


def check_non_small() -> tuple[bool, str]:
    n, bad = 0, 0
    for q in all_quivers():
        if not q.size:
            continue
        for o in all_orders(q):
            if is_minimal_order(q, o):
                continue
            n += 1
            try:
                w = non_small_witness(q, o)
            except RuntimeError:
                bad += 1
                continue
            bad += w is None or not w.ok
    return bad == 0, f"{n} non-minimal orders, {bad} failures"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("D6 example stringy Euler number", check_d6_example),
    ("E6/E7 IH-small counts", check_exceptional_counts),
    ("canonical coefficients equal h+1", check_canonical_heights),
    ("A-type codimension identity", check_a_type_codim),
    ("terminality of minimal models", check_terminality),
    ("flop graph connectivity", check_flop_connectivity),
    ("duality L.Y and L_r", check_duality),
    ("smooth-case Euler number", check_smooth_euler),
    ("height recursion", check_heights),
    ("non-smallness inequality", check_non_small),
]


def run_all() -> list[CheckResult]:
    out = []
    for i, (name, fn) in enumerate(CHECKS, 1):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed run
            ok, detail = False, f"error: {exc!r}"
        out.append(CheckResult(i, name, ok, detail))
    return out
