"""Divisors and curves on the Bott-Samelson resolution of a minuscule word.

Everything here is integer linear algebra over the letters of the word.
Matrices are tuples of rows, indexed from 0 for vertex 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .quiver import Quiver, longest_path_heights, successor_map
from .rootcore import CosetWord, Root, reflect_root, root_pairing, simple_root, validate_coset_word

Matrix = tuple[tuple[int, ...], ...]


class ChowConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class XiVector:
    """Coefficients over the divisor basis xi_1 .. xi_r."""

    coeffs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]


@dataclass(frozen=True)
class CurveVector:
    """Coefficients of a curve class; ``basis`` is ``"C"`` or ``"Y"``."""

    basis: str
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class IntersectionTables:
    C_dot_xi: Matrix
    C_dot_T: Matrix
    T_in_xi: Matrix


def _letters(word: CosetWord) -> tuple[int, ...]:
    validate_coset_word(word)
    return word.letters


def alpha_sequence(word: CosetWord) -> list[Root]:
    """alpha_i = s_{beta_1} ... s_{beta_{i-1}}(beta_i)."""
    sys = word.system
    letters = _letters(word)
    out = []
    for i, b in enumerate(letters):
        v = simple_root(sys, b)
        for m in range(i - 1, -1, -1):
            v = reflect_root(sys, letters[m], v)
        out.append(v)
    return out


def alpha_pairings(word: CosetWord) -> Matrix:
    """P[k][i] = <alpha_k^vee, alpha_i>."""
    al = alpha_sequence(word)
    sys = word.system
    return tuple(tuple(root_pairing(sys, a, b) for b in al) for a in al)


def intersection_tables(word: CosetWord) -> IntersectionTables:
    sys = word.system
    letters = _letters(word)
    r = len(letters)
    beta = [[root_pairing(sys, simple_root(sys, a), simple_root(sys, b)) for b in letters] for a in letters]
    cxi = tuple(
        tuple(0 if i > j else 1 if i == j else beta[i][j] for j in range(r)) for i in range(r)
    )
    ct = tuple(tuple(0 if i > j else beta[i][j] for j in range(r)) for i in range(r))
    P = alpha_pairings(word)
    t_in_xi = tuple(tuple(P[k][i] if k <= i else 0 for k in range(r)) for i in range(r))
    return IntersectionTables(cxi, ct, t_in_xi)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return ()
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def curve_Y_in_C(word: CosetWord) -> list[CurveVector]:
    """[Y_i] = [C_i] - [C_{s(i)}], the second term dropped when s(i) is absent."""
    letters = _letters(word)
    r = len(letters)
    succ = successor_map(letters)
    out = []
    for i in range(r):
        v = [0] * r
        v[i] = 1
        if succ[i] is not None:
            v[succ[i] - 1] = -1
        out.append(CurveVector("C", tuple(v)))
    return out


def dual_curve_basis(word: CosetWord) -> list[CurveVector]:
    """C-hat_k = C_k + sum_{j>k} <alpha_k^vee, alpha_j> C_j, dual to the xi basis."""
    P = alpha_pairings(word)
    r = len(P)
    return [
        CurveVector("C", tuple(1 if j == k else P[k][j] if j > k else 0 for j in range(r)))
        for k in range(r)
    ]


def line_bundle_xi_coords(word: CosetWord, i: int) -> XiVector:
    """Coordinates of L_i over xi (i is 1-based)."""
    letters = _letters(word)
    r = len(letters)
    if not 1 <= i <= r:
        raise IndexError(f"vertex {i} out of range")
    P = alpha_pairings(word)
    bi = letters[i - 1]
    out = []
    for k in range(1, r + 1):
        if k > i:
            out.append(0)
        elif k == i:
            out.append(1)
        else:
            c = int(letters[k - 1] == bi)
            c += sum(P[k - 1][j - 1] for j in range(k + 1, i + 1) if letters[j - 1] == bi)
            out.append(c)
    return XiVector(tuple(out))


def line_bundle_matrix(word: CosetWord) -> Matrix:
    """Row i-1 holds the xi-coordinates of L_i."""
    return tuple(line_bundle_xi_coords(word, i).coeffs for i in range(1, len(word) + 1))


def line_bundle_dot_C(word: CosetWord) -> Matrix:
    """L_i . C_j = 1 iff i >= j and beta_i = beta_j."""
    letters = _letters(word)
    r = len(letters)
    return tuple(
        tuple(int(i >= j and letters[i] == letters[j]) for j in range(r)) for i in range(r)
    )


def canonical_bs(word: CosetWord) -> XiVector:
    """-K of the Bott-Samelson variety: entry k is sum_{i>=k} <alpha_k^vee, alpha_i>."""
    P = alpha_pairings(word)
    r = len(P)
    return XiVector(tuple(sum(P[k][i] for i in range(k, r)) for k in range(r)))


def check_canonical_heights(q: Quiver) -> None:
    """Assert that the Bott-Samelson -K coefficient at k is h(k) + 1."""
    k = canonical_bs(q.word)
    h = longest_path_heights(q)
    for v in q.vertices:
        if k[v - 1] != h[v] + 1:
            raise ChowConsistencyError(f"-K coefficient {k[v - 1]} at {v} != h+1 = {h[v] + 1}")


@dataclass(frozen=True)
class WeilReport:
    weil_basis: tuple[int, ...]
    picard_coeffs: dict[int, int]
    canonical_coeffs: dict[int, int]
    locally_factorial: bool
    gorenstein: bool
    gorenstein_index: int | None

    def to_dict(self) -> dict:
        return {
            "weil_basis": list(self.weil_basis),
            "picard_coeffs": {str(k): v for k, v in self.picard_coeffs.items()},
            "canonical_coeffs": {str(k): v for k, v in self.canonical_coeffs.items()},
            "locally_factorial": self.locally_factorial,
            "gorenstein": self.gorenstein,
            "gorenstein_index": self.gorenstein_index,
        }


def weil_report(q: Quiver) -> WeilReport:
    """Weil divisors D_p indexed by pics; L(w) = sum D_p and -K = sum (h(p)+1) D_p.

    The empty quiver (a point) is reported as factorial and Gorenstein with
    no index.
    """
    ann = q.annotations
    pics = tuple(sorted(ann.pics))
    heights = {ann.height[p] for p in pics}
    gor = len(heights) <= 1
    index = None
    if pics and gor:
        index = next(iter(heights)) + 1
    return WeilReport(
        weil_basis=pics,
        picard_coeffs={p: 1 for p in pics},
        canonical_coeffs={p: ann.height[p] + 1 for p in pics},
        locally_factorial=len(pics) <= 1,
        gorenstein=gor,
        gorenstein_index=index,
    )


def chow_report(word: CosetWord) -> dict:
    tabs = intersection_tables(word)
    return {
        "alpha": [list(a) for a in alpha_sequence(word)],
        "C_dot_xi": [list(r) for r in tabs.C_dot_xi],
        "C_dot_T": [list(r) for r in tabs.C_dot_T],
        "T_in_xi": [list(r) for r in tabs.T_in_xi],
        "Y_in_C": [list(v.coeffs) for v in curve_Y_in_C(word)],
        "L_in_xi": [list(r) for r in line_bundle_matrix(word)],
        "minus_K_bs_in_xi": list(canonical_bs(word).coeffs),
    }

