"""Stringy Euler numbers of Gorenstein minuscule Schubert varieties."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import weil_report
from .quiver import Quiver, height_of


class NotGorensteinError(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def coheights(q: Quiver) -> dict[int, int]:
    """coh(i) = h(w) - h(i), for a quiver whose pics share one height."""
    if not weil_report(q).gorenstein:
        raise NotGorensteinError("pics do not all have the same height")
    if not q.size:
        return {}
    hw = height_of(q)
    h = q.annotations.height
    return {i: hw - h[i] for i in q.vertices}


def stringy_euler(q: Quiver) -> Fraction:
    """Product over vertices of 1 + 1/(1 + coh(i))."""
    out = Fraction(1)
    for c in coheights(q).values():
        out *= 1 + Fraction(1, 1 + c)
    return out


@dataclass(frozen=True)
class CrepantObstruction:
    gorenstein: bool
    e_st: Fraction | None
    obstructed: bool | None

    def to_dict(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "e_st": None if self.e_st is None else format_rational(self.e_st),
            "obstructed": self.obstructed,
        }


def crepant_obstruction(q: Quiver) -> CrepantObstruction:
    """A non-integral stringy Euler number rules out crepant resolutions."""
    if not weil_report(q).gorenstein:
        return CrepantObstruction(False, None, None)
    e = stringy_euler(q)
    return CrepantObstruction(True, e, e.denominator != 1)
