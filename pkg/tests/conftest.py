from __future__ import annotations

from hypothesis import strategies as st

from schubquiver.quiver import enumerate_schubert
from schubquiver.rootcore import CosetWord, RootSystemId, fundamental_weight, minuscule_pairs, reflect

PAIRS = minuscule_pairs(7)
SMALL_PAIRS = minuscule_pairs(6)


def gr24():
    return enumerate_schubert(RootSystemId("A", 3), 2)


@st.composite
def coset_words(draw, pairs=SMALL_PAIRS):
    """Random valid words, grown by prepending letters whose coroot pairs
    to -1 with the current weight."""
    sys, w = draw(st.sampled_from(pairs))
    mu = tuple(-x for x in fundamental_weight(sys, w))
    rev = []
    length = draw(st.integers(0, 40))
    for _ in range(length):
        options = [b for b in sys.nodes if mu[b - 1] == -1]
        if not options:
            break
        b = draw(st.sampled_from(options))
        rev.append(b)
        mu = reflect(sys, b, mu)
    return CosetWord(sys, w, tuple(reversed(rev)))


@st.composite
def schubert_quivers(draw, pairs=SMALL_PAIRS):
    sys, w = draw(st.sampled_from(pairs))
    return draw(st.sampled_from(enumerate_schubert(sys, w)))
