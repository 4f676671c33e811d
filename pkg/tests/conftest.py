import sys
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from polyperfect.combinatorics import Poset, SimpleGraph  # noqa: E402


@st.composite
def posets(draw, min_d=1, max_d=6):
    d = draw(st.integers(min_d, max_d))
    perm = draw(st.permutations(range(1, d + 1)))
    pairs = list(combinations(range(d), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Poset.from_covers(d, [(perm[i], perm[j]) for (i, j), k in zip(pairs, keep) if k])


@st.composite
def graphs(draw, min_d=1, max_d=8):
    d = draw(st.integers(min_d, max_d))
    pairs = list(combinations(range(1, d + 1), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(d, [p for p, k in zip(pairs, keep) if k])
