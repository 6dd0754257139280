from __future__ import annotations

import pytest

from cactus_expansion.digraph import Digraph
from cactus_expansion.generators import fixture


def arcs_of(g: Digraph, *pairs: str) -> frozenset[tuple[int, int]]:
    """Arc ids for labeled pairs written as 'ab' or 'a1 x'."""
    out = set()
    for pair in pairs:
        x, y = pair.split() if " " in pair else tuple(pair)
        out.add((g.index(x), g.index(y)))
    return frozenset(out)


@pytest.fixture
def fx():
    return lambda name: fixture(name).graph
