from __future__ import annotations

from collections import Counter

import pytest

from cactus_expansion.cactus import is_cactus
from cactus_expansion.dbcp import brute_force_is_dbcp, find_dbcp
from cactus_expansion.digraph import is_balanced, is_strongly_connected
from cactus_expansion.generators import (
    FIXTURE_NAMES,
    fixture,
    nonisomorphic_digraphs,
    random_cactus,
    random_digraph,
)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_expectations_recompute(name):
    fx = fixture(name)
    g = fx.graph
    assert fx.expected == {
        "strongly_connected": is_strongly_connected(g),
        "is_cactus": bool(is_cactus(g)),
        "has_dbcp": find_dbcp(g) is not None,
    }
    brute = any(brute_force_is_dbcp(g, p, q) for p in g.vertices for q in g.vertices if p != q)
    assert brute == fx.expected["has_dbcp"]


def test_fixture_contents():
    assert fixture("C3").expected["is_cactus"]
    assert fixture("K3S").expected["has_dbcp"]
    assert fixture("SHARE2").expected == {
        "strongly_connected": True,
        "is_cactus": False,
        "has_dbcp": False,
    }
    assert len(fixture("K3S").graph.arcs) == 6


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("K5")


class TestRandomDigraph:
    def test_extremes(self):
        assert random_digraph(3, 1.0, 11).arcs == fixture("K3S").graph.arcs
        assert random_digraph(3, 0.0, 11).arcs == frozenset()

    def test_deterministic(self):
        assert random_digraph(5, 0.4, 7) == random_digraph(5, 0.4, 7)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            random_digraph(0, 0.5, 1)


class TestRandomCactus:
    def test_single_cycle(self):
        g = random_cactus(1, 3, 5)
        assert is_cactus(g) and len(g.arcs) == g.n

    def test_two_cycles_share_one_vertex(self):
        g = random_cactus(2, 3, 1)
        dec = is_cactus(g)
        assert len(dec.cycles) == 2 and len(dec.connecting_points) == 1

    def test_corpus_soundness_and_coverage(self):
        high_degree = Counter()
        for seed in range(1000):
            g = random_cactus(1 + seed % 6, 2 + seed % 4, seed)
            assert is_cactus(g) and is_balanced(g)
            high_degree.update(g.indegree(v) for v in g.vertices if g.indegree(v) > 2)
        # Connecting points of degree > 2 occur in the corpus.
        assert sum(high_degree.values()) > 0

    def test_deterministic(self):
        assert random_cactus(4, 4, 9) == random_cactus(4, 4, 9)


def test_nonisomorphic_counts():
    # Known numbers of digraphs on 1..4 unlabeled vertices.
    assert [len(nonisomorphic_digraphs(n)) for n in (1, 2, 3, 4)] == [1, 3, 16, 218]
