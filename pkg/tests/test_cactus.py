from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactus_expansion.cactus import (
    CactusDecomposition,
    NotCactus,
    PreorderRelation as R,
    RootedPreorder,
    brute_force_is_cactus,
    check_connecting_point_claim,
    check_cycle_minimum_claim,
    is_cactus,
    verify_single_dipped,
)
from cactus_expansion.digraph import Digraph, Path, degrees, is_strongly_connected
from cactus_expansion.generators import (
    FIXTURE_NAMES,
    fixture,
    random_cactus,
    random_strongly_connected,
)

cacti = st.builds(
    random_cactus,
    num_cycles=st.integers(1, 6),
    max_cycle_len=st.integers(2, 5),
    seed=st.integers(0, 2**32),
)


def rooted(g: Digraph, root: str) -> RootedPreorder:
    dec = is_cactus(g)
    assert dec
    return RootedPreorder(dec, g.index(root))


def subcacti(dec: CactusDecomposition) -> list[frozenset[int]]:
    """Every nonempty set of cycles whose union is strongly connected."""
    out = []
    m = len(dec.cycles)
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            verts = sorted({v for i in combo for v in dec.cycle_vertices(i)})
            idx = {v: k for k, v in enumerate(verts)}
            arcs = {(idx[a], idx[b]) for i in combo for a, b in dec.cycles[i].arcs}
            if is_strongly_connected(Digraph(len(verts), frozenset(arcs))):
                out.append(frozenset(combo))
    return out


def vertices_of(dec: CactusDecomposition, cycles: frozenset[int]) -> set[int]:
    return {v for i in cycles for v in dec.cycle_vertices(i)}


def intersection_oracle(dec: CactusDecomposition, root: int, v: int) -> frozenset[int]:
    """C(v) as the intersection of every sub-cactus containing root and v."""
    if v == root:
        return frozenset()
    containing = [s for s in subcacti(dec) if {root, v} <= vertices_of(dec, s)]
    return frozenset.intersection(*containing)


class TestIsCactus:
    def test_c3(self, fx):
        dec = is_cactus(fx("C3"))
        assert isinstance(dec, CactusDecomposition)
        assert len(dec.cycles) == 1 and not dec.connecting_points

    def test_fig8(self, fx):
        g = fx("FIG8")
        dec = is_cactus(g)
        assert [c.labels() for c in dec.cycles] == [("a", "b", "c", "a"), ("a", "d", "e", "a")]
        assert dec.connecting_points == {g.index("a")}
        assert dec.tree == {
            ("cycle", 0): [("point", 0)],
            ("cycle", 1): [("point", 0)],
            ("point", 0): [("cycle", 0), ("cycle", 1)],
        }

    def test_theta(self, fx):
        g = fx("THETA")
        res = is_cactus(g)
        assert isinstance(res, NotCactus) and not res
        assert res.reason == "arc-in-two-cycles"
        assert res.arc == (g.index("b"), g.index("a"))
        assert {c.labels() for c in res.cycles} == {("a", "x", "b", "a"), ("a", "y", "b", "a")}

    def test_k3s(self, fx):
        g = fx("K3S")
        res = is_cactus(g)
        assert res.reason == "arc-in-two-cycles"
        assert res.arc == (g.index("p"), g.index("q"))
        assert sorted(c.length for c in res.cycles) == [2, 3]
        assert all(res.arc in c.arcs for c in res.cycles)

    def test_not_strongly_connected(self):
        assert is_cactus(Digraph(3, frozenset({(0, 1), (1, 2)}))).reason == "not-strongly-connected"

    def test_unbalanced_fast_rejection(self, fx):
        assert is_cactus(fx("THETA"), witness=False).reason == "unbalanced"

    def test_single_vertex(self):
        dec = is_cactus(Digraph(1, frozenset()))
        assert dec and dec.cycles == ()

    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_fixture_agreement(self, name):
        fx = fixture(name)
        assert bool(is_cactus(fx.graph)) == brute_force_is_cactus(fx.graph) == fx.expected["is_cactus"]

    def test_brute_force_examples(self, fx):
        assert brute_force_is_cactus(fx("C3"))
        assert brute_force_is_cactus(fx("FIG8"))
        assert not brute_force_is_cactus(fx("THETA"))
        with pytest.raises(ValueError):
            brute_force_is_cactus(Digraph(9, frozenset()))

    @settings(max_examples=300)
    @given(st.integers(1, 6), st.floats(0.2, 0.7), st.integers(0, 2**32))
    def test_claim1_equivalence(self, n, p, seed):
        g = random_strongly_connected(n, p, seed)
        assert bool(is_cactus(g)) == brute_force_is_cactus(g)

    @settings(max_examples=200)
    @given(cacti)
    def test_decomposition_invariants(self, g):
        dec = is_cactus(g)
        assert dec
        assert sum(c.length for c in dec.cycles) == len(g.arcs)
        assert set(dec.arc_to_cycle) == g.arcs
        for i, c in enumerate(dec.cycles):
            assert all(dec.arc_to_cycle[a] == i for a in c.arcs)
        for i, j in combinations(range(len(dec.cycles)), 2):
            assert len(set(dec.cycle_vertices(i)) & set(dec.cycle_vertices(j))) <= 1
        for v, (din, dout) in degrees(g).items():
            assert din == dout
            assert (v in dec.connecting_points) == (din >= 2)
        # The cactus tree is a tree: connected with |nodes| - 1 edges.
        tree = dec.tree
        edges = sum(len(nb) for nb in tree.values()) // 2
        assert edges == len(tree) - 1
        seen, todo = {("cycle", 0)}, [("cycle", 0)]
        while todo:
            for nb in tree[todo.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        assert seen == set(tree)


class TestSubcactusIntersection:
    @settings(max_examples=60)
    @given(st.builds(random_cactus, st.integers(2, 6), st.integers(2, 4), st.integers(0, 2**32)))
    def test_intersection_shapes(self, g):
        dec = is_cactus(g)
        subs = subcacti(dec)
        rng = random.Random(len(subs))
        for _ in range(20):
            s1, s2 = rng.choice(subs), rng.choice(subs)
            common = s1 & s2
            shared = vertices_of(dec, s1) & vertices_of(dec, s2)
            if common:
                assert shared == vertices_of(dec, common)
                assert common in subs
            else:
                assert len(shared) <= 1


class TestMinimalSubcactus:
    def test_fig8_rooted_at_b(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        assert p.minimal_subcactus(g.index("b")) == frozenset()
        assert p.minimal_subcactus(g.index("d")) == {0, 1}
        assert p.minimal_subcactus(g.index("a")) == {0}

    def test_unknown_vertex(self, fx):
        with pytest.raises(KeyError):
            rooted(fx("FIG8"), "b").minimal_subcactus(17)

    @settings(max_examples=80)
    @given(st.builds(random_cactus, st.integers(1, 6), st.integers(2, 4), st.integers(0, 2**32)), st.data())
    def test_matches_intersection_definition(self, g, data):
        dec = is_cactus(g)
        root = data.draw(st.integers(0, g.n - 1))
        p = RootedPreorder(dec, root)
        for v in g.vertices:
            assert p.minimal_subcactus(v) == intersection_oracle(dec, root, v)


class TestCompare:
    def test_fig8(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        assert p.compare(g.index("d"), g.index("e")) is R.EQUIVALENT
        q = rooted(g, "a")
        assert q.compare(g.index("b"), g.index("d")) is R.INCOMPARABLE

    @settings(max_examples=150)
    @given(cacti, st.data())
    def test_preorder_laws(self, g, data):
        dec = is_cactus(g)
        root = data.draw(st.integers(0, g.n - 1))
        p = RootedPreorder(dec, root)
        for v in g.vertices:
            assert p.compare(v, v) is R.EQUIVALENT
            if v != root:
                assert p.compare(root, v) is R.LESS
        for v in g.vertices:
            for w in g.vertices:
                cv, cw = p.minimal_subcactus(v), p.minimal_subcactus(w)
                expected = (
                    R.EQUIVALENT if cv == cw
                    else R.LESS if cv < cw
                    else R.GREATER if cv > cw
                    else R.INCOMPARABLE
                )
                rel = p.compare(v, w)
                assert rel is expected
                assert p.compare(w, v) is rel.flipped()
        le = {(v, w) for v in g.vertices for w in g.vertices if p.contains(v, w)}
        for u, v in le:
            for w in g.vertices:
                if (v, w) in le:
                    assert (u, w) in le


class TestCycleMinimumPoint:
    def test_fig8(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        assert g.label(p.cycle_minimum_point(0, check=True)) == "b"
        assert g.label(p.cycle_minimum_point(1, check=True)) == "a"

    def test_c3(self, fx):
        assert rooted(fx("C3"), "a").cycle_minimum_point(0) == 0

    def test_claim_checker(self, fx):
        p = rooted(fx("FIG8"), "b")
        assert check_cycle_minimum_claim(p, 0) == (True, "ok")
        assert check_cycle_minimum_claim(p, 1) == (True, "ok")


class TestConnectingPointClaim:
    def test_fig8(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        assert check_connecting_point_claim(p, g.index("a")) == (True, "ok")

    def test_preconditions(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        with pytest.raises(ValueError, match="not a connecting point"):
            check_connecting_point_claim(p, g.index("d"))
        with pytest.raises(ValueError, match="root"):
            check_connecting_point_claim(rooted(g, "a"), g.index("a"))


class TestSingleDipped:
    def test_descent_to_root(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        path = Path(g, tuple(g.index(s) for s in "deab"))
        assert verify_single_dipped(p, path) == (True, 3)

    def test_through_connecting_point(self, fx):
        g = fx("FIG8")
        p = rooted(g, "b")
        path = Path(g, tuple(g.index(s) for s in "cad"))
        # c ~ a, so the smallest admissible dip index is 0.
        assert verify_single_dipped(p, path) == (True, 0)

    def test_length_zero(self, fx):
        g = fx("FIG8")
        assert verify_single_dipped(rooted(g, "b"), Path(g, (3,))) == (True, 0)

    def test_rejects_non_simple(self, fx):
        g = fx("FIG8")
        with pytest.raises(ValueError, match="simple"):
            verify_single_dipped(rooted(g, "b"), Path(g, (0, 1, 2, 0)))

    def test_detects_peak_and_incomparable_steps(self, fx):
        # No simple path of a real cactus fails; drive the scan with a stub order.
        g = fx("C3")

        class Stub:
            host = is_cactus(g)

            def __init__(self, rels):
                self.rels = rels

            def compare(self, v, w):
                return self.rels[(v, w)]

        path = Path(g, (0, 1, 2))
        peak = Stub({(0, 1): R.LESS, (1, 2): R.GREATER})
        assert verify_single_dipped(peak, path) == (False, None)
        flat = Stub({(0, 1): R.INCOMPARABLE, (1, 2): R.LESS})
        assert verify_single_dipped(flat, path) == (False, None)
        valley = Stub({(0, 1): R.GREATER, (1, 2): R.LESS})
        assert verify_single_dipped(valley, path) == (True, 1)
