"""Named fixtures and seeded random instances."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product

from .digraph import Digraph, is_strongly_connected

log = logging.getLogger(__name__)

_FIXTURE_ARCS: dict[str, tuple[tuple[str, ...], list[tuple[str, str]]]] = {
    "C2": (("p", "q"), [("p", "q"), ("q", "p")]),
    "C3": (("a", "b", "c"), [("a", "b"), ("b", "c"), ("c", "a")]),
    "FIG8": (
        ("a", "b", "c", "d", "e"),
        [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("d", "e"), ("e", "a")],
    ),
    "THETA": (
        ("a", "x", "b", "y"),
        [("a", "x"), ("x", "b"), ("a", "y"), ("y", "b"), ("b", "a")],
    ),
    "K3S": (
        ("p", "q", "r"),
        [("p", "q"), ("p", "r"), ("q", "p"), ("q", "r"), ("r", "p"), ("r", "q")],
    ),
    "E5": (
        ("b", "a1", "x", "a2", "y"),
        [("b", "a1"), ("a1", "x"), ("x", "b"), ("b", "a2"), ("a2", "y"), ("y", "b")],
    ),
    "SHARE2": (("a", "b", "c"), [("a", "b"), ("b", "a"), ("b", "c"), ("c", "a")]),
}

_EXPECTED = {
    "C2": dict(strongly_connected=True, is_cactus=True, has_dbcp=False),
    "C3": dict(strongly_connected=True, is_cactus=True, has_dbcp=False),
    "FIG8": dict(strongly_connected=True, is_cactus=True, has_dbcp=False),
    "THETA": dict(strongly_connected=True, is_cactus=False, has_dbcp=False),
    "K3S": dict(strongly_connected=True, is_cactus=False, has_dbcp=True),
    "E5": dict(strongly_connected=True, is_cactus=True, has_dbcp=False),
    "SHARE2": dict(strongly_connected=True, is_cactus=False, has_dbcp=False),
}

FIXTURE_NAMES = tuple(_FIXTURE_ARCS)


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Digraph
    expected: dict[str, bool]


def fixture(name: str) -> Fixture:
    try:
        vertices, arcs = _FIXTURE_ARCS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
    return Fixture(name, Digraph.from_labeled_arcs(arcs, vertices), dict(_EXPECTED[name]))


def random_digraph(n: int, arc_probability: float, seed: int) -> Digraph:
    """Each ordered non-loop pair kept independently with ``arc_probability``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    arcs = [
        (x, y) for x in range(n) for y in range(n) if x != y and rng.random() < arc_probability
    ]
    return Digraph(n, frozenset(arcs))


def random_strongly_connected(n: int, arc_probability: float, seed: int) -> Digraph:
    """Rejection-sample :func:`random_digraph` until strongly connected."""
    rng = random.Random(seed)
    while True:
        g = random_digraph(n, arc_probability, rng.getrandbits(64))
        if is_strongly_connected(g):
            return g


def random_cactus(num_cycles: int, max_cycle_len: int, seed: int) -> Digraph:
    """Glue directed cycles one at a time onto uniformly chosen existing vertices."""
    if num_cycles < 1 or max_cycle_len < 2:
        raise ValueError("need num_cycles >= 1 and max_cycle_len >= 2")
    rng = random.Random(seed)
    length = rng.randint(2, max_cycle_len)
    arcs = [(i, (i + 1) % length) for i in range(length)]
    n = length
    for _ in range(num_cycles - 1):
        at = rng.randrange(n)
        length = rng.randint(2, max_cycle_len)
        ring = [at, *range(n, n + length - 1)]
        n += length - 1
        arcs.extend(zip(ring, ring[1:] + ring[:1]))
    g = Digraph(n, frozenset(arcs))
    if log.isEnabledFor(logging.DEBUG):
        indeg = Counter(y for _, y in arcs)
        log.debug(
            "random_cactus seed=%s: %d vertices, connecting-point degrees %s",
            seed, n, sorted(d for d in indeg.values() if d >= 2),
        )
    return g


def _canonical_arcs(n: int, arcs: frozenset[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    return min(
        tuple(sorted((perm[x], perm[y]) for x, y in arcs)) for perm in permutations(range(n))
    )


def nonisomorphic_digraphs(n: int) -> list[Digraph]:
    """One representative per isomorphism class of loop-free digraphs on ``n`` vertices."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    seen: set[tuple[tuple[int, int], ...]] = set()
    out = []
    for mask in product((False, True), repeat=len(pairs)):
        arcs = frozenset(a for a, keep in zip(pairs, mask) if keep)
        key = _canonical_arcs(n, arcs)
        if key not in seen:
            seen.add(key)
            out.append(Digraph(n, frozenset(key)))
    return out
