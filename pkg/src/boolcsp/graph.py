"""Vertex-colored undirected graphs, 1-dimensional color refinement, and a
complete color-preserving isomorphism solver with a brute-force oracle.

Refinement is always run jointly over a pair when comparing graphs so the
canonical color ids are comparable across both.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS
from .errors import ResourceCapError, StructureError


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: frozenset
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise StructureError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise StructureError("self-loops are not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise StructureError(f"edge {e!r} out of range")
            norm.add((min(u, v), max(u, v)))
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != self.n:
            raise StructureError("colors must be total over the vertices")
        if any(c < 0 for c in colors):
            raise StructureError("colors must be non-negative integers")
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "colors", colors)

    @classmethod
    def build(
        cls, n: int, edges: Iterable[Sequence[int]], colors: Sequence[int] | None = None
    ) -> "ColoredGraph":
        cols = tuple(colors) if colors is not None else tuple(0 for _ in range(n))
        return cls(n, frozenset(tuple(e) for e in edges), cols)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def _joint_refine(
    adjs: Sequence[list[list[int]]], colorings: Sequence[tuple[int, ...]]
) -> list[tuple[int, ...]]:
    """Coarsest stable refinement across all graphs at once, with canonical
    contiguous color ids assigned by sorted signature order."""
    rank = {c: i for i, c in enumerate(sorted(set().union(*map(set, colorings))))}
    colorings = [tuple(rank[c] for c in col) for col in colorings]
    while True:
        sigs = [
            [
                (col[v], tuple(sorted(col[w] for w in adj[v])))
                for v in range(len(adj))
            ]
            for adj, col in zip(adjs, colorings)
        ]
        order = {s: i for i, s in enumerate(sorted(set().union(*map(set, sigs))))}
        refined = [tuple(order[s] for s in graph_sigs) for graph_sigs in sigs]
        if refined == colorings:
            return refined
        colorings = refined


def refine_colors(graph: ColoredGraph) -> tuple[int, ...]:
    """Coarsest stable refinement of the input coloring: two vertices share
    a final color iff they agree on the input color and on the multiset of
    neighbor colors at every round."""
    return _joint_refine([graph.adjacency()], [graph.colors])[0]


def _discrete_mapping(
    c1: tuple[int, ...], c2: tuple[int, ...], adj1, edge_set2
) -> Optional[tuple[int, ...]]:
    where2 = {c: v for v, c in enumerate(c2)}
    mapping = [where2[c] for c in c1]
    for u in range(len(c1)):
        for w in adj1[u]:
            a, b = mapping[u], mapping[w]
            if (min(a, b), max(a, b)) not in edge_set2:
                return None
    return tuple(mapping)


def vcgi(g1: ColoredGraph, g2: ColoredGraph) -> Optional[tuple[int, ...]]:
    """Color- and adjacency-preserving bijection, or None.

    Joint color refinement plus individualization backtracking on the
    smallest non-singleton class.  Any bijection found is independently
    verified before it is returned.
    """
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    if sorted(g1.colors) != sorted(g2.colors):
        return None
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    edge_set2 = g2.edges

    def search(c1: tuple[int, ...], c2: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if Counter(c1) != Counter(c2):
            return None
        class_sizes = Counter(c1)
        target = min(
            ((size, color) for color, size in class_sizes.items() if size > 1),
            default=None,
        )
        if target is None:
            return _discrete_mapping(c1, c2, adj1, edge_set2)
        _, color = target
        v = min(u for u in range(g1.n) if c1[u] == color)
        fresh = max(max(c1), max(c2)) + 1
        for u in sorted(w for w in range(g2.n) if c2[w] == color):
            i1 = list(c1)
            i2 = list(c2)
            i1[v] = fresh
            i2[u] = fresh
            r1, r2 = _joint_refine([adj1, adj2], [tuple(i1), tuple(i2)])
            found = search(r1, r2)
            if found is not None:
                return found
        return None

    if g1.n == 0:
        return ()
    c1, c2 = _joint_refine([adj1, adj2], [g1.colors, g2.colors])
    mapping = search(c1, c2)
    if mapping is None:
        return None
    if not verify_bijection(g1, g2, mapping):
        raise RuntimeError("internal error: solver produced an invalid bijection")
    return mapping


def verify_bijection(
    g1: ColoredGraph, g2: ColoredGraph, mapping: Sequence[int]
) -> bool:
    """Independent check: bijective, color-preserving, edge-preserving."""
    if g1.n != g2.n or len(mapping) != g1.n:
        return False
    if sorted(mapping) != list(range(g1.n)):
        return False
    if any(g1.colors[v] != g2.colors[mapping[v]] for v in range(g1.n)):
        return False
    if len(g1.edges) != len(g2.edges):
        return False
    mapped = {
        (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
        for u, v in g1.edges
    }
    return mapped == g2.edges


def vcgi_bruteforce(
    g1: ColoredGraph, g2: ColoredGraph, *, cap: int | None = None
) -> bool:
    """Oracle: try every color-class-respecting bijection."""
    cap = DEFAULT_LIMITS.vcgi_bruteforce_cap if cap is None else cap
    if max(g1.n, g2.n) > cap:
        raise ResourceCapError(f"brute force beyond {cap} vertices")
    if g1.n != g2.n:
        return False
    by_color1: dict[int, list[int]] = {}
    by_color2: dict[int, list[int]] = {}
    for v in range(g1.n):
        by_color1.setdefault(g1.colors[v], []).append(v)
    for v in range(g2.n):
        by_color2.setdefault(g2.colors[v], []).append(v)
    if {c: len(vs) for c, vs in by_color1.items()} != {
        c: len(vs) for c, vs in by_color2.items()
    }:
        return False
    colors = sorted(by_color1)
    groups1 = [by_color1[c] for c in colors]
    for images in itertools.product(
        *(itertools.permutations(by_color2[c]) for c in colors)
    ):
        mapping = [0] * g1.n
        for group, image in zip(groups1, images):
            for v, u in zip(group, image):
                mapping[v] = u
        if verify_bijection(g1, g2, mapping):
            return True
    return False
