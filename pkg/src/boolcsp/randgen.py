"""Seeded random constraints, instances, and graphs for the agreement suites.

Class-specific constraints are produced by closing a random satisfying set
under the class's coordinatewise operation, which lands exactly in the
corresponding property.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .core import Const, Constraint, ConstraintApplication, Instance, Var, constraint_flags
from .graph import ColoredGraph
from .iso import Permutation
from .reductions import OR2, XOR3, GraphInput

AND2 = Constraint("AND2", 2, (0, 0, 0, 1))
IMPL = Constraint("IMPL", 2, (1, 1, 0, 1))
NOR2 = Constraint("NOR2", 2, (1, 0, 0, 0))
EQ2 = Constraint("EQ2", 2, (1, 0, 0, 1))
XOR2 = Constraint("XOR2", 2, (0, 1, 1, 0))
ONE_IN_THREE = Constraint("1IN3", 3, (0, 1, 1, 0, 1, 0, 0, 0))
NAE3 = Constraint("NAE3", 3, (0, 1, 1, 1, 1, 1, 1, 0))

# complementive, 0- and 1-valid, non-Schaefer; rows 000,010,110 plus their
# complements are satisfying, so the 0-slice of the last argument is x -> y
CIMPL3 = Constraint("CIMPL3", 3, (1, 1, 1, 0, 0, 1, 1, 1))


def _close_sat_set(sat: set[int], arity: int, kind: str) -> set[int]:
    ops = {
        "horn": lambda a, b, c: a & b,
        "anti_horn": lambda a, b, c: a | b,
        "bijunctive": lambda a, b, c: (a & b) | (a & c) | (b & c),
        "affine": lambda a, b, c: a ^ b ^ c,
    }
    op = ops[kind]
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.product(tuple(sat), repeat=3):
            v = op(a, b, c)
            if v not in sat:
                sat.add(v)
                changed = True
    return sat


def random_constraint(
    rng: random.Random,
    arity: int,
    kind: str | None = None,
    name: str | None = None,
    density: float = 0.5,
) -> Constraint:
    """Random constraint; when ``kind`` is one of the four syntactic classes
    the satisfying set is closed under the class operation."""
    size = 1 << arity
    while True:
        sat = {i for i in range(size) if rng.random() < density}
        if kind is not None:
            sat = _close_sat_set(sat, arity, kind)
        if sat and len(sat) < size:
            break
    table = tuple(1 if i in sat else 0 for i in range(size))
    return Constraint(name or f"R{rng.randrange(10**6)}", arity, table)


def random_schaefer_set(
    rng: random.Random, kind: str, count: int = 1, max_arity: int = 3
) -> tuple[Constraint, ...]:
    return tuple(
        random_constraint(rng, rng.randint(1, max_arity), kind, name=f"C{i}")
        for i in range(count)
    )


def random_non_schaefer_set(rng: random.Random) -> tuple[Constraint, ...]:
    """A constraint set failing all four set-level Schaefer properties."""
    choices = [
        (ONE_IN_THREE,),
        (NAE3,),
        (ONE_IN_THREE, OR2),
        (NAE3, EQ2),
    ]
    pick = rng.randrange(len(choices) + 1)
    if pick < len(choices):
        return choices[pick]
    while True:
        c = random_constraint(rng, 3, None, name="C0")
        f = constraint_flags(c)
        if not (f.horn or f.anti_horn or f.bijunctive or f.affine):
            return (c,)


def random_instance(
    rng: random.Random,
    constraints: Sequence[Constraint],
    n_vars: int,
    n_apps: int,
    constants_allowed: bool = False,
    const_prob: float = 0.15,
) -> Instance:
    variables = tuple(f"v{i}" for i in range(n_vars))
    apps: list[ConstraintApplication] = []
    attempts = 0
    while len(apps) < n_apps and attempts < 50 * (n_apps + 1):
        attempts += 1
        c = rng.choice(list(constraints))
        args = tuple(
            Const(rng.randint(0, 1))
            if constants_allowed and rng.random() < const_prob
            else Var(rng.randrange(n_vars))
            for _ in range(c.arity)
        )
        app = ConstraintApplication(c, args)
        if app not in apps:
            apps.append(app)
    return Instance(tuple(constraints), variables, tuple(apps), constants_allowed)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> GraphInput:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return GraphInput(n, tuple(edges))


def random_graph_no_isolated(rng: random.Random, n: int, p: float = 0.5) -> GraphInput:
    """Random graph where every vertex has degree >= 1 (requires n >= 2)."""
    while True:
        g = random_graph(rng, n, p)
        deg = g.degrees()
        if all(d > 0 for d in deg):
            return g
        # attach each isolated vertex to a random other vertex
        edges = set(g.edges)
        for v in range(n):
            if deg[v] == 0:
                w = rng.choice([u for u in range(n) if u != v])
                edges.add((min(v, w), max(v, w)))
        g = GraphInput(n, tuple(sorted(edges)))
        if all(d > 0 for d in g.degrees()):
            return g


def relabel_graph(graph: GraphInput, images: Sequence[int]) -> GraphInput:
    edges = tuple(
        (min(images[u], images[v]), max(images[u], images[v]))
        for u, v in graph.edges
    )
    return GraphInput(graph.n, edges)


def random_colored_graph(
    rng: random.Random, n: int, p: float = 0.5, n_colors: int = 3
) -> ColoredGraph:
    edges = frozenset(
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    )
    colors = tuple(rng.randrange(n_colors) for _ in range(n))
    return ColoredGraph(n, edges, colors)


def relabel_colored_graph(
    graph: ColoredGraph, images: Sequence[int]
) -> ColoredGraph:
    edges = frozenset(
        (min(images[u], images[v]), max(images[u], images[v]))
        for u, v in graph.edges
    )
    colors = [0] * graph.n
    for v in range(graph.n):
        colors[images[v]] = graph.colors[v]
    return ColoredGraph(graph.n, edges, tuple(colors))
