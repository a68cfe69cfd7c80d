"""Executable instance transformers.

Each generator materializes one reduction as a pair (or single) of
instances whose equivalence / isomorphism status encodes the answer to a
satisfiability-style question about the input: unsatisfiability, absence
of a satisfying assignment other than all-ones / all-zeros / both, or
graph isomorphism (via positive 2-clauses or via ternary XOR constraints).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .config import DEFAULT_LIMITS
from .core import (
    Const,
    Constraint,
    ConstraintApplication,
    Instance,
    Var,
    application_table,
    classify_set,
    constraint_flags,
    decode_index,
)
from .equiv import ImplicationTester
from .errors import (
    ConstructionUnavailableError,
    PreconditionError,
    ResourceCapError,
    StructureError,
)

OR2 = Constraint("OR2", 2, (0, 1, 1, 1))
XOR3 = Constraint("XOR3", 3, (0, 1, 1, 0, 1, 0, 0, 1))

_IMPLICATION_TABLE = (1, 1, 0, 1)
# rows 000,101,011 true: the three-variable alternative target
_TERNARY_TARGET_TABLE = (1, 0, 0, 1, 0, 1, 0, 0)


@dataclass(frozen=True)
class GraphInput:
    """Plain simple graph; vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise StructureError("vertex count must be non-negative")
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise StructureError("self-loops are not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise StructureError(f"edge {e!r} out of range")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise StructureError(f"duplicate edge {e!r}")
            seen.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _fresh_name(taken: Sequence[str], base: str) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def unsat_to_equiv(
    instance: Instance, c_not_zero_valid: Constraint, c_not_one_valid: Constraint
) -> tuple[Instance, Instance]:
    """Pair that is equivalent iff the input is unsatisfiable.

    The right instance applies a non-0-valid and a non-1-valid constraint
    to a single fresh variable, which is contradictory; both instances are
    re-declared over the universe extended by that variable.
    """
    for c in (c_not_zero_valid, c_not_one_valid):
        if c not in instance.constraint_set:
            raise PreconditionError(f"{c.name} is not in the instance's set")
    if constraint_flags(c_not_zero_valid).zero_valid:
        raise PreconditionError(f"{c_not_zero_valid.name} is 0-valid")
    if constraint_flags(c_not_one_valid).one_valid:
        raise PreconditionError(f"{c_not_one_valid.name} is 1-valid")
    y = _fresh_name(instance.variables, "y")
    variables = instance.variables + (y,)
    yi = len(variables) - 1
    left = Instance(
        instance.constraint_set, variables, instance.applications,
        instance.constants_allowed,
    )
    apps = []
    for c in (c_not_zero_valid, c_not_one_valid):
        app = ConstraintApplication(c, tuple(Var(yi) for _ in range(c.arity)))
        if app not in apps:
            apps.append(app)
    right = Instance(
        instance.constraint_set, variables, tuple(apps), instance.constants_allowed
    )
    return left, right


def satne1_to_equiv(
    instance: Instance, witness_constraint: Constraint
) -> tuple[Instance, Instance]:
    """Pair that is equivalent iff the input (over a 1-valid set) has no
    satisfying assignment other than all-ones.  The right instance forces
    every variable through a non-0-valid constraint on repeated arguments.
    """
    if not classify_set(instance.constraint_set).one_valid:
        raise PreconditionError("constraint set must be 1-valid")
    if witness_constraint not in instance.constraint_set:
        raise PreconditionError("witness constraint not in the instance's set")
    if constraint_flags(witness_constraint).zero_valid:
        raise PreconditionError("witness constraint must not be 0-valid")
    n = len(instance.variables)
    if n < 1:
        raise PreconditionError("requires at least one variable")
    k = witness_constraint.arity
    apps = tuple(
        ConstraintApplication(witness_constraint, tuple(Var(i) for _ in range(k)))
        for i in range(n)
    )
    right = Instance(
        instance.constraint_set, instance.variables, apps, instance.constants_allowed
    )
    return instance, right


def satne0_to_equiv(
    instance: Instance, witness_constraint: Constraint
) -> tuple[Instance, Instance]:
    """Mirror of :func:`satne1_to_equiv` for 0-valid sets and all-zeros."""
    if not classify_set(instance.constraint_set).zero_valid:
        raise PreconditionError("constraint set must be 0-valid")
    if witness_constraint not in instance.constraint_set:
        raise PreconditionError("witness constraint not in the instance's set")
    if constraint_flags(witness_constraint).one_valid:
        raise PreconditionError("witness constraint must not be 1-valid")
    n = len(instance.variables)
    if n < 1:
        raise PreconditionError("requires at least one variable")
    k = witness_constraint.arity
    apps = tuple(
        ConstraintApplication(witness_constraint, tuple(Var(i) for _ in range(k)))
        for i in range(n)
    )
    right = Instance(
        instance.constraint_set, instance.variables, apps, instance.constants_allowed
    )
    return instance, right


def express(
    target: Constraint,
    constraints: Sequence[Constraint],
    variables: Sequence[str],
    allow_zero: bool,
) -> Optional[Instance]:
    """Strongest-consequence search for conjunctive expressibility.

    Collect every application over the given variables (plus the constant 0
    when allowed) that the target implies; the target is expressible iff the
    conjunction of that collection reproduces the target's truth table, in
    which case the collection itself is returned as an instance.
    """
    variables = tuple(variables)
    if target.arity != len(variables):
        raise PreconditionError("target arity must match the variable list")
    if len(variables) > 3:
        raise PreconditionError("expressibility search supports at most 3 variables")
    domain: list = [Var(i) for i in range(len(variables))]
    if allow_zero:
        domain.append(Const(0))
    order = tuple(range(len(variables)))
    size = 1 << len(variables)
    sat = [i for i in range(size) if target.table[i]]
    implied: list[ConstraintApplication] = []
    conjunction = [1] * size
    for constraint in constraints:
        for args in itertools.product(domain, repeat=constraint.arity):
            app = ConstraintApplication(constraint, args)
            table = application_table(app, order)
            if all(table[i] for i in sat):
                implied.append(app)
                for i in range(size):
                    if not table[i]:
                        conjunction[i] = 0
    if tuple(conjunction) != target.table:
        return None
    return Instance(tuple(constraints), variables, tuple(implied), allow_zero)


def noncomplementive_witness(constraint: Constraint) -> tuple[int, ...]:
    """First tuple s in table-index order with C(s)=1 and C(complement)=0."""
    full = (1 << constraint.arity) - 1
    for i, bit in enumerate(constraint.table):
        if bit == 1 and constraint.table[full ^ i] == 0:
            return decode_index(i, constraint.arity)
    raise PreconditionError(f"{constraint.name} is complementive")


def implication_application(
    constraint: Constraint, x_index: int, y_index: int
) -> ConstraintApplication:
    """Two-variable application behaving as x -> y, built from a 0- and
    1-valid non-complementive constraint: argument i is y where the
    distinguishing tuple has a 1, x where it has a 0."""
    s = noncomplementive_witness(constraint)
    args = tuple(Var(y_index) if bit else Var(x_index) for bit in s)
    return ConstraintApplication(constraint, args)


def satne01_to_equiv(instance: Instance) -> tuple[Instance, Instance]:
    """Pair that is equivalent iff the input (over a 0- and 1-valid set) has
    no satisfying assignment besides all-zeros and all-ones.

    With a non-complementive constraint available, the right instance is
    the implication application over all ordered variable pairs.  When
    every constraint is complementive, an expressible implication (or the
    three-variable alternative) with constant 0 is searched for, the
    constant is replaced by a fresh variable, and the result is instantiated
    over all ordered pairs; both instances then live over the universe
    extended by that variable.
    """
    report = classify_set(instance.constraint_set)
    if not (report.zero_valid and report.one_valid):
        raise PreconditionError("constraint set must be 0-valid and 1-valid")
    n = len(instance.variables)
    if n < 1:
        raise PreconditionError("requires at least one variable")
    non_comp = next(
        (
            c
            for c in instance.constraint_set
            if not constraint_flags(c).complementive
        ),
        None,
    )
    if non_comp is not None:
        apps: list[ConstraintApplication] = []
        for i in range(n):
            for j in range(n):
                app = implication_application(non_comp, i, j)
                if app not in apps:
                    apps.append(app)
        right = Instance(
            instance.constraint_set,
            instance.variables,
            tuple(apps),
            instance.constants_allowed,
        )
        return instance, right

    # complementive case: find an expressible implication with constant 0,
    # or the three-variable alternative, then swap the constant for f
    f = _fresh_name(instance.variables, "f")
    variables = instance.variables + (f,)
    fi = len(variables) - 1
    left = Instance(
        instance.constraint_set, variables, instance.applications,
        instance.constants_allowed,
    )

    def instantiate_pairs(template: Instance, var_targets) -> Instance:
        # var_targets(i, j) maps template variable index -> extended index;
        # the constant 0 always becomes the fresh variable f
        apps: list[ConstraintApplication] = []
        for i in range(n):
            for j in range(n):
                targets = var_targets(i, j)
                for app in template.applications:
                    args = tuple(
                        Var(targets[a.index]) if isinstance(a, Var) else Var(fi)
                        for a in app.args
                    )
                    new = ConstraintApplication(app.constraint, args)
                    if new not in apps:
                        apps.append(new)
        return Instance(
            instance.constraint_set, variables, tuple(apps),
            instance.constants_allowed,
        )

    target1 = Constraint("_implication", 2, _IMPLICATION_TABLE)
    found = express(target1, instance.constraint_set, ("x", "y"), allow_zero=True)
    if found is not None:
        return left, instantiate_pairs(found, lambda i, j: {0: i, 1: j})

    target2 = Constraint("_ternary", 3, _TERNARY_TARGET_TABLE)
    found = express(target2, instance.constraint_set, ("x", "y", "z"), allow_zero=True)
    if found is not None:
        # the template's first variable is also replaced by f
        return left, instantiate_pairs(found, lambda i, j: {0: fi, 1: i, 2: j})

    raise ConstructionUnavailableError(
        "neither the implication nor the ternary alternative is expressible"
        " with constant 0 over this constraint set"
    )


# -- graph isomorphism encodings ------------------------------------------


def gi_to_or2(graph: GraphInput) -> Instance:
    """Positive-2-clause encoding: one OR application per edge."""
    variables = tuple(f"x{i + 1}" for i in range(graph.n))
    apps = tuple(
        ConstraintApplication(OR2, (Var(u), Var(v))) for u, v in graph.edges
    )
    return Instance((OR2,), variables, apps, False)


def _drop_isolated(graph: GraphInput) -> GraphInput:
    deg = graph.degrees()
    keep = [v for v in range(graph.n) if deg[v] > 0]
    relabel = {v: i for i, v in enumerate(keep)}
    edges = tuple(
        (relabel[u], relabel[v]) for u, v in graph.edges
    )
    return GraphInput(len(keep), edges)


def _triangles(edges: Sequence[tuple[int, int]]) -> list[tuple[int, int, int]]:
    out = []
    for (a, e1), (b, e2), (c, e3) in itertools.combinations(enumerate(edges), 3):
        if len({*e1, *e2, *e3}) == 3:
            out.append((a, b, c))
    return out


def gi_to_xor3(
    left: GraphInput, right: GraphInput
) -> Optional[tuple[Instance, Instance]]:
    """Ternary-XOR encoding of a graph pair over a shared universe.

    Isolated vertices are removed first; if the vertex or edge counts then
    differ the graphs cannot be isomorphic and no encoding is produced.
    Each edge contributes an XOR over its endpoints and its edge variable;
    each vertex an XOR with two private tail variables (separating vertex
    from edge variables); each triangle of edges an implied XOR over the
    three edge variables, which keeps the instance closed under implication
    among distinct-variable triples.
    """
    g = _drop_isolated(left)
    h = _drop_isolated(right)
    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    n, m = g.n, len(g.edges)
    variables = (
        tuple(f"x{i + 1}" for i in range(n))
        + tuple(f"y{k + 1}" for k in range(m))
        + tuple(f"z{i + 1}" for i in range(n))
        + tuple(f"zp{i + 1}" for i in range(n))
    )

    def build(graph: GraphInput) -> Instance:
        x = lambda i: Var(i)
        y = lambda k: Var(n + k)
        z = lambda i: Var(n + m + i)
        zp = lambda i: Var(n + m + n + i)
        apps = [
            ConstraintApplication(XOR3, (x(u), x(v), y(k)))
            for k, (u, v) in enumerate(graph.edges)
        ]
        apps += [
            ConstraintApplication(XOR3, (x(i), z(i), zp(i))) for i in range(n)
        ]
        apps += [
            ConstraintApplication(XOR3, (y(a), y(b), y(c)))
            for a, b, c in _triangles(graph.edges)
        ]
        return Instance((XOR3,), variables, tuple(apps), False)

    return build(g), build(h)


def xor3_maximality_check(instance: Instance, *, cap: int | None = None) -> bool:
    """Is the instance maximal among ternary XOR applications?  True iff
    every implied XOR over three distinct variables already occurs in the
    instance up to argument order."""
    cap = DEFAULT_LIMITS.counting_cap if cap is None else cap
    if len(instance.constraint_set) != 1 or instance.constraint_set[0].table != XOR3.table:
        raise PreconditionError("instance must be over the ternary XOR constraint")
    n = len(instance.variables)
    if n > cap:
        raise ResourceCapError(f"maximality check beyond {cap} variables")
    xor = instance.constraint_set[0]
    present = {
        frozenset(app.var_indices())
        for app in instance.applications
        if len(app.var_indices()) == 3
    }
    tester = ImplicationTester(instance)
    for triple in itertools.combinations(range(n), 3):
        app = ConstraintApplication(xor, tuple(Var(i) for i in triple))
        if tester.implies(app) and frozenset(triple) not in present:
            return False
    return True
