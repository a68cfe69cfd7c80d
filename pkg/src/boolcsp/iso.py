"""The isomorphism decision pipeline.

Two instances over the same universe are isomorphic when some permutation
of the variables makes them equivalent.  For Schaefer constraint sets this
is decided in two phases: close both instances under implication over all
argument tuples (the normal form; equivalent instances have identical
closures), encode each closure as a vertex-colored graph, and ask the
colored-graph isomorphism solver.  A model-count filter runs first, and
every yes-answer is re-verified by an equivalence check.  Non-Schaefer
sets fall back to brute-force permutation search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_LIMITS
from .core import (
    Const,
    ConstraintApplication,
    Instance,
    Var,
    application_bitmap,
    classify_set,
    satisfying_bitmap,
    variable_masks,
)
from .equiv import ImplicationTester, equivalent
from .errors import ResourceCapError, StructureError
from .graph import ColoredGraph, vcgi
from .sat import count_models


@dataclass(frozen=True)
class Permutation:
    """Bijection on variable positions; images[i] is where position i goes."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise StructureError("not a bijection on 0..n-1")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self, names: tuple[str, ...]) -> tuple[tuple[str, ...], ...]:
        """Nontrivial cycles, each starting at its smallest element."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(names[i] for i in cycle))
        return tuple(out)


def apply_permutation(instance: Instance, perm: Permutation) -> Instance:
    """Rename every variable argument through the permutation; constants are
    untouched; the application list is re-canonicalized."""
    if len(perm.images) != len(instance.variables):
        raise StructureError("permutation size does not match the universe")
    apps = tuple(
        ConstraintApplication(
            app.constraint,
            tuple(
                Var(perm.images[a.index]) if isinstance(a, Var) else a
                for a in app.args
            ),
        )
        for app in instance.applications
    )
    renamed = Instance(
        instance.constraint_set, instance.variables, apps, instance.constants_allowed
    )
    return renamed.canonicalized()


@dataclass(frozen=True)
class NormalForm:
    """Closure of an instance: every application over the universe (and
    constants, when allowed) that the instance implies, in canonical order
    (constraint index, then argument tuple)."""

    source: Instance
    closure: tuple[ConstraintApplication, ...]

    def as_instance(self) -> Instance:
        return Instance(
            self.source.constraint_set,
            self.source.variables,
            self.closure,
            self.source.constants_allowed,
        )


def normal_form(instance: Instance, *, candidate_cap: int | None = None) -> NormalForm:
    """Enumerate all candidate applications in canonical order and keep the
    implied ones.  Repeated-variable and permuted-argument tuples are all
    considered; closure entries are syntactic argument tuples, so symmetric
    constraints contribute symmetric tuple sets."""
    cap = (
        DEFAULT_LIMITS.normal_form_candidate_cap
        if candidate_cap is None
        else candidate_cap
    )
    domain: list = [Var(i) for i in range(len(instance.variables))]
    if instance.constants_allowed:
        domain += [Const(0), Const(1)]
    total = sum(len(domain) ** c.arity for c in instance.constraint_set)
    if total > cap:
        raise ResourceCapError(
            f"normal form would enumerate {total} candidate applications"
            f" (cap {cap})"
        )
    tester = ImplicationTester(instance)
    closure = []
    for constraint in instance.constraint_set:
        for args in itertools.product(domain, repeat=constraint.arity):
            app = ConstraintApplication(constraint, args)
            if tester.implies(app):
                closure.append(app)
    return NormalForm(source=instance, closure=tuple(closure))


def encode_graph(form: NormalForm) -> ColoredGraph:
    """Vertex-colored graph of a closure.

    Vertices: the two constants, one per variable, one per argument slot of
    each application, one per application.  An argument vertex is joined to
    the variable (or constant vertex) it names and to its application
    vertex.  Colors separate the categories; application vertices are
    colored by their constraint's index and argument vertices by their
    position, so a graph bijection can permute applications of the same
    constraint but never reorder arguments.
    """
    source = form.source
    m = len(source.constraint_set)
    n = len(source.variables)
    indices = [source.constraint_index(app.constraint) for app in form.closure]
    if any(indices[i] > indices[i + 1] for i in range(len(indices) - 1)):
        raise StructureError("closure applications must be sorted by constraint")
    colors: list[int] = [0, 1] + [2] * n
    edges: set[tuple[int, int]] = set()
    next_vertex = 2 + n
    for app, cindex in zip(form.closure, indices):
        arg_vertices = []
        for j, arg in enumerate(app.args):
            av = next_vertex
            next_vertex += 1
            arg_vertices.append(av)
            colors.append(2 + m + (j + 1))
            target = 2 + arg.index if isinstance(arg, Var) else arg.bit
            edges.add((min(av, target), max(av, target)))
        appv = next_vertex
        next_vertex += 1
        colors.append(2 + (cindex + 1))
        for av in arg_vertices:
            edges.add((min(av, appv), max(av, appv)))
    return ColoredGraph(next_vertex, frozenset(edges), tuple(colors))


@dataclass(frozen=True)
class IsoResult:
    permutation: Optional[Permutation]
    reason: str          # "vcgi" | "search" | "count-filter" | "search-exhausted"

    @property
    def isomorphic(self) -> bool:
        return self.permutation is not None


def _check_compatible(left: Instance, right: Instance) -> None:
    if left.variables != right.variables:
        raise StructureError("instances are over different variable universes")
    if left.constraint_set != right.constraint_set:
        raise StructureError("instances are over different constraint sets")
    if left.constants_allowed != right.constants_allowed:
        raise StructureError("instances disagree on whether constants are allowed")


def isomorphic(
    left: Instance,
    right: Instance,
    *,
    counting_cap: int | None = None,
) -> IsoResult:
    """Decide isomorphism.

    The model-count filter rejects first when counting is feasible (counts
    are a permutation invariant); it is skipped, never failed, above the
    counting cap.  Schaefer sets then go through the normal-form and
    colored-graph pipeline; other sets through permutation search.
    """
    _check_compatible(left, right)
    n = len(left.variables)
    counting_cap = (
        DEFAULT_LIMITS.counting_cap if counting_cap is None else counting_cap
    )
    if n <= counting_cap:
        if count_models(left, cap=counting_cap) != count_models(right, cap=counting_cap):
            return IsoResult(None, "count-filter")
    if not left.constraint_set:
        # no constraints means no applications on either side
        return IsoResult(Permutation.identity(n), "search")
    if classify_set(left.constraint_set).schaefer:
        closure_left = normal_form(left)
        closure_right = normal_form(right)
        bijection = vcgi(encode_graph(closure_left), encode_graph(closure_right))
        if bijection is None:
            return IsoResult(None, "vcgi")
        perm = Permutation(tuple(bijection[2 + i] - 2 for i in range(n)))
        if not equivalent(apply_permutation(left, perm), right):
            raise RuntimeError(
                "internal error: graph bijection did not induce an equivalence"
            )
        return IsoResult(perm, "vcgi")
    found = isomorphic_bruteforce(left, right)
    if found is None:
        return IsoResult(None, "search-exhausted")
    return IsoResult(found, "search")


def isomorphic_bruteforce(
    left: Instance, right: Instance, *, cap: int | None = None
) -> Optional[Permutation]:
    """Oracle: try all permutations in lexicographic order and return the
    first whose application makes the instances agree on every assignment."""
    _check_compatible(left, right)
    cap = DEFAULT_LIMITS.permutation_search_cap if cap is None else cap
    n = len(left.variables)
    if n > cap:
        raise ResourceCapError(f"permutation search beyond {cap} variables")
    full = (1 << (1 << n)) - 1
    masks = variable_masks(n)
    target = satisfying_bitmap(right)
    cache: dict[tuple, int] = {}
    for images in itertools.permutations(range(n)):
        acc = full
        for app in left.applications:
            key = (
                app.constraint.name,
                tuple(
                    ("v", images[a.index]) if isinstance(a, Var) else ("c", a.bit)
                    for a in app.args
                ),
            )
            bm = cache.get(key)
            if bm is None:
                mapped = ConstraintApplication(
                    app.constraint,
                    tuple(
                        Var(images[a.index]) if isinstance(a, Var) else a
                        for a in app.args
                    ),
                )
                bm = application_bitmap(mapped, masks, full)
                cache[key] = bm
            acc &= bm
            if target & (full ^ acc):
                break
        else:
            if acc == target:
                return Permutation(images)
    return None
