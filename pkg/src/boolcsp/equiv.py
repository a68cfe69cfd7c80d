"""Equivalence and implication deciders.

``implies`` substitutes, for every assignment to the target application's
variables that falsifies it, the corresponding constants into the source
instance and asks the solver; the implication holds iff every such
substitution is unsatisfiable.  That makes at most 2^k solver queries for
an arity-k target.  ``equivalent`` runs the mutual-implication loop over
both application lists.
"""

from __future__ import annotations

from typing import Optional

from .config import DEFAULT_LIMITS
from .core import (
    ConstraintApplication,
    Instance,
    application_table,
    decode_index,
    encode_tuple,
    eval_instance,
    satisfying_bitmap,
    substitute,
)
from .errors import ResourceCapError, StructureError
from .sat import solve

_POOL_CAP = 64


class ImplicationTester:
    """Implication queries against one fixed base instance.

    Results of pinned solver calls are memoized by pin pattern, and
    satisfying assignments harvested from SAT answers form a pool of
    cheap counterexamples checked before any solver call.  Both caches
    are sound: the pool holds only verified models of the base instance.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self._pinned_sat: dict[frozenset, bool] = {}
        self._pool: list[tuple[int, ...]] = []

    def _harvest(self, witness: dict, pins: dict[int, int]) -> None:
        if len(self._pool) >= _POOL_CAP:
            return
        variables = self.instance.variables
        bits = [witness[v] for v in variables]
        for i, b in pins.items():
            bits[i] = b
        model = dict(zip(variables, bits))
        if not eval_instance(self.instance, model):
            raise RuntimeError("internal error: harvested model does not satisfy")
        self._pool.append(tuple(bits))

    def implies(self, app: ConstraintApplication) -> bool:
        """Does the base instance imply this application?"""
        vs = app.var_indices()
        if any(v >= len(self.instance.variables) for v in vs):
            raise StructureError("application variables outside the universe")
        table = application_table(app, vs)
        width = len(vs)
        for model in self._pool:
            if table[encode_tuple([model[v] for v in vs])] == 0:
                return False
        for idx, value in enumerate(table):
            if value:
                continue
            pins = dict(zip(vs, decode_index(idx, width)))
            key = frozenset(pins.items())
            sat = self._pinned_sat.get(key)
            if sat is None:
                result = solve(substitute(self.instance, pins))
                sat = result.status == "SAT"
                self._pinned_sat[key] = sat
                if sat:
                    self._harvest(result.witness, pins)
            if sat:
                return False
        return True


def implies(instance: Instance, app: ConstraintApplication) -> bool:
    """True iff every model of the instance satisfies the application."""
    if app.constraint not in instance.constraint_set:
        raise StructureError("application constraint not in the instance's set")
    return ImplicationTester(instance).implies(app)


def _check_aligned(left: Instance, right: Instance) -> None:
    if left.variables != right.variables:
        raise StructureError("instances are over different variable universes")
    if left.constraint_set != right.constraint_set:
        raise StructureError("instances are over different constraint sets")


def equivalent(left: Instance, right: Instance) -> bool:
    """True iff the two instances agree on every assignment, decided by
    mutual implication of every application."""
    _check_aligned(left, right)
    from_right = ImplicationTester(right)
    if not all(from_right.implies(app) for app in left.applications):
        return False
    from_left = ImplicationTester(left)
    return all(from_left.implies(app) for app in right.applications)


def equivalent_bruteforce(
    left: Instance, right: Instance, *, cap: int | None = None
) -> bool:
    """Oracle: compare satisfying sets by full enumeration."""
    _check_aligned(left, right)
    cap = DEFAULT_LIMITS.equivalence_bruteforce_cap if cap is None else cap
    n = len(left.variables)
    if n > cap:
        raise ResourceCapError(f"enumeration over {n} variables exceeds the cap {cap}")
    return satisfying_bitmap(left) == satisfying_bitmap(right)
