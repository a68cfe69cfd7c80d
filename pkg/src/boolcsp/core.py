"""Truth-table constraints, constraint applications, instances, and the
closure-based property classifiers.

Truth tables are stored big-endian: bit ``i`` of the table is the value of
the constraint on the arity-wide binary expansion of ``i`` with the first
argument as the most significant bit.  The same convention is used to index
assignments to an instance's variable list.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .config import ARITY_CAP
from .errors import StructureError, UnsupportedArityError

PROPERTIES = (
    "zero_valid",
    "one_valid",
    "horn",
    "anti_horn",
    "bijunctive",
    "affine",
    "complementive",
)

SYNTACTIC_CLASSES = ("horn", "anti_horn", "bijunctive", "affine")


def encode_tuple(bits: Sequence[int]) -> int:
    """Table index of an argument tuple, first position most significant."""
    index = 0
    for b in bits:
        index = (index << 1) | (b & 1)
    return index


def decode_index(index: int, width: int) -> tuple[int, ...]:
    """Inverse of :func:`encode_tuple` for a fixed width."""
    return tuple((index >> (width - 1 - j)) & 1 for j in range(width))


@dataclass(frozen=True)
class Constraint:
    """A Boolean function of fixed arity given by its full truth table."""

    name: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise StructureError("constraint name must be a nonempty string")
        if self.arity < 1:
            raise StructureError(f"constraint arity must be >= 1, got {self.arity}")
        if self.arity > ARITY_CAP:
            raise StructureError(
                f"constraint arity {self.arity} exceeds the cap {ARITY_CAP}"
            )
        table = tuple(int(b) for b in self.table)
        if len(table) != 1 << self.arity:
            raise StructureError(
                f"table for arity {self.arity} must have {1 << self.arity} bits,"
                f" got {len(table)}"
            )
        if any(b not in (0, 1) for b in table):
            raise StructureError("table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_table(cls, name: str, table: str | Sequence[int]) -> "Constraint":
        """Build a constraint from a table whose length determines the arity."""
        bits = tuple(int(b) for b in table)
        if not bits:
            raise StructureError("empty truth table")
        arity = len(bits).bit_length() - 1
        return cls(name, arity, bits)

    def sat_indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.table) if b)

    def value(self, bits: Sequence[int]) -> int:
        return self.table[encode_tuple(bits)]


@dataclass(frozen=True)
class Var:
    """Argument referring to a position in the instance's variable list."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise StructureError("variable index must be non-negative")


@dataclass(frozen=True)
class Const:
    """Constant argument, 0 or 1."""

    bit: int

    def __post_init__(self) -> None:
        if self.bit not in (0, 1):
            raise StructureError("constant must be 0 or 1")


Argument = Var | Const


def argument_key(arg: Argument) -> tuple[int, int]:
    """Canonical ordering key: variables by index, then constants by bit."""
    if isinstance(arg, Var):
        return (0, arg.index)
    return (1, arg.bit)


@dataclass(frozen=True)
class ConstraintApplication:
    """A constraint applied to a tuple of variables and/or constants.

    Variables need not be distinct.
    """

    constraint: Constraint
    args: tuple[Argument, ...]

    def __post_init__(self) -> None:
        args = tuple(self.args)
        if len(args) != self.constraint.arity:
            raise StructureError(
                f"{self.constraint.name} takes {self.constraint.arity} arguments,"
                f" got {len(args)}"
            )
        for a in args:
            if not isinstance(a, (Var, Const)):
                raise StructureError(f"bad argument: {a!r}")
        object.__setattr__(self, "args", args)

    def var_indices(self) -> tuple[int, ...]:
        """Distinct variable indices, ascending."""
        return tuple(sorted({a.index for a in self.args if isinstance(a, Var)}))

    def uses_constants(self) -> bool:
        return any(isinstance(a, Const) for a in self.args)


def apply(constraint: Constraint, *args: Argument | int | str) -> ConstraintApplication:
    """Convenience constructor; ints become Var indices."""
    converted: list[Argument] = []
    for a in args:
        if isinstance(a, (Var, Const)):
            converted.append(a)
        elif isinstance(a, int):
            converted.append(Var(a))
        else:
            raise StructureError(f"bad argument: {a!r}")
    return ConstraintApplication(constraint, tuple(converted))


@functools.lru_cache(maxsize=100_000)
def application_table(
    app: ConstraintApplication, var_order: tuple[int, ...]
) -> tuple[int, ...]:
    """Truth table of the application as a function of the listed variables.

    ``var_order`` must cover every variable occurring in the application;
    unused listed variables show up as free coordinates.
    """
    position = {v: i for i, v in enumerate(var_order)}
    width = len(var_order)
    table = []
    ctable = app.constraint.table
    for idx in range(1 << width):
        bits = decode_index(idx, width)
        resolved = 0
        for a in app.args:
            b = bits[position[a.index]] if isinstance(a, Var) else a.bit
            resolved = (resolved << 1) | b
        table.append(ctable[resolved])
    return tuple(table)


@dataclass(frozen=True)
class Instance:
    """A duplicate-free set of constraint applications over an ordered
    variable universe, read as the conjunction of its applications."""

    constraint_set: tuple[Constraint, ...]
    variables: tuple[str, ...]
    applications: tuple[ConstraintApplication, ...]
    constants_allowed: bool = False

    def __post_init__(self) -> None:
        cs = tuple(self.constraint_set)
        variables = tuple(self.variables)
        apps = tuple(self.applications)
        names = [c.name for c in cs]
        if len(set(names)) != len(names):
            raise StructureError("duplicate constraint names")
        if len(set(variables)) != len(variables):
            raise StructureError("duplicate variable names")
        if any(not isinstance(v, str) or not v for v in variables):
            raise StructureError("variable names must be nonempty strings")
        index = {c: i for i, c in enumerate(cs)}
        n = len(variables)
        seen = set()
        for app in apps:
            if app.constraint not in index:
                raise StructureError(
                    f"application uses constraint {app.constraint.name!r}"
                    " not in the declared set"
                )
            for a in app.args:
                if isinstance(a, Var):
                    if a.index >= n:
                        raise StructureError(
                            f"variable index {a.index} out of range for"
                            f" {n} variables"
                        )
                elif not self.constants_allowed:
                    raise StructureError(
                        "constant argument in an instance that does not"
                        " allow constants"
                    )
            if app in seen:
                raise StructureError("duplicate application")
            seen.add(app)
        object.__setattr__(self, "constraint_set", cs)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "applications", apps)

    def constraint_index(self, constraint: Constraint) -> int:
        return self.constraint_set.index(constraint)

    def uses_constants(self) -> bool:
        return any(app.uses_constants() for app in self.applications)

    def app_sort_key(self, app: ConstraintApplication):
        return (
            self.constraint_index(app.constraint),
            tuple(argument_key(a) for a in app.args),
        )

    def canonicalized(self) -> "Instance":
        """Same instance with applications in canonical order."""
        apps = tuple(sorted(self.applications, key=self.app_sort_key))
        return Instance(self.constraint_set, self.variables, apps, self.constants_allowed)


def substitute(instance: Instance, pins: Mapping[int, int]) -> Instance:
    """Replace pinned variables by the given constant bits.

    The variable universe is kept; pinned variables simply stop occurring.
    Applications that collide after substitution are deduplicated.
    """
    apps: list[ConstraintApplication] = []
    seen = set()
    for app in instance.applications:
        args = tuple(
            Const(pins[a.index])
            if isinstance(a, Var) and a.index in pins
            else a
            for a in app.args
        )
        new = ConstraintApplication(app.constraint, args)
        if new not in seen:
            seen.add(new)
            apps.append(new)
    return Instance(instance.constraint_set, instance.variables, tuple(apps), True)


# -- assignments --------------------------------------------------------

Assignment = Mapping[str, int]


def assignment_index(assignment: Assignment, variables: Sequence[str]) -> int:
    """Encode an assignment as a table index over the given variable order."""
    return encode_tuple([assignment[v] for v in variables])


def assignment_from_index(index: int, variables: Sequence[str]) -> dict[str, int]:
    bits = decode_index(index, len(variables))
    return dict(zip(variables, bits))


def eval_application(
    app: ConstraintApplication, assignment: Assignment, variables: Sequence[str]
) -> int:
    """Value of one application: resolve each argument, look up the table."""
    bits = [
        assignment[variables[a.index]] if isinstance(a, Var) else a.bit
        for a in app.args
    ]
    return app.constraint.table[encode_tuple(bits)]


def eval_instance(instance: Instance, assignment: Assignment) -> bool:
    """True iff every application evaluates to 1 (empty conjunction is true)."""
    if set(assignment) != set(instance.variables):
        raise StructureError("assignment domain does not match the variable universe")
    return all(
        eval_application(app, assignment, instance.variables) == 1
        for app in instance.applications
    )


# -- satisfying sets as big-integer bitmaps ------------------------------


@functools.lru_cache(maxsize=40)
def variable_masks(n: int) -> tuple[int, ...]:
    """For each variable position j, the bitmap of assignment indices where
    that variable is 1 (indices follow the big-endian convention)."""
    total = 1 << n
    masks = []
    for j in range(n):
        low = n - 1 - j
        block = 1 << low
        m = ((1 << block) - 1) << block
        span = block << 1
        while span < total:
            m |= m << span
            span <<= 1
        masks.append(m)
    return tuple(masks)


def application_bitmap(
    app: ConstraintApplication, masks: Sequence[int], full: int
) -> int:
    """Bitmap of assignment indices satisfying one application."""
    out = 0
    for idx in app.constraint.sat_indices():
        bits = decode_index(idx, app.constraint.arity)
        term = full
        for a, want in zip(app.args, bits):
            if isinstance(a, Const):
                if a.bit != want:
                    term = 0
                    break
            else:
                m = masks[a.index]
                term &= m if want else full ^ m
            if not term:
                break
        out |= term
    return out


def satisfying_bitmap(instance: Instance) -> int:
    """Bitmap over all 2^n assignment indices that satisfy the instance."""
    n = len(instance.variables)
    full = (1 << (1 << n)) - 1
    masks = variable_masks(n)
    acc = full
    for app in instance.applications:
        acc &= application_bitmap(app, masks, full)
        if not acc:
            break
    return acc


# -- classification ------------------------------------------------------


@dataclass(frozen=True)
class ConstraintFlags:
    zero_valid: bool
    one_valid: bool
    horn: bool
    anti_horn: bool
    bijunctive: bool
    affine: bool
    complementive: bool


@dataclass(frozen=True)
class ClassificationReport:
    """Per-constraint flags plus the set-level conjunction of each flag."""

    per_constraint: tuple[tuple[str, ConstraintFlags], ...]
    zero_valid: bool
    one_valid: bool
    horn: bool
    anti_horn: bool
    bijunctive: bool
    affine: bool
    complementive: bool
    schaefer: bool


@functools.lru_cache(maxsize=None)
def _constraint_flags(arity: int, table: tuple[int, ...]) -> ConstraintFlags:
    full = (1 << arity) - 1
    sat = [i for i, b in enumerate(table) if b]
    sat_set = set(sat)
    horn = all((a & b) in sat_set for a, b in itertools.product(sat, repeat=2))
    anti_horn = all((a | b) in sat_set for a, b in itertools.product(sat, repeat=2))
    bijunctive = all(
        ((a & b) | (a & c) | (b & c)) in sat_set
        for a, b, c in itertools.product(sat, repeat=3)
    )
    affine = all(
        (a ^ b ^ c) in sat_set for a, b, c in itertools.product(sat, repeat=3)
    )
    complementive = all(table[i] == table[full ^ i] for i in range(len(table)))
    return ConstraintFlags(
        zero_valid=table[0] == 1,
        one_valid=table[full] == 1,
        horn=horn,
        anti_horn=anti_horn,
        bijunctive=bijunctive,
        affine=affine,
        complementive=complementive,
    )


def constraint_flags(constraint: Constraint) -> ConstraintFlags:
    """All seven property flags of one constraint, decided by closure tests
    on its satisfying-tuple set (AND, OR, ternary majority, ternary XOR,
    bitwise complement)."""
    return _constraint_flags(constraint.arity, constraint.table)


def classify_constraint(constraint: Constraint, property: str) -> bool:
    if property not in PROPERTIES:
        raise ValueError(f"unknown property {property!r}")
    return getattr(constraint_flags(constraint), property)


def classify_set(constraints: Sequence[Constraint]) -> ClassificationReport:
    """Set-level flags: each property must hold for every constraint.

    A set is Schaefer when it is entirely Horn, entirely anti-Horn,
    entirely bijunctive, or entirely affine.
    """
    constraints = tuple(constraints)
    if not constraints:
        raise StructureError("cannot classify an empty constraint list")
    rows = tuple((c.name, constraint_flags(c)) for c in constraints)
    agg = {
        p: all(getattr(flags, p) for _, flags in rows) for p in PROPERTIES
    }
    return ClassificationReport(
        per_constraint=rows,
        schaefer=agg["horn"] or agg["anti_horn"] or agg["bijunctive"] or agg["affine"],
        **agg,
    )


# -- definability oracle --------------------------------------------------


def _bit_at(index: int, position: int, width: int) -> int:
    return (index >> (width - 1 - position)) & 1


def _cnf_candidates(width: int, kind: str) -> list[tuple[int, int]]:
    """All non-tautological clauses of the class over ``width`` positions,
    as (positive mask, negative mask) pairs over position bits."""
    out = []
    for pos in range(1 << width):
        for neg in range(1 << width):
            if pos & neg or not (pos | neg):
                continue
            p = pos.bit_count()
            q = neg.bit_count()
            if kind == "horn" and p > 1:
                continue
            if kind == "anti_horn" and q > 1:
                continue
            if kind == "bijunctive" and p + q > 2:
                continue
            out.append((pos, neg))
    return out


def _clause_holds(index: int, pos: int, neg: int, width: int) -> bool:
    for p in range(width):
        bit = _bit_at(index, p, width)
        if (pos >> p) & 1 and bit:
            return True
        if (neg >> p) & 1 and not bit:
            return True
    return False


def definability_oracle(constraint: Constraint, kind: str) -> bool:
    """Decide syntactic definability directly from the class's clause family.

    Collects every clause of the family that the constraint implies and
    checks whether their conjunction reproduces the truth table.  Some
    defining subset exists iff the full implied set is itself defining, so
    this decides the same question as enumerating all clause subsets.
    """
    if kind not in SYNTACTIC_CLASSES:
        raise ValueError(f"unknown syntactic class {kind!r}")
    if constraint.arity > 3:
        raise UnsupportedArityError(
            f"definability oracle supports arity <= 3, got {constraint.arity}"
        )
    k = constraint.arity
    table = constraint.table
    sat = [i for i, b in enumerate(table) if b]
    size = 1 << k
    conjunction = [1] * size
    if kind == "affine":
        for mask in range(1, 1 << k):
            for rhs in (0, 1):
                if all(
                    (
                        sum(_bit_at(i, p, k) for p in range(k) if (mask >> p) & 1) % 2
                    )
                    == rhs
                    for i in sat
                ):
                    for i in range(size):
                        parity = (
                            sum(_bit_at(i, p, k) for p in range(k) if (mask >> p) & 1)
                            % 2
                        )
                        if parity != rhs:
                            conjunction[i] = 0
    else:
        for pos, neg in _cnf_candidates(k, kind):
            if all(_clause_holds(i, pos, neg, k) for i in sat):
                for i in range(size):
                    if not _clause_holds(i, pos, neg, k):
                        conjunction[i] = 0
    return tuple(conjunction) == table
