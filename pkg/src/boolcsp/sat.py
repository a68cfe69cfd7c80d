"""Satisfiability deciders.

``solve`` dispatches on the properties of the instance's constraint set:
trivial 0-/1-valid shortcut when no constants occur, then Gaussian
elimination over GF(2), the implication-graph 2-SAT algorithm, or unit
propagation for Horn / anti-Horn clause forms, with a complete
backtracking fallback for everything else.  Every returned witness is
re-verified by evaluation before it leaves this module.
"""

from __future__ import annotations

import functools
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
    _clause_holds,
    _cnf_candidates,
    application_table,
    classify_set,
    decode_index,
    eval_instance,
    satisfying_bitmap,
    substitute,
)
from .errors import PreconditionError, ResourceCapError

DISPATCH_ORDER = ("affine", "bijunctive", "horn", "anti_horn")


@dataclass
class Counters:
    """Instrumentation for the test suites; not thread safe."""

    solve_calls: int = 0
    backtracking_calls: int = 0

    def reset(self) -> None:
        self.solve_calls = 0
        self.backtracking_calls = 0


counters = Counters()


@dataclass(frozen=True)
class SatResult:
    status: str                      # "SAT" | "UNSAT"
    witness: Optional[dict]          # present iff SAT, satisfies the instance
    method: str                      # algorithm tag


@dataclass(frozen=True)
class ClauseForm:
    """Clause view of an instance in one syntactic class.

    CNF kinds use signed 1-based literals (``v+1`` positive, ``-(v+1)``
    negative, over variable indices); the empty clause stands for falsity.
    The affine kind uses equations ``(vars, rhs)`` with ``vars`` a sorted
    tuple of variable indices; ``((), 1)`` stands for falsity.  Constant
    arguments are already folded away.
    """

    kind: str
    clauses: tuple[tuple[int, ...], ...] = ()
    equations: tuple[tuple[tuple[int, ...], int], ...] = ()


def _args_key(app: ConstraintApplication) -> tuple:
    return tuple(
        ("v", a.index) if isinstance(a, Var) else ("c", a.bit) for a in app.args
    )


@functools.lru_cache(maxsize=200_000)
def _app_cnf_clauses(
    kind: str, table: tuple[int, ...], arity: int, args_key: tuple
) -> tuple[tuple[int, ...], ...]:
    app = ConstraintApplication(
        Constraint("_t", arity, table),
        tuple(Var(i) if tag == "v" else Const(i) for tag, i in args_key),
    )
    vs = app.var_indices()
    w = len(vs)
    induced = application_table(app, vs)
    if w == 0:
        return () if induced[0] else ((),)
    sat = [i for i, b in enumerate(induced) if b]
    clauses = []
    for pos, neg in _cnf_candidates_cached(w, kind):
        if all(_clause_holds(i, pos, neg, w) for i in sat):
            lits = [vs[p] + 1 for p in range(w) if (pos >> p) & 1]
            lits += [-(vs[p] + 1) for p in range(w) if (neg >> p) & 1]
            clauses.append(tuple(sorted(lits, key=lambda l: (abs(l), l < 0))))
    return tuple(clauses)


@functools.lru_cache(maxsize=200_000)
def _app_xor_equations(
    table: tuple[int, ...], arity: int, args_key: tuple
) -> tuple[tuple[tuple[int, ...], int], ...]:
    app = ConstraintApplication(
        Constraint("_t", arity, table),
        tuple(Var(i) if tag == "v" else Const(i) for tag, i in args_key),
    )
    vs = app.var_indices()
    w = len(vs)
    induced = application_table(app, vs)
    if w == 0:
        return () if induced[0] else (((), 1),)
    sat = [i for i, b in enumerate(induced) if b]
    eqs = []
    for mask in range(1, 1 << w):
        for rhs in (0, 1):
            if all(
                sum((i >> (w - 1 - p)) & 1 for p in range(w) if (mask >> p) & 1) % 2
                == rhs
                for i in sat
            ):
                eqs.append(
                    (tuple(vs[p] for p in range(w) if (mask >> p) & 1), rhs)
                )
    if not sat:
        eqs.append(((), 1))
    return tuple(eqs)


@functools.lru_cache(maxsize=None)
def _cnf_candidates_cached(width: int, kind: str):
    return tuple(_cnf_candidates(width, kind))


def to_clause_form(instance: Instance, kind: str) -> ClauseForm:
    """Emit, per application, every implied clause of the class's syntax over
    that application's arguments.  Because each application's function lies
    in the class, the conjunction reproduces the application exactly."""
    if kind not in DISPATCH_ORDER:
        raise ValueError(f"unknown clause-form class {kind!r}")
    report = classify_set(instance.constraint_set)
    if not getattr(report, kind):
        raise PreconditionError(
            f"constraint set is not {kind}; clause form would be lossy"
        )
    if kind == "affine":
        eqs: set = set()
        for app in instance.applications:
            eqs.update(
                _app_xor_equations(app.constraint.table, app.constraint.arity, _args_key(app))
            )
        return ClauseForm(kind=kind, equations=tuple(sorted(eqs)))
    clauses: set = set()
    for app in instance.applications:
        clauses.update(
            _app_cnf_clauses(kind, app.constraint.table, app.constraint.arity, _args_key(app))
        )
    return ClauseForm(kind=kind, clauses=tuple(sorted(clauses, key=lambda c: (len(c), c))))


def eval_clause_form(form: ClauseForm, bits: Sequence[int]) -> bool:
    """Evaluate a clause form under an assignment given by variable index."""
    if form.kind == "affine":
        for vs, rhs in form.equations:
            if sum(bits[v] for v in vs) % 2 != rhs:
                return False
        return True
    for clause in form.clauses:
        ok = False
        for lit in clause:
            v = abs(lit) - 1
            if (bits[v] == 1) == (lit > 0):
                ok = True
                break
        if not ok:
            return False
    return True


# -- class solvers (over variable indices 0..n-1) -------------------------


def _solve_horn(n: int, clauses) -> Optional[list[int]]:
    """Least model by unit propagation; None when unsatisfiable."""
    parsed = [
        (
            [l - 1 for l in cl if l > 0],
            [-l - 1 for l in cl if l < 0],
        )
        for cl in clauses
    ]
    true = [False] * n
    changed = True
    while changed:
        changed = False
        for pos, neg in parsed:
            if len(pos) == 1 and not true[pos[0]] and all(true[v] for v in neg):
                true[pos[0]] = True
                changed = True
    for pos, neg in parsed:
        if not any(true[p] for p in pos) and all(true[v] for v in neg):
            return None
    return [1 if b else 0 for b in true]


def _solve_anti_horn(n: int, clauses) -> Optional[list[int]]:
    """Greatest model, via the Horn solver on the polarity-flipped clauses."""
    flipped = [tuple(-l for l in cl) for cl in clauses]
    model = _solve_horn(n, flipped)
    if model is None:
        return None
    return [1 - b for b in model]


def _solve_two_sat(n: int, clauses) -> Optional[list[int]]:
    """Implication graph plus Tarjan SCC; standard complementary-node test."""
    if any(len(cl) == 0 for cl in clauses):
        return None

    def node(lit: int) -> int:
        v = abs(lit) - 1
        return 2 * v + (0 if lit > 0 else 1)

    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for cl in clauses:
        if len(cl) == 1:
            (a,) = cl
            adj[node(-a)].append(node(a))
        else:
            a, b = cl
            adj[node(-a)].append(node(b))
            adj[node(-b)].append(node(a))

    comp = [-1] * (2 * n)
    low = [0] * (2 * n)
    num = [0] * (2 * n)
    visited = [False] * (2 * n)
    on_stack = [False] * (2 * n)
    stack: list[int] = []
    counter = itertools.count()
    ncomp = 0
    for root in range(2 * n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                num[v] = low[v] = next(counter)
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if not visited[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], num[w])
            if advanced:
                continue
            work.pop()
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    bits = []
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        bits.append(1 if comp[2 * v] < comp[2 * v + 1] else 0)
    return bits


def _solve_affine(n: int, equations) -> Optional[list[int]]:
    """Gaussian elimination over GF(2); free variables get 0."""
    rows: list[tuple[int, int]] = []
    for vs, rhs in equations:
        mask = 0
        for v in vs:
            mask |= 1 << v
        rows.append((mask, rhs))
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        # ascending pivot order: xoring at pivot p only flips bits above p
        for pv in sorted(pivots):
            if (mask >> pv) & 1:
                pmask, prhs = pivots[pv]
                mask ^= pmask
                rhs ^= prhs
        if mask == 0:
            if rhs:
                return None
            continue
        pivots[(mask & -mask).bit_length() - 1] = (mask, rhs)
    bits = [0] * n
    for pv in sorted(pivots, reverse=True):
        pmask, prhs = pivots[pv]
        val = prhs
        rest = pmask & ~(1 << pv)
        while rest:
            v = (rest & -rest).bit_length() - 1
            val ^= bits[v]
            rest &= rest - 1
        bits[pv] = val
    return bits


def _backtracking(instance: Instance, cap: int) -> Optional[list[int]]:
    """Complete search, lexicographic variable order, value 0 first."""
    n = len(instance.variables)
    if n > cap:
        raise ResourceCapError(
            f"backtracking over {n} variables exceeds the cap {cap}"
        )
    counters.backtracking_calls += 1
    by_trigger: list[list[ConstraintApplication]] = [[] for _ in range(n + 1)]
    for app in instance.applications:
        vs = app.var_indices()
        trigger = max(vs) if vs else -1
        if trigger < 0:
            # constant-only application: decidable immediately
            if app.constraint.table[
                sum(
                    (a.bit << (app.constraint.arity - 1 - i))
                    for i, a in enumerate(app.args)
                )
            ] == 0:
                return None
        else:
            by_trigger[trigger].append(app)
    bits = [0] * n

    def ok_at(level: int) -> bool:
        for app in by_trigger[level]:
            resolved = 0
            for a in app.args:
                b = bits[a.index] if isinstance(a, Var) else a.bit
                resolved = (resolved << 1) | b
            if app.constraint.table[resolved] == 0:
                return False
        return True

    def search(level: int) -> bool:
        if level == n:
            return True
        for value in (0, 1):
            bits[level] = value
            if ok_at(level) and search(level + 1):
                return True
        bits[level] = 0
        return False

    if n == 0:
        return []
    return bits if search(0) else None


def _as_witness(instance: Instance, bits: Sequence[int]) -> dict[str, int]:
    return {v: bits[i] for i, v in enumerate(instance.variables)}


def _finish(instance: Instance, bits: Optional[Sequence[int]], method: str) -> SatResult:
    if bits is None:
        return SatResult("UNSAT", None, method)
    witness = _as_witness(instance, bits)
    if not eval_instance(instance, witness):
        raise RuntimeError(f"internal error: {method} produced an invalid witness")
    return SatResult("SAT", witness, method)


def solve(
    instance: Instance,
    *,
    backtracking_cap: int | None = None,
) -> SatResult:
    """Decide satisfiability; polynomial whenever the constraint set is
    0-valid or 1-valid (without constants) or Schaefer."""
    counters.solve_calls += 1
    cap = DEFAULT_LIMITS.backtracking_cap if backtracking_cap is None else backtracking_cap
    n = len(instance.variables)
    if not instance.applications:
        return _finish(instance, [0] * n, "valid_shortcut")
    report = classify_set(instance.constraint_set)
    if not instance.uses_constants():
        if report.zero_valid:
            return _finish(instance, [0] * n, "valid_shortcut")
        if report.one_valid:
            return _finish(instance, [1] * n, "valid_shortcut")
    if report.affine:
        form = to_clause_form(instance, "affine")
        return _finish(instance, _solve_affine(n, form.equations), "affine")
    if report.bijunctive:
        form = to_clause_form(instance, "bijunctive")
        return _finish(instance, _solve_two_sat(n, form.clauses), "two_sat")
    if report.horn:
        form = to_clause_form(instance, "horn")
        return _finish(instance, _solve_horn(n, form.clauses), "horn")
    if report.anti_horn:
        form = to_clause_form(instance, "anti_horn")
        return _finish(instance, _solve_anti_horn(n, form.clauses), "anti_horn")
    return _finish(instance, _backtracking(instance, cap), "backtracking")


def solve_using(instance: Instance, kind: str) -> SatResult:
    """Run one specific clause-form solver (diagnostic; the verdict must
    match ``solve`` whenever the precondition holds)."""
    n = len(instance.variables)
    form = to_clause_form(instance, kind)
    if kind == "affine":
        return _finish(instance, _solve_affine(n, form.equations), "affine")
    if kind == "bijunctive":
        return _finish(instance, _solve_two_sat(n, form.clauses), "two_sat")
    if kind == "horn":
        return _finish(instance, _solve_horn(n, form.clauses), "horn")
    return _finish(instance, _solve_anti_horn(n, form.clauses), "anti_horn")


def solve_bruteforce(instance: Instance, *, cap: int | None = None) -> SatResult:
    """Exhaustive oracle: enumerate all assignments via the bitmap."""
    cap = DEFAULT_LIMITS.counting_cap if cap is None else cap
    n = len(instance.variables)
    if n > cap:
        raise ResourceCapError(f"bruteforce over {n} variables exceeds the cap {cap}")
    bm = satisfying_bitmap(instance)
    if bm == 0:
        return SatResult("UNSAT", None, "bruteforce")
    index = (bm & -bm).bit_length() - 1
    bits = decode_index(index, n)
    return _finish(instance, list(bits), "bruteforce")


# -- nontrivial-assignment variants ---------------------------------------


def sat_not_all_one(instance: Instance) -> bool:
    """Is there a satisfying assignment other than all-ones?  Decided by
    pinning each variable to 0 in turn and solving with constants."""
    n = len(instance.variables)
    if n < 1:
        raise PreconditionError("requires at least one variable")
    return any(
        solve(substitute(instance, {i: 0})).status == "SAT" for i in range(n)
    )


def sat_not_all_zero(instance: Instance) -> bool:
    """Dual of :func:`sat_not_all_one`: pin each variable to 1."""
    n = len(instance.variables)
    if n < 1:
        raise PreconditionError("requires at least one variable")
    return any(
        solve(substitute(instance, {i: 1})).status == "SAT" for i in range(n)
    )


def sat_nontrivial(instance: Instance) -> bool:
    """Is there a satisfying assignment that is neither all-zeros nor
    all-ones?  Pin ordered pairs (x_i=0, x_j=1)."""
    n = len(instance.variables)
    if n < 2:
        raise PreconditionError("requires at least two variables")
    return any(
        solve(substitute(instance, {i: 0, j: 1})).status == "SAT"
        for i in range(n)
        for j in range(n)
        if i != j
    )


def count_models(instance: Instance, *, cap: int | None = None) -> int:
    """Exact number of satisfying total assignments to the declared
    variable list (textually unused variables count as free)."""
    cap = DEFAULT_LIMITS.counting_cap if cap is None else cap
    n = len(instance.variables)
    if n > cap:
        raise ResourceCapError(f"counting over {n} variables exceeds the cap {cap}")
    return satisfying_bitmap(instance).bit_count()
