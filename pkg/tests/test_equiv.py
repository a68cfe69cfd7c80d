import pytest
from hypothesis import given, settings

import boolcsp as b
from boolcsp import Constraint, Instance, apply
from boolcsp.randgen import (
    IMPL,
    ONE_IN_THREE,
    random_instance,
    random_non_schaefer_set,
    random_schaefer_set,
)

from .strategies import instances

OR2 = b.OR2


def test_implies_examples():
    S = Instance((OR2,), ("x", "y", "z"), (apply(OR2, 0, 1), apply(OR2, 0, 0)), False)
    assert b.implies(S, apply(OR2, 0, 2))
    S2 = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1),), False)
    assert not b.implies(S2, apply(OR2, 0, 0))
    empty = Instance((IMPL,), ("x",), (), False)
    assert b.implies(empty, apply(IMPL, 0, 0))


def test_implies_requires_known_constraint():
    S = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1),), False)
    with pytest.raises(b.StructureError):
        b.implies(S, apply(IMPL, 0, 1))


def test_equivalent_examples():
    X = ("x", "y")
    S = Instance((OR2,), X, (apply(OR2, 0, 1),), False)
    U = Instance((OR2,), X, (apply(OR2, 1, 0),), False)
    assert b.equivalent(S, U)
    S2 = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 0, 0)), False)
    U2 = Instance((OR2,), X, (apply(OR2, 0, 0),), False)
    assert b.equivalent(S2, U2)
    T = ONE_IN_THREE
    S3 = Instance((T,), X, (apply(T, 0, 0, 0),), False)
    U3 = Instance((T,), X, (apply(T, 1, 1, 1),), False)
    assert b.equivalent(S3, U3)


def test_equivalent_bruteforce_examples():
    X = ("x", "y")
    S = Instance((OR2,), X, (apply(OR2, 0, 1),), False)
    U = Instance((OR2,), X, (apply(OR2, 1, 0),), False)
    assert b.equivalent_bruteforce(S, U)
    empty1 = Instance((OR2,), X, (), False)
    empty2 = Instance((OR2,), X, (), False)
    assert b.equivalent_bruteforce(empty1, empty2)
    assert not b.equivalent_bruteforce(S, empty1)


def test_mismatched_universe_is_an_error():
    S = Instance((OR2,), ("x", "y"), (), False)
    U = Instance((OR2,), ("x", "z"), (), False)
    with pytest.raises(b.StructureError):
        b.equivalent(S, U)
    with pytest.raises(b.StructureError):
        b.equivalent_bruteforce(S, U)


def test_bruteforce_cap():
    X = tuple(f"v{i}" for i in range(21))
    S = Instance((OR2,), X, (), False)
    with pytest.raises(b.ResourceCapError):
        b.equivalent_bruteforce(S, S)


def _pair(rng, schaefer=True):
    cs = (
        random_schaefer_set(rng, rng.choice(("horn", "anti_horn", "bijunctive", "affine")))
        if schaefer
        else random_non_schaefer_set(rng)
    )
    n = rng.randint(1, 6)
    constants = rng.random() < 0.4
    S = random_instance(rng, cs, n, rng.randint(0, 5), constants_allowed=constants)
    if rng.random() < 0.4:
        # shuffled copy, always equivalent
        apps = list(S.applications)
        rng.shuffle(apps)
        U = Instance(cs, S.variables, tuple(apps), constants)
    else:
        U = random_instance(rng, cs, n, rng.randint(0, 5), constants_allowed=constants)
    return S, U


def test_equivalent_agrees_with_bruteforce(rng):
    for _ in range(150):
        S, U = _pair(rng, schaefer=rng.random() < 0.7)
        assert b.equivalent(S, U) == b.equivalent_bruteforce(S, U)


def test_equivalence_relation_properties(rng):
    for _ in range(40):
        S, U = _pair(rng)
        _, W = _pair(rng)
        assert b.equivalent(S, S)
        assert b.equivalent(S, U) == b.equivalent(U, S)
        try:
            if b.equivalent(S, U) and b.equivalent(U, W):
                assert b.equivalent(S, W)
        except b.StructureError:
            pass  # W may live over a different universe


def test_equivalent_implies_equal_counts(rng):
    hits = 0
    for _ in range(200):
        S, U = _pair(rng)
        if b.equivalent(S, U):
            hits += 1
            assert b.count_models(S) == b.count_models(U)
    assert hits > 0


def test_implies_query_bound(rng):
    for _ in range(100):
        S, U = _pair(rng, schaefer=rng.random() < 0.7)
        for app in U.applications:
            before = b.counters.solve_calls
            b.implies(S, app)
            used = b.counters.solve_calls - before
            assert used <= 1 << app.constraint.arity
