import pytest
from hypothesis import given, settings

import boolcsp as b
from boolcsp import Const, Instance, Permutation, Var, apply
from boolcsp.randgen import (
    IMPL,
    random_instance,
    random_non_schaefer_set,
    random_permutation,
    random_schaefer_set,
)

OR2 = b.OR2
XOR3 = b.XOR3


def test_permutation_validation():
    with pytest.raises(b.StructureError):
        Permutation((0, 0))
    assert Permutation.identity(3).images == (0, 1, 2)
    assert Permutation((1, 2, 0)).inverse().images == (2, 0, 1)


def test_permutation_cycles():
    perm = Permutation((2, 1, 0))
    assert perm.cycles(("x", "y", "z")) == (("x", "z"),)
    assert Permutation.identity(2).cycles(("x", "y")) == ()


def test_apply_permutation_examples():
    X = ("x", "y", "z")
    S = Instance((OR2,), X, (apply(OR2, 0, 1),), False)
    assert b.apply_permutation(S, Permutation.identity(3)) == S
    swapped = b.apply_permutation(S, Permutation((2, 1, 0)))
    assert swapped.applications == (apply(OR2, 2, 1),)
    with_const = Instance((IMPL,), ("x", "y"), (apply(IMPL, Var(0), Const(0)),), True)
    out = b.apply_permutation(with_const, Permutation((1, 0)))
    assert out.applications == (apply(IMPL, Var(1), Const(0)),)


def test_normal_form_examples():
    S = Instance((IMPL,), ("x", "y"), (apply(IMPL, 0, 1),), False)
    closure = b.normal_form(S).closure
    assert closure == (apply(IMPL, 0, 0), apply(IMPL, 0, 1), apply(IMPL, 1, 1))

    S0 = Instance((OR2,), ("x",), (), False)
    assert b.normal_form(S0).closure == ()

    S1 = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 0),), False)
    closure1 = b.normal_form(S1).closure
    assert closure1 == (apply(OR2, 0, 0), apply(OR2, 0, 1), apply(OR2, 1, 0))


def test_normal_form_candidate_cap():
    S = Instance((XOR3,), tuple(f"v{i}" for i in range(60)), (), False)
    with pytest.raises(b.ResourceCapError):
        b.normal_form(S)


def test_encode_graph_or_pair():
    P = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1),), False)
    g = b.encode_graph(b.NormalForm(P, P.applications))
    assert g.n == 7
    assert g.colors == (0, 1, 2, 2, 4, 5, 3)
    assert g.edges == frozenset({(2, 4), (3, 5), (4, 6), (5, 6)})


def test_encode_graph_empty():
    P = Instance((OR2,), ("x",), (), False)
    g = b.encode_graph(b.NormalForm(P, ()))
    assert g.n == 3 and not g.edges


def test_encode_graph_vertex_count_formula(rng):
    for _ in range(20):
        cs = random_schaefer_set(rng, rng.choice(("horn", "bijunctive", "affine")))
        inst = random_instance(rng, cs, rng.randint(1, 4), rng.randint(0, 4))
        form = b.normal_form(inst)
        g = b.encode_graph(form)
        total_args = sum(app.constraint.arity for app in form.closure)
        assert g.n == 2 + len(inst.variables) + total_args + len(form.closure)


def test_encode_graph_constants_touch_constant_vertices():
    P = Instance((IMPL,), ("x",), (apply(IMPL, Var(0), Const(0)),), True)
    g = b.encode_graph(b.NormalForm(P, P.applications))
    # argument vertex 4 names the constant 0 vertex
    assert (0, 4) in g.edges


def test_isomorphic_examples():
    X = ("x", "y", "z")
    S = Instance((OR2,), X, (apply(OR2, 0, 1),), False)
    U = Instance((OR2,), X, (apply(OR2, 1, 2),), False)
    res = b.isomorphic(S, U)
    assert res.isomorphic
    assert b.equivalent(b.apply_permutation(S, res.permutation), U)

    S2 = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 1, 2)), False)
    U2 = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 0, 2)), False)
    assert b.isomorphic(S2, U2).isomorphic

    tri = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 0, 2), apply(OR2, 1, 2)), False)
    res3 = b.isomorphic(tri, S2)
    assert not res3.isomorphic
    assert res3.reason == "count-filter"
    assert b.count_models(tri) == 4 and b.count_models(S2) == 5


def test_isomorphic_bruteforce_examples():
    X = ("x", "y", "z")
    S = Instance((OR2,), X, (apply(OR2, 0, 1),), False)
    U = Instance((OR2,), X, (apply(OR2, 1, 2),), False)
    assert b.isomorphic_bruteforce(S, U) is not None
    assert b.isomorphic_bruteforce(S, S).images == (0, 1, 2)
    tri = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 0, 2), apply(OR2, 1, 2)), False)
    path = Instance((OR2,), X, (apply(OR2, 0, 1), apply(OR2, 1, 2)), False)
    assert b.isomorphic_bruteforce(tri, path) is None


def test_isomorphic_structural_errors():
    S = Instance((OR2,), ("x", "y"), (), False)
    U = Instance((OR2,), ("x", "z"), (), False)
    with pytest.raises(b.StructureError):
        b.isomorphic(S, U)
    W = Instance((OR2,), ("x", "y"), (), True)
    with pytest.raises(b.StructureError):
        b.isomorphic(S, W)


def test_isomorphic_bruteforce_cap():
    X = tuple(f"v{i}" for i in range(9))
    S = Instance((OR2,), X, (), False)
    with pytest.raises(b.ResourceCapError):
        b.isomorphic_bruteforce(S, S)


def _random_pair(rng, schaefer=True, force_yes=False, constants=False):
    if schaefer:
        cs = random_schaefer_set(
            rng, rng.choice(("horn", "anti_horn", "bijunctive", "affine"))
        )
    else:
        cs = random_non_schaefer_set(rng)
    n = rng.randint(1, 5)
    S = random_instance(rng, cs, n, rng.randint(0, 4), constants_allowed=constants)
    if force_yes or rng.random() < 0.5:
        U = b.apply_permutation(S, random_permutation(rng, n))
    else:
        U = random_instance(rng, cs, n, rng.randint(0, 4), constants_allowed=constants)
    return S, U


def test_normal_form_soundness_and_idempotence(rng):
    for _ in range(40):
        S, _ = _random_pair(rng)
        form = b.normal_form(S)
        closed = form.as_instance()
        assert b.equivalent(S, closed)
        assert b.normal_form(closed).closure == form.closure


def test_equivalent_instances_share_normal_forms(rng):
    found = 0
    for _ in range(60):
        S, U = _random_pair(rng)
        if b.equivalent(S, U):
            found += 1
            assert b.normal_form(S).closure == b.normal_form(U).closure
    assert found > 0


def test_count_invariance_under_permutation(rng):
    for _ in range(60):
        S, _ = _random_pair(rng, constants=rng.random() < 0.5)
        perm = random_permutation(rng, len(S.variables))
        assert b.count_models(b.apply_permutation(S, perm)) == b.count_models(S)


def test_pipeline_agrees_with_bruteforce(rng):
    for _ in range(80):
        constants = rng.random() < 0.4
        S, U = _random_pair(rng, schaefer=True, constants=constants)
        res = b.isomorphic(S, U)
        oracle = b.isomorphic_bruteforce(S, U)
        assert res.isomorphic == (oracle is not None)
        if res.isomorphic:
            assert b.equivalent(b.apply_permutation(S, res.permutation), U)


def test_non_schaefer_path_agrees(rng):
    for _ in range(30):
        S, U = _random_pair(rng, schaefer=False)
        res = b.isomorphic(S, U)
        oracle = b.isomorphic_bruteforce(S, U)
        assert res.isomorphic == (oracle is not None)


def test_relabeled_copies_are_always_isomorphic(rng):
    for _ in range(40):
        S, U = _random_pair(rng, force_yes=True, constants=rng.random() < 0.4)
        assert b.isomorphic(S, U).isomorphic
