import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import boolcsp as b
from boolcsp import Const, Constraint, Instance, Var, apply

from .strategies import constraints

OR2 = b.OR2
XOR3 = b.XOR3
IMPL = Constraint("IMPL", 2, "1101")
ONE_IN_THREE = Constraint("1IN3", 3, "01101000")
TRUE1 = Constraint("TRUE1", 1, "11")


def test_constraint_validation():
    with pytest.raises(b.StructureError):
        Constraint("bad", 2, "011")
    with pytest.raises(b.StructureError):
        Constraint("bad", 0, "1")
    with pytest.raises(b.StructureError):
        Constraint("bad", 17, "0" * (1 << 17))
    with pytest.raises(b.StructureError):
        Constraint("", 1, "01")


def test_instance_validation():
    with pytest.raises(b.StructureError):
        Instance((OR2,), ("x",), (apply(OR2, 0, 1),), False)
    with pytest.raises(b.StructureError):
        Instance((OR2,), ("x", "y"), (apply(OR2, 0, Const(1)),), False)
    with pytest.raises(b.StructureError):
        Instance((OR2,), ("x", "x"), (), False)
    with pytest.raises(b.StructureError):
        Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1), apply(OR2, 0, 1)), False)
    with pytest.raises(b.StructureError):
        Instance((OR2,), ("x", "y"), (apply(IMPL, 0, 1),), False)


@given(st.integers(1, 6), st.data())
def test_index_roundtrip(width, data):
    bits = tuple(data.draw(st.integers(0, 1)) for _ in range(width))
    assert b.decode_index(b.encode_tuple(bits), width) == bits


def test_eval_application_examples():
    variables = ("x", "y")
    assert b.eval_application(apply(OR2, 0, 1), {"x": 0, "y": 1}, variables) == 1
    assert b.eval_application(apply(OR2, 0, 0), {"x": 0, "y": 1}, variables) == 0
    assert b.eval_application(apply(OR2, 0, Const(1)), {"x": 0, "y": 0}, variables) == 1
    assert b.eval_application(apply(OR2, 0, Const(1)), {"x": 1, "y": 0}, variables) == 1


def test_eval_instance_examples():
    empty = Instance((OR2,), ("x",), (), False)
    assert b.eval_instance(empty, {"x": 0})
    assert b.eval_instance(empty, {"x": 1})
    one = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1),), False)
    assert not b.eval_instance(one, {"x": 0, "y": 0})
    two = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1), apply(OR2, 0, 0)), False)
    assert b.eval_instance(two, {"x": 1, "y": 0})


def test_eval_instance_domain_check():
    one = Instance((OR2,), ("x", "y"), (apply(OR2, 0, 1),), False)
    with pytest.raises(b.StructureError):
        b.eval_instance(one, {"x": 1})


def test_classify_examples():
    assert b.classify_constraint(XOR3, "affine")
    assert not b.classify_constraint(OR2, "horn")
    assert b.classify_constraint(IMPL, "horn")
    assert not b.classify_constraint(XOR3, "complementive")
    with pytest.raises(ValueError):
        b.classify_constraint(OR2, "bogus")


def test_classify_set_or2():
    report = b.classify_set([OR2])
    assert report.anti_horn and report.bijunctive and report.schaefer
    assert report.one_valid and not report.zero_valid and not report.horn


def test_classify_set_one_in_three():
    report = b.classify_set([ONE_IN_THREE])
    assert not report.schaefer
    assert not report.zero_valid and not report.one_valid


def test_classify_set_constant_true():
    report = b.classify_set([TRUE1])
    assert report.horn and report.anti_horn and report.bijunctive and report.affine


def test_classify_set_empty_errors():
    with pytest.raises(b.StructureError):
        b.classify_set([])


def test_unsat_constraint_is_in_all_four_classes():
    dead = Constraint("F", 2, "0000")
    flags = b.constraint_flags(dead)
    assert flags.horn and flags.anti_horn and flags.bijunctive and flags.affine


def test_definability_examples():
    assert b.definability_oracle(IMPL, "horn")
    assert not b.definability_oracle(OR2, "horn")
    assert b.definability_oracle(XOR3, "affine")


def test_definability_arity_cap():
    big = Constraint("B", 4, "0" * 16)
    with pytest.raises(b.UnsupportedArityError):
        b.definability_oracle(big, "horn")


@given(constraints(max_arity=3))
def test_classify_agrees_with_definability(c):
    for kind in ("horn", "anti_horn", "bijunctive", "affine"):
        assert b.classify_constraint(c, kind) == b.definability_oracle(c, kind)


@given(constraints(max_arity=4))
def test_complementive_matches_direct_definition(c):
    full = (1 << c.arity) - 1
    direct = all(c.table[i] == c.table[full ^ i] for i in range(len(c.table)))
    assert b.classify_constraint(c, "complementive") == direct


@given(constraints(max_arity=3), st.data())
def test_evaluation_matches_table(c, data):
    bits = tuple(data.draw(st.integers(0, 1)) for _ in range(c.arity))
    variables = tuple(f"v{i}" for i in range(c.arity))
    app = b.ConstraintApplication(c, tuple(Var(i) for i in range(c.arity)))
    assignment = dict(zip(variables, bits))
    assert (
        b.eval_application(app, assignment, variables)
        == c.table[b.encode_tuple(bits)]
    )


def test_substitute_dedupes():
    inst = Instance(
        (OR2,), ("x", "y", "z"), (apply(OR2, 0, 1), apply(OR2, 0, 2)), False
    )
    pinned = b.substitute(inst, {1: 0, 2: 0})
    assert len(pinned.applications) == 1
    assert pinned.constants_allowed


def test_satisfying_bitmap_against_direct_evaluation():
    inst = Instance(
        (OR2, IMPL),
        ("x", "y", "z"),
        (apply(OR2, 0, 1), apply(IMPL, 2, 0)),
        False,
    )
    bm = b.satisfying_bitmap(inst)
    for idx in range(8):
        assignment = b.assignment_from_index(idx, inst.variables)
        assert ((bm >> idx) & 1) == int(b.eval_instance(inst, assignment))
