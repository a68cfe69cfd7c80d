"""Hypothesis strategies for constraints, instances, and graphs."""

from hypothesis import strategies as st

from boolcsp import ColoredGraph, Const, Constraint, ConstraintApplication, Instance, Var


@st.composite
def constraints(draw, min_arity=1, max_arity=3, name="C"):
    arity = draw(st.integers(min_arity, max_arity))
    table = draw(
        st.lists(st.integers(0, 1), min_size=1 << arity, max_size=1 << arity)
    )
    return Constraint(name, arity, tuple(table))


@st.composite
def instances(draw, max_vars=5, max_apps=4, max_constraints=2, constants=False):
    n_constraints = draw(st.integers(1, max_constraints))
    cs = tuple(
        draw(constraints(name=f"C{i}")) for i in range(n_constraints)
    )
    n = draw(st.integers(1, max_vars))
    variables = tuple(f"v{i}" for i in range(n))
    allow = constants and draw(st.booleans())

    def arguments(k):
        arg = st.integers(0, n - 1).map(Var)
        if allow:
            arg = st.one_of(arg, st.integers(0, 1).map(Const))
        return st.tuples(*[arg] * k)

    n_apps = draw(st.integers(0, max_apps))
    apps = []
    for _ in range(n_apps):
        c = draw(st.sampled_from(cs))
        args = draw(arguments(c.arity))
        app = ConstraintApplication(c, args)
        if app not in apps:
            apps.append(app)
    return Instance(cs, variables, tuple(apps), allow)


@st.composite
def colored_graphs(draw, max_n=7, max_colors=3):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = frozenset(
        p for p in pairs if draw(st.booleans())
    )
    colors = tuple(draw(st.integers(0, max_colors - 1)) for _ in range(n))
    return ColoredGraph(n, edges, colors)
