from __future__ import annotations

import dataclasses
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import sympy_equal, to_sympy
from qlattice.bub_clifton import Observable, PureState, TwoValuedHom, born_probability, enumerate_homs, membership
from qlattice.linalg import DimensionMismatch, Subspace, adjoint, join, leq, trace
from qlattice.sampling import (
    frame_observable,
    member_proposition,
    mixed_proposition,
    random_observable,
    random_state,
)
from qlattice.scalar import ONE, ZERO, parse_scalar
from qlattice.truth import (
    ContextualState,
    MeasurementContext,
    Verdict,
    conditions_check,
    contextual_state,
    dephased_matrix,
    expectation,
    global_valuate,
    pcc_valuate,
    t_schema_check,
)

HALF, THIRD = parse_scalar("1/2"), parse_scalar("1/3")


def std_observable(n: int) -> Observable:
    return Observable.from_basis([tuple(int(j == k) for j in range(n)) for k in range(n)], range(1, n + 1))


def ray(*v) -> Subspace:
    return Subspace.span([v])


def ctx_generic3() -> MeasurementContext:
    return MeasurementContext(PureState((1, 1, 1)), std_observable(3))


@st.composite
def random_contexts(draw, dims=(2, 3, 4), maximal=None):
    rng = random.Random(draw(st.integers(0, 2**32)))
    n = rng.choice(dims)
    return rng, MeasurementContext(random_state(rng, n), random_observable(rng, n, maximal=maximal))


# -- global valuation ------------------------------------------------------------------


@pytest.mark.parametrize(
    "state, p, verdict",
    [
        ((1, 0), ray(1, 0), Verdict.TRUE),
        ((1, 0), ray(0, 1), Verdict.FALSE),
        ((1, 1), ray(1, 0), Verdict.INDETERMINATE),
    ],
)
def test_global_examples(state, p, verdict):
    assert global_valuate(PureState(state), p) is verdict


def test_global_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        global_valuate(PureState((1, 0)), Subspace.full(3))


@settings(max_examples=40)
@given(random_contexts())
def test_verdict_trichotomy_matches_probability(case):
    rng, ctx = case
    for _ in range(10):
        p = mixed_proposition(rng, ctx.structure)
        prob = born_probability(ctx.state.vector, p)
        verdict = global_valuate(ctx.state, p)
        assert (verdict is Verdict.TRUE) == (prob == ONE)
        assert (verdict is Verdict.FALSE) == (prob == ZERO)


# -- contextual state ------------------------------------------------------------------


def test_contextual_state_dim2():
    ctx = MeasurementContext(PureState((1, 1)), std_observable(2))
    rho = contextual_state(ctx)
    assert rho.weights == (HALF, HALF)
    assert rho.matrix() == ((HALF, ZERO), (ZERO, HALF))


def test_contextual_state_of_eigenstate_is_the_state():
    ctx = MeasurementContext(PureState((0, 3)), std_observable(2))
    rho = contextual_state(ctx)
    assert rho.weights == (ONE,)
    assert rho.matrix() == ctx.state.matrix()


def test_contextual_state_dim3():
    assert contextual_state(ctx_generic3()).weights == (THIRD, THIRD, THIRD)


def test_degenerate_flag():
    obs = Observable.from_eigenspaces([(1, [(1, 0, 0)]), (-1, [(0, 1, 0), (0, 0, 1)])], 3)
    rho = contextual_state(MeasurementContext(PureState((1, 1, 1)), obs))
    assert rho.degenerate
    assert rho.weights == (THIRD, parse_scalar("2/3"))


@settings(max_examples=40)
@given(random_contexts())
def test_weights_match_sympy_overlaps(case):
    _, ctx = case
    rho = contextual_state(ctx)
    psi = sympy.Matrix([to_sympy(x) for x in ctx.state.vector])
    norm = (psi.H * psi)[0]
    total = 0
    for atom, w in rho.components:
        a = sympy.Matrix([to_sympy(x) for x in atom.basis[0]])
        overlap = (a.H * psi)[0]
        expected = overlap * sympy.conjugate(overlap) / ((a.H * a)[0] * norm)
        assert sympy_equal(to_sympy(w), expected)
        assert w.is_real() and w.real_sign() > 0
        total = total + w
    assert total == ONE


@settings(max_examples=40)
@given(random_contexts())
def test_contextual_state_matrix_is_the_dephased_state(case):
    _, ctx = case
    m = contextual_state(ctx).matrix()
    assert m == dephased_matrix(ctx)
    assert adjoint(m) == m
    assert trace(m) == ONE


# -- expectations ------------------------------------------------------------------------


def test_expectation_examples():
    state = PureState((1, 1))
    a = Observable.from_basis([(1, 0), (0, 1)], [1, -1])
    b = Observable.from_basis([(1, 1), (1, -1)], [1, -1])
    rho = contextual_state(MeasurementContext(state, a))
    assert expectation(state, a) == ZERO
    assert expectation(rho, a) == ZERO
    assert expectation(state, b) == ONE
    assert expectation(rho, b) == ZERO


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        expectation(PureState((1, 1)), std_observable(3))


@settings(max_examples=30)
@given(random_contexts(maximal=True))
def test_trace_equality_on_frame_observables(case):
    rng, ctx = case
    rho = contextual_state(ctx)
    for _ in range(5):
        b = frame_observable(rng, ctx.structure)
        assert expectation(ctx.state, b) == expectation(rho, b)


# -- context-relative valuation --------------------------------------------------------


@pytest.mark.parametrize(
    "p, verdict",
    [
        (ray(1, 0, 0), Verdict.TRUE),
        (Subspace.span([(0, 1, 0), (0, 0, 1)]), Verdict.FALSE),
        (ray(1, 1, 0), Verdict.UNDECIDABLE_IN_CONTEXT),
    ],
)
def test_pcc_examples(p, verdict):
    assert pcc_valuate(ctx_generic3(), TwoValuedHom(0), p) is verdict


def test_pcc_rejects_foreign_hom():
    with pytest.raises(ValueError):
        pcc_valuate(ctx_generic3(), TwoValuedHom(3), ray(1, 0, 0))


def test_undecidable_is_not_about_probability():
    # a member with probability strictly between 0 and 1 still gets TRUE/FALSE
    ctx = ctx_generic3()
    p = ray(1, 0, 0)
    assert born_probability(ctx.state.vector, p) == THIRD
    verdicts = {pcc_valuate(ctx, h, p) for h in enumerate_homs(ctx.structure)}
    assert verdicts == {Verdict.TRUE, Verdict.FALSE}


@settings(max_examples=40)
@given(random_contexts())
def test_exactly_one_atom_true_per_hom(case):
    _, ctx = case
    for h in enumerate_homs(ctx.structure):
        verdicts = [pcc_valuate(ctx, h, a) for a in ctx.structure.atoms]
        assert verdicts.count(Verdict.TRUE) == 1
        assert verdicts.count(Verdict.FALSE) == len(verdicts) - 1


@pytest.mark.parametrize("seed", range(5))
def test_members_containing_the_state_are_true_everywhere(seed):
    rng = random.Random(seed)
    found = 0
    while found < 100:
        n = rng.choice([2, 3, 4])
        ctx = MeasurementContext(random_state(rng, n), random_observable(rng, n))
        p = join(member_proposition(rng, ctx.structure), ctx.state.ray) if rng.random() < 0.5 \
            else member_proposition(rng, ctx.structure)
        if not (membership(ctx.structure, p) and leq(ctx.state.ray, p)):
            continue
        found += 1
        assert global_valuate(ctx.state, p) is Verdict.TRUE
        assert all(leq(a, p) for a in ctx.structure.atoms)
        for h in enumerate_homs(ctx.structure, verify=False):
            assert pcc_valuate(ctx, h, p) is Verdict.TRUE


# -- conditions on the contextual state ----------------------------------------------


@settings(max_examples=30)
@given(random_contexts())
def test_constructed_contexts_pass_conditions(case):
    _, ctx = case
    assert conditions_check(ctx) == []


def test_non_eigenvector_atom_is_reported():
    ctx = ctx_generic3()
    ds = ctx.structure
    bad = dataclasses.replace(ds, atoms=(ray(1, 1, 0),) + ds.atoms[1:])
    report = conditions_check(MeasurementContext(ctx.state, ctx.observable, bad))
    assert any(line.startswith("(i)") for line in report)


def test_duplicated_atom_is_reported():
    ctx = ctx_generic3()
    ds = ctx.structure
    bad = dataclasses.replace(ds, atoms=(ds.atoms[0], ds.atoms[0], ds.atoms[2]))
    report = conditions_check(MeasurementContext(ctx.state, ctx.observable, bad))
    assert any(line.startswith("(ii)") for line in report)


def test_atom_orthogonal_to_state_is_reported():
    ctx = MeasurementContext(PureState((1, 1, 0)), std_observable(3))
    ds = ctx.structure
    bad = dataclasses.replace(ds, atoms=ds.atoms + (ray(0, 0, 1),))
    report = conditions_check(MeasurementContext(ctx.state, ctx.observable, bad))
    assert any(line.startswith("(iii)") for line in report)


# -- T-schema --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "p",
    [ray(1, 0, 0), Subspace.span([(1, 0, 0), (0, 1, 0)]), Subspace.full(3), Subspace.zero(3)],
)
def test_t_schema_examples(p):
    assert t_schema_check(ctx_generic3(), p)


def test_join_of_two_atoms_is_true_under_two_homs():
    ctx = ctx_generic3()
    p = Subspace.span([(1, 0, 0), (0, 1, 0)])
    verdicts = [pcc_valuate(ctx, h, p) for h in enumerate_homs(ctx.structure)]
    assert verdicts == [Verdict.TRUE, Verdict.TRUE, Verdict.FALSE]


def test_t_schema_precondition():
    with pytest.raises(ValueError):
        t_schema_check(ctx_generic3(), ray(1, 1, 0))


def test_contextual_state_type():
    rho = contextual_state(ctx_generic3())
    assert isinstance(rho, ContextualState)
    assert rho.ambient_dim == 3
