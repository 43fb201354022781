from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlattice.bub_clifton import (
    NonMaximalObservable,
    Observable,
    PureState,
    TwoValuedHom,
    boolean_frame,
    enumerate_homs,
    hom_extends,
    membership,
    null_rays_check,
    project_state,
    standard_sublattice_membership,
)
from qlattice.events import compatible
from qlattice.ks import RaySystem, check_assignment
from qlattice.linalg import DimensionMismatch, Subspace, join, join_all, leq, meet, ortho, orthogonal
from qlattice.sampling import (
    member_proposition,
    mixed_proposition,
    random_eigenstate,
    random_observable,
    random_state,
    random_subspace,
    random_vector,
)


def std_observable(n: int) -> Observable:
    return Observable.from_basis([tuple(int(j == k) for j in range(n)) for k in range(n)], range(1, n + 1))


def ray(*v) -> Subspace:
    return Subspace.span([v])


@st.composite
def contexts(draw, dims=(2, 3, 4), maximal=None):
    rng = random.Random(draw(st.integers(0, 2**32)))
    n = rng.choice(dims)
    obs = random_observable(rng, n, maximal=maximal)
    return rng, random_state(rng, n), obs


# -- construction ---------------------------------------------------------------------


def test_superposition_in_dim2():
    ds = project_state(PureState((1, 1)), std_observable(2))
    assert ds.atoms == (ray(1, 0), ray(0, 1))
    assert ds.remainder.is_zero()


def test_hand_projection_dim2():
    d, a1, a2 = ray(1, 1), ray(1, 0), ray(0, 1)
    assert meet(join(d, ortho(a1)), a1) == a1
    assert meet(join(d, a2), a1) == a1


def test_eigenstate_keeps_only_itself():
    ds = project_state(PureState((1, 0)), std_observable(2))
    assert ds.atoms == (ray(1, 0),)
    assert ds.dropped == (1,)


def test_generic_state_dim3():
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    assert ds.k == 3
    assert ds.atoms == (ray(1, 0, 0), ray(0, 1, 0), ray(0, 0, 1))
    assert ds.remainder.is_zero()


def test_degenerate_observable_atom_is_projected_state():
    obs = Observable.from_eigenspaces([(1, [(1, 0, 0)]), (-1, [(0, 1, 0), (0, 0, 1)])], 3)
    ds = project_state(PureState((1, 2, 3)), obs)
    assert ds.atoms == (ray(1, 0, 0), ray(0, 2, 3))
    assert ds.remainder == ray(0, 3, -2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        project_state(PureState((1, 1)), std_observable(3))
    ds = project_state(PureState((1, 1)), std_observable(2))
    with pytest.raises(DimensionMismatch):
        membership(ds, Subspace.full(3))


@pytest.mark.parametrize(
    "pairs",
    [
        [(1, [(1, 0)]), (1, [(0, 1)])],
        [(1, [(1, 0)]), (2, [(1, 1)])],
        [(1, [(1, 0, 0)]), (2, [(0, 1, 0)])],
    ],
)
def test_observable_validation(pairs):
    with pytest.raises(ValueError):
        Observable.from_eigenspaces(pairs)


def test_zero_state_is_rejected():
    with pytest.raises(ValueError):
        PureState((0, 0))


# -- membership ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "p, expected",
    [(ray(1, 0, 0), True), (ray(1, 1, 0), False), (Subspace.full(3), True), (Subspace.zero(3), True)],
)
def test_membership_examples(p, expected):
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    assert membership(ds, p) is expected


@pytest.mark.parametrize(
    "state, p, expected",
    [
        ((1, 0, 0), Subspace.span([(1, 0, 0), (0, 1, 0)]), True),
        ((1, 0, 0), ray(0, 1, 0), True),
        ((1, 1, 0), ray(1, 0, 0), False),
    ],
)
def test_standard_sublattice_examples(state, p, expected):
    assert standard_sublattice_membership(PureState(state), p) is expected


def test_standard_sublattice_dim2_angle():
    assert not standard_sublattice_membership(PureState((1, 1)), ray(1, 0))


@settings(max_examples=40)
@given(contexts())
def test_de_morgan_partition(case):
    rng, state, obs = case
    ds = project_state(state, obs)
    n = ds.ambient_dim
    meet_of_complements = Subspace.full(n)
    for a in ds.atoms:
        meet_of_complements = meet(meet_of_complements, ortho(a))
    assert ortho(join_all(ds.atoms, n)) == meet_of_complements == ds.remainder
    for a, b in itertools.combinations(ds.atoms, 2):
        assert orthogonal(a, b)
    assert join_all([*ds.atoms, ds.remainder], n) == Subspace.full(n)


@settings(max_examples=40)
@given(contexts())
def test_membership_is_intersection_of_single_atom_sublattices(case):
    rng, state, obs = case
    ds = project_state(state, obs)
    for _ in range(20):
        p = mixed_proposition(rng, ds)
        single = all(standard_sublattice_membership(PureState(a.basis[0]), p) for a in ds.atoms)
        assert membership(ds, p) == single


@pytest.mark.parametrize("seed", range(10))
def test_subset_claim_on_compatible_fragment(seed):
    rng = random.Random(seed)
    checked = 0
    while checked < 100:
        n = rng.choice([3, 4])
        state, obs = random_state(rng, n), random_observable(rng, n)
        ds = project_state(state, obs)
        p = mixed_proposition(rng, ds)
        if not standard_sublattice_membership(state, p):
            continue
        checked += 1
        if all(compatible(p, a) for a in ds.atoms):
            assert membership(ds, p)


def test_subset_claim_fails_without_compatibility():
    # P is orthogonal to the state, so it lies in L(D), but it splits both atoms
    state = PureState((1, 1, 0))
    ds = project_state(state, std_observable(3))
    p = ray(1, -1, 0)
    assert standard_sublattice_membership(state, p)
    assert not membership(ds, p)
    assert not compatible(p, ds.atoms[0])


@pytest.mark.parametrize("seed", range(20))
def test_members_sampler_produces_members(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3, 4])
    ds = project_state(random_state(rng, n), random_observable(rng, n))
    for _ in range(10):
        assert membership(ds, member_proposition(rng, ds))


@pytest.mark.parametrize("seed", range(10))
def test_eigenstate_collapse(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3, 4])
    obs = random_observable(rng, n)
    state = random_eigenstate(rng, obs)
    ds = project_state(state, obs)
    assert ds.k == 1
    for _ in range(50):
        p = mixed_proposition(rng, ds)
        assert membership(ds, p) == standard_sublattice_membership(state, p)


def test_superposition_differs_from_standard_sublattice():
    state = PureState((1, 1, 0))
    ds = project_state(state, std_observable(3))
    p = ray(1, 1, 0)
    assert standard_sublattice_membership(state, p)
    assert not membership(ds, p)


# -- frames and homomorphisms --------------------------------------------------------


def test_frame_dim3():
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    frame = boolean_frame(ds)
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    expected = {Subspace.span(c, 3) for k in range(4) for c in itertools.combinations(e, k)}
    assert frame.subspaces == expected
    assert len(frame) == 8


def test_frame_dim2():
    assert len(boolean_frame(project_state(PureState((1, 1)), std_observable(2)))) == 4


def test_frame_of_eigenstate_dim2():
    ds = project_state(PureState((1, 1)), Observable.from_basis([(1, 1), (1, -1)], [1, -1]))
    assert ds.atoms == (ray(1, 1),)
    frame = boolean_frame(ds)
    assert frame.subspaces == {Subspace.zero(2), ray(1, 1), ray(1, -1), Subspace.full(2)}


def test_frame_refuses_degenerate_observable():
    obs = Observable.from_eigenspaces([(1, [(1, 0, 0)]), (-1, [(0, 1, 0), (0, 0, 1)])], 3)
    ds = project_state(PureState((1, 1, 1)), obs)
    with pytest.raises(NonMaximalObservable):
        boolean_frame(ds)
    assert len(enumerate_homs(ds)) == 2


@pytest.mark.parametrize(
    "state, k",
    [((1, 1, 1), 3), ((1, 0, 0), 1), ((1, 1, 0, 0), 2), ((0, 2, 0, 1), 2), ((1, 1), 2)],
)
def test_hom_counts(state, k):
    ds = project_state(PureState(state), std_observable(len(state)))
    homs = enumerate_homs(ds)
    assert len(homs) == k
    assert [h.true_atom_index for h in homs] == list(range(k))


@settings(max_examples=40)
@given(contexts(dims=(3, 4), maximal=True))
def test_each_hom_selects_exactly_one_atom(case):
    _, state, obs = case
    ds = project_state(state, obs)
    expected_k = sum(1 for s in obs.eigenspaces if not orthogonal(s, state.ray))
    homs = enumerate_homs(ds)
    assert len(homs) == expected_k
    for h in homs:
        assert [h.value(ds, a) for a in ds.atoms].count(1) == 1


@settings(max_examples=30)
@given(contexts(dims=(2, 3, 4), maximal=True))
def test_homs_obey_the_sum_rule_in_every_frame_context(case):
    _, state, obs = case
    ds = project_state(state, obs)
    n = ds.ambient_dim
    eigen = list(obs.eigenspaces)
    rs = RaySystem(n, tuple(eigen), (tuple(range(n)),))
    for h in enumerate_homs(ds):
        values = {r: h.value(ds, eigen[r]) for r in range(n)}
        assert check_assignment(rs, values) == []
        # coarser contexts: partitions of the eigenrays into frame elements
        for cut in range(1, n):
            left, right = join_all(eigen[:cut], n), join_all(eigen[cut:], n)
            assert h.value(ds, left) + h.value(ds, right) == 1


# -- null rays --------------------------------------------------------------------------


def test_null_rays_vacuous():
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    assert null_rays_check(ds, []) == []


def test_null_ray_in_remainder():
    ds = project_state(PureState((1, 1, 0, 0)), std_observable(4))
    [(r, p)] = null_rays_check(ds, [ray(0, 0, 1, 1)])
    assert p == 0


def test_null_ray_outside_remainder():
    ds = project_state(PureState((1, 1, 0, 0)), std_observable(4))
    with pytest.raises(ValueError):
        null_rays_check(ds, [ray(1, 1, 0, 0)])


# -- maximality probe ---------------------------------------------------------------


def test_extra_ray_kills_the_hom_of_the_split_atom():
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    extra = ray(1, 1, 0)
    assert not membership(ds, extra)
    outcome = [hom_extends(ds, h, extra) for h in enumerate_homs(ds)]
    # atoms e1, e2 are split by the extra ray; e3 is orthogonal to it
    assert outcome == [False, False, True]


def test_member_ray_extends_every_hom():
    ds = project_state(PureState((1, 1, 0, 0)), std_observable(4))
    for extra in [ray(0, 0, 1, 1), ray(1, 0, 0, 0)]:
        assert membership(ds, extra)
        assert all(hom_extends(ds, h, extra) for h in enumerate_homs(ds))


@pytest.mark.parametrize("seed", range(25))
def test_maximality_probe(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 4])
    ds = project_state(random_state(rng, n), random_observable(rng, n, maximal=True))
    homs = enumerate_homs(ds)
    tried = 0
    while tried < 4:
        extra = Subspace.span([random_vector(rng, n)], n)
        if membership(ds, extra):
            continue
        tried += 1
        results = [hom_extends(ds, h, extra) for h in homs]
        assert not all(results)
        for h, ok in zip(homs, results):
            split = not leq(ds.atoms[h.true_atom_index], extra) and not orthogonal(ds.atoms[h.true_atom_index], extra)
            assert ok == (not split)


def test_hom_value_is_inclusion_of_selected_atom():
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    h = TwoValuedHom(0)
    assert h.value(ds, Subspace.span([(1, 0, 0), (0, 1, 0)])) == 1
    assert h.value(ds, ray(0, 0, 1)) == 0


def test_eigenvalues_must_be_rational():
    with pytest.raises(TypeError):
        Observable(((1.5, ray(1, 0)), (Fraction(2), ray(0, 1))))


def test_random_subspaces_rarely_members():
    rng = random.Random(0)
    ds = project_state(PureState((1, 1, 1)), std_observable(3))
    members = sum(membership(ds, random_subspace(rng, 3)) for _ in range(50))
    assert members < 50
