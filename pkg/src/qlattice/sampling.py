"""Seeded random generators for subspaces, observables and states.

Everything draws from an explicit :class:`random.Random` so that property
tests and CLI sweeps are reproducible from a single seed.  Entries are small
Gaussian integers (or plain integers with ``complex_entries=False``), which
keeps exact arithmetic fast while still exercising the complex inner product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bub_clifton import DeterminateStructure, Observable, PureState
from .linalg import Subspace, Vector, join_all, ortho
from .scalar import ZERO, Scalar

__all__ = [
    "SamplerConfig",
    "random_scalar",
    "random_vector",
    "random_subspace",
    "random_orthogonal_basis",
    "random_observable",
    "random_maximal_observable",
    "random_state",
    "random_eigenstate",
    "compatible_pair",
    "frame_observable",
    "member_proposition",
    "mixed_proposition",
]


@dataclass(frozen=True)
class SamplerConfig:
    """Entry range and field for the generators."""

    bound: int = 2
    complex_entries: bool = True
    zero_weight: float = 0.3


DEFAULT = SamplerConfig()


def random_scalar(rng: random.Random, cfg: SamplerConfig = DEFAULT) -> Scalar:
    if rng.random() < cfg.zero_weight:
        return ZERO
    re = rng.randint(-cfg.bound, cfg.bound)
    im = rng.randint(-cfg.bound, cfg.bound) if cfg.complex_entries else 0
    return Scalar(re, 0, im)


def random_vector(rng: random.Random, n: int, cfg: SamplerConfig = DEFAULT) -> Vector:
    while True:
        v = tuple(random_scalar(rng, cfg) for _ in range(n))
        if any(v):
            return v


def _combination(rng: random.Random, basis: Sequence[Vector], cfg: SamplerConfig) -> Vector:
    # non-zero random combination of the given (independent) vectors
    n = len(basis[0])
    while True:
        coeffs = [random_scalar(rng, cfg) for _ in basis]
        v = tuple(sum((c * b[k] for c, b in zip(coeffs, basis) if c), ZERO) for k in range(n))
        if any(v):
            return v


def random_subspace(
    rng: random.Random, n: int, rank: int | None = None, cfg: SamplerConfig = DEFAULT
) -> Subspace:
    """Random subspace of C^n; uniform rank in ``0..n`` unless given."""
    target = rng.randint(0, n) if rank is None else rank
    s = Subspace.zero(n)
    while s.rank < target:
        s = join_all([s, Subspace.span([random_vector(rng, n, cfg)], n)], n)
    return s


def random_orthogonal_basis(rng: random.Random, n: int, cfg: SamplerConfig = DEFAULT) -> list[Vector]:
    """Orthogonal (unnormalised) basis of C^n in random order."""
    out: list[Vector] = []
    while len(out) < n:
        rest = ortho(Subspace.span(out, n)) if out else Subspace.full(n)
        v = _combination(rng, rest.basis, cfg)
        out.append(Subspace.span([v], n).basis[0])
    rng.shuffle(out)
    return out


def _distinct_values(rng: random.Random, k: int) -> list[Fraction]:
    pool = [Fraction(a, b) for a in range(-6, 7) for b in (1, 2, 3)]
    return rng.sample(sorted(set(pool)), k)


def random_observable(
    rng: random.Random, n: int, maximal: bool | None = None, cfg: SamplerConfig = DEFAULT
) -> Observable:
    """Observable with a random orthogonal eigenbasis.

    ``maximal=True`` gives rank-1 eigenspaces, ``False`` forces at least one
    degenerate eigenspace, ``None`` picks at random.
    """
    basis = random_orthogonal_basis(rng, n, cfg)
    if maximal is None:
        maximal = rng.random() < 0.5
    if maximal:
        groups = [[b] for b in basis]
    else:
        if n < 2:
            raise ValueError("a degenerate observable needs dimension >= 2")
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 2)))
        bounds = [0, *cuts, n]
        groups = [basis[a:b] for a, b in zip(bounds, bounds[1:])]
    values = _distinct_values(rng, len(groups))
    return Observable(tuple((v, Subspace.span(g, n)) for v, g in zip(values, groups)))


def random_maximal_observable(rng: random.Random, n: int, cfg: SamplerConfig = DEFAULT) -> Observable:
    return random_observable(rng, n, maximal=True, cfg=cfg)


def random_state(rng: random.Random, n: int, cfg: SamplerConfig = DEFAULT) -> PureState:
    return PureState(random_vector(rng, n, cfg))


def random_eigenstate(rng: random.Random, obs: Observable, cfg: SamplerConfig = DEFAULT) -> PureState:
    space = rng.choice(obs.eigenspaces)
    return PureState(_combination(rng, space.basis, cfg))


def compatible_pair(rng: random.Random, n: int, cfg: SamplerConfig = DEFAULT) -> tuple[Subspace, Subspace]:
    """Two subspaces spanned by subsets of one orthogonal basis (so they commute)."""
    basis = random_orthogonal_basis(rng, n, cfg)
    pick = lambda: Subspace.span([b for b in basis if rng.random() < 0.5], n)  # noqa: E731
    return pick(), pick()


def frame_observable(rng: random.Random, ds: DeterminateStructure) -> Observable:
    """Observable whose eigenprojectors all lie in the Boolean frame.

    Requires a maximal observable in ``ds``; the eigenrays are grouped into a
    random partition and each block gets a distinct rational eigenvalue.
    """
    rays = list(ds.observable.eigenspaces)
    rng.shuffle(rays)
    n = ds.ambient_dim
    blocks: list[list[Subspace]] = []
    for r in rays:
        if blocks and rng.random() < 0.4:
            rng.choice(blocks).append(r)
        else:
            blocks.append([r])
    values = _distinct_values(rng, len(blocks))
    return Observable(tuple((v, join_all(b, n)) for v, b in zip(values, blocks)))


def member_proposition(rng: random.Random, ds: DeterminateStructure, cfg: SamplerConfig = DEFAULT) -> Subspace:
    """Uniformly structured member of the determinate sublattice.

    Every member is a join of some atoms with a subspace of the remainder,
    so sampling both parts covers the whole sublattice.
    """
    n = ds.ambient_dim
    atoms = [a for a in ds.atoms if rng.random() < 0.5]
    extra = Subspace.zero(n)
    rest = ds.remainder
    if rest.rank:
        k = rng.randint(0, rest.rank)
        vecs = [_combination(rng, rest.basis, cfg) for _ in range(k)]
        extra = Subspace.span(vecs, n) if vecs else extra
    return join_all([*atoms, extra], n)


def mixed_proposition(rng: random.Random, ds: DeterminateStructure, cfg: SamplerConfig = DEFAULT) -> Subspace:
    """A proposition drawn from one of several families.

    Plain random subspaces rarely land in the sublattice, so the mix also
    includes members, subspaces containing the state, and subspaces of the
    state's complement.
    """
    n = ds.ambient_dim
    d = ds.state.ray
    kind = rng.randrange(4)
    if kind == 0:
        return random_subspace(rng, n, cfg=cfg)
    if kind == 1:
        return member_proposition(rng, ds, cfg)
    perp = ortho(d)
    k = rng.randint(0, perp.rank)
    vecs = [_combination(rng, perp.basis, cfg) for _ in range(k)]
    inside = Subspace.span(vecs, n) if vecs else Subspace.zero(n)
    if kind == 2:
        return join_all([d, inside], n)
    return inside
