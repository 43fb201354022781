"""Determinate sublattices fixed by a pure state and a preferred observable.

Given a state ray ``D`` and an observable with eigenspaces ``A_i``, the atoms
``D_Ai = (D v A_i*) ^ A_i`` are the non-zero projections of ``D`` onto the
eigenspaces.  The determinate sublattice is the set of subspaces ``P`` with
every atom below ``P`` or below ``P*``.  It is infinite, so it is handled
through its membership predicate; only Boolean frames are listed explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .events import Event, EventFamily
from .linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    inner,
    join,
    join_all,
    leq,
    matadd,
    matscale,
    meet,
    ortho,
    orthogonal,
    projector_matrix,
    zero_matrix,
)
from .scalar import Scalar, as_scalar

__all__ = [
    "PureState",
    "Observable",
    "DeterminateStructure",
    "TwoValuedHom",
    "NonMaximalObservable",
    "project_state",
    "membership",
    "standard_sublattice_membership",
    "boolean_frame",
    "verification_frame",
    "enumerate_homs",
    "null_rays_check",
    "hom_extends",
    "born_probability",
]


class NonMaximalObservable(ValueError):
    """The Boolean frame of a degenerate observable is not finite."""


@dataclass(frozen=True)
class PureState:
    """A pure state given by an unnormalised representative vector."""

    vector: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        vec = tuple(x if isinstance(x, Scalar) else as_scalar(x) for x in self.vector)
        if not any(vec):
            raise ValueError("state vector must be non-zero")
        object.__setattr__(self, "vector", vec)

    @property
    def ambient_dim(self) -> int:
        return len(self.vector)

    @property
    def ray(self) -> Subspace:
        return Subspace.span([self.vector], len(self.vector))

    def matrix(self) -> Matrix:
        return projector_matrix(self.ray)


def born_probability(psi: Sequence[Scalar], s: Subspace) -> Scalar:
    """``<psi|P_s|psi> / <psi|psi>``, exactly."""
    total = Scalar()
    for b in s.basis:
        c = inner(b, psi)
        if c:
            total = total + c.abs2() / inner(b, b)
    return total / inner(psi, psi)


@dataclass(frozen=True)
class Observable:
    """Self-adjoint operator given by its spectral decomposition.

    Eigenvalues are exact rationals; eigenspaces are pairwise orthogonal and
    together span the whole space.
    """

    eigenpairs: tuple[tuple[Fraction, Subspace], ...]

    def __post_init__(self) -> None:
        if not self.eigenpairs:
            raise ValueError("observable needs at least one eigenspace")
        n = self.eigenpairs[0][1].ambient_dim
        values = [v for v, _ in self.eigenpairs]
        if len(set(values)) != len(values):
            raise ValueError("eigenvalues must be distinct")
        for v, s in self.eigenpairs:
            if not isinstance(v, Fraction):
                raise TypeError("eigenvalues must be Fractions")
            if s.ambient_dim != n:
                raise DimensionMismatch("eigenspaces live in different dimensions")
            if s.is_zero():
                raise ValueError(f"eigenspace for {v} is zero")
        for (v, s), (w, t) in itertools.combinations(self.eigenpairs, 2):
            if not orthogonal(s, t):
                raise ValueError(f"eigenspaces for {v} and {w} are not orthogonal")
        if sum(s.rank for _, s in self.eigenpairs) != n:
            raise ValueError("eigenspace ranks do not add up to the dimension")

    @classmethod
    def from_eigenspaces(cls, pairs: Iterable[tuple], n: int | None = None) -> Observable:
        out = []
        for value, space in pairs:
            if not isinstance(space, Subspace):
                space = Subspace.span(space, n)
            out.append((Fraction(value), space))
        return cls(tuple(out))

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence], values: Sequence) -> Observable:
        """Non-degenerate observable with eigenvector ``basis[k]`` for ``values[k]``."""
        n = len(basis[0])
        return cls(tuple((Fraction(v), Subspace.span([b], n)) for b, v in zip(basis, values)))

    @property
    def ambient_dim(self) -> int:
        return self.eigenpairs[0][1].ambient_dim

    @property
    def eigenspaces(self) -> tuple[Subspace, ...]:
        return tuple(s for _, s in self.eigenpairs)

    @property
    def maximal(self) -> bool:
        return all(s.rank == 1 for _, s in self.eigenpairs)

    def matrix(self) -> Matrix:
        out = zero_matrix(self.ambient_dim)
        for v, s in self.eigenpairs:
            out = matadd(out, matscale(Scalar(v), projector_matrix(s)))
        return out


@dataclass(frozen=True)
class DeterminateStructure:
    """Generators of the determinate sublattice for ``(state, observable)``.

    ``eigen_index[j]`` is the eigenspace atom ``j`` came from; ``dropped``
    lists the eigenspaces orthogonal to the state, which yield no atom.
    """

    state: PureState
    observable: Observable
    atoms: tuple[Subspace, ...]
    eigen_index: tuple[int, ...]
    dropped: tuple[int, ...]
    remainder: Subspace

    @property
    def k(self) -> int:
        return len(self.atoms)

    @property
    def ambient_dim(self) -> int:
        return self.state.ambient_dim


@dataclass(frozen=True)
class TwoValuedHom:
    """The homomorphism sending atom ``true_atom_index`` to 1.

    On members of the sublattice it is ``P -> 1`` iff that atom lies in ``P``.
    """

    true_atom_index: int

    def value(self, ds: DeterminateStructure, p: Subspace) -> int:
        return 1 if leq(ds.atoms[self.true_atom_index], p) else 0


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"ambient dimensions {a} and {b} differ")


def project_state(state: PureState, observable: Observable) -> DeterminateStructure:
    n = state.ambient_dim
    _same_dim(n, observable.ambient_dim)
    d = state.ray
    atoms, index, dropped = [], [], []
    for i, a in enumerate(observable.eigenspaces):
        atom = meet(join(d, ortho(a)), a)
        if atom.is_zero():
            dropped.append(i)
        else:
            atoms.append(atom)
            index.append(i)
    remainder = ortho(join_all(atoms, n))
    return DeterminateStructure(state, observable, tuple(atoms), tuple(index), tuple(dropped), remainder)


def _splits(atom: Subspace, p: Subspace) -> bool:
    return not leq(atom, p) and not orthogonal(atom, p)


def membership(ds: DeterminateStructure, p: Subspace) -> bool:
    """``P`` is determinate: each atom lies in ``P`` or in ``P*``."""
    _same_dim(ds.ambient_dim, p.ambient_dim)
    return not any(_splits(atom, p) for atom in ds.atoms)


def standard_sublattice_membership(state: PureState, p: Subspace) -> bool:
    """The unit-observable case: ``D <= P`` or ``D <= P*``."""
    _same_dim(state.ambient_dim, p.ambient_dim)
    return not _splits(state.ray, p)


def _frame_family(generators: Sequence[tuple[str, Subspace]], n: int) -> EventFamily:
    events = []
    for bits in range(1 << len(generators)):
        chosen = [g for k, g in enumerate(generators) if bits >> k & 1]
        if not chosen:
            label = "0"
        elif len(chosen) == len(generators):
            label = "1"
        else:
            label = "|".join(name for name, _ in chosen)
        events.append(Event(join_all([s for _, s in chosen], n), label))
    return EventFamily.of(events, n)


def boolean_frame(ds: DeterminateStructure) -> EventFamily:
    """Boolean algebra generated by the eigenrays of a maximal observable.

    Generators are labelled ``A<i>`` by eigenspace index; the frame has ``2**n``
    events, ``2**k`` of them built from the atoms alone.
    """
    obs = ds.observable
    if not obs.maximal:
        raise NonMaximalObservable(
            "observable is degenerate: the propositions compatible with it do not form a finite frame"
        )
    gens = [(f"A{i}", s) for i, s in enumerate(obs.eigenspaces)]
    return _frame_family(gens, ds.ambient_dim)


def verification_frame(ds: DeterminateStructure) -> EventFamily:
    """Finite Boolean subalgebra of the determinate sublattice.

    The full frame for maximal observables; otherwise the algebra generated
    by the atoms and the remainder.
    """
    if ds.observable.maximal:
        return boolean_frame(ds)
    gens = [(f"A{i}", s) for i, s in zip(ds.eigen_index, ds.atoms)]
    if not ds.remainder.is_zero():
        gens.append(("rest", ds.remainder))
    return _frame_family(gens, ds.ambient_dim)


def _frame_tables(ds: DeterminateStructure, frame: EventFamily) -> tuple[list[Subspace], list[tuple[int, int, int, int, int]]]:
    subs = [ev.subspace for ev in frame.events]
    index = {s: k for k, s in enumerate(subs)}
    for s in subs:
        if not membership(ds, s):
            raise AssertionError(f"frame element {s!r} is not determinate")
    rows = []
    for i, j in itertools.combinations(range(len(subs)), 2):
        s, t = subs[i], subs[j]
        rows.append((i, j, index[ortho(s)], index[meet(s, t)], index[join(s, t)]))
    return subs, rows


def _check_hom(ds: DeterminateStructure, hom: TwoValuedHom, subs: list[Subspace], rows) -> None:
    val = [hom.value(ds, s) for s in subs]
    for i, j, comp_i, m, jn in rows:
        if val[comp_i] != 1 - val[i]:
            raise AssertionError(f"hom {hom.true_atom_index} breaks h(P*) = 1 - h(P)")
        if val[m] != val[i] * val[j]:
            raise AssertionError(f"hom {hom.true_atom_index} breaks h(P ^ Q) = h(P)h(Q)")
        if val[jn] != max(val[i], val[j]):
            raise AssertionError(f"hom {hom.true_atom_index} breaks h(P v Q) = max")


def enumerate_homs(ds: DeterminateStructure, verify: bool = True) -> list[TwoValuedHom]:
    """The ``k`` two-valued homomorphisms, one per atom, in atom order.

    With ``verify`` each is checked against the homomorphism laws on
    :func:`verification_frame`.
    """
    homs = [TwoValuedHom(i) for i in range(ds.k)]
    if verify:
        subs, rows = _frame_tables(ds, verification_frame(ds))
        for h in homs:
            _check_hom(ds, h, subs, rows)
    return homs


def null_rays_check(ds: DeterminateStructure, rays: Iterable[Subspace]) -> list[tuple[Subspace, Scalar]]:
    """Born probability of each ray in the remainder; all must be exactly 0."""
    out = []
    for r in rays:
        _same_dim(ds.ambient_dim, r.ambient_dim)
        if r.rank != 1:
            raise ValueError(f"{r!r} is not a ray")
        if not leq(r, ds.remainder):
            raise ValueError(f"{r!r} does not lie in the remainder subspace")
        out.append((r, born_probability(ds.state.vector, r)))
    bad = [r for r, p in out if p]
    if bad:
        raise AssertionError(f"remainder rays with non-zero probability: {bad}")
    return out


def hom_extends(ds: DeterminateStructure, hom: TwoValuedHom, extra: Subspace) -> bool:
    """Can ``hom`` be extended once ``extra`` is adjoined to the frame?

    Adjoins ``extra`` and its complement to :func:`verification_frame` and
    closes once under pairwise meets and joins.  Every new element is then
    fixed by the value chosen for ``extra``, so both choices are tried and
    checked for consistency with ``hom``, complements, meets and joins.
    """
    n = ds.ambient_dim
    frame = [ev.subspace for ev in verification_frame(ds).events]
    fixed = {s: hom.value(ds, s) for s in frame}
    fixed[Subspace.zero(n)] = 0
    fixed[Subspace.full(n)] = 1
    comp = ortho(extra)
    base = list(dict.fromkeys(frame + [extra, comp]))
    relations = []
    for s, t in itertools.combinations(base, 2):
        relations.append((meet(s, t), s, t, min))
        relations.append((join(s, t), s, t, max))
    for guess in (0, 1):
        val = dict(fixed)
        if val.setdefault(extra, guess) != guess or val.setdefault(comp, 1 - guess) != 1 - guess:
            continue
        ok = True
        for r, s, t, op in relations:
            want = op(val[s], val[t])
            if val.setdefault(r, want) != want:
                ok = False
                break
        if ok:
            ok = all(val.get(ortho(s), 1 - v) == 1 - v for s, v in val.items())
        if ok:
            return True
    return False
