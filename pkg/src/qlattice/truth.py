"""Trivalent and context-relative truth valuation.

``global_valuate`` is the state-only valuation: true on propositions
containing the state, false on those orthogonal to it, indeterminate
otherwise.  Inside a measurement context ``(D, A)`` a proposition is first
tested for membership in the determinate sublattice.  Non-members are
undecidable in that context.  Members are true exactly when the atom picked
by the chosen homomorphism lies in them.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Union

from .bub_clifton import (
    DeterminateStructure,
    Observable,
    PureState,
    TwoValuedHom,
    born_probability,
    membership,
    project_state,
)
from .linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    leq,
    matadd,
    matmul,
    matscale,
    orthogonal,
    projector_matrix,
    trace,
    zero_matrix,
)
from .scalar import ONE, Scalar

__all__ = [
    "Verdict",
    "MeasurementContext",
    "ContextualState",
    "global_valuate",
    "contextual_state",
    "dephased_matrix",
    "expectation",
    "pcc_valuate",
    "conditions_check",
    "t_schema_check",
]


class Verdict(enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    INDETERMINATE = "INDETERMINATE"
    UNDECIDABLE_IN_CONTEXT = "UNDECIDABLE-IN-CONTEXT"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MeasurementContext:
    """The pair ``(D, A)``; ``structure`` defaults to ``project_state(D, A)``.

    Passing an explicit structure is only meant for building deliberately
    defective contexts to exercise :func:`conditions_check`.
    """

    state: PureState
    observable: Observable
    structure: DeterminateStructure = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.state.ambient_dim != self.observable.ambient_dim:
            raise DimensionMismatch("state and observable dimensions differ")
        if self.structure is None:
            object.__setattr__(self, "structure", project_state(self.state, self.observable))


@dataclass(frozen=True)
class ContextualState:
    """Mixture ``sum_i w_i |a_i><a_i|`` over the atoms of a context.

    ``degenerate`` records that the observable had a degenerate eigenspace,
    in which case the atoms are the projected rays rather than eigenvectors
    fixed by the observable alone.
    """

    components: tuple[tuple[Subspace, Scalar], ...]
    degenerate: bool = False

    @property
    def ambient_dim(self) -> int:
        return self.components[0][0].ambient_dim

    @property
    def weights(self) -> tuple[Scalar, ...]:
        return tuple(w for _, w in self.components)

    def matrix(self) -> Matrix:
        out = zero_matrix(self.ambient_dim)
        for atom, w in self.components:
            out = matadd(out, matscale(w, projector_matrix(atom)))
        return out


Density = Union[PureState, ContextualState]


def global_valuate(state: PureState, p: Subspace) -> Verdict:
    if state.ambient_dim != p.ambient_dim:
        raise DimensionMismatch("state and proposition dimensions differ")
    d = state.ray
    if leq(d, p):
        return Verdict.TRUE
    if orthogonal(d, p):
        return Verdict.FALSE
    return Verdict.INDETERMINATE


def contextual_state(ctx: MeasurementContext) -> ContextualState:
    psi = ctx.state.vector
    comps = tuple((atom, born_probability(psi, atom)) for atom in ctx.structure.atoms)
    return ContextualState(comps, degenerate=not ctx.observable.maximal)


def dephased_matrix(ctx: MeasurementContext) -> Matrix:
    """``sum_i P_i D P_i`` over the observable's eigenprojectors."""
    rho = ctx.state.matrix()
    out = zero_matrix(ctx.state.ambient_dim)
    for space in ctx.observable.eigenspaces:
        p = projector_matrix(space)
        out = matadd(out, matmul(matmul(p, rho), p))
    return out


def expectation(rho: Density, obs: Observable) -> Scalar:
    """``Tr(rho A)`` for a pure or contextual state."""
    if rho.ambient_dim != obs.ambient_dim:
        raise DimensionMismatch("state and observable dimensions differ")
    return trace(matmul(rho.matrix(), obs.matrix()))


def _hom_atom(ctx: MeasurementContext, hom: TwoValuedHom) -> Subspace:
    if not 0 <= hom.true_atom_index < ctx.structure.k:
        raise ValueError(f"hom {hom.true_atom_index} does not belong to a structure with {ctx.structure.k} atoms")
    return ctx.structure.atoms[hom.true_atom_index]


def pcc_valuate(ctx: MeasurementContext, hom: TwoValuedHom, p: Subspace) -> Verdict:
    """Truth of "P in context C" when the state of affairs picked by ``hom`` obtains.

    P must express something in the context (membership); what it expresses
    obtains iff the selected atom lies in P.
    """
    atom = _hom_atom(ctx, hom)
    if not membership(ctx.structure, p):
        return Verdict.UNDECIDABLE_IN_CONTEXT
    if leq(atom, p):
        return Verdict.TRUE
    if orthogonal(atom, p):
        return Verdict.FALSE
    raise AssertionError("member proposition splits the selected atom")


def conditions_check(ctx: MeasurementContext) -> list[str]:
    """Check the contextual state's atoms: eigenvectors, mutually exclusive,
    possible under the state.  Returns one message per violation."""
    ds = ctx.structure
    out = []
    spaces = ctx.observable.eigenspaces
    for j, atom in enumerate(ds.atoms):
        if atom.rank != 1:
            out.append(f"(i) atom {j} is not a ray")
        elif not any(leq(atom, s) for s in spaces):
            out.append(f"(i) atom {j} is not an eigenvector of the observable")
    for (j, a), (l, b) in itertools.combinations(enumerate(ds.atoms), 2):
        if not orthogonal(a, b):
            out.append(f"(ii) atoms {j} and {l} are not orthogonal")
    d = ctx.state.ray
    for j, atom in enumerate(ds.atoms):
        if orthogonal(atom, d):
            out.append(f"(iii) atom {j} is orthogonal to the state")
    weights = contextual_state(ctx).weights if not out else ()
    if weights and sum(weights, Scalar()) != ONE:
        out.append("weights do not sum to 1")
    return out


def t_schema_check(ctx: MeasurementContext, p: Subspace) -> bool:
    """For every hom: the valuation says TRUE iff the selected state of affairs obtains.

    "Obtains" is judged independently of the lattice order, as the selected
    atom giving P probability exactly 1.
    """
    if not membership(ctx.structure, p):
        raise ValueError("proposition is not a member of the determinate sublattice")
    for i in range(ctx.structure.k):
        hom = TwoValuedHom(i)
        asserted = pcc_valuate(ctx, hom, p) is Verdict.TRUE
        obtains = born_probability(ctx.structure.atoms[i].basis[0], p) == ONE
        if asserted != obtains:
            return False
    return True
