"""Quantum event algebras over finite families of subspaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import (
    DimensionMismatch,
    Subspace,
    commutes,
    join,
    leq,
    meet,
    ortho,
    orthogonal,
    projector_matrix,
)

__all__ = [
    "Event",
    "EventFamily",
    "AxiomViolation",
    "ClosureOverflow",
    "CompatibilityDisagreement",
    "generate_sublattice",
    "orthogonal_closure",
    "is_distributive",
    "distributivity_counterexample",
    "commute_test",
    "boolean_sublattice_test",
    "compatible",
    "check_axioms",
    "format_axiom_report",
    "orthomodular_check",
    "CLOSURE_CAP",
]

CLOSURE_CAP = 256


class ClosureOverflow(RuntimeError):
    """Sublattice generation exceeded :data:`CLOSURE_CAP` elements."""


class CompatibilityDisagreement(RuntimeError):
    """The commutation and Boolean-sublattice tests gave different answers."""


@dataclass(frozen=True)
class Event:
    subspace: Subspace
    label: str | None = field(default=None, compare=False)

    @property
    def ambient_dim(self) -> int:
        return self.subspace.ambient_dim

    def __repr__(self) -> str:
        return f"Event({self.label or self.subspace!r})"


def _as_subspace(x: Event | Subspace) -> Subspace:
    return x.subspace if isinstance(x, Event) else x


@dataclass(frozen=True)
class EventFamily:
    """A finite fragment of an event algebra.

    ``events`` holds one entry per distinct subspace, with the bottom and top
    events always present.
    """

    ambient_dim: int
    events: tuple[Event, ...]

    @classmethod
    def of(cls, items: Iterable[Event | Subspace], n: int) -> EventFamily:
        seen: dict[Subspace, Event] = {}
        bottom, top = Subspace.zero(n), Subspace.full(n)
        for item in [Event(bottom, "0"), Event(top, "1"), *items]:
            ev = item if isinstance(item, Event) else Event(item)
            if ev.ambient_dim != n:
                raise DimensionMismatch(f"event in dimension {ev.ambient_dim}, family in {n}")
            seen.setdefault(ev.subspace, ev)
        events = []
        for k, ev in enumerate(seen.values()):
            events.append(ev if ev.label else Event(ev.subspace, f"E{k}"))
        return cls(n, tuple(events))

    def __len__(self) -> int:
        return len(self.events)

    def __contains__(self, item: Event | Subspace) -> bool:
        s = _as_subspace(item)
        return any(ev.subspace == s for ev in self.events)

    @property
    def subspaces(self) -> frozenset[Subspace]:
        return frozenset(ev.subspace for ev in self.events)

    @property
    def closed_under_ortho(self) -> bool:
        subs = self.subspaces
        return all(ortho(s) in subs for s in subs)


# -- sublattice generation ----------------------------------------------------


@dataclass(frozen=True)
class _Closure:
    elements: tuple[Subspace, ...]
    meets: tuple[tuple[int, ...], ...]
    joins: tuple[tuple[int, ...], ...]


def generate_sublattice(seeds: Iterable[Subspace], cap: int = CLOSURE_CAP) -> _Closure:
    """Close ``seeds`` plus 0 and 1 under meet, join and ortho.

    Returns the elements together with full meet and join index tables.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    n = seeds[0].ambient_dim
    elems: list[Subspace] = []
    index: dict[Subspace, int] = {}

    def add(s: Subspace) -> int:
        k = index.get(s)
        if k is None:
            if len(elems) >= cap:
                raise ClosureOverflow(f"sublattice closure exceeded {cap} elements")
            k = index[s] = len(elems)
            elems.append(s)
        return k

    for s in [Subspace.zero(n), Subspace.full(n), *seeds]:
        add(s)
        add(ortho(s))
    comp: dict[int, int] = {}
    joins: dict[tuple[int, int], int] = {}
    done = 0
    while done < len(elems):
        # every element gets its ortho, then joins against all earlier elements
        i = done
        comp[i] = add(ortho(elems[i]))
        for j in range(i + 1):
            joins[(j, i)] = add(join(elems[j], elems[i]))
        done += 1
    size = len(elems)
    for i in range(size):
        comp.setdefault(i, index[ortho(elems[i])])
    join_tab = [[0] * size for _ in range(size)]
    for (j, i), k in joins.items():
        join_tab[i][j] = join_tab[j][i] = k
    meet_tab = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            # de Morgan inside a closed family: a ^ b = (a* v b*)*
            k = comp[join_tab[comp[i]][comp[j]]]
            meet_tab[i][j] = meet_tab[j][i] = k
    return _Closure(tuple(elems), tuple(map(tuple, meet_tab)), tuple(map(tuple, join_tab)))


def orthogonal_closure(seeds: Iterable[Subspace], n: int, cap: int = 4096) -> list[Subspace]:
    """Smallest family containing ``seeds``, closed under ortho and under
    joins of orthogonal pairs.  Returned in first-seen order."""
    elems: dict[Subspace, None] = dict.fromkeys([Subspace.zero(n), Subspace.full(n)])
    for s in seeds:
        elems.setdefault(s)
        elems.setdefault(ortho(s))
    while True:
        current = list(elems)
        for s, t in itertools.combinations(current, 2):
            if orthogonal(s, t):
                elems.setdefault(join(s, t))
        for s in list(elems):
            elems.setdefault(ortho(s))
        if len(elems) > cap:
            raise ClosureOverflow(f"orthogonal closure exceeded {cap} elements")
        if len(elems) == len(current):
            return current


def distributivity_counterexample(closure: _Closure) -> tuple[int, int, int] | None:
    """First index triple violating ``x ^ (y v z) = (x ^ y) v (x ^ z)``."""
    mt, jt = closure.meets, closure.joins
    size = len(closure.elements)
    for x in range(size):
        mx = mt[x]
        for y in range(size):
            jy = jt[y]
            for z in range(y + 1, size):
                if mx[jy[z]] != jt[mx[y]][mx[z]]:
                    return x, y, z
    return None


def is_distributive(closure: _Closure) -> bool:
    return distributivity_counterexample(closure) is None


# -- compatibility ------------------------------------------------------------


def commute_test(l: Event | Subspace, lp: Event | Subspace) -> bool:
    a, b = _as_subspace(l), _as_subspace(lp)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    return commutes(projector_matrix(a), projector_matrix(b))


def boolean_sublattice_test(l: Event | Subspace, lp: Event | Subspace) -> bool:
    a, b = _as_subspace(l), _as_subspace(lp)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    return is_distributive(generate_sublattice([a, ortho(a), b, ortho(b)]))


def compatible(l: Event | Subspace, lp: Event | Subspace) -> bool:
    """True iff ``{l, l*, l', l'*}`` generates a Boolean sublattice.

    Also runs the projector commutation test and raises
    :class:`CompatibilityDisagreement` if the two ever differ.
    """
    by_lattice = boolean_sublattice_test(l, lp)
    by_commutator = commute_test(l, lp)
    if by_lattice != by_commutator:
        raise CompatibilityDisagreement(
            f"lattice test says {by_lattice}, commutator test says {by_commutator} for {l!r}, {lp!r}"
        )
    return by_lattice


# -- axioms -------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    labels: tuple[str, ...]

    def __str__(self) -> str:
        return f"AXIOM {self.axiom} FAIL: {', '.join(self.labels)}"


def check_axioms(family: EventFamily) -> list[AxiomViolation]:
    """Check event-algebra axioms a-f on a finite family.

    a: l <= 1;  b: l** = l;  c: l* is in the family and l v l* = 1;
    d: l <= l' implies l'* <= l*;  e: l orthogonal to l' implies l v l' is in
    the family;  f: l <= l' implies l, l' compatible.  Axiom e can only be
    checked on the sampled pairs.
    """
    n = family.ambient_dim
    top = Subspace.full(n)
    subs = family.subspaces
    out: list[AxiomViolation] = []
    comps = {ev.subspace: ortho(ev.subspace) for ev in family.events}
    for ev in family.events:
        s = ev.subspace
        if not leq(s, top):
            out.append(AxiomViolation("a", (ev.label,)))
        if ortho(comps[s]) != s:
            out.append(AxiomViolation("b", (ev.label,)))
        if comps[s] not in subs or join(s, comps[s]) != top:
            out.append(AxiomViolation("c", (ev.label,)))
    if ortho(top) not in subs:
        out.append(AxiomViolation("c", ("0",)))
    for ev, fv in itertools.permutations(family.events, 2):
        s, t = ev.subspace, fv.subspace
        below = leq(s, t)
        if below:
            if not leq(comps[t], comps[s]):
                out.append(AxiomViolation("d", (ev.label, fv.label)))
            if not compatible(s, t):
                out.append(AxiomViolation("f", (ev.label, fv.label)))
    for ev, fv in itertools.combinations(family.events, 2):
        s, t = ev.subspace, fv.subspace
        if leq(s, comps[t]) and join(s, t) not in subs:
            out.append(AxiomViolation("e", (ev.label, fv.label)))
    out.sort(key=lambda v: v.axiom)
    return out


def format_axiom_report(violations: Sequence[AxiomViolation]) -> str:
    return "".join(f"{v}\n" for v in violations)


def orthomodular_check(a: Event | Subspace, b: Event | Subspace) -> bool:
    """Orthomodular law ``b = a v (a* ^ b)`` for ``a <= b``."""
    a, b = _as_subspace(a), _as_subspace(b)
    if not leq(a, b):
        raise ValueError("orthomodular_check requires a <= b")
    return join(a, meet(ortho(a), b)) == b
