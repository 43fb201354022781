"""Kochen-Specker ray systems and exhaustive two-colouring search.

A valid colouring assigns 0/1 to every ray so that each context (a complete
orthogonal basis) contains exactly one ray valued 1.  Giving each ray a
single value, whatever context it is read in, is what makes the assignment
non-contextual.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import Subspace, inner

__all__ = [
    "RaySystem",
    "Assignment",
    "Coloring",
    "InvalidRaySystem",
    "validate_ray_system",
    "find_coloring",
    "check_assignment",
    "export_cnf",
    "parse_cnf",
    "remove_context",
    "permuted",
]


class InvalidRaySystem(ValueError):
    def __init__(self, defects: Sequence[str]):
        super().__init__("; ".join(defects))
        self.defects = list(defects)


@dataclass(frozen=True)
class RaySystem:
    ambient_dim: int
    rays: tuple[Subspace, ...]
    contexts: tuple[tuple[int, ...], ...]
    radicand: int = 1
    name: str = ""

    @classmethod
    def from_vectors(
        cls,
        vectors: Sequence[Sequence],
        contexts: Sequence[Sequence[int]],
        dimension: int | None = None,
        radicand: int = 1,
        name: str = "",
    ) -> RaySystem:
        d = dimension if dimension is not None else len(vectors[0])
        rays = tuple(Subspace.span([v], d) for v in vectors)
        return cls(d, rays, tuple(tuple(c) for c in contexts), radicand, name)

    @property
    def vectors(self) -> tuple[tuple, ...]:
        return tuple(r.basis[0] if r.basis else (None,) * self.ambient_dim for r in self.rays)

    def contexts_of(self) -> list[list[int]]:
        """For each ray, the indices of the contexts containing it."""
        out: list[list[int]] = [[] for _ in self.rays]
        for c, ctx in enumerate(self.contexts):
            for r in ctx:
                if 0 <= r < len(self.rays):
                    out[r].append(c)
        return out


@dataclass(frozen=True)
class Assignment:
    values: Mapping[int, int]

    def is_total(self, rs: RaySystem) -> bool:
        return all(r in self.values for r in range(len(rs.rays)))

    def ones(self) -> list[int]:
        return sorted(r for r, v in self.values.items() if v == 1)


@dataclass(frozen=True)
class Coloring:
    """Outcome of :func:`find_coloring`.

    ``assignment`` is ``None`` when the search space was exhausted; the node
    count and the hash of the decision trace then certify the refutation.
    """

    assignment: Assignment | None
    nodes: int
    trace_hash: str = field(repr=False)

    @property
    def satisfiable(self) -> bool:
        return self.assignment is not None


def validate_ray_system(rs: RaySystem) -> list[str]:
    """List structural defects; an empty list means the system is valid.

    Orthogonality is recomputed from the ray vectors.
    """
    d = rs.ambient_dim
    defects: list[str] = []
    nrays = len(rs.rays)
    for i, ray in enumerate(rs.rays):
        if ray.ambient_dim != d:
            defects.append(f"ray {i}: ambient dimension {ray.ambient_dim}, expected {d}")
        elif ray.rank != 1:
            defects.append(f"ray {i}: rank {ray.rank}, expected a ray")
    seen: dict[Subspace, int] = {}
    for i, ray in enumerate(rs.rays):
        if ray in seen:
            defects.append(f"ray {i}: duplicates ray {seen[ray]}")
        else:
            seen[ray] = i
    used = set()
    for c, ctx in enumerate(rs.contexts):
        if len(ctx) != d:
            defects.append(f"context {c}: has {len(ctx)} rays, expected {d}")
        bad = [r for r in ctx if not 0 <= r < nrays]
        if bad:
            defects.append(f"context {c}: ray index out of range {bad}")
            continue
        if len(set(ctx)) != len(ctx):
            defects.append(f"context {c}: repeated ray index")
        used.update(ctx)
        for r, s in itertools.combinations(ctx, 2):
            u, v = rs.rays[r], rs.rays[s]
            if u.rank == 1 and v.rank == 1 and inner(u.basis[0], v.basis[0]):
                defects.append(f"context {c}: rays {r} and {s} are not orthogonal")
    for r in range(nrays):
        if r not in used:
            defects.append(f"ray {r}: belongs to no context")
    return defects


def _require_valid(rs: RaySystem) -> None:
    defects = validate_ray_system(rs)
    if defects:
        raise InvalidRaySystem(defects)


def find_coloring(rs: RaySystem) -> Coloring:
    """Exhaustive backtracking search for a valid 0/1 colouring.

    Branches on which ray of a context receives 1, choosing the open context
    with the fewest unassigned rays (lowest index on ties) and trying its
    rays in index order.  A 1 forces 0 on every ray sharing a context;
    a context left with a single candidate forces that candidate to 1.
    The result is fully deterministic.
    """
    _require_valid(rs)
    nrays = len(rs.rays)
    contexts = rs.contexts
    member = rs.contexts_of()
    values: list[int | None] = [None] * nrays
    digest = hashlib.sha256()
    nodes = 0

    def assign(r: int, v: int, trail: list[int]) -> bool:
        stack = [(r, v)]
        while stack:
            r, v = stack.pop()
            cur = values[r]
            if cur is not None:
                if cur != v:
                    return False
                continue
            values[r] = v
            trail.append(r)
            for c in member[r]:
                ctx = contexts[c]
                if v == 1:
                    for s in ctx:
                        if s != r:
                            if values[s] == 1:
                                return False
                            if values[s] is None:
                                stack.append((s, 0))
                else:
                    if any(values[s] == 1 for s in ctx):
                        continue
                    open_ = [s for s in ctx if values[s] is None]
                    if not open_:
                        return False
                    if len(open_) == 1:
                        stack.append((open_[0], 1))
        return True

    def undo(trail: list[int]) -> None:
        for r in trail:
            values[r] = None

    def pick() -> tuple[int, list[int]] | None:
        best: tuple[int, list[int]] | None = None
        for c, ctx in enumerate(contexts):
            if any(values[s] == 1 for s in ctx):
                continue
            open_ = [s for s in ctx if values[s] is None]
            if best is None or len(open_) < len(best[1]):
                best = (c, open_)
        return best

    def search() -> bool:
        nonlocal nodes
        choice = pick()
        if choice is None:
            return True
        c, candidates = choice
        for r in candidates:
            nodes += 1
            digest.update(f"{c}:{r};".encode())
            trail: list[int] = []
            if assign(r, 1, trail) and search():
                return True
            undo(trail)
            digest.update(b"x")
        return False

    if search():
        return Coloring(Assignment({r: values[r] for r in range(nrays)}), nodes, digest.hexdigest())
    return Coloring(None, nodes, digest.hexdigest())


def check_assignment(rs: RaySystem, a: Assignment | Mapping[int, int]) -> list[int]:
    """Indices of contexts whose value-sum differs from 1."""
    values = a.values if isinstance(a, Assignment) else a
    missing = [r for r in range(len(rs.rays)) if r not in values]
    if missing:
        raise ValueError(f"partial assignment: rays {missing} unassigned")
    bad = [r for r, v in values.items() if v not in (0, 1)]
    if bad:
        raise ValueError(f"assignment values must be 0 or 1 (rays {bad})")
    return [c for c, ctx in enumerate(rs.contexts) if sum(values[r] for r in ctx) != 1]


def export_cnf(rs: RaySystem) -> str:
    """DIMACS CNF: one variable per ray, per context one at-least-one clause
    followed by its pairwise at-most-one clauses."""
    _require_valid(rs)
    clauses: list[list[int]] = []
    for ctx in rs.contexts:
        clauses.append([r + 1 for r in ctx])
        clauses.extend([-(r + 1), -(s + 1)] for r, s in itertools.combinations(ctx, 2))
    lines = [f"p cnf {len(rs.rays)} {len(clauses)}"]
    lines.extend(" ".join(map(str, cl)) + " 0" for cl in clauses)
    return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> tuple[int, list[list[int]]]:
    """Read DIMACS CNF into ``(num_vars, clauses)``."""
    nvars = nclauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            _, fmt, nv, nc = line.split()
            if fmt != "cnf":
                raise ValueError(f"not a CNF header: {line!r}")
            nvars, nclauses = int(nv), int(nc)
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if nvars is None:
        raise ValueError("missing 'p cnf' header")
    if current:
        raise ValueError("unterminated clause")
    if len(clauses) != nclauses:
        raise ValueError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def remove_context(rs: RaySystem, index: int) -> RaySystem:
    contexts = rs.contexts[:index] + rs.contexts[index + 1:]
    return RaySystem(rs.ambient_dim, rs.rays, contexts, rs.radicand, f"{rs.name}-minus-{index}")


def permuted(rs: RaySystem, ray_order: Sequence[int], context_order: Sequence[int]) -> RaySystem:
    """Relabel rays and reorder contexts; ``ray_order[new] = old``."""
    new_index = {old: new for new, old in enumerate(ray_order)}
    rays = tuple(rs.rays[old] for old in ray_order)
    contexts = tuple(tuple(new_index[r] for r in rs.contexts[c]) for c in context_order)
    return RaySystem(rs.ambient_dim, rays, contexts, rs.radicand, rs.name)
