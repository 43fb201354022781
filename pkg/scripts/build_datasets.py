"""Regenerate the built-in ray systems under src/qlattice/data/.

    python scripts/build_datasets.py

Peres: the 33 rays from permutations of (0,0,1), (0,1,+-1), (0,1,+-sqrt2),
(1,+-1,+-sqrt2).  Only 16 of their orthogonal triples are complete triads, so
every orthogonal pair lacking a third ray in the set is completed by its
cross product.  That gives 57 rays and 40 triads.  The bare 33-ray, 16-triad
system is written as ``peres33-core``.

Seven-context set in dimension 6: one context is the standard basis; every
other ray vanishes on exactly two coordinates and carries cube roots of unity
elsewhere.  The phases are found by backtracking.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from qlattice.io import ray_system_to_json
from qlattice.ks import RaySystem, validate_ray_system
from qlattice.linalg import Subspace, inner
from qlattice.scalar import ONE, ZERO, parse_scalar

DATA = Path(__file__).resolve().parents[1] / "src" / "qlattice" / "data"


def _triads(rays: list[Subspace], d: int) -> tuple[list[tuple[int, ...]], set[tuple[int, int]]]:
    vecs = [r.basis[0] for r in rays]
    orth = {(i, j) for i, j in itertools.combinations(range(len(rays)), 2) if not inner(vecs[i], vecs[j])}
    out = []
    for combo in itertools.combinations(range(len(rays)), d):
        if all(p in orth for p in itertools.combinations(combo, 2)):
            out.append(combo)
    return out, orth


def _cross(u, v):
    # conj(u x v) is orthogonal to u and v under the Hermitian product
    w = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    return tuple(x.conjugate() for x in w)


def peres() -> tuple[RaySystem, RaySystem]:
    r2 = parse_scalar("r", 2)
    patterns = [(0, 0, 1), (0, 1, 1), (0, 1, -1), (0, 1, r2), (0, 1, -r2),
                (1, 1, r2), (1, -1, r2), (-1, 1, r2), (-1, -1, r2)]
    seen: dict[Subspace, tuple] = {}
    for pat in patterns:
        for perm in itertools.permutations(pat):
            s = Subspace.span([perm], 3)
            seen.setdefault(s, perm)
    core = list(seen)
    assert len(core) == 33, len(core)
    triads, orth = _triads(core, 3)
    in_triad = {p for t in triads for p in itertools.combinations(t, 2)}
    rays = list(core)
    for i, j in sorted(orth - in_triad):
        w = Subspace.span([_cross(core[i].basis[0], core[j].basis[0])], 3)
        if w not in rays:
            rays.append(w)
    full, _ = _triads(rays, 3)
    core_rs = RaySystem(3, tuple(core), tuple(triads), 2, "peres33-core")
    full_rs = RaySystem(3, tuple(rays), tuple(full), 2, "peres33")
    return core_rs, full_rs


def cabello() -> RaySystem:
    bases = [
        [(0, 0, 0, 1), (0, 0, 1, 0), (1, 1, 0, 0), (1, -1, 0, 0)],
        [(0, 0, 0, 1), (0, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0)],
        [(1, -1, 1, -1), (1, -1, -1, 1), (1, 1, 0, 0), (0, 0, 1, 1)],
        [(1, -1, 1, -1), (1, 1, 1, 1), (1, 0, -1, 0), (0, 1, 0, -1)],
        [(0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 1), (1, 0, 0, -1)],
        [(1, -1, -1, 1), (1, 1, 1, 1), (1, 0, 0, -1), (0, 1, -1, 0)],
        [(1, 1, -1, 1), (1, 1, 1, -1), (1, -1, 0, 0), (0, 0, 1, 1)],
        [(1, 1, -1, 1), (-1, 1, 1, 1), (1, 0, 1, 0), (0, 1, 0, -1)],
        [(1, 1, 1, -1), (-1, 1, 1, 1), (1, 0, 0, 1), (0, 1, -1, 0)],
    ]
    rays: list[Subspace] = []
    contexts = []
    for basis in bases:
        ctx = []
        for v in basis:
            s = Subspace.span([v], 4)
            if s not in rays:
                rays.append(s)
            ctx.append(rays.index(s))
        contexts.append(tuple(ctx))
    return RaySystem(4, tuple(rays), tuple(contexts), 1, "cabello18")


def seven_contexts() -> RaySystem:
    pairs = list(itertools.combinations(range(6), 2))
    chosen: dict[tuple[int, int], dict[int, int]] = {}

    def fits(p, phases):
        for q, other in chosen.items():
            if set(p) & set(q):
                common = [k for k in phases if k in other]
                if sorted((other[k] - phases[k]) % 3 for k in common) != [0, 1, 2]:
                    return False
        return True

    def search(i):
        if i == len(pairs):
            return True
        p = pairs[i]
        support = [k for k in range(6) if k not in p]
        for tail in itertools.product(range(3), repeat=3):
            phases = dict(zip(support, (0,) + tail))
            if fits(p, phases):
                chosen[p] = phases
                if search(i + 1):
                    return True
                del chosen[p]
        return False

    assert search(0)
    omega = parse_scalar("-1/2+1/2*r*i", 3)
    roots = [ONE, omega, omega * omega]
    vectors = [tuple(ONE if j == k else ZERO for j in range(6)) for k in range(6)]
    index = {}
    for p in pairs:
        index[p] = len(vectors)
        vectors.append(tuple(roots[chosen[p][k]] if k in chosen[p] else ZERO for k in range(6)))
    contexts = [tuple(range(6))]
    for a in range(6):
        contexts.append((a,) + tuple(index[tuple(sorted((a, b)))] for b in range(6) if b != a))
    rays = tuple(Subspace.span([v], 6) for v in vectors)
    return RaySystem(6, rays, tuple(contexts), 3, "lisonek21")


def dim2_control() -> RaySystem:
    vecs = [(1, 0), (0, 1), (1, 1), (1, -1)]
    return RaySystem(2, tuple(Subspace.span([v], 2) for v in vecs), ((0, 1), (2, 3)), 1, "dim2-control")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    core, full = peres()
    for rs in (full, core, cabello(), seven_contexts(), dim2_control()):
        defects = validate_ray_system(rs)
        assert not defects, defects
        payload = ray_system_to_json(rs)
        text = json.dumps(payload)
        # one ray / context per line keeps diagnostics line-addressable
        text = "{\n" + f'  "radicand": {payload["radicand"]},\n  "dimension": {payload["dimension"]},\n'
        text += '  "rays": [\n' + ",\n".join("    " + json.dumps(r) for r in payload["rays"]) + "\n  ],\n"
        text += '  "contexts": [\n' + ",\n".join("    " + json.dumps(c) for c in payload["contexts"]) + "\n  ]\n}\n"
        (DATA / f"{rs.name}.json").write_text(text)
        print(f"{rs.name}: {len(rs.rays)} rays, {len(rs.contexts)} contexts")


if __name__ == "__main__":
    main()
