"""Report objects shared by the CLI: plain text and a JSON mirror.

Every report holds exact values (scalars, subspaces) and round-trips
through ``to_json``/``from_json`` to an equal object.  Text rendering is
deterministic and prints scalars only as exact literals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bub_clifton import DeterminateStructure, Observable, PureState
from .events import AxiomViolation
from .io import observable_from_json, observable_to_json, state_from_json, state_to_json, subspace_from_json, subspace_to_json
from .ks import Coloring, RaySystem
from .linalg import Subspace
from .scalar import Scalar, parse_scalar
from .truth import Verdict

__all__ = ["KSReport", "BCReport", "ValuationReport", "AxiomReport", "LawReport", "dumps"]


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _basis_text(s: Subspace) -> str:
    if s.is_zero():
        return "{0}"
    return "span{" + ", ".join("(" + ",".join(x.to_literal() for x in v) + ")" for v in s.basis) + "}"


# -- ks-verify ------------------------------------------------------------------


@dataclass(frozen=True)
class KSReport:
    name: str
    dimension: int
    radicand: int
    rays: int
    contexts: int
    satisfiable: bool
    nodes: int
    trace_hash: str
    witness: tuple[int, ...] | None

    @classmethod
    def build(cls, rs: RaySystem, coloring: Coloring) -> KSReport:
        witness = None
        if coloring.assignment is not None:
            witness = tuple(coloring.assignment.values[r] for r in range(len(rs.rays)))
        return cls(rs.name, rs.ambient_dim, rs.radicand, len(rs.rays), len(rs.contexts),
                   coloring.satisfiable, coloring.nodes, coloring.trace_hash, witness)

    def to_json(self) -> dict:
        return {
            "command": "ks-verify",
            "name": self.name,
            "dimension": self.dimension,
            "radicand": self.radicand,
            "rays": self.rays,
            "contexts": self.contexts,
            "result": "SAT" if self.satisfiable else "UNSAT",
            "nodes": self.nodes,
            "trace_hash": self.trace_hash,
            "witness": list(self.witness) if self.witness is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> KSReport:
        w = data["witness"]
        return cls(data["name"], data["dimension"], data["radicand"], data["rays"], data["contexts"],
                   data["result"] == "SAT", data["nodes"], data["trace_hash"],
                   tuple(w) if w is not None else None)

    def render(self) -> str:
        lines = [
            f"system: {self.name} (d={self.dimension}, m={self.radicand}, "
            f"{self.rays} rays, {self.contexts} contexts)",
            f"result: {'SAT' if self.satisfiable else 'UNSAT'}",
            f"nodes: {self.nodes}",
            f"trace: {self.trace_hash}",
        ]
        if self.witness is not None:
            ones = [str(r) for r, v in enumerate(self.witness) if v]
            lines.append("witness (rays valued 1): " + " ".join(ones))
        return "\n".join(lines) + "\n"


# -- bc -------------------------------------------------------------------------


@dataclass(frozen=True)
class BCReport:
    radicand: int
    state: PureState
    observable: Observable
    atoms: tuple[Subspace, ...]
    eigen_index: tuple[int, ...]
    dropped: tuple[int, ...]
    remainder: Subspace
    homs: tuple[int, ...]
    frame: tuple[tuple[str, Subspace], ...] | None

    @classmethod
    def build(cls, ds: DeterminateStructure, homs, frame, radicand: int) -> BCReport:
        fr = None if frame is None else tuple((ev.label, ev.subspace) for ev in frame.events)
        return cls(radicand, ds.state, ds.observable, ds.atoms, ds.eigen_index, ds.dropped,
                   ds.remainder, tuple(h.true_atom_index for h in homs), fr)

    @property
    def k(self) -> int:
        return len(self.atoms)

    def to_json(self) -> dict:
        n = self.state.ambient_dim
        return {
            "command": "bc",
            "radicand": self.radicand,
            "dimension": n,
            "state": state_to_json(self.state, self.radicand),
            "observable": observable_to_json(self.observable, self.radicand),
            "maximal": self.observable.maximal,
            "k": self.k,
            "atoms": [
                {"eigenspace": i, "basis": subspace_to_json(a)} for i, a in zip(self.eigen_index, self.atoms)
            ],
            "dropped_eigenspaces": list(self.dropped),
            "remainder": subspace_to_json(self.remainder),
            "remainder_rank": self.remainder.rank,
            "homs": [{"hom": i, "true_atom": i} for i in self.homs],
            "frame": None if self.frame is None
            else [{"label": lab, "basis": subspace_to_json(s)} for lab, s in self.frame],
        }

    @classmethod
    def from_json(cls, data: dict) -> BCReport:
        m, n = data["radicand"], data["dimension"]
        state = state_from_json(data["state"], radicand=m, dimension=n)
        obs = observable_from_json(data["observable"], radicand=m, dimension=n)
        atoms = tuple(subspace_from_json(a["basis"], n, m) for a in data["atoms"])
        frame = data["frame"]
        if frame is not None:
            frame = tuple((f["label"], subspace_from_json(f["basis"], n, m)) for f in frame)
        return cls(m, state, obs, atoms, tuple(a["eigenspace"] for a in data["atoms"]),
                   tuple(data["dropped_eigenspaces"]), subspace_from_json(data["remainder"], n, m),
                   tuple(h["true_atom"] for h in data["homs"]), frame)

    def render(self) -> str:
        lines = [f"dimension: {self.state.ambient_dim}", f"maximal observable: {'yes' if self.observable.maximal else 'no'}"]
        lines.append(f"k: {self.k}")
        for j, (i, a) in enumerate(zip(self.eigen_index, self.atoms)):
            lines.append(f"atom {j} (eigenspace {i}, value {self.observable.eigenpairs[i][0]}): {_basis_text(a)}")
        if self.dropped:
            lines.append("dropped eigenspaces (orthogonal to the state): " + " ".join(map(str, self.dropped)))
        lines.append(f"remainder rank: {self.remainder.rank}")
        if self.remainder.rank:
            lines.append(f"remainder: {_basis_text(self.remainder)}")
        for i in self.homs:
            vals = " ".join(f"a{j}={int(j == i)}" for j in range(self.k))
            lines.append(f"hom {i}: {vals}")
        if self.frame is not None:
            lines.append(f"frame: {len(self.frame)} events")
            for lab, s in self.frame:
                lines.append(f"  {lab}: {_basis_text(s)}")
        return "\n".join(lines) + "\n"


# -- valuate ----------------------------------------------------------------------


@dataclass(frozen=True)
class ValuationReport:
    radicand: int
    state: PureState
    observable: Observable
    proposition: Subspace
    global_verdict: Verdict
    member: bool
    verdicts: tuple[Verdict, ...]
    weights: tuple[Scalar, ...]
    degenerate: bool
    expectation_pure: Scalar
    expectation_contextual: Scalar

    @property
    def expectations_equal(self) -> bool:
        return self.expectation_pure == self.expectation_contextual

    def to_json(self) -> dict:
        n = self.state.ambient_dim
        return {
            "command": "valuate",
            "radicand": self.radicand,
            "dimension": n,
            "context": {
                "state": state_to_json(self.state, self.radicand),
                "observable": observable_to_json(self.observable, self.radicand),
            },
            "proposition": subspace_to_json(self.proposition),
            "global": self.global_verdict.value,
            "member": self.member,
            "verdicts": [{"hom": i, "verdict": v.value} for i, v in enumerate(self.verdicts)],
            "weights": [w.to_literal() for w in self.weights],
            "degenerate": self.degenerate,
            "expectation": {
                "state": self.expectation_pure.to_literal(),
                "contextual_state": self.expectation_contextual.to_literal(),
                "equal": self.expectations_equal,
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> ValuationReport:
        m, n = data["radicand"], data["dimension"]
        ctx = data["context"]
        exp = data["expectation"]
        return cls(
            m,
            state_from_json(ctx["state"], radicand=m, dimension=n),
            observable_from_json(ctx["observable"], radicand=m, dimension=n),
            subspace_from_json(data["proposition"], n, m),
            Verdict(data["global"]),
            data["member"],
            tuple(Verdict(v["verdict"]) for v in data["verdicts"]),
            tuple(parse_scalar(w, m) for w in data["weights"]),
            data["degenerate"],
            parse_scalar(exp["state"], m),
            parse_scalar(exp["contextual_state"], m),
        )

    def render(self) -> str:
        lines = [
            f"proposition: {_basis_text(self.proposition)}",
            f"global verdict: {self.global_verdict}",
            f"member of determinate sublattice: {'yes' if self.member else 'no'}",
        ]
        for i, v in enumerate(self.verdicts):
            lines.append(f"hom {i}: {v}")
        lines.append("weights: " + " ".join(w.to_literal() for w in self.weights))
        if self.degenerate:
            lines.append("note: degenerate observable; atoms are the projected state rays")
        rel = "=" if self.expectations_equal else "!="
        lines.append(
            f"expectation: Tr(D A) = {self.expectation_pure.to_literal()} {rel} "
            f"{self.expectation_contextual.to_literal()} = Tr(D_A A)"
        )
        return "\n".join(lines) + "\n"


# -- axioms -----------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    name: str
    dimension: int
    size: int
    closed_under_ortho: bool
    violations: tuple[AxiomViolation, ...]

    def to_json(self) -> dict:
        return {
            "command": "axioms",
            "name": self.name,
            "dimension": self.dimension,
            "events": self.size,
            "closed_under_ortho": self.closed_under_ortho,
            "violations": [{"axiom": v.axiom, "labels": list(v.labels)} for v in self.violations],
        }

    @classmethod
    def from_json(cls, data: dict) -> AxiomReport:
        return cls(data["name"], data["dimension"], data["events"], data["closed_under_ortho"],
                   tuple(AxiomViolation(v["axiom"], tuple(v["labels"])) for v in data["violations"]))

    def render(self) -> str:
        head = (f"family: {self.name} (d={self.dimension}, {self.size} events, "
                f"closed under ortho: {'yes' if self.closed_under_ortho else 'no'})")
        body = "".join(f"{v}\n" for v in self.violations)
        tail = "all axioms pass\n" if not self.violations else f"{len(self.violations)} violations\n"
        return head + "\n" + body + tail


# -- laws -------------------------------------------------------------------------


@dataclass(frozen=True)
class LawReport:
    seed: int
    trials: int
    dims: tuple[int, ...]
    failures: tuple[tuple[str, int], ...]

    def to_json(self) -> dict:
        return {
            "command": "laws",
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "failures": {law: count for law, count in self.failures},
        }

    @classmethod
    def from_json(cls, data: dict) -> LawReport:
        return cls(data["seed"], data["trials"], tuple(data["dims"]),
                   tuple(sorted(data["failures"].items())))

    def render(self) -> str:
        lines = [f"seed {self.seed}, {self.trials} pairs, dims {','.join(map(str, self.dims))}"]
        for law, count in self.failures:
            lines.append(f"{law}: {'PASS' if count == 0 else f'FAIL ({count})'}")
        return "\n".join(lines) + "\n"
