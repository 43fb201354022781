"""Colourability search over the built-in ray systems, with timings.

    python scripts/run_ks.py [--cnf-dir DIR] [--criticality]

Prints one line per dataset.  ``--criticality`` also re-runs the 18-ray
system with each context removed in turn.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from qlattice.datasets import BUILTIN_NAMES, builtin_dataset
from qlattice.ks import check_assignment, export_cnf, find_coloring, remove_context


@dataclass(frozen=True)
class KSRunConfig:
    datasets: tuple[str, ...] = BUILTIN_NAMES
    cnf_dir: Path | None = None
    criticality: bool = False


def run(cfg: KSRunConfig) -> None:
    for name in cfg.datasets:
        rs = builtin_dataset(name)
        start = time.perf_counter()
        result = find_coloring(rs)
        elapsed = time.perf_counter() - start
        verdict = "SAT" if result.satisfiable else "UNSAT"
        print(f"{name:14s} rays={len(rs.rays):3d} contexts={len(rs.contexts):3d} "
              f"{verdict:5s} nodes={result.nodes:6d} {elapsed * 1000:8.2f} ms")
        if cfg.cnf_dir is not None:
            cfg.cnf_dir.mkdir(parents=True, exist_ok=True)
            (cfg.cnf_dir / f"{name}.cnf").write_text(export_cnf(rs))
    if cfg.criticality:
        rs = builtin_dataset("cabello18")
        for c in range(len(rs.contexts)):
            reduced = remove_context(rs, c)
            result = find_coloring(reduced)
            clean = result.satisfiable and check_assignment(reduced, result.assignment) == []
            print(f"cabello18 without context {c}: {'SAT' if result.satisfiable else 'UNSAT'}"
                  f"{' (witness checks out)' if clean else ''}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cnf-dir", type=Path)
    parser.add_argument("--criticality", action="store_true")
    parser.add_argument("datasets", nargs="*", default=list(BUILTIN_NAMES))
    args = parser.parse_args()
    run(KSRunConfig(tuple(args.datasets), args.cnf_dir, args.criticality))


if __name__ == "__main__":
    main()
