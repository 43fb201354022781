"""Randomised sweeps over the lattice and contextual-state properties.

    python scripts/run_sweeps.py [--seed N] [--scale F]

Each sweep prints its counts as one JSON line.  ``--scale`` multiplies
every sample size (0.1 gives a quick smoke run).
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, replace

from qlattice.bub_clifton import enumerate_homs, membership, project_state, standard_sublattice_membership
from qlattice.events import boolean_sublattice_test, commute_test
from qlattice.laws import lattice_law_failures
from qlattice.sampling import (
    SamplerConfig,
    compatible_pair,
    frame_observable,
    mixed_proposition,
    random_eigenstate,
    random_observable,
    random_state,
    random_subspace,
)
from qlattice.truth import MeasurementContext, contextual_state, expectation


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 0
    hom_cases: int = 200
    eigen_cases: int = 50
    props_per_case: int = 1000
    trace_contexts: int = 100
    observables_per_context: int = 100
    law_trials: int = 10_000
    compat_pairs: int = 1000

    def scaled(self, factor: float) -> SweepConfig:
        sizes = {k: max(1, round(v * factor)) for k, v in asdict(self).items() if k != "seed"}
        return replace(self, **sizes)


def hom_counts(rng: random.Random, cfg: SweepConfig) -> dict:
    rational = SamplerConfig(complex_entries=False)
    exact = 0
    for _ in range(cfg.hom_cases):
        n = rng.choice([3, 4])
        state = random_state(rng, n, rational)
        ds = project_state(state, random_observable(rng, n, maximal=True, cfg=rational))
        exact += len(enumerate_homs(ds)) == ds.k
    return {"cases": cfg.hom_cases, "exactly_k": exact}


def eigenstate_collapse(rng: random.Random, cfg: SweepConfig) -> dict:
    agree = total = 0
    for _ in range(cfg.eigen_cases):
        n = rng.choice([2, 3, 4])
        obs = random_observable(rng, n)
        state = random_eigenstate(rng, obs)
        ds = project_state(state, obs)
        for _ in range(cfg.props_per_case):
            p = mixed_proposition(rng, ds)
            agree += membership(ds, p) == standard_sublattice_membership(state, p)
            total += 1
    return {"propositions": total, "agreements": agree}


def trace_equality(rng: random.Random, cfg: SweepConfig) -> dict:
    equal = total = strict = contexts = 0
    while contexts < cfg.trace_contexts:
        n = rng.choice([2, 3, 4])
        ctx = MeasurementContext(random_state(rng, n), random_observable(rng, n, maximal=True))
        if ctx.structure.k < 2:
            continue
        contexts += 1
        rho = contextual_state(ctx)
        for _ in range(cfg.observables_per_context):
            b = frame_observable(rng, ctx.structure)
            equal += expectation(ctx.state, b) == expectation(rho, b)
            total += 1
        strict += any(expectation(ctx.state, b) != expectation(rho, b)
                      for b in (random_observable(rng, n) for _ in range(50)))
    return {"frame_observables": total, "equal": equal, "contexts_with_strict_gap": strict}


def compatibility(rng: random.Random, cfg: SweepConfig) -> dict:
    agree = commuting = 0
    for trial in range(cfg.compat_pairs):
        n = rng.choice([2, 3, 4])
        if trial % 2:
            s, t = compatible_pair(rng, n)
        else:
            s, t = (random_subspace(rng, n, rank=rng.randint(1, n - 1)) for _ in range(2))
        c = commute_test(s, t)
        agree += c == boolean_sublattice_test(s, t)
        commuting += c
    return {"pairs": cfg.compat_pairs, "agreements": agree, "commuting": commuting}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--scale", type=float, default=1.0)
    args = parser.parse_args()
    cfg = SweepConfig(seed=args.seed).scaled(args.scale)
    sweeps = {
        "hom_counts": hom_counts,
        "eigenstate_collapse": eigenstate_collapse,
        "trace_equality": trace_equality,
        "lattice_laws": lambda rng, c: lattice_law_failures(rng, c.law_trials),
        "compatibility": compatibility,
    }
    for name, fn in sweeps.items():
        start = time.perf_counter()
        result = fn(random.Random(cfg.seed), cfg)
        result["seconds"] = round(time.perf_counter() - start, 2)
        print(json.dumps({"sweep": name, **result}, sort_keys=True))


if __name__ == "__main__":
    main()
