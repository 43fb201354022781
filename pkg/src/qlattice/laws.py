"""Randomised sweep of the orthocomplemented-lattice laws on subspaces."""

from __future__ import annotations

import random
from typing import Sequence

from .events import orthomodular_check
from .linalg import join, leq, meet, ortho
from .sampling import random_subspace

__all__ = ["LAWS", "lattice_law_failures"]

LAWS = ("de_morgan", "double_ortho", "order_reversal", "orthomodular")


def lattice_law_failures(rng: random.Random, trials: int, dims: Sequence[int] = (2, 3, 4, 5)) -> dict[str, int]:
    """Failure count per law over ``trials`` random pairs ``(S, T)``.

    Order reversal and orthomodularity need comparable pairs, so they are
    checked on ``(S, S v T)``; order reversal is also checked on ``(S, T)``
    whenever ``S <= T`` happens to hold.
    """
    failures = dict.fromkeys(LAWS, 0)
    for _ in range(trials):
        n = rng.choice(list(dims))
        s, t = random_subspace(rng, n), random_subspace(rng, n)
        if ortho(join(s, t)) != meet(ortho(s), ortho(t)):
            failures["de_morgan"] += 1
        if ortho(ortho(s)) != s or ortho(ortho(t)) != t:
            failures["double_ortho"] += 1
        big = join(s, t)
        pairs = [(s, big)] + ([(s, t)] if leq(s, t) else [])
        if any(not leq(ortho(b), ortho(a)) for a, b in pairs):
            failures["order_reversal"] += 1
        if not orthomodular_check(s, big):
            failures["orthomodular"] += 1
    return failures
