"""Test-side oracles and strategies.

The sympy conversions give an arithmetic path that shares no code with the
package, so results computed in the package can be checked against it.
"""

from __future__ import annotations

import sympy
from hypothesis import strategies as st

from qlattice.linalg import Subspace
from qlattice.scalar import Scalar


def to_sympy(x: Scalar):
    r = sympy.sqrt(x.radicand)
    q = lambda f: sympy.Rational(f.numerator, f.denominator)  # noqa: E731
    return q(x.re_rat) + q(x.re_irr) * r + sympy.I * (q(x.im_rat) + q(x.im_irr) * r)


def sympy_matrix(rows) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in rows])


def sympy_equal(a, b) -> bool:
    diff = sympy.expand(a - b)
    return diff == 0 or sympy.simplify(diff) == 0


def sympy_rank(vectors, n: int) -> int:
    if not vectors:
        return 0
    return sympy_matrix(vectors).rank(simplify=True)


def sympy_contains(space: Subspace, v) -> bool:
    """``v`` lies in ``space``, judged by a rank comparison in sympy."""
    return sympy_rank(list(space.basis) + [v], space.ambient_dim) == space.rank


small_ints = st.integers(min_value=-3, max_value=3)
radicands = st.sampled_from([1, 2, 3, 5, 6])


@st.composite
def scalars(draw, m: int | None = None, nonzero: bool = False):
    m = draw(radicands) if m is None else m
    parts = [draw(st.fractions(min_value=-4, max_value=4, max_denominator=6)) for _ in range(4)]
    if m == 1:
        parts[1] = parts[3] = 0
    x = Scalar(parts[0], parts[1], parts[2], parts[3], m)
    if nonzero and not x:
        x = Scalar(1, 0, 0, 0, m)
    return x


@st.composite
def gaussian_vectors(draw, n: int):
    entries = st.builds(lambda a, b: Scalar(a, 0, b), small_ints, small_ints)
    v = tuple(draw(entries) for _ in range(n))
    return v


@st.composite
def subspaces(draw, n: int | None = None, max_dim: int = 4):
    n = draw(st.integers(2, max_dim)) if n is None else n
    k = draw(st.integers(0, n))
    vecs = [draw(gaussian_vectors(n)) for _ in range(k)]
    return Subspace.span(vecs, n)


@st.composite
def subspace_pairs(draw, max_dim: int = 4):
    n = draw(st.integers(2, max_dim))
    return draw(subspaces(n)), draw(subspaces(n))
