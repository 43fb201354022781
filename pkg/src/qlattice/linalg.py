"""Exact subspace lattice over the scalar field.

A :class:`Subspace` is kept in a canonical orthogonal basis, so two subspaces
compare equal exactly when they are the same subspace.  The canonical basis
is obtained from the reduced row echelon form of any spanning set by
orthogonalising from the bottom row upwards; every row keeps its RREF pivot,
which is then scaled to 1.  Vectors are never normalised (that would need
square roots outside the field).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

Vector = tuple[Scalar, ...]
Matrix = tuple[tuple[Scalar, ...], ...]

__all__ = [
    "Vector",
    "Matrix",
    "DimensionMismatch",
    "Subspace",
    "canonicalize",
    "meet",
    "join",
    "join_all",
    "ortho",
    "leq",
    "orthogonal",
    "inner",
    "projector_matrix",
    "column_space",
    "matmul",
    "matadd",
    "matscale",
    "adjoint",
    "trace",
    "commutes",
    "zero_matrix",
    "identity_matrix",
    "rref",
]


class DimensionMismatch(ValueError):
    pass


# -- vectors ----------------------------------------------------------------


def inner(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Hermitian inner product, conjugate-linear in the first argument."""
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x.conjugate() * y
    return acc


def _axpy(alpha: Scalar, x: Vector, y: Vector) -> Vector:
    # y + alpha*x
    return tuple(yi + alpha * xi if xi else yi for xi, yi in zip(x, y))


def _scale(alpha: Scalar, x: Vector) -> Vector:
    return tuple(alpha * xi if xi else ZERO for xi in x)


def _leading(v: Vector) -> int:
    for k, x in enumerate(v):
        if x:
            return k
    return -1


def rref(rows: Sequence[Vector], n: int) -> list[Vector]:
    """Reduced row echelon form of ``rows``; zero rows are dropped."""
    work = [list(r) for r in rows]
    out: list[list[Scalar]] = []
    col = 0
    while work and col < n:
        pivot = next((i for i, r in enumerate(work) if r[col]), None)
        if pivot is None:
            col += 1
            continue
        row = work.pop(pivot)
        inv = row[col].inverse()
        row = [x * inv if x else ZERO for x in row]
        for r in out:
            f = r[col]
            if f:
                for k in range(col, n):
                    if row[k]:
                        r[k] = r[k] - f * row[k]
        rest = []
        for r in work:
            f = r[col]
            if f:
                for k in range(col, n):
                    if row[k]:
                        r[k] = r[k] - f * row[k]
            if any(r):
                rest.append(r)
        work = rest
        out.append(row)
        col += 1
    return [tuple(r) for r in out]


def _coerce_vectors(vectors: Iterable[Sequence], n: int) -> list[Vector]:
    out = []
    for v in vectors:
        v = tuple(v)
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
        out.append(tuple(x if isinstance(x, Scalar) else as_scalar(x) for x in v))
    return out


# -- subspaces --------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^n in canonical orthogonal-basis form.

    Build instances with :func:`canonicalize` or the class helpers; the
    constructor does not re-canonicalise.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(tuple(ONE if j == k else ZERO for j in range(n)) for k in range(n)))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int | None = None) -> Subspace:
        vectors = [tuple(v) for v in vectors]
        if n is None:
            if not vectors:
                raise ValueError("ambient dimension required for an empty spanning set")
            n = len(vectors[0])
        return canonicalize(vectors, n)

    @classmethod
    def ray(cls, vector: Sequence) -> Subspace:
        s = canonicalize([tuple(vector)], len(vector))
        if s.rank != 1:
            raise ValueError("a ray needs a non-zero vector")
        return s

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(x.to_literal() for x in v) + ")" for v in self.basis)
        return f"Subspace(n={self.ambient_dim}, [{rows}])"


def canonicalize(vectors: Iterable[Sequence], n: int) -> Subspace:
    """Span of ``vectors`` in canonical form."""
    rows = rref(_coerce_vectors(vectors, n), n)
    return Subspace(n, _orthogonalize(rows))


def _orthogonalize(rows: list[Vector]) -> tuple[Vector, ...]:
    # Bottom-up Gram-Schmidt: rows below the current one vanish on its pivot
    # and every earlier column, so each output row keeps the RREF pivot.
    done: list[tuple[Vector, Scalar]] = []
    for row in reversed(rows):
        v = row
        for b, bb in done:
            c = inner(b, v)
            if c:
                v = _axpy(-(c / bb), b, v)
        lead = v[_leading(v)]
        if lead != 1:
            v = _scale(lead.inverse(), v)
        done.append((v, inner(v, v)))
    return tuple(v for v, _ in reversed(done))


def _check_dims(*spaces: Subspace) -> int:
    n = spaces[0].ambient_dim
    for s in spaces[1:]:
        if s.ambient_dim != n:
            raise DimensionMismatch(f"ambient dimensions {n} and {s.ambient_dim} differ")
    return n


def join(s: Subspace, t: Subspace) -> Subspace:
    n = _check_dims(s, t)
    if s.is_zero() or t.is_full():
        return t
    if t.is_zero() or s.is_full():
        return s
    return canonicalize(s.basis + t.basis, n)


def join_all(spaces: Iterable[Subspace], n: int) -> Subspace:
    vectors: list[Vector] = []
    for s in spaces:
        if s.ambient_dim != n:
            raise DimensionMismatch(f"ambient dimensions {n} and {s.ambient_dim} differ")
        vectors.extend(s.basis)
    return canonicalize(vectors, n)


@lru_cache(maxsize=65536)
def ortho(s: Subspace) -> Subspace:
    """Orthogonal complement."""
    n = s.ambient_dim
    if s.is_zero():
        return Subspace.full(n)
    if s.is_full():
        return Subspace.zero(n)
    # null space of the conjugated basis rows
    rows = rref([tuple(x.conjugate() for x in v) for v in s.basis], n)
    pivots = [_leading(r) for r in rows]
    free = [k for k in range(n) if k not in pivots]
    null = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        null.append(tuple(v))
    return Subspace(n, _orthogonalize(rref(null, n)))


def meet(s: Subspace, t: Subspace) -> Subspace:
    """Intersection, computed as the complement of the join of complements."""
    _check_dims(s, t)
    if s == t:
        return s
    return ortho(join(ortho(s), ortho(t)))


def _residual(v: Vector, t: Subspace) -> Vector:
    for b in t.basis:
        c = inner(b, v)
        if c:
            v = _axpy(-(c / inner(b, b)), b, v)
    return v


def leq(s: Subspace, t: Subspace) -> bool:
    """Subspace inclusion ``s <= t``."""
    _check_dims(s, t)
    if s.rank > t.rank:
        return False
    if t.is_full() or s.is_zero():
        return True
    return all(not any(_residual(v, t)) for v in s.basis)


def orthogonal(s: Subspace, t: Subspace) -> bool:
    """``s <= ortho(t)`` without forming the complement."""
    _check_dims(s, t)
    return all(not inner(u, v) for u in s.basis for v in t.basis)


# -- matrices ---------------------------------------------------------------


def zero_matrix(n: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return Subspace.full(n).basis


def projector_matrix(s: Subspace) -> Matrix:
    """Hermitian idempotent matrix with range ``s``."""
    n = s.ambient_dim
    rows = [[ZERO] * n for _ in range(n)]
    for b in s.basis:
        w = inner(b, b).inverse()
        for j in range(n):
            if not b[j]:
                continue
            bj = b[j] * w
            for k in range(n):
                if b[k]:
                    rows[j][k] = rows[j][k] + bj * b[k].conjugate()
    return tuple(tuple(r) for r in rows)


def column_space(mat: Matrix) -> Subspace:
    n = len(mat)
    return canonicalize([tuple(mat[j][k] for j in range(n)) for k in range(len(mat[0]))], n)


def matmul(x: Matrix, y: Matrix) -> Matrix:
    cols = list(zip(*y))
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols) for row in x
    )


def matadd(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(x, y))


def matscale(alpha: Scalar, x: Matrix) -> Matrix:
    return tuple(tuple(alpha * a for a in r) for r in x)


def adjoint(x: Matrix) -> Matrix:
    return tuple(tuple(a.conjugate() for a in col) for col in zip(*x))


def trace(x: Matrix) -> Scalar:
    return sum((x[k][k] for k in range(len(x))), ZERO)


def commutes(x: Matrix, y: Matrix) -> bool:
    return matmul(x, y) == matmul(y, x)
