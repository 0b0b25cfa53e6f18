"""Dense exact linear algebra over Q and Q(sqrt m).

Rational matrices take a fraction-free (Bareiss) integer path; matrices
with irrational entries are eliminated directly over :class:`QuadExt`,
whose rational parts are gcd-reduced after every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import NotSquare, NotSymmetric, SizeMismatch
from .field import QuadExt, common_radicand

ZERO = QuadExt(0)
ONE = QuadExt(1)


class ExactMatrix:
    """Immutable dense matrix of :class:`QuadExt` entries sharing one radicand."""

    __slots__ = ("rows", "cols", "entries", "m")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None) -> None:
        entries = tuple(tuple(QuadExt.coerce(x) for x in row) for row in data)
        widths = {len(r) for r in entries}
        if len(widths) > 1:
            raise SizeMismatch("ragged matrix rows")
        self.rows = len(entries)
        self.cols = widths.pop() if widths else (cols or 0)
        self.entries = entries
        self.m = common_radicand(x for row in entries for x in row)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> QuadExt:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[QuadExt, ...]:
        return self.entries[i]

    def tolist(self) -> list[list[QuadExt]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.entries), cols=self.rows) if self.rows else ExactMatrix.zeros(self.cols, 0)

    T = property(transpose)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            out.append([sum((a * b for a, b in zip(r, c)), ZERO) for c in cols])
        return ExactMatrix(out, cols=other.cols)

    def scale(self, c) -> ExactMatrix:
        return ExactMatrix([[c * x for x in r] for r in self.entries], cols=self.cols)

    def is_rational(self) -> bool:
        return all(x.is_rational() for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.rows) for j in range(i))

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.entries], dtype=float).reshape(self.rows, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, m={self.m})"


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero

    def is_psd(self) -> bool:
        return self.n_neg == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.n_pos, self.n_neg, self.n_zero


def _as_matrix(M) -> ExactMatrix:
    return M if isinstance(M, ExactMatrix) else ExactMatrix(M)


def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators (rank-preserving)."""
    out = []
    for r in M.entries:
        den = lcm(*(x.a.denominator for x in r)) if r else 1
        out.append([int(x.a * den) for x in r])
    return out


def _bareiss_rank(A: list[list[int]]) -> int:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        prow = A[rank]
        for r in range(rank + 1, rows):
            row = A[r]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def _gauss_rank(A: list[list[QuadExt]]) -> int:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][c].inverse()
        prow = A[rank]
        for r in range(rank + 1, rows):
            f = A[r][c]
            if not f:
                continue
            f = f * inv
            row = A[r]
            for j in range(c + 1, cols):
                if prow[j]:
                    row[j] = row[j] - f * prow[j]
            row[c] = ZERO
        rank += 1
    return rank


def rank(M) -> int:
    """Exact rank."""
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    # eliminate along the shorter dimension
    if M.rows > M.cols:
        M = M.transpose()
    if M.is_rational():
        return _bareiss_rank(_integer_rows(M))
    return _gauss_rank(M.tolist())


def determinant(M) -> QuadExt:
    """Exact determinant of a square matrix."""
    M = _as_matrix(M)
    if M.rows != M.cols:
        raise NotSquare(f"determinant needs a square matrix, got {M.shape}")
    n = M.rows
    if n == 0:
        return ONE
    if M.is_rational():
        scale = Fraction(1)
        A = []
        for r in M.entries:
            den = lcm(*(x.a.denominator for x in r))
            scale /= den
            A.append([int(x.a * den) for x in r])
        sign = 1
        prev = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if A[r][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                sign = -sign
            p = A[c][c]
            for r in range(c + 1, n):
                row = A[r]
                f = row[c]
                for j in range(c + 1, n):
                    row[j] = (p * row[j] - f * A[c][j]) // prev
                row[c] = 0
            prev = p
        return QuadExt(sign * A[n - 1][n - 1] * scale)
    A = M.tolist()
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        p = A[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = A[r][c]
            if not f:
                continue
            f = f * inv
            for j in range(c + 1, n):
                if A[c][j]:
                    A[r][j] = A[r][j] - f * A[c][j]
    return det


def ldlt_inertia(M) -> Inertia:
    """Inertia of a symmetric matrix by congruence (symmetric LDL^T with 1x1/2x2 pivots)."""
    M = _as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetric(f"ldlt_inertia needs a symmetric matrix, got {M!r}")
    # rational input runs on bare Fractions; both types support the same operators
    A = [[x.a for x in r] for r in M.entries] if M.is_rational() else M.tolist()
    pos = neg = 0
    while A:
        n = len(A)
        k = next((i for i in range(n) if A[i][i]), None)
        if k is not None:
            d = A[k][k]
            rest = [i for i in range(n) if i != k]
            col = [A[i][k] for i in rest]
            if d > 0:
                pos += 1
            else:
                neg += 1
            scaled = [c / d for c in col]
            A = [
                [A[ri][rj] - scaled[a] * col[b] if scaled[a] and col[b] else A[ri][rj] for b, rj in enumerate(rest)]
                for a, ri in enumerate(rest)
            ]
            continue
        off = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j]), None)
        if off is None:
            break
        # zero diagonal: block [[0, c], [c, 0]] contributes one positive and one negative
        i, j = off
        c = A[i][j]
        pos += 1
        neg += 1
        rest = [r for r in range(n) if r not in (i, j)]
        # Schur complement: A_rest - B E^{-1} B^T with E^{-1} = [[0, 1/c], [1/c, 0]]
        A = [
            [A[r][t] - (A[r][i] * A[j][t] + A[r][j] * A[i][t]) / c for t in rest]
            for r in rest
        ]
    return Inertia(pos, neg, M.rows - pos - neg)


def rref(M) -> tuple[list[list[QuadExt]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = _as_matrix(M).tolist()
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(M) -> list[list[QuadExt]]:
    """Basis of the right null space ``{v : M v = 0}``."""
    M = _as_matrix(M)
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def numeric_rank(M, rel_tol: float = 1e-9) -> int:
    """Floating-point rank from singular values above ``rel_tol`` times the largest."""
    import numpy as np

    A = _as_matrix(M).to_float()
    if A.size == 0:
        return 0
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def mat_vec(M: ExactMatrix, v: Sequence) -> list[QuadExt]:
    return [sum((a * b for a, b in zip(r, v)), ZERO) for r in M.entries]
