"""Exact matrices over the scalar tower, with fraction-free elimination.

Rank and determinants use Bareiss-style elimination: every intermediate
entry is a minor of the input, so growth stays polynomial and all divisions
are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, List, Sequence

from .errors import DivisionByZero, NonSquare
from .field import Scalar, get_tower, scalar_one, scalar_zero


class ExactMatrix:
    __slots__ = ("rows", "cols", "data", "m")

    def __init__(self, data: Sequence[Sequence], m: int | None = None):
        rows = [list(r) for r in data]
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        self.rows = len(rows)
        self.cols = len(rows[0])
        order = m or 1
        for r in rows:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for x in r:
                if isinstance(x, Scalar) and x.rat is None:
                    if order != 1 and x.tower.m != order:
                        raise ValueError("mixed cyclotomic towers in matrix")
                    order = x.tower.m
        self.m = order
        self.data = tuple(
            tuple(x if isinstance(x, Scalar) else Scalar.rational(Fraction(x), 1) for x in r)
            for r in rows
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int, m: int = 1) -> "ExactMatrix":
        one, zero = scalar_one(m), scalar_zero(m)
        return ExactMatrix([[one if i == j else zero for j in range(n)] for i in range(n)], m)

    @staticmethod
    def zero(rows: int, cols: int, m: int = 1) -> "ExactMatrix":
        zero = scalar_zero(m)
        return ExactMatrix([[zero] * cols for _ in range(rows)], m)

    @staticmethod
    def from_int_rows(rows: Sequence[Sequence[int]]) -> "ExactMatrix":
        return ExactMatrix([[Scalar.rational(x) for x in r] for r in rows])

    @staticmethod
    def diagonal(entries: Sequence, m: int = 1) -> "ExactMatrix":
        n = len(entries)
        zero = scalar_zero(m)
        data = [[zero] * n for _ in range(n)]
        for i, e in enumerate(entries):
            data[i][i] = e if isinstance(e, Scalar) else Scalar.rational(e, m)
        return ExactMatrix(data, m)

    # -- basics ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, m={self.m})"

    def to_lists(self) -> List[List[Scalar]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.data)), self.m)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.data for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            (self.data[i][j].is_one() if i == j else self.data[i][j].is_zero())
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def is_lower_triangular(self) -> bool:
        return all(
            self.data[i][j].is_zero() for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_upper_triangular(self) -> bool:
        return all(self.data[i][j].is_zero() for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_diagonal(self) -> bool:
        return all(
            self.data[i][j].is_zero()
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and column."""
        if self.rows != self.cols:
            return False
        seen_cols = set()
        for i in range(self.rows):
            nz = [j for j in range(self.cols) if not self.data[i][j].is_zero()]
            if len(nz) != 1 or nz[0] in seen_cols:
                return False
            seen_cols.add(nz[0])
        return True

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self.data])

    def scale(self, c: Scalar) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self.data])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = list(zip(*other.data))
        out = []
        for row in self.data:
            out_row = []
            for col in bt:
                acc = None
                for a, b in zip(row, col):
                    if a.is_zero() or b.is_zero():
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                out_row.append(acc if acc is not None else scalar_zero(1))
            out.append(out_row)
        return ExactMatrix(out, max(self.m, other.m) if 1 in (self.m, other.m) else self.m)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise NonSquare("matrix power needs a square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactMatrix.identity(self.rows, self.m)
        for _ in range(k):
            out = out @ self
        return out

    # -- elimination ----------------------------------------------------------

    def rank(self) -> int:
        from .elim import bareiss_rank, cleared_rows

        ring, rows = cleared_rows(self.data, self.m)
        return bareiss_rank(ring, rows)

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise NonSquare("determinant needs a square matrix")
        a = [list(r) for r in self.data]
        n = self.rows
        prev = scalar_one(1)
        sign = 1
        for k in range(n):
            p = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if p is None:
                return scalar_zero(self.m)
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            pivot = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) / prev
                a[i][k] = scalar_zero(1)
            prev = pivot
        d = a[n - 1][n - 1]
        return -d if sign < 0 else d

    def leading_principal_minors(self) -> List[Scalar]:
        if self.rows != self.cols:
            raise NonSquare("principal minors need a square matrix")
        return [
            ExactMatrix([r[: k + 1] for r in self.data[: k + 1]], self.m).det()
            for k in range(self.rows)
        ]

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise NonSquare("inverse needs a square matrix")
        n = self.rows
        a = [list(r) + list(ident_row) for r, ident_row in zip(self.data, ExactMatrix.identity(n, self.m).data)]
        for k in range(n):
            p = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if p is None:
                raise DivisionByZero("matrix is singular")
            if p != k:
                a[k], a[p] = a[p], a[k]
            inv = a[k][k].inverse()
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and not a[i][k].is_zero():
                    c = a[i][k]
                    a[i] = [x - c * y for x, y in zip(a[i], a[k])]
        return ExactMatrix([row[n:] for row in a], self.m)

    def charpoly(self) -> List[Scalar]:
        """Coefficients c_0..c_n of det(xI - M), ascending (Faddeev-LeVerrier)."""
        if self.rows != self.cols:
            raise NonSquare("characteristic polynomial needs a square matrix")
        n = self.rows
        coeffs = [scalar_zero(self.m)] * (n + 1)
        coeffs[n] = scalar_one(self.m)
        mk = ExactMatrix.identity(n, self.m)
        for k in range(1, n + 1):
            mk = self @ mk
            tr = mk.data[0][0]
            for i in range(1, n):
                tr = tr + mk.data[i][i]
            c = tr * Fraction(-1, k)
            coeffs[n - k] = c
            if k < n:
                mk = ExactMatrix(
                    [
                        [mk.data[i][j] + c if i == j else mk.data[i][j] for j in range(n)]
                        for i in range(n)
                    ],
                    self.m,
                )
        return coeffs

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise NonSquare("trace needs a square matrix")
        tr = self.data[0][0]
        for i in range(1, self.rows):
            tr = tr + self.data[i][i]
        return tr


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    data: list[list] = []
    for brow in blocks:
        height = brow[0].rows
        rows = [[] for _ in range(height)]
        for b in brow:
            if b.rows != height:
                raise ValueError("inconsistent block heights")
            for i in range(height):
                rows[i].extend(b.data[i])
        data.extend(rows)
    return ExactMatrix(data)


def corner_rank_profile(mat: ExactMatrix) -> List[List[int]]:
    """rank of each bottom-left corner: profile[i][j] = rank of rows >= rows-i, cols < j.

    Brute-force; used as an independent oracle in tests.
    """
    out = []
    for i in range(1, mat.rows + 1):
        row = []
        for j in range(1, mat.cols + 1):
            sub = ExactMatrix([r[:j] for r in mat.data[mat.rows - i:]], mat.m)
            row.append(sub.rank())
        out.append(row)
    return out
