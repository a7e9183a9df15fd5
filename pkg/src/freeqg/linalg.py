"""Dense exact linear algebra over the rationals.

Fraction-free (Bareiss) elimination with first-nonzero pivoting: the output is
deterministic, nothing is ever rounded, and intermediate entries stay integral
for integer input.  Matrices in this project are small (a few hundred rows at
most), so dense storage is fine.  Float entries are rejected outright.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = ["ExactMatrix"]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact matrices take int or Fraction entries, got {type(x).__name__}")


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    """Scale a rational vector to coprime integers with positive leading nonzero."""
    denom_lcm = 1
    for v in vec:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


class ExactMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries, cols: int | None = None):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in entries)
        if data:
            widths = {len(row) for row in data}
            if len(widths) != 1:
                raise ValueError("rows have unequal lengths")
            inferred = widths.pop()
            if cols is not None and cols != inferred:
                raise ValueError(f"cols={cols} but rows have {inferred} entries")
            cols = inferred
        elif cols is None:
            raise ValueError("a matrix with no rows needs an explicit column count")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i: int, j: int) -> Fraction:
        return self._data[i][j]

    def row_list(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.cols == other.cols
            and self._data == other._data
        )

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self!r} by {other!r}")
        return ExactMatrix(
            [
                [
                    sum(self._data[i][k] * other._data[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ],
            cols=other.cols,
        )

    def matvec(self, vec) -> list[Fraction]:
        vec = [_as_fraction(x) for x in vec]
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match {self.cols} columns")
        return [sum(row[k] * vec[k] for k in range(self.cols)) for row in self._data]

    def column_submatrix(self, indices) -> "ExactMatrix":
        indices = list(indices)
        return ExactMatrix(
            [[row[j] for j in indices] for row in self._data], cols=len(indices)
        )

    def _echelon(self):
        """Bareiss forward elimination on a copy.

        Returns (data, pivots); pivots is the list of (row, col) positions,
        searched in column order with the first nonzero entry as pivot.  Rows
        without a pivot end up identically zero.
        """
        data = [list(row) for row in self._data]
        n_rows, n_cols = self.rows, self.cols
        pivots: list[tuple[int, int]] = []
        prev = Fraction(1)
        r = 0
        for c in range(n_cols):
            if r == n_rows:
                break
            hit = next((i for i in range(r, n_rows) if data[i][c]), None)
            if hit is None:
                continue
            if hit != r:
                data[r], data[hit] = data[hit], data[r]
            piv = data[r][c]
            row_r = data[r]
            for i in range(r + 1, n_rows):
                f = data[i][c]
                row_i = data[i]
                # one-step Bareiss update; the division by the previous pivot
                # is exact on integer input
                for k in range(c, n_cols):
                    row_i[k] = (row_i[k] * piv - f * row_r[k]) / prev
            prev = piv
            pivots.append((r, c))
            r += 1
        return data, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def nullspace_basis(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one primitive integer vector per free column.

        Every returned vector is re-checked by multiplication.
        """
        data, pivots = self._echelon()
        pivot_set = {c for _, c in pivots}
        basis = []
        for free_col in range(self.cols):
            if free_col in pivot_set:
                continue
            x = [Fraction(0)] * self.cols
            x[free_col] = Fraction(1)
            for r, c in reversed(pivots):
                s = sum(data[r][k] * x[k] for k in range(c + 1, self.cols))
                x[c] = -s / data[r][c]
            basis.append(_primitive(x))
        for x in basis:
            assert all(v == 0 for v in self.matvec(x)), "kernel vector fails verification"
        return basis

    def left_nullspace_basis(self) -> list[list[Fraction]]:
        """Row vectors y with y @ self == 0 (basis of the cokernel)."""
        return self.transpose().nullspace_basis()

    def in_column_space(self, vec) -> tuple[bool, list[Fraction] | None]:
        """Decide exactly whether vec lies in the column space.

        Returns (True, x) with self @ x == vec, or (False, None).  The
        certificate x is re-checked by multiplication before returning.
        """
        vec = [_as_fraction(x) for x in vec]
        if len(vec) != self.rows:
            raise ValueError(f"vector length {len(vec)} does not match {self.rows} rows")
        if self.rows == 0:
            return True, [Fraction(0)] * self.cols
        aug = ExactMatrix(
            [list(row) + [v] for row, v in zip(self._data, vec)], cols=self.cols + 1
        )
        data, pivots = aug._echelon()
        if any(c == self.cols for _, c in pivots):
            return False, None
        x = [Fraction(0)] * self.cols
        for r, c in reversed(pivots):
            s = sum(data[r][k] * x[k] for k in range(c + 1, self.cols))
            x[c] = (data[r][self.cols] - s) / data[r][c]
        assert self.matvec(x) == vec, "column space certificate fails verification"
        return True, x

    def to_json(self) -> list[list[str]]:
        """Entries as exact 'p/q' strings, row-major."""
        return [[str(x) for x in row] for row in self._data]
