"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of them and
matrices are :class:`RationalMatrix`. Nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
RationalVector = tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def vector(values: Iterable) -> RationalVector:
    return tuple(as_rational(v) for v in values)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(as_rational(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, d: int) -> RationalMatrix:
        return cls(d, d, tuple(Fraction(int(i == j)) for i in range(d) for j in range(d)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> RationalVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return matmul(self, other)
        return matvec(self, other)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        _same_shape(self, other)
        return RationalMatrix(self.rows, self.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        _same_shape(self, other)
        return RationalMatrix(self.rows, self.cols,
                              tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> RationalMatrix:
        c = as_rational(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)


def _same_shape(a: RationalMatrix, b: RationalMatrix) -> None:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError(f"shape mismatch {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Real inner product ``sum(u_i * v_i)``; no conjugation."""
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((as_rational(a) * as_rational(b) for a, b in zip(u, v)), Fraction(0))


def matvec(m: RationalMatrix, v: Sequence) -> RationalVector:
    if m.cols != len(v):
        raise DimensionError(f"{m.rows}x{m.cols} matrix times length-{len(v)} vector")
    return tuple(dot(m.row(i), v) for i in range(m.rows))


def matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    bt = b.transpose()
    return RationalMatrix(
        a.rows, b.cols,
        tuple(dot(a.row(i), bt.row(j)) for i in range(a.rows) for j in range(b.cols)),
    )


def outer(u: Sequence, v: Sequence) -> RationalMatrix:
    u, v = vector(u), vector(v)
    return RationalMatrix(len(u), len(v), tuple(a * b for a in u for b in v))


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: scan columns left to right, take the first row (from the
    current pivot row down) with a nonzero entry. Deterministic by design.
    """
    # sparse rows: constraint systems here have a handful of nonzeros per row
    rows = [{j: x for j, x in enumerate(m.row(i)) if x} for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if c in rows[i]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        piv = {j: x * inv for j, x in rows[r].items()}
        rows[r] = piv
        for i in range(m.rows):
            if i != r and c in rows[i]:
                row = rows[i]
                f = row[c]
                for j, y in piv.items():
                    v = row.get(j, 0) - f * y
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        pivots.append(c)
        r += 1
    dense = [[Fraction(0)] * m.cols for _ in range(m.rows)]
    for i, row in enumerate(rows):
        for j, x in row.items():
            dense[i][j] = Fraction(x)
    return dense, pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list[RationalVector]:
    """Basis of ``{x : m x = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in every other
    free column, so the basis is canonical for a given matrix.
    """
    a, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -a[row][free]
        basis.append(tuple(x))
    return basis


def solve_in_span(basis: Sequence[Sequence], target: Sequence) -> RationalVector | None:
    """Coefficients expressing ``target`` in terms of ``basis``, or None."""
    if not basis:
        return () if not any(target) else None
    cols = len(basis)
    aug = RationalMatrix.from_rows(
        [[b[i] for b in basis] + [target[i]] for i in range(len(target))], cols + 1
    )
    a, pivots = rref(aug)
    if cols in pivots:
        return None
    coeffs = [Fraction(0)] * cols
    for row, pc in enumerate(pivots):
        coeffs[pc] = a[row][cols]
    return tuple(coeffs)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise TypeError(f"cannot parse {s!r} as an exact rational")
