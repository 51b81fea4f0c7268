"""Exact rational scalars and dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps the canonical
form (positive denominator, lowest terms, ``0 == 0/1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "ExactArithmeticError",
    "as_rational",
    "format_rational",
    "rational_arithmetic",
    "RationalMatrix",
    "rank",
    "kernel_basis",
]


class ExactArithmeticError(ArithmeticError):
    """Raised for undefined exact operations such as division by zero."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact or boolean scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    """JSON form: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(x))


def rational_arithmetic(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ExactArithmeticError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[RationalLike]], cols: int | None = None) -> "RationalMatrix":
        data = [[as_rational(x) for x in row] for row in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        r, c = self.rows, self.cols
        return RationalMatrix(c, r, tuple(self.entries[i * c + j] for j in range(c) for i in range(r)))

    def mul_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        c = self.cols
        return [sum((self.entries[i * c + j] * v[j] for j in range(c)), Fraction(0)) for i in range(self.rows)]


def _row_echelon(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; pivot is the first nonzero entry in each column."""
    a = m.row_lists()
    pivots: list[int] = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][col] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][col]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                ai, ar = a[i], a[r]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(col)
        r += 1
    return a, pivots


def rank(m: RationalMatrix) -> int:
    return len(_row_echelon(m)[1])


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{z : m z = 0}``, one vector per free column."""
    a, pivots = _row_echelon(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        z = [Fraction(0)] * m.cols
        z[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            z[pc] = -a[r][f]
        basis.append(z)
    return basis
