"""Truncated Hilbert series of graded quotients.

Coefficient ``k`` of a :class:`HilbertSeries` is the dimension in
cohomological degree ``2k``; odd degrees are always zero and not stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .groebner import GroebnerBasis, standard_monomials
from .poly import Polynomial, VariableSet

__all__ = [
    "ClosedForm",
    "HilbertSeries",
    "series_of_quotient",
    "expected_peterson_series",
    "polynomial_ring_series",
    "regular_sequence_identity_check",
    "expand_rational_series",
]

S = VariableSet(("s",))


def _check_bound(D: int) -> None:
    if D < 0 or D % 2:
        raise ValueError(f"truncation must be a non-negative even integer, got {D}")


def expand_rational_series(numerator: Sequence[int], denominator_degrees: Sequence[int], D: int) -> list[int]:
    """Coefficients of ``s^0..s^D`` of ``numerator(s) / prod(1 - s^d)``."""
    c = [0] * (D + 1)
    for i, a in enumerate(numerator):
        if i <= D:
            c[i] = a
    for d in denominator_degrees:
        if d <= 0:
            raise ValueError("denominator factors need positive degree")
        # multiply by 1/(1 - s^d) = running sum with stride d
        for i in range(d, D + 1):
            c[i] += c[i - d]
    return c


@dataclass(frozen=True)
class ClosedForm:
    """``numerator(s) / prod_i (1 - s^{d_i})`` with integer numerator."""

    numerator: Polynomial
    denominator_degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.numerator.variables != S:
            raise ValueError("closed-form numerator must be a polynomial in s")
        if any(c.denominator != 1 for c in self.numerator.terms.values()):
            raise ValueError("closed-form numerator must have integer coefficients")

    def expand(self, D: int) -> list[int]:
        deg = max(sum(m) for m in self.numerator.terms) if self.numerator else 0
        num = [int(self.numerator.coefficient((i,))) for i in range(deg + 1)]
        return expand_rational_series(num, self.denominator_degrees, D)

    def __str__(self) -> str:
        den = "".join(f"(1 - s^{d})" for d in self.denominator_degrees)
        num = self.numerator.to_string()
        return f"({num}) / {den}" if den else num


@dataclass(frozen=True)
class HilbertSeries:
    truncation: int
    coefficients: tuple[int, ...]
    closed_form: ClosedForm | None = None

    def __post_init__(self) -> None:
        _check_bound(self.truncation)
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if len(self.coefficients) != self.truncation // 2 + 1:
            raise ValueError("need one coefficient per even degree up to the truncation")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("dimensions are non-negative")
        if self.closed_form is not None:
            full = self.closed_form.expand(self.truncation)
            if any(full[1::2]) or tuple(full[0::2]) != self.coefficients:
                raise ValueError("closed form does not match the coefficients")

    def dimension(self, degree: int) -> int:
        """Dimension in cohomological ``degree`` (0 for odd degrees)."""
        if degree % 2:
            return 0
        return self.coefficients[degree // 2]

    def total(self) -> int:
        return sum(self.coefficients)

    def to_json(self) -> dict:
        out: dict = {"truncation": self.truncation, "coefficients": list(self.coefficients)}
        if self.closed_form is not None:
            out["closed_form"] = str(self.closed_form)
        return out


def series_of_quotient(G: GroebnerBasis, D: int) -> HilbertSeries:
    _check_bound(D)
    std = standard_monomials(G, D)
    return HilbertSeries(D, tuple(len(std[d]) for d in range(0, D + 1, 2)))


def polynomial_ring_series(nvars: int, D: int) -> HilbertSeries:
    """Series of a polynomial ring on ``nvars`` degree-2 generators."""
    _check_bound(D)
    return HilbertSeries(D, tuple(comb(k + nvars - 1, nvars - 1) for k in range(D // 2 + 1)))


def expected_peterson_series(n: int, variant: str, D: int) -> HilbertSeries:
    """``(1+s^2)^(n-1)`` for ordinary, divided by ``(1-s^2)`` for equivariant."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _check_bound(D)
    if variant not in ("ordinary", "equivariant"):
        raise ValueError(f"unknown variant {variant!r}")
    s = Polynomial.var(S, "s")
    numerator = (1 + s * s) ** (n - 1)
    form = ClosedForm(numerator, (2,) if variant == "equivariant" else ())
    coeffs = form.expand(D)[0::2]
    return HilbertSeries(D, tuple(coeffs), form)


def regular_sequence_identity_check(
    ambient_vars: int, generator_degrees: Sequence[int], quotient: HilbertSeries
) -> bool:
    """Does ``quotient`` equal ``prod(1 - s^deg) / (1 - s^2)^ambient_vars``?

    Degrees are cohomological and must be even.
    """
    if any(d <= 0 or d % 2 for d in generator_degrees):
        raise ValueError("generator degrees must be positive even integers")
    D = quotient.truncation
    if generator_degrees and D < max(generator_degrees):
        raise ValueError("truncation is below the largest generator degree")
    numerator = [1]
    for d in generator_degrees:
        nxt = [0] * (len(numerator) + d)
        for i, a in enumerate(numerator):
            nxt[i] += a
            nxt[i + d] -= a
        numerator = nxt
    expected = expand_rational_series(numerator, (2,) * ambient_vars, D)
    return tuple(expected[0::2]) == quotient.coefficients and not any(expected[1::2])
