"""Quadratic systems ``z_i^2 = z_i (a_{i-1} z_{i-1} + b_i z_{i+1})``.

Three independent ways to decide whether such a system has only the zero
solution:

* :func:`branch_solve` splits each equation into ``z_i = 0`` or
  ``z_i = a_{i-1} z_{i-1} + b_i z_{i+1}`` and rank-checks every one of the
  ``2^q`` linear branches;
* :func:`continued_fraction_criterion` evaluates the nested fractions
  ``1 - c_i / (1 - c_{i+1} / (... / (1 - c_j)))`` with ``c_i = a_i b_i``;
  nonvanishing for every ``i <= j`` is sufficient (not necessary);
* the Gröbner route: the homogeneous ideal is zero-dimensional.

Boundary terms use ``z_0 = z_{q+1} = 0``.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exact import RationalLike, RationalMatrix, as_rational, format_rational, kernel_basis, rank
from .groebner import IdealBasis, buchberger, is_dimension_zero
from .hilbert import regular_sequence_identity_check, series_of_quotient
from .poly import MonomialOrder, Polynomial, VariableSet

__all__ = [
    "QuadraticSystem",
    "SoundnessError",
    "peterson_system",
    "BranchResult",
    "branch_solve",
    "CriterionResult",
    "continued_fraction_criterion",
    "RecurrenceResult",
    "recurrence_with_bounds",
    "CrossCheckReport",
    "cross_check",
    "cross_check_peterson",
    "certify_peterson_regularity",
    "DEFAULT_BRANCH_CAP",
]

DEFAULT_BRANCH_CAP = 20


class SoundnessError(RuntimeError):
    """Two engines that must agree did not."""


@dataclass(frozen=True)
class QuadraticSystem:
    q: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        a = tuple(as_rational(x) for x in self.a)
        b = tuple(as_rational(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.q < 1:
            raise ValueError("need at least one variable")
        if len(a) != self.q - 1 or len(b) != self.q - 1:
            raise ValueError(f"a and b need q-1 = {self.q - 1} entries each")

    @property
    def c(self) -> tuple[Fraction, ...]:
        return tuple(x * y for x, y in zip(self.a, self.b))

    @property
    def variables(self) -> VariableSet:
        return VariableSet(tuple(f"z_{i}" for i in range(1, self.q + 1)))

    def coefficient_a(self, i: int) -> Fraction:
        """``a_i`` with the boundary convention ``a_0 = 0``."""
        return self.a[i - 1] if 1 <= i <= self.q - 1 else Fraction(0)

    def coefficient_b(self, i: int) -> Fraction:
        """``b_i`` with the boundary convention ``b_q = 0``."""
        return self.b[i - 1] if 1 <= i <= self.q - 1 else Fraction(0)

    def linear_part(self, i: int) -> dict[int, Fraction]:
        """``z_i - a_{i-1} z_{i-1} - b_i z_{i+1}`` as ``{index: coefficient}``."""
        row = {i: Fraction(1)}
        if i > 1:
            row[i - 1] = -self.coefficient_a(i - 1)
        if i < self.q:
            row[i + 1] = -self.coefficient_b(i)
        return row

    def polynomials(self) -> list[Polynomial]:
        vs = self.variables
        out = []
        for i in range(1, self.q + 1):
            z = Polynomial.var(vs, f"z_{i}")
            lin = Polynomial.zero(vs)
            for j, c in self.linear_part(i).items():
                lin = lin + Polynomial.var(vs, f"z_{j}") * c
            out.append(z * lin)
        return out

    def evaluate(self, point: Sequence[RationalLike]) -> list[Fraction]:
        """Residuals ``z_i^2 - z_i (a_{i-1} z_{i-1} + b_i z_{i+1})``."""
        z = [as_rational(x) for x in point]
        if len(z) != self.q:
            raise ValueError("point has the wrong length")
        return [
            z[i - 1] * sum((c * z[j - 1] for j, c in self.linear_part(i).items()), Fraction(0))
            for i in range(1, self.q + 1)
        ]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "a": [format_rational(x) for x in self.a],
            "b": [format_rational(x) for x in self.b],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadraticSystem":
        try:
            q = data["q"]
            a, b = data["a"], data["b"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"system needs keys q, a, b: {exc}") from exc
        if not isinstance(q, int) or isinstance(q, bool):
            raise ValueError("q must be an integer")
        return cls(q, tuple(a), tuple(b))

    @classmethod
    def load(cls, path: str | Path) -> "QuadraticSystem":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def peterson_system(n: int) -> QuadraticSystem:
    """The system of the ordinary relations: ``q = n-1`` and ``a_i = b_i = 1/2``."""
    if n < 3:
        raise ValueError(f"n must be at least 3 (q = n-1 >= 2), got {n}")
    half = (Fraction(1, 2),) * (n - 2)
    return QuadraticSystem(n - 1, half, half)


# -- branch decomposition ----------------------------------------------------------

@dataclass(frozen=True)
class BranchResult:
    only_origin: bool
    branches: int
    witness_branch: int | None = None
    witness: tuple[tuple[Fraction, ...], ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"only_origin": self.only_origin, "branches": self.branches}
        if self.witness is not None:
            out["witness_branch"] = self.witness_branch
            out["witness_kernel"] = [[format_rational(x) for x in v] for v in self.witness]
        return out


def branch_matrix(sys: QuadraticSystem, mask: int) -> RationalMatrix:
    """Bit ``i-1`` of ``mask`` selects the linear factor of equation ``i``."""
    rows = []
    for i in range(1, sys.q + 1):
        row = [Fraction(0)] * sys.q
        if mask >> (i - 1) & 1:
            for j, c in sys.linear_part(i).items():
                row[j - 1] = c
        else:
            row[i - 1] = Fraction(1)
        rows.append(row)
    return RationalMatrix.from_rows(rows, cols=sys.q)


def branch_solve(
    sys: QuadraticSystem, cap: int = DEFAULT_BRANCH_CAP, threads: int | None = None
) -> BranchResult:
    if sys.q > cap:
        raise ValueError(f"q = {sys.q} exceeds the branch cap of {cap}")
    masks = range(1 << sys.q)

    def full_rank(mask: int) -> bool:
        return rank(branch_matrix(sys, mask)) == sys.q

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            ok = list(pool.map(full_rank, masks, chunksize=64))
    else:
        ok = [full_rank(m) for m in masks]
    bad = next((m for m, good in zip(masks, ok) if not good), None)
    if bad is None:
        return BranchResult(True, len(ok))
    kernel = kernel_basis(branch_matrix(sys, bad))
    return BranchResult(False, len(ok), bad, tuple(tuple(v) for v in kernel))


# -- continued fractions -----------------------------------------------------------

@dataclass(frozen=True)
class CriterionResult:
    holds: bool
    failing_pair: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {"holds": self.holds, "failing_pair": list(self.failing_pair) if self.failing_pair else None}


def continued_fraction_criterion(c: Sequence[RationalLike]) -> CriterionResult:
    """Check every nested fraction ``1 - c_i/(1 - ... /(1 - c_j))`` is nonzero.

    For each ``j`` the chain is evaluated from the inside out; a zero ends
    the check at that ``(i, j)`` because the next level would divide by it.
    """
    cs = [as_rational(x) for x in c]
    for j in range(1, len(cs) + 1):
        d = 1 - cs[j - 1]
        if d == 0:
            return CriterionResult(False, (j, j))
        for i in range(j - 1, 0, -1):
            d = 1 - cs[i - 1] / d
            if d == 0:
                return CriterionResult(False, (i, j))
    return CriterionResult(True)


@dataclass(frozen=True)
class RecurrenceResult:
    c: Fraction
    values: tuple[Fraction, ...]
    certificates: tuple[bool | None, ...]
    undefined_at: int | None = None

    @property
    def regime(self) -> str:
        if self.c < 0:
            return "negative"
        if self.c <= Fraction(1, 4):
            return "quarter"
        return "uncertified"

    @property
    def all_certified(self) -> bool:
        return self.undefined_at is None and all(x is True for x in self.certificates)

    def to_json(self) -> dict:
        return {
            "c": format_rational(self.c),
            "regime": self.regime,
            "values": [format_rational(x) for x in self.values],
            "certificates": list(self.certificates),
            "undefined_at": self.undefined_at,
        }


def recurrence_with_bounds(c: RationalLike, M: int) -> RecurrenceResult:
    """Iterate ``x_m = 1 - c / x_{m-1}`` from ``x_0 = 1`` and certify lower bounds.

    For ``0 <= c <= 1/4`` the bound ``x_m >= (1 + sqrt(1 - 4c)) / 2`` is
    checked square-root-free as ``2x_m - 1 >= 0`` and
    ``(2x_m - 1)^2 >= 1 - 4c``; for ``c < 0`` the bound is ``x_m >= 1``.
    Certificates cover ``m = 1..M``.
    """
    c = as_rational(c)
    if M < 0:
        raise ValueError("M must be non-negative")
    values = [Fraction(1)]
    undefined_at = None
    for m in range(1, M + 1):
        if values[-1] == 0:
            undefined_at = m
            break
        values.append(1 - c / values[-1])

    certs: list[bool | None] = []
    for x in values[1:]:
        if c < 0:
            certs.append(x >= 1)
        elif c <= Fraction(1, 4):
            y = 2 * x - 1
            certs.append(y >= 0 and y * y >= 1 - 4 * c)
        else:
            certs.append(None)
    return RecurrenceResult(c, tuple(values), tuple(certs), undefined_at)


# -- cross check -------------------------------------------------------------------

@dataclass(frozen=True)
class CrossCheckReport:
    q: int
    criterion: CriterionResult
    branch: BranchResult | None
    dimension_zero: bool
    trivial: bool = False

    @property
    def only_origin(self) -> bool:
        return self.branch.only_origin if self.branch is not None else self.dimension_zero

    @property
    def consistent(self) -> bool:
        if self.criterion.holds and not self.only_origin:
            return False
        return self.branch is None or self.branch.only_origin == self.dimension_zero

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "trivial": self.trivial,
            "criterion": self.criterion.to_json(),
            "branch": self.branch.to_json() if self.branch is not None else None,
            "dimension_zero": self.dimension_zero,
            "only_origin": self.only_origin,
            "consistent": self.consistent,
        }


def system_dimension_zero(sys: QuadraticSystem, order: str = "grevlex") -> bool:
    vs = sys.variables
    G = buchberger(IdealBasis(tuple(sys.polynomials()), MonomialOrder.of(order, vs)))
    return is_dimension_zero(G)


def cross_check(
    sys: QuadraticSystem,
    cap: int = DEFAULT_BRANCH_CAP,
    threads: int | None = None,
    order: str = "grevlex",
) -> CrossCheckReport:
    """Run all three engines; raise :class:`SoundnessError` if they contradict."""
    crit = continued_fraction_criterion(sys.c)
    branch = branch_solve(sys, cap, threads)
    dim0 = system_dimension_zero(sys, order)
    report = CrossCheckReport(sys.q, crit, branch, dim0)
    if branch.only_origin != dim0:
        raise SoundnessError(
            f"branch decomposition says only_origin={branch.only_origin} "
            f"but the Gröbner test says dimension_zero={dim0} for {sys.to_json()}"
        )
    if crit.holds and not branch.only_origin:
        raise SoundnessError(f"criterion holds but a nonzero solution exists for {sys.to_json()}")
    return report


def cross_check_peterson(
    n: int, cap: int = DEFAULT_BRANCH_CAP, threads: int | None = None, order: str = "grevlex"
) -> CrossCheckReport:
    """Cross check for the Peterson system; ``n = 2`` is the one-variable ``z^2 = 0``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if n == 2:
        single = QuadraticSystem(1, (), ())
        return CrossCheckReport(1, CriterionResult(True), None, system_dimension_zero(single, order), trivial=True)
    return cross_check(peterson_system(n), cap, threads, order)


def certify_peterson_regularity(
    n: int,
    D: int | None = None,
    cap: int = DEFAULT_BRANCH_CAP,
    threads: int | None = None,
    order: str = "grevlex",
) -> dict:
    """Regularity of the ``n-1`` quadratic relations followed by ``t``.

    Combines the series identity on the ordinary quotient, the three-engine
    cross check on the reduced system, and zero-dimensionality of the
    equivariant ideal with ``t`` adjoined.
    """
    from .peterson import build_presentation

    D = 4 * n if D is None else D
    ordinary = build_presentation(n, "ordinary", order)
    quotient = series_of_quotient(ordinary.groebner(), D)
    identity = regular_sequence_identity_check(n, [4] * (n - 1) + [2], quotient)

    report = cross_check_peterson(n, cap, threads, order)

    equivariant = build_presentation(n, "equivariant", order)
    t = Polynomial.var(equivariant.variables, "t")
    with_t = IdealBasis(equivariant.ideal.generators + (t,), equivariant.ideal.order)
    dim0 = is_dimension_zero(buchberger(with_t))

    return {
        "n": n,
        "series_identity": identity,
        "ordinary_series": list(quotient.coefficients),
        "cross_check": report.to_json(),
        "dimension_zero_with_t": dim0,
        "regular": identity and report.only_origin and report.criterion.holds and dim0,
    }
