"""End-to-end verification run for one ``n`` and its JSON report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .groebner import IdealBasis
from .hilbert import expected_peterson_series, regular_sequence_identity_check, series_of_quotient
from .peterson import (
    PresentationRing,
    build_presentation,
    enumerate_fixed_points,
    injectivity_check,
    ordinary_variables,
    verify_relations,
)
from .poly import MonomialOrder, Polynomial, substitute
from .regseq import DEFAULT_BRANCH_CAP, SoundnessError, cross_check_peterson

SCHEMA = "peterson-report/1"


@dataclass
class Check:
    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "details": self.details}


@dataclass
class VerificationReport:
    n: int
    degree_bound: int
    config: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    equivariant_series: list[int] = field(default_factory=list)
    ordinary_series: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": __version__,
            "config": self.config,
            "n": self.n,
            "degree_bound": self.degree_bound,
            "status": "pass" if self.passed else "fail",
            "equivariant_series": self.equivariant_series,
            "ordinary_series": self.ordinary_series,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def render_text(self) -> str:
        lines = [f"Peterson presentation check, n = {self.n}, degrees <= {self.degree_bound}"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}")
        lines.append(f"  equivariant series: {self.equivariant_series}")
        lines.append(f"  ordinary series:    {self.ordinary_series}")
        lines.append("ALL CHECKS PASSED" if self.passed else "SOME CHECKS FAILED")
        return "\n".join(lines)


def ordinary_from_equivariant(ring: PresentationRing) -> PresentationRing:
    """Set ``t = 0`` and rename ``xi_k`` to ``xibar_k``."""
    n = ring.n
    target = ordinary_variables(n)
    sigma = {f"xi_{k}": Polynomial.var(target, f"xibar_{k}") for k in range(1, n)}
    sigma["t"] = Polynomial.zero(target)
    gens = tuple(substitute(g, sigma, target) for g in ring.ideal.generators)
    return PresentationRing(n, "ordinary", target, IdealBasis(gens, MonomialOrder.of(ring.ideal.order.kind, target)))


def run_verify(
    n: int,
    degree_bound: int | None = None,
    order: str = "grevlex",
    branch_cap: int = DEFAULT_BRANCH_CAP,
    threads: int | None = None,
    ring: PresentationRing | None = None,
) -> VerificationReport:
    """Run every check for ``n``.  ``ring`` overrides the equivariant presentation."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    D = 4 * n if degree_bound is None else degree_bound
    if D < 4 or D % 2:
        raise ValueError(f"degree bound must be an even integer >= 4, got {D}")
    ring = ring or build_presentation(n, "equivariant", order)
    ordinary = ordinary_from_equivariant(ring)
    report = VerificationReport(n, D, {"order": order, "branch_cap": branch_cap})

    fps = enumerate_fixed_points(n)
    expected_ord = expected_peterson_series(n, "ordinary", max(D, 2 * (n - 1)))
    report.checks.append(Check("fixed_points", len(fps) == 2 ** (n - 1) == expected_ord.total(), {
        "count": len(fps),
        "points": [p.to_json() for p in fps],
    }))

    rel = verify_relations(n, ring)
    report.checks.append(Check("relations_restrict_to_zero", rel.passed, rel.to_json()))

    G = ring.groebner()
    eq_series = series_of_quotient(G, D)
    eq_expected = expected_peterson_series(n, "equivariant", D)
    report.equivariant_series = list(eq_series.coefficients)
    report.checks.append(Check("equivariant_series", eq_series.coefficients == eq_expected.coefficients, {
        "computed": list(eq_series.coefficients),
        "expected": list(eq_expected.coefficients),
        "closed_form": str(eq_expected.closed_form),
        "groebner_basis": [str(g) for g in G.elements],
    }))

    ord_series = series_of_quotient(ordinary.groebner(), D)
    ord_expected = expected_peterson_series(n, "ordinary", D)
    report.ordinary_series = list(ord_series.coefficients)
    report.checks.append(Check("ordinary_series", ord_series.coefficients == ord_expected.coefficients, {
        "computed": list(ord_series.coefficients),
        "expected": list(ord_expected.coefficients),
        "closed_form": str(ord_expected.closed_form),
        "total_dimension": ord_series.total(),
    }))

    quadrics = [4] * (n - 1)
    with_t = regular_sequence_identity_check(n, quadrics + [2], ord_series)
    without_t = regular_sequence_identity_check(n, quadrics, eq_series)
    report.checks.append(Check("regular_sequence_identity", with_t and without_t, {
        "ambient_variables": n,
        "relations_then_t": with_t,
        "relations_only": without_t,
    }))

    try:
        cc = cross_check_peterson(n, branch_cap, threads, order)
        report.checks.append(Check("quadratic_system_cross_check", cc.only_origin and cc.consistent, cc.to_json()))
    except SoundnessError as exc:
        report.checks.append(Check("quadratic_system_cross_check", False, {"error": str(exc)}))

    inj = injectivity_check(n, D, ring, threads, basis=G)
    report.checks.append(Check("restriction_injective", inj.passed, inj.to_json()))
    return report
