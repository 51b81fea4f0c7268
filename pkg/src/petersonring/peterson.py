"""Fixed points, restriction maps and presented rings of Peterson varieties.

Classes ``xi_k`` are handled through their values at the circle-fixed
points: at the point ``w`` the class ``xi_k`` restricts to
``sum_{i<=k} (w(i) - i) * t``.  The flag-variety side (``tau_i``, ``t_i``)
is available separately so the two routes can be compared.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .exact import RationalMatrix, rank
from .groebner import GroebnerBasis, IdealBasis, buchberger, standard_monomials
from .poly import (
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableSet,
    elementary_symmetric,
    substitute,
)

__all__ = [
    "Permutation",
    "PetersonFixedPoint",
    "permutation_from_subset",
    "enumerate_fixed_points",
    "restrict_xi",
    "equivariant_variables",
    "ordinary_variables",
    "flag_variables",
    "T",
    "RestrictionVector",
    "restrict_class",
    "restrict_monomial",
    "PresentationRing",
    "build_presentation",
    "peterson_generator",
    "flag_restriction",
    "partial_flag_sum",
    "RelationsReport",
    "verify_relations",
    "InjectivityReport",
    "injectivity_check",
    "restriction_matrix",
    "flag_generators_vanish",
]

Permutation = tuple[int, ...]

T = VariableSet(("t",))


def permutation_from_subset(n: int, subset: Sequence[int]) -> Permutation:
    """Concatenate the descending runs cut at the positions in ``subset``."""
    cuts = [0, *subset, n]
    w: list[int] = []
    for lo, hi in zip(cuts, cuts[1:]):
        w.extend(range(hi, lo, -1))
    return tuple(w)


@dataclass(frozen=True)
class PetersonFixedPoint:
    n: int
    subset: tuple[int, ...]
    one_line: Permutation = field(default=())

    def __post_init__(self) -> None:
        sub = tuple(self.subset)
        object.__setattr__(self, "subset", sub)
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if any(not 1 <= j <= self.n - 1 for j in sub) or any(a >= b for a, b in zip(sub, sub[1:])):
            raise ValueError(f"subset must be strictly increasing in 1..{self.n - 1}: {sub}")
        expected = permutation_from_subset(self.n, sub)
        if not self.one_line:
            object.__setattr__(self, "one_line", expected)
        elif tuple(self.one_line) != expected:
            raise ValueError(f"{self.one_line} is not the fixed point for subset {sub}")
        w = self.one_line
        if any(w[w[i] - 1] != i + 1 for i in range(self.n)):
            raise AssertionError(f"fixed point {w} is not an involution")

    @property
    def label(self) -> str:
        sep = "" if self.n < 10 else ","
        return sep.join(map(str, self.one_line))

    @property
    def mask(self) -> int:
        return sum(1 << (j - 1) for j in self.subset)

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "one_line": list(self.one_line)}


def enumerate_fixed_points(n: int) -> list[PetersonFixedPoint]:
    """All ``2^(n-1)`` fixed points, ordered by the subset's bitmask."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return [
        PetersonFixedPoint(n, tuple(j for j in range(1, n) if mask >> (j - 1) & 1))
        for mask in range(1 << (n - 1))
    ]


def restrict_xi(k: int, p: PetersonFixedPoint) -> Fraction:
    """Coefficient of ``t`` in the restriction of ``xi_k`` to ``p``."""
    if not 0 <= k <= p.n:
        raise ValueError(f"k={k} out of range 0..{p.n}")
    return Fraction(sum(p.one_line[i] - (i + 1) for i in range(k)))


# -- rings ---------------------------------------------------------------------

def equivariant_variables(n: int) -> VariableSet:
    return VariableSet(tuple(f"xi_{k}" for k in range(1, n)) + ("t",))


def ordinary_variables(n: int) -> VariableSet:
    return VariableSet(tuple(f"xibar_{k}" for k in range(1, n)))


def flag_variables(n: int) -> VariableSet:
    return VariableSet(tuple(f"tau_{i}" for i in range(1, n + 1)) + tuple(f"t_{i}" for i in range(1, n + 1)))


def _torus_variables(n: int) -> VariableSet:
    return VariableSet(tuple(f"t_{i}" for i in range(1, n + 1)))


def peterson_generator(
    n: int, k: int, variables: VariableSet, prefix: str = "xi", with_t: bool = True,
    half: Fraction = Fraction(1, 2),
) -> Polynomial:
    """``xi_k (xi_k - half*xi_{k-1} - half*xi_{k+1} - t)`` with ``xi_0 = xi_n = 0``."""
    xi = Polynomial.var(variables, f"{prefix}_{k}")
    factor = xi
    if k > 1:
        factor = factor - Polynomial.var(variables, f"{prefix}_{k - 1}") * half
    if k < n - 1:
        factor = factor - Polynomial.var(variables, f"{prefix}_{k + 1}") * half
    if with_t:
        factor = factor - Polynomial.var(variables, "t")
    return xi * factor


@dataclass(frozen=True)
class PresentationRing:
    n: int
    variant: str
    variables: VariableSet
    ideal: IdealBasis

    def groebner(self, degree_bound: int | None = None) -> GroebnerBasis:
        return buchberger(self.ideal, degree_bound)

    def with_generator(self, index: int, generator: Polynomial) -> "PresentationRing":
        """Copy with one generator replaced (used for fault injection)."""
        gens = list(self.ideal.generators)
        gens[index] = generator
        return replace(self, ideal=IdealBasis(tuple(gens), self.ideal.order))

    def with_order(self, kind: str) -> "PresentationRing":
        return replace(self, ideal=IdealBasis(self.ideal.generators, MonomialOrder.of(kind, self.variables)))


def build_presentation(n: int, variant: str = "equivariant", order: str = "grevlex") -> PresentationRing:
    """Generators of the defining ideal of the requested presentation.

    The default order has precedence ``xi_1 > ... > xi_{n-1} > t`` (and
    ``tau_1 > ... > tau_n > t_1 > ... > t_n`` for the flag variety).
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if variant == "equivariant":
        vs = equivariant_variables(n)
        gens = [peterson_generator(n, k, vs) for k in range(1, n)]
    elif variant == "ordinary":
        vs = ordinary_variables(n)
        gens = [peterson_generator(n, k, vs, prefix="xibar", with_t=False) for k in range(1, n)]
    elif variant == "flag":
        vs = flag_variables(n)
        taus = [f"tau_{i}" for i in range(1, n + 1)]
        ts = [f"t_{i}" for i in range(1, n + 1)]
        gens = [elementary_symmetric(i, taus, vs) - elementary_symmetric(i, ts, vs) for i in range(1, n + 1)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return PresentationRing(n, variant, vs, IdealBasis(tuple(gens), MonomialOrder.of(order, vs)))


# -- restriction to fixed points ---------------------------------------------------

@dataclass(frozen=True)
class RestrictionVector:
    points: tuple[PetersonFixedPoint, ...]
    values: tuple[Polynomial, ...]

    def __getitem__(self, p: PetersonFixedPoint) -> Polynomial:
        return self.values[self.points.index(p)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def nonzero_points(self) -> list[PetersonFixedPoint]:
        return [p for p, v in zip(self.points, self.values) if v]

    def to_json(self) -> list[dict]:
        return [{**p.to_json(), "value": str(v)} for p, v in zip(self.points, self.values)]


_XI_RE = re.compile(r"xi_(\d+)")


def _xi_index(name: str, n: int) -> int:
    m = _XI_RE.fullmatch(name)
    if not m or not 1 <= int(m.group(1)) <= n - 1:
        raise KeyError(f"variable {name!r} is not one of t, xi_1..xi_{n - 1}")
    return int(m.group(1))


def restrict_class(p: Polynomial, fps: Sequence[PetersonFixedPoint]) -> RestrictionVector:
    """Restrict a polynomial in ``t, xi_1..xi_{n-1}`` to each fixed point."""
    if not fps:
        raise ValueError("need at least one fixed point")
    n = fps[0].n
    used = p.occurring_variables()
    xi_vars = {name: _xi_index(name, n) for name in used if name != "t"}
    t = Polynomial.var(T, "t")
    values = []
    for fp in fps:
        sigma = {name: t * restrict_xi(k, fp) for name, k in xi_vars.items()}
        sigma["t"] = t
        values.append(substitute(p, sigma, T))
    return RestrictionVector(tuple(fps), tuple(values))


def restrict_monomial(m: Monomial, xi_values: Sequence[Fraction]) -> Fraction:
    """Coefficient of ``t^deg`` when ``xi_1^e1 ... t^e`` is restricted to a point.

    ``m`` is an exponent vector over :func:`equivariant_variables`;
    ``xi_values[k-1]`` is :func:`restrict_xi` of ``k`` at the point.
    """
    c = Fraction(1)
    for e, v in zip(m, xi_values):
        if e:
            c *= v ** e
    return c


def partial_flag_sum(n: int, k: int) -> Polynomial:
    """``sum_{i<=k} (t_i - tau_i)`` in the flag-variety variables."""
    vs = flag_variables(n)
    out = Polynomial.zero(vs)
    for i in range(1, k + 1):
        out = out + Polynomial.var(vs, f"t_{i}") - Polynomial.var(vs, f"tau_{i}")
    return out


def flag_restriction(p: Polynomial, w: Sequence[int], specialize: bool = False) -> Polynomial:
    """Localize a flag-variety class at the torus-fixed point ``w``.

    ``tau_i`` goes to ``t_{w(i)}`` and ``t_i`` stays; with ``specialize`` the
    circle specialization ``t_i -> (n + 1 - i) t`` is applied afterwards.
    """
    n = len(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(w)} is not a permutation of 1..{n}")
    target = T if specialize else _torus_variables(n)
    sigma = {}
    for i in range(1, n + 1):
        if specialize:
            sigma[f"tau_{i}"] = Polynomial.var(T, "t") * (n + 1 - w[i - 1])
            sigma[f"t_{i}"] = Polynomial.var(T, "t") * (n + 1 - i)
        else:
            sigma[f"tau_{i}"] = Polynomial.var(target, f"t_{w[i - 1]}")
            sigma[f"t_{i}"] = Polynomial.var(target, f"t_{i}")
    if p.variables != flag_variables(n):
        p = p.embed(flag_variables(n))
    return substitute(p, sigma, target)


# -- certificates ----------------------------------------------------------------

@dataclass
class RelationsReport:
    n: int
    generators: list[dict]
    top_class: list[dict]
    dichotomy: list[dict]

    @property
    def passed(self) -> bool:
        return (
            all(g["zero"] for g in self.generators)
            and all(r["zero"] for r in self.top_class)
            and all(d["pass"] for d in self.dichotomy)
        )

    def to_json(self) -> dict:
        failures = [d for d in self.dichotomy if not d["pass"]]
        return {
            "generators": self.generators,
            "top_class": {
                "zero_everywhere": all(r["zero"] for r in self.top_class),
                "points": self.top_class,
            },
            "dichotomy": {
                "checked": len(self.dichotomy),
                "partial_sum_vanishes": sum(d["partial_sum_vanishes"] for d in self.dichotomy),
                "adjacent_factor_vanishes": sum(d["adjacent_factor_vanishes"] for d in self.dichotomy),
                "failures": failures,
            },
        }


def verify_relations(n: int, ring: PresentationRing | None = None) -> RelationsReport:
    """Check the defining relations and the vanishing of ``xi_n`` at every fixed point."""
    ring = ring or build_presentation(n, "equivariant")
    fps = enumerate_fixed_points(n)
    gens = []
    for k, g in enumerate(ring.ideal.generators, start=1):
        vec = restrict_class(g, fps)
        gens.append({
            "k": k,
            "generator": str(g),
            "zero": vec.is_zero(),
            "nonzero_at": [p.label for p in vec.nonzero_points()],
        })

    top = partial_flag_sum(n, n)
    top_class = []
    for p in fps:
        via_flag = flag_restriction(top, p.one_line, specialize=True)
        top_class.append({
            "point": p.label,
            "zero": via_flag.is_zero() and restrict_xi(n, p) == 0,
        })

    dichotomy = []
    for p in fps:
        w = p.one_line
        for k in range(1, n):
            partial = restrict_xi(k, p) == 0
            adjacent = w[k - 1] - w[k] - 1 == 0
            dichotomy.append({
                "point": p.label,
                "k": k,
                "partial_sum_vanishes": partial,
                "adjacent_factor_vanishes": adjacent,
                "pass": partial or adjacent,
            })
    return RelationsReport(n, gens, top_class, dichotomy)


@dataclass
class InjectivityReport:
    n: int
    degree_bound: int
    degrees: list[dict]

    @property
    def passed(self) -> bool:
        return all(d["pass"] for d in self.degrees)

    def to_json(self) -> dict:
        return {"degree_bound": self.degree_bound, "degrees": self.degrees}


def restriction_matrix(
    rows: Sequence[Monomial], fps: Sequence[PetersonFixedPoint]
) -> RationalMatrix:
    """Rows: monomials in ``xi_1..xi_{n-1}, t``; columns: fixed points."""
    if not fps:
        raise ValueError("need at least one fixed point")
    n = fps[0].n
    values = [[restrict_xi(k, p) for k in range(1, n)] + [Fraction(1)] for p in fps]
    return RationalMatrix.from_rows(
        ([restrict_monomial(m, v) for v in values] for m in rows), cols=len(fps)
    )


def injectivity_check(
    n: int,
    D: int,
    ring: PresentationRing | None = None,
    threads: int | None = None,
    basis: GroebnerBasis | None = None,
) -> InjectivityReport:
    """Rank of the restriction matrix of the standard monomials, degree by degree."""
    if D < 0 or D % 2:
        raise ValueError(f"degree bound must be a non-negative even integer, got {D}")
    ring = ring or build_presentation(n, "equivariant")
    G = basis or ring.groebner()
    std = standard_monomials(G, D)
    fps = enumerate_fixed_points(n)

    def one_degree(d: int) -> dict:
        rows = std[d]
        r = rank(restriction_matrix(rows, fps)) if rows else 0
        return {"degree": d, "rows": len(rows), "rank": r, "pass": r == len(rows)}

    degrees = list(range(0, D + 1, 2))
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_degree, degrees))
    else:
        results = [one_degree(d) for d in degrees]
    return InjectivityReport(n, D, results)


def flag_generators_vanish(n: int) -> bool:
    """Every ``e_i(tau) - e_i(t)`` localizes to zero at every ``w`` in ``S_n``."""
    ring = build_presentation(n, "flag")
    return all(
        not flag_restriction(g, w)
        for w in permutations(range(1, n + 1))
        for g in ring.ideal.generators
    )
