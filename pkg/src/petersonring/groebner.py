"""Buchberger's algorithm for homogeneous ideals, normal forms, staircases."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .poly import Monomial, MonomialOrder, Polynomial, VariableSet

__all__ = [
    "IdealBasis",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "ideal_membership",
    "s_polynomial",
    "standard_monomials",
    "is_dimension_zero",
    "monomials_of_degree",
]

Terms = dict[Monomial, Fraction]


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    variables: VariableSet = field(init=False)

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("an ideal basis needs at least one generator")
        vs = gens[0].variables
        for g in gens:
            if g.variables != vs:
                raise ValueError("generators live over different variable sets")
            if not g:
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
        if len(self.order.precedence) != len(vs):
            raise ValueError("monomial order does not match the number of variables")
        object.__setattr__(self, "variables", vs)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis; elements sorted by ascending leading monomial."""

    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    variables: VariableSet
    degree_bound: int | None = None

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.leading_monomial(self.order) for g in self.elements)

    @classmethod
    def empty(cls, variables: VariableSet, order: MonomialOrder | None = None) -> "GroebnerBasis":
        return cls((), order or MonomialOrder.of("grevlex", variables), variables)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(terms: Terms, basis: Sequence[tuple[Monomial, Terms]], key) -> Terms:
    """Multivariate division of ``terms`` by a list of monic ``(lm, terms)`` pairs."""
    p = dict(terms)
    rem: Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    mm = tuple(x + y for x, y in zip(gm, q))
                    v = p.get(mm, 0) - c * gc
                    if v:
                        p[mm] = v
                    else:
                        del p[mm]
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _monic(terms: Terms, lm: Monomial) -> Terms:
    c = terms[lm]
    return terms if c == 1 else {m: v / c for m, v in terms.items()}


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    if p.variables != G.variables:
        raise ValueError("polynomial and basis live over different variable sets")
    key = G.order.key
    basis = [(lm, g.terms) for lm, g in zip(G.leading_monomials, G.elements)]
    return Polynomial._raw(p.variables, _reduce(p.terms, basis, key))


def ideal_membership(p: Polynomial, G: GroebnerBasis) -> bool:
    return normal_form(p, G).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = _lcm(lf, lg)
    vs = f.variables
    uf = Polynomial.monomial(vs, tuple(a - b for a, b in zip(lcm, lf)), 1 / f.terms[lf])
    ug = Polynomial.monomial(vs, tuple(a - b for a, b in zip(lcm, lg)), 1 / g.terms[lg])
    return uf * f - ug * g


def buchberger(B: IdealBasis, degree_bound: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``B``.

    Pairs are taken by ascending lcm degree, ties by index (normal strategy).
    Coprime leading monomials and the chain criterion prune pairs.  With a
    ``degree_bound`` (cohomological), pairs whose lcm lies above the bound
    are dropped; the result is then only valid up to that degree.
    """
    order = B.order
    key = order.key
    vs = B.variables
    basis: list[tuple[Monomial, Terms]] = []
    for g in B.generators:
        lm = g.leading_monomial(order)
        basis.append((lm, _monic(g.terms, lm)))

    pairs: set[tuple[int, int]] = set()
    for j in range(len(basis)):
        for i in range(j):
            pairs.add((i, j))

    def pair_key(ij: tuple[int, int]):
        i, j = ij
        return (sum(_lcm(basis[i][0], basis[j][0])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = basis[i][0], basis[j][0]
        lcm = _lcm(li, lj)
        if degree_bound is not None and 2 * sum(lcm) > degree_bound:
            continue
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if any(
            k != i and k != j
            and _divides(basis[k][0], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        qi = tuple(a - b for a, b in zip(lcm, li))
        qj = tuple(a - b for a, b in zip(lcm, lj))
        s: Terms = {}
        for m, c in basis[i][1].items():
            s[tuple(a + b for a, b in zip(m, qi))] = c
        for m, c in basis[j][1].items():
            mm = tuple(a + b for a, b in zip(m, qj))
            v = s.get(mm, 0) - c
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        h = _reduce(s, basis, key)
        if h:
            lm = max(h, key=key)
            basis.append((lm, _monic(h, lm)))
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))

    return GroebnerBasis(_interreduce(basis, key, vs), order, vs, degree_bound)


def _interreduce(basis: list[tuple[Monomial, Terms]], key, vs: VariableSet) -> tuple[Polynomial, ...]:
    # drop elements whose leading monomial is divisible by another's
    minimal: list[tuple[Monomial, Terms]] = []
    for idx, (lm, g) in enumerate(basis):
        if any(
            _divides(lm2, lm) and (lm2 != lm or idx2 < idx)
            for idx2, (lm2, _) in enumerate(basis) if idx2 != idx
        ):
            continue
        minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [x for k, x in enumerate(minimal) if k != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        r = _reduce(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append((lm, r))
    reduced.sort(key=lambda x: key(x[0]))
    return tuple(Polynomial._raw(vs, g) for _, g in reduced)


def monomials_of_degree(nvars: int, e: int) -> Iterator[Monomial]:
    """All exponent vectors with exponent sum ``e``."""
    for combo in combinations_with_replacement(range(nvars), e):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        yield tuple(m)


def standard_monomials(G: GroebnerBasis, D: int) -> dict[int, list[Monomial]]:
    """Monomials outside the leading-term ideal, keyed by even degree ``d <= D``.

    Each list is sorted from largest to smallest in the basis order.
    """
    if D < 0 or D % 2:
        raise ValueError(f"degree bound must be a non-negative even integer, got {D}")
    if G.degree_bound is not None and D > G.degree_bound:
        raise ValueError(f"basis was truncated at degree {G.degree_bound} < {D}")
    lms = G.leading_monomials
    nv = len(G.variables)
    out = {}
    for e in range(D // 2 + 1):
        std = [m for m in monomials_of_degree(nv, e) if not any(_divides(lm, m) for lm in lms)]
        std.sort(key=G.order.key, reverse=True)
        out[2 * e] = std
    return out


def is_dimension_zero(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    pure = set()
    for lm in G.leading_monomials:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            pure.add(support[0])
    return len(pure) == len(G.variables)
