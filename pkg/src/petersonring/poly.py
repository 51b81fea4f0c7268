"""Sparse multivariate polynomials with rational coefficients.

A :class:`Polynomial` is a map from exponent tuples to nonzero Fractions,
tied to a :class:`VariableSet`.  Every variable sits in cohomological
degree 2, so the cohomological degree of a monomial is twice its exponent
sum.  Values are treated as immutable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .exact import RationalLike, as_rational

Monomial = tuple[int, ...]
Scalar = Union[Fraction, int]

__all__ = [
    "Monomial",
    "VariableSet",
    "MonomialOrder",
    "Cmp",
    "Polynomial",
    "PolynomialParseError",
    "poly_op",
    "substitute",
    "elementary_symmetric",
    "compare",
    "parse_polynomial",
    "monomial_degree",
]


def monomial_degree(m: Monomial) -> int:
    """Cohomological degree of a monomial (every generator has degree 2)."""
    return 2 * sum(m)


@dataclass(frozen=True)
class VariableSet:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    @property
    def degrees(self) -> tuple[int, ...]:
        return (2,) * len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}; known: {', '.join(self.names)}") from None

    def unit(self, name: str) -> Monomial:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return tuple(e)


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic or lexicographic order.

    ``precedence`` lists variable indices from most to least significant;
    the default is the order of the :class:`VariableSet`.
    """

    kind: str
    precedence: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "precedence", tuple(self.precedence))
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation of variable indices")

    @classmethod
    def of(cls, kind: str, variables: VariableSet | int, precedence: Sequence[str] | None = None) -> "MonomialOrder":
        if isinstance(variables, int):
            return cls(kind, tuple(range(variables)))
        if precedence is None:
            return cls(kind, tuple(range(len(variables))))
        return cls(kind, tuple(variables.index(v) for v in precedence))

    def key(self, m: Monomial):
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        e = [m[i] for i in self.precedence]
        if self.kind == "lex":
            return tuple(e)
        return (sum(e), tuple(-x for x in reversed(e)))

    def compare(self, m1: Monomial, m2: Monomial) -> Cmp:
        k1, k2 = self.key(m1), self.key(m2)
        return Cmp.GT if k1 > k2 else Cmp.LT if k1 < k2 else Cmp.EQ


def compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> Cmp:
    return order.compare(m1, m2)


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: VariableSet, terms: Mapping[Monomial, RationalLike] | None = None):
        self.variables = variables
        clean: dict[Monomial, Fraction] = {}
        nv = len(variables)
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nv or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {nv} variables")
            c = as_rational(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def _raw(cls, variables: VariableSet, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, variables: VariableSet) -> "Polynomial":
        return cls._raw(variables, {})

    @classmethod
    def constant(cls, variables: VariableSet, c: RationalLike) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: VariableSet, name: str) -> "Polynomial":
        return cls._raw(variables, {variables.unit(name): Fraction(1)})

    @classmethod
    def monomial(cls, variables: VariableSet, m: Monomial, c: RationalLike = 1) -> "Polynomial":
        return cls(variables, {m: c})

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Largest exponent sum; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def cohomological_degree(self) -> int:
        return 2 * self.degree() if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def occurring_variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.variables.names[i] for i in sorted(used)]

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        """Terms from largest to smallest monomial."""
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if other.variables != self.variables:
            raise ValueError(
                f"variable sets differ: {self.variables.names} vs {other.variables.names}"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.variables)
            return Polynomial._raw(self.variables, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == Polynomial.constant(self.variables, other).terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # -- conversions ---------------------------------------------------------
    def embed(self, target: VariableSet) -> "Polynomial":
        """Re-express in ``target``, which must contain every occurring variable."""
        idx = [target.index(self.variables.names[i]) if e else None
               for i, e in enumerate(_support_mask(self))]
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(target)
            for i, x in enumerate(m):
                if x:
                    e[idx[i]] = x
            out[tuple(e)] = c
        return Polynomial._raw(target, out)

    def to_string(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrder.of("grevlex", self.variables)
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables.names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r}, {list(self.variables.names)})"


def _support_mask(p: Polynomial) -> list[int]:
    mask = [0] * len(p.variables)
    for m in p.terms:
        for i, e in enumerate(m):
            if e:
                mask[i] = 1
    return mask


def poly_op(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.variables != q.variables:
        raise ValueError("polynomials live over different variable sets")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Polynomial, sigma: Mapping[str, Polynomial], target: VariableSet) -> Polynomial:
    """Image of ``p`` under the algebra map sending each variable to ``sigma[name]``.

    Images must live in ``target`` and be zero or homogeneous linear forms.
    """
    names = p.variables.names
    images: list[Polynomial | None] = []
    for i, used in enumerate(_support_mask(p)):
        if not used:
            images.append(None)
            continue
        name = names[i]
        if name not in sigma:
            raise KeyError(f"no assignment for variable {name!r}")
        img = sigma[name]
        if img.variables != target:
            raise ValueError(f"image of {name!r} is not over the target variables")
        if img and not (img.is_homogeneous() and img.degree() == 1):
            raise ValueError(f"image of {name!r} is not of degree 2: {img}")
        images.append(img)

    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e  # type: ignore[operator]
        return powers[key]

    result = Polynomial.zero(target)
    for m, c in p.terms.items():
        term = Polynomial.constant(target, c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
                if not term:
                    break
        result = result + term
    return result


def elementary_symmetric(k: int, names: Sequence[str], variables: VariableSet) -> Polynomial:
    """Sum of all squarefree degree-``k`` monomials in the named variables."""
    if not 1 <= k <= len(names):
        raise ValueError(f"k={k} out of range 1..{len(names)}")
    idx = [variables.index(v) for v in names]
    terms = {}
    for combo in combinations(idx, k):
        e = [0] * len(variables)
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial._raw(variables, terms)


# -- text syntax -----------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise PolynomialParseError(f"unexpected character {text[start]!r}", text, start)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        value = m.group(m.lastindex)
        tokens.append((kind, "^" if value == "**" else value, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: VariableSet):
        self.text = text
        self.vs = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, pos: int | None = None):
        raise PolynomialParseError(msg, self.text, self.peek()[2] if pos is None else pos)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.degree() > 0:
                    self.fail("division by a non-constant", pos)
                c = q.coefficient((0,) * len(self.vs))
                if c == 0:
                    self.fail("division by zero", pos)
                p = p * (1 / c)
        return p

    def unary(self) -> Polynomial:
        kind, value, _ = self.peek()
        if kind == "op" and value in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if value == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer", pos)
            base = base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value, pos = self.take()
        if kind == "num":
            return Polynomial.constant(self.vs, int(value))
        if kind == "name":
            if value not in self.vs:
                self.fail(f"unknown variable {value!r}", pos)
            return Polynomial.var(self.vs, value)
        if kind == "op" and value == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        self.fail("expected a number, variable or '('", pos)
        raise AssertionError  # unreachable


def parse_polynomial(text: str, variables: VariableSet) -> Polynomial:
    """Parse e.g. ``"3/2*xi_1^2*t - xi_2"``; ``**`` is accepted for ``^``."""
    return _Parser(text, variables).parse()
