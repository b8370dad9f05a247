"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` is an immutable map from exponent vectors to nonzero
:class:`~fractions.Fraction` coefficients.  The same class doubles as an
ordinary polynomial ring when all exponents are nonnegative (used for the
coordinate polynomials of quasipolynomials).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, ParseError, ZeroCoordinate

Exponent = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exponent, object] | Iterable = ()):
        self.dim = dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionMismatch(f"exponent {exp} is not {dim}-dimensional")
            c = clean.get(exp, 0) + Fraction(coef)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        return cls(dim)

    @classmethod
    def one(cls, dim: int) -> LaurentPoly:
        return cls(dim, {(0,) * dim: 1})

    @classmethod
    def constant(cls, dim: int, c) -> LaurentPoly:
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> LaurentPoly:
        return cls(len(exp), {tuple(exp): coef})

    @classmethod
    def variable(cls, dim: int, i: int) -> LaurentPoly:
        e = [0] * dim
        e[i] = 1
        return cls(dim, {tuple(e): 1})

    @classmethod
    def _raw(cls, dim: int, terms: dict[Exponent, Fraction]) -> LaurentPoly:
        p = cls.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._hash = None
        return p

    # -- container protocol ---------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in lexicographic exponent order."""
        for exp in sorted(self._terms):
            yield exp, self._terms[exp]

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.dim: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {self.to_latex()!r})"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: LaurentPoly) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly.zero(self.dim)
            return LaurentPoly._raw(self.dim, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.one(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial x^exp."""
        return LaurentPoly._raw(
            self.dim, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    # -- evaluation -------------------------------------------------------
    def substitute(self, point: Sequence) -> Fraction:
        if len(point) != self.dim:
            raise DimensionMismatch("point has wrong dimension")
        pt = [Fraction(x) for x in point]
        if any(x == 0 for x in pt) and any(e < 0 for exp in self._terms for e in exp):
            raise ZeroCoordinate("negative exponent at a zero coordinate")
        if any(x == 0 for x in pt):
            raise ZeroCoordinate("substitution points must have nonzero coordinates")
        powers: list[dict[int, Fraction]] = [dict() for _ in pt]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    v = cache.get(e)
                    if v is None:
                        v = pt[i] ** e
                        cache[e] = v
                    term *= v
            total += term
        return total

    def evaluate(self, point: Sequence) -> Fraction:
        """Evaluate a polynomial (nonnegative exponents) at any rational point."""
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(pt, exp):
                if e:
                    term *= x ** e
            total += term
        return total

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.dim
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.dim
        return tuple(max(col) for col in zip(*self._terms))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # -- text -------------------------------------------------------------
    def to_latex(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            parts.append(_signed_term(c, exp, var, first=not parts))
        return "".join(parts)


def monomial_latex(exp: Sequence[int], var: str = "x") -> str:
    out = []
    for i, e in enumerate(exp, start=1):
        if e == 0:
            continue
        out.append(f"{var}_{i}" if e == 1 else f"{var}_{i}^{{{e}}}")
    return "".join(out)


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _signed_term(c: Fraction, exp: Sequence[int], var: str, first: bool) -> str:
    mono = monomial_latex(exp, var)
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    if not mono:
        body = _coef_text(a)
    elif a == 1:
        body = mono
    else:
        body = _coef_text(a) + mono
    return sign + body


# -- parsing ------------------------------------------------------------------

_TERM = re.compile(
    r"([+-]?)"
    r"(\\frac\{\d+\}\{\d+\}|\d+(?:/\d+)?)?"
    r"((?:x_\{?\d+\}?(?:\^\{?-?\d+\}?)?)*)"
)
_VAR = re.compile(r"x_\{?(\d+)\}?(?:\^\{?(-?\d+)\}?)?")


def parse_monomial(text: str, dim: int) -> Exponent:
    text = text.replace(" ", "")
    exp = [0] * dim
    pos = 0
    for m in _VAR.finditer(text):
        if m.start() != pos:
            raise ParseError(f"unexpected text in monomial {text!r}")
        i = int(m.group(1)) - 1
        if not 0 <= i < dim:
            raise ParseError(f"variable index {i + 1} outside dimension {dim}")
        exp[i] += int(m.group(2)) if m.group(2) is not None else 1
        pos = m.end()
    if pos != len(text):
        raise ParseError(f"unexpected text in monomial {text!r}")
    return tuple(exp)


def parse_poly(text: str, dim: int) -> LaurentPoly:
    """Parse table-style text such as ``-x_1^{3}x_2^{2}+2x_2-1``."""
    s = re.sub(r"\s+", "", text)
    if s in ("", "0"):
        return LaurentPoly.zero(dim)
    terms: dict[Exponent, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ParseError(f"cannot parse polynomial near {s[pos:pos + 20]!r}")
        if pos and not m.group(1):
            raise ParseError(f"missing sign near {s[pos:pos + 20]!r}")
        sign = -1 if m.group(1) == "-" else 1
        ctext = m.group(2)
        if ctext is None:
            coef = Fraction(1)
        elif ctext.startswith("\\frac"):
            a, b = re.findall(r"\d+", ctext)
            coef = Fraction(int(a), int(b))
        else:
            coef = Fraction(ctext)
        exp = parse_monomial(m.group(3), dim)
        terms[exp] = terms.get(exp, 0) + sign * coef
        pos = m.end()
    return LaurentPoly(dim, terms)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def substitute_point(p: LaurentPoly, pt: Sequence) -> Fraction:
    return p.substitute(pt)
