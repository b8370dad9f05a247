"""Sums of fractions p(x) / prod (1 - x^{l alpha})^m and the identities that rewrite them.

The ring is Q[x, 1/x][1/(1 - x^alpha)].  An element is stored as a
:class:`FractionSum` of :class:`GeneratingFraction` objects, each a Laurent
numerator over a canonical tuple of :class:`DenominatorFactor`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from .arith import IntVector
from .errors import (
    DegenerateDifference,
    DimensionMismatch,
    EqualVectors,
    NonExpandableDenominator,
    ParseError,
    PoleHit,
    ZeroElongation,
    ZeroSumVector,
)
from .laurent import LaurentPoly, monomial_latex, parse_monomial, parse_poly


def _vec(v: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in v)


def vadd(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(k: int, v: Sequence[int]) -> IntVector:
    return tuple(k * a for a in v)


@dataclass(frozen=True, order=True)
class DenominatorFactor:
    """The factor 1 / (1 - x^{elongation * vector})^multiplicity."""

    vector: IntVector
    elongation: int = 1
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "vector", _vec(self.vector))
        if not any(self.vector):
            raise ValueError("denominator vector must be nonzero")
        if self.elongation < 1 or self.multiplicity < 1:
            raise ValueError("elongation and multiplicity must be positive")

    @property
    def effective(self) -> IntVector:
        return vscale(self.elongation, self.vector)

    def with_multiplicity(self, m: int) -> DenominatorFactor:
        return replace(self, multiplicity=m)


@dataclass(frozen=True)
class Relation:
    """a0 * gaining = sum(a_j * v_j), all vectors being effective denominator vectors."""

    a0: int
    gaining: IntVector
    terms: tuple[tuple[IntVector, int], ...]

    def __post_init__(self):
        if self.a0 <= 0:
            raise ValueError("a0 must be positive")
        if any(a == 0 for _, a in self.terms):
            raise ValueError("relation coefficients must be nonzero")
        lhs = vscale(self.a0, self.gaining)
        rhs = (0,) * len(self.gaining)
        for v, a in self.terms:
            rhs = vadd(rhs, vscale(a, v))
        if lhs != rhs:
            raise ValueError(f"{self} is not a valid relation")

    @property
    def vectors(self) -> tuple[IntVector, ...]:
        return (self.gaining,) + tuple(v for v, _ in self.terms)


def normalize_factors(factors: Iterable[DenominatorFactor]) -> tuple[DenominatorFactor, ...]:
    """Sort by (vector, elongation) and merge factors with equal effective vector."""
    merged: dict[IntVector, DenominatorFactor] = {}
    for f in factors:
        key = f.effective
        old = merged.get(key)
        if old is None:
            merged[key] = f
        else:
            rep = min((old.vector, old.elongation), (f.vector, f.elongation))
            merged[key] = DenominatorFactor(rep[0], rep[1], old.multiplicity + f.multiplicity)
    return tuple(sorted(merged.values()))


@dataclass(frozen=True)
class GeneratingFraction:
    numerator: LaurentPoly
    denominators: tuple[DenominatorFactor, ...]
    reduced: bool = False
    preferred_relation: Relation | None = None

    def __post_init__(self):
        object.__setattr__(self, "denominators", normalize_factors(self.denominators))
        n = self.numerator.dim
        if any(len(f.vector) != n for f in self.denominators):
            raise DimensionMismatch("denominator vectors must match numerator dimension")

    @property
    def dim(self) -> int:
        return self.numerator.dim

    @property
    def support(self) -> tuple[IntVector, ...]:
        return tuple(f.effective for f in self.denominators)

    def substitute(self, pt: Sequence) -> Fraction:
        pt = [Fraction(x) for x in pt]
        val = self.numerator.substitute(pt)
        for f in self.denominators:
            d = 1 - _power(pt, f.effective)
            if d == 0:
                raise PoleHit(f"1 - x^{f.effective} vanishes at {pt}")
            val /= d ** f.multiplicity
        return val

    def to_latex(self, first: bool = False) -> str:
        return _fraction_latex(self, first)


@dataclass(frozen=True)
class FractionSum:
    dim: int
    fractions: tuple[GeneratingFraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "fractions", tuple(self.fractions))
        if any(f.dim != self.dim for f in self.fractions):
            raise DimensionMismatch("all fractions must share the ambient dimension")

    @classmethod
    def product(cls, vectors: Sequence[Sequence[int]], numerator: LaurentPoly | None = None) -> FractionSum:
        """The single fraction numerator / prod_v (1 - x^v)."""
        vectors = [_vec(v) for v in vectors]
        if not vectors:
            raise ValueError("need at least one vector")
        n = len(vectors[0])
        num = numerator if numerator is not None else LaurentPoly.one(n)
        return cls(n, (GeneratingFraction(num, tuple(DenominatorFactor(v) for v in vectors)),))

    def __len__(self) -> int:
        return len(self.fractions)

    def __iter__(self):
        return iter(self.fractions)

    def __add__(self, other: FractionSum) -> FractionSum:
        if self.dim != other.dim:
            raise DimensionMismatch("dimensions differ")
        return FractionSum(self.dim, self.fractions + other.fractions)

    def substitute(self, pt: Sequence) -> Fraction:
        return substitute_fraction_sum(self, pt)

    def series(self, box: Sequence[tuple[int, int]]) -> LaurentPoly:
        return series_truncate(self, box)

    def collect(self) -> FractionSum:
        """Merge fractions with identical denominators and drop zero numerators."""
        acc: dict[tuple, LaurentPoly] = {}
        for f in self.fractions:
            key = f.denominators
            acc[key] = acc[key] + f.numerator if key in acc else f.numerator
        fr = tuple(GeneratingFraction(num, key, reduced=True) for key, num in acc.items() if num)
        return FractionSum(self.dim, fr)

    def vectors(self) -> set[IntVector]:
        return {f.effective for fr in self.fractions for f in fr.denominators}

    def to_latex(self, header: str | None = None) -> str:
        return fraction_sum_latex(self, header)

    def to_json(self) -> dict:
        return {
            "dimension": self.dim,
            "fractions": [
                {
                    "numerator": [[list(e), str(c)] for e, c in fr.numerator.items()],
                    "denominators": [
                        {"vector": list(f.vector), "elongation": f.elongation,
                         "multiplicity": f.multiplicity}
                        for f in fr.denominators
                    ],
                }
                for fr in self.fractions
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> FractionSum:
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["dimension"])
        fracs = []
        for fr in data["fractions"]:
            num = LaurentPoly(n, [(tuple(e), Fraction(c)) for e, c in fr["numerator"]])
            dens = tuple(DenominatorFactor(tuple(d["vector"]), int(d.get("elongation", 1)),
                                           int(d.get("multiplicity", 1)))
                         for d in fr["denominators"])
            fracs.append(GeneratingFraction(num, dens))
        return cls(n, tuple(fracs))


# -- the identities -----------------------------------------------------------

def elongation_numerator(alpha: Sequence[int], n: int) -> LaurentPoly:
    """p_n(x^alpha) with 1/(1 - x^alpha) = p_n(x^alpha) / (1 - x^{n alpha})."""
    alpha = _vec(alpha)
    if n == 0:
        raise ZeroElongation("elongation must be nonzero")
    dim = len(alpha)
    if n > 0:
        return LaurentPoly(dim, {vscale(i, alpha): 1 for i in range(n)})
    return LaurentPoly(dim, {vscale(-i, alpha): -1 for i in range(1, -n + 1)})


def _sv_numerators(vectors: Sequence[IntVector], coeffs: Sequence[int]) -> list[LaurentPoly]:
    # numerator of the j-th summand of the elongated Szenes-Vergne identity
    dim = len(vectors[0])
    prefix = (0,) * dim
    out = []
    for v, a in zip(vectors, coeffs):
        out.append(elongation_numerator(v, a).shift(prefix))
        prefix = vadd(prefix, vscale(a, v))
    return out


def szenes_vergne_elongated(vectors: Sequence[Sequence[int]], coefficients: Sequence[int]) -> FractionSum:
    """Rewrite prod_i 1/(1 - x^{v_i}) over the common factor 1/(1 - x^{sum a_i v_i})."""
    vectors = [_vec(v) for v in vectors]
    if not vectors or len(vectors) != len(coefficients):
        raise ValueError("need k >= 1 vectors with one coefficient each")
    if any(a == 0 for a in coefficients):
        raise ValueError("coefficients must be nonzero")
    dim = len(vectors[0])
    total = (0,) * dim
    for v, a in zip(vectors, coefficients):
        total = vadd(total, vscale(a, v))
    if not any(total):
        raise ZeroSumVector("sum a_i v_i is zero")
    fracs = []
    for j, num in enumerate(_sv_numerators(vectors, coefficients)):
        dens = [DenominatorFactor(v) for i, v in enumerate(vectors) if i != j]
        dens.append(DenominatorFactor(total))
        fracs.append(GeneratingFraction(num, tuple(dens)))
    return FractionSum(dim, tuple(fracs))


def szenes_vergne(vectors: Sequence[Sequence[int]]) -> FractionSum:
    return szenes_vergne_elongated(vectors, [1] * len(vectors))


def power_two_term_split(alpha: Sequence[int], beta: Sequence[int], l: int, m: int, n: int) -> FractionSum:
    """Expand 1/((1-x^alpha)^l (1-x^beta)^m) over the new factor 1 - x^{alpha - n beta}."""
    alpha, beta = _vec(alpha), _vec(beta)
    if l < 1 or m < 1 or n < 1:
        raise ValueError("l, m, n must be positive")
    gamma = vsub(alpha, vscale(n, beta))
    if not any(gamma):
        raise DegenerateDifference("alpha equals n * beta")
    dim = len(alpha)
    p = LaurentPoly(dim, {vsub(alpha, vscale(i, beta)): -1 for i in range(1, n + 1)})
    fracs = []
    for t in range(1, l + 1):
        c = comb(l + m - t - 1, m - 1)
        fracs.append(GeneratingFraction(
            (p ** m) * c,
            (DenominatorFactor(alpha, 1, t), DenominatorFactor(gamma, 1, l + m - t))))
    for t in range(1, m + 1):
        c = comb(l + m - t - 1, l - 1)
        fracs.append(GeneratingFraction(
            (p ** (m - t)) * c,
            (DenominatorFactor(beta, 1, t), DenominatorFactor(gamma, 1, l + m - t))))
    return FractionSum(dim, tuple(fracs))


def two_term_split(alpha: Sequence[int], beta: Sequence[int]) -> FractionSum:
    """1/((1-x^a)(1-x^b)) = 1/(1-x^{a-b}) * (1/(1-x^b) - x^{a-b}/(1-x^a))."""
    if _vec(alpha) == _vec(beta):
        raise EqualVectors("alpha and beta coincide")
    return power_two_term_split(alpha, beta, 1, 1, 1)


def two_term_split_double(alpha: Sequence[int], beta: Sequence[int]) -> FractionSum:
    """Variant of :func:`two_term_split` with new factor 1 - x^{alpha - 2 beta}."""
    return power_two_term_split(alpha, beta, 1, 1, 2)


# -- evaluation -----------------------------------------------------------------

def _power(pt: Sequence[Fraction], exp: Sequence[int]) -> Fraction:
    val = Fraction(1)
    for x, e in zip(pt, exp):
        if e:
            val *= x ** e
    return val


def substitute_fraction_sum(s: FractionSum, pt: Sequence) -> Fraction:
    if len(pt) != s.dim:
        raise DimensionMismatch("point has wrong dimension")
    pt = [Fraction(x) for x in pt]
    return sum((f.substitute(pt) for f in s.fractions), Fraction(0))


def _geometric_table(factors: Sequence[DenominatorFactor], upper: Sequence[int]) -> np.ndarray:
    """Dense coefficients of prod 1/(1-x^v)^m on the box [0, upper]."""
    shape = tuple(u + 1 for u in upper)
    T = np.zeros(shape, dtype=object)
    T[(0,) * len(shape)] = 1
    for f in factors:
        v = f.effective
        for _ in range(f.multiplicity):
            out = T.copy()
            k = 1
            while all(k * vi < s for vi, s in zip(v, shape)):
                dst = tuple(slice(k * vi, None) for vi in v)
                src = tuple(slice(0, s - k * vi) for vi, s in zip(v, shape))
                out[dst] += T[src]
                k += 1
            T = out
    return T


def series_truncate(s: FractionSum, box: Sequence[tuple[int, int]]) -> LaurentPoly:
    """Terms of the power series expansion of ``s`` with exponents inside ``box``."""
    n = s.dim
    if len(box) != n:
        raise DimensionMismatch("box dimension differs")
    lo = [int(a) for a, _ in box]
    hi = [int(b) for _, b in box]
    for fr in s.fractions:
        for f in fr.denominators:
            if any(x < 0 for x in f.vector):
                raise NonExpandableDenominator(f"vector {f.vector} has a negative coordinate")
    R = np.empty(tuple(h - l + 1 for l, h in zip(lo, hi)), dtype=object)
    R.fill(Fraction(0))
    for fr in s.fractions:
        if not fr.numerator:
            continue
        dmin = fr.numerator.min_exponents()
        upper = [h - d for h, d in zip(hi, dmin)]
        if any(u < 0 for u in upper):
            continue
        T = _geometric_table(fr.denominators, upper)
        for delta, c in fr.numerator.items():
            start = [max(l, d) for l, d in zip(lo, delta)]
            if any(st > h for st, h in zip(start, hi)):
                continue
            dst = tuple(slice(st - l, h - l + 1) for st, l, h in zip(start, lo, hi))
            src = tuple(slice(st - d, h - d + 1) for st, d, h in zip(start, delta, hi))
            R[dst] += T[src] * c
    terms = {}
    for idx in np.ndindex(R.shape):
        c = R[idx]
        if c:
            terms[tuple(i + l for i, l in zip(idx, lo))] = c
    return LaurentPoly(n, terms)


# -- LaTeX -----------------------------------------------------------------------

def factor_latex(f: DenominatorFactor) -> str:
    mono = monomial_latex(f.effective)
    power = "" if f.multiplicity == 1 else f"^{f.multiplicity}"
    return f"\\frac{{1}}{{(1-{mono}){power}}}"


def _fraction_latex(fr: GeneratingFraction, first: bool = False) -> str:
    num = fr.numerator
    if len(num) == 1:
        (exp, c), = num.items()
        if c == 1 and not any(exp):
            lead = "+ " if not first else ""
        else:
            lead = LaurentPoly(num.dim, {exp: c}).to_latex()
            if not lead.startswith("-"):
                lead = "+" + lead
            lead += " "
    else:
        lead = "+(" + num.to_latex() + ") "
    return lead + " ".join(factor_latex(f) for f in fr.denominators)


def fraction_sum_latex(s: FractionSum, header: str | None = None) -> str:
    lines = ["\\begin{eqnarray*}"]
    body = [fr.to_latex() for fr in s.fractions] or ["0"]
    head = header if header is not None else ""
    lines.append(f"{head}&=&{body[0]} \\\\ ")
    for b in body[1:]:
        lines.append(f"&&{b} \\\\ ")
    lines.append("\\end{eqnarray*}")
    return "\n".join(lines)


_FRAC = re.compile(r"\\frac\{1\}\{\(1-([^()]*)\)(?:\^\{?(\d+)\}?)?\}")


def parse_fraction_sum_latex(text: str, dim: int) -> FractionSum:
    """Parse table-style LaTeX; everything up to the last ``=`` is ignored."""
    s = text.replace("\\begin{eqnarray*}", "").replace("\\end{eqnarray*}", "")
    s = s.replace("\\\\", "").replace("&", "")
    s = re.sub(r"\s+", "", s)
    if "=" in s:
        s = s[s.rindex("=") + 1:]
    fracs = []
    pos = 0
    while pos < len(s):
        if s[pos] not in "+-":
            if pos == 0:
                s = "+" + s
            else:
                raise ParseError(f"expected a sign near {s[pos:pos + 30]!r}")
        sign = -1 if s[pos] == "-" else 1
        pos += 1
        if pos < len(s) and s[pos] == "(":
            depth, end = 0, pos
            while True:
                if end >= len(s):
                    raise ParseError("unbalanced parenthesis in numerator")
                if s[end] == "(":
                    depth += 1
                elif s[end] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                end += 1
            num = parse_poly(s[pos + 1:end], dim)
            pos = end + 1
        else:
            nxt = s.find("\\frac{1}{(1-", pos)
            if nxt < 0:
                raise ParseError(f"fraction without denominator near {s[pos:pos + 30]!r}")
            chunk = s[pos:nxt]
            num = LaurentPoly.one(dim) if chunk == "" else parse_poly(chunk, dim)
            pos = nxt
        dens = []
        while True:
            m = _FRAC.match(s, pos)
            if not m:
                break
            w = parse_monomial(m.group(1), dim)
            g = gcd(*w)
            if g == 0:
                raise ParseError("zero denominator vector")
            dens.append(DenominatorFactor(tuple(x // g for x in w), g, int(m.group(2) or 1)))
            pos = m.end()
        if not dens:
            raise ParseError(f"missing denominator near {s[pos:pos + 30]!r}")
        fracs.append(GeneratingFraction(num * sign, tuple(dens)))
    return FractionSum(dim, tuple(fracs))
