"""Quasinumbers and quasipolynomials.

A basic quasinumber ``tau(M, c, d)`` is the indicator of ``M g = c (mod d)`` on
integer points ``g``; at non-integer points it is zero.  A quasipolynomial is
a finite sum of basic quasinumbers times polynomials in the coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

from .arith import IntVector, element_order_lcm, hermite_rows, invert_rational_matrix, solve_mod, transpose
from .errors import DimensionMismatch, NotFullRank, SingularMatrix
from .laurent import LaurentPoly


def _is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


@dataclass(frozen=True)
class BasicQuasiNumber:
    """Indicator of ``M g = c (mod d)`` on Z^n.  Build with :meth:`make`."""

    dim: int
    M: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]
    d: int

    @classmethod
    def make(cls, M: Sequence[Sequence[int]], c: Sequence[int], d: int, dim: int | None = None
             ) -> BasicQuasiNumber | None:
        """Canonical form of the system, or None when it has no solution."""
        if d < 1:
            raise ValueError("modulus must be positive")
        M = [tuple(int(x) for x in row) for row in M]
        c = [int(x) for x in c]
        if len(M) != len(c):
            raise DimensionMismatch("M and c have different row counts")
        if dim is None:
            if not M:
                raise ValueError("dimension needed for an empty system")
            dim = len(M[0])
        if any(len(row) != dim for row in M):
            raise DimensionMismatch("rows of M must have length n")
        if M and not solve_mod(M, c, d):
            return None
        rows = [list(r) + [ci] for r, ci in zip(M, c)]
        rows += [[d * int(i == j) for j in range(dim + 1)] for i in range(dim + 1)]
        H = [row for row in hermite_rows(rows) if any(x % d for x in row)]
        g = gcd(d, *(x for row in H for x in row))
        if H:
            H = [[x // g for x in row] for row in H]
            d //= g
        else:
            d = 1
        return cls(dim, tuple(tuple(r[:dim]) for r in H), tuple(r[dim] for r in H), d)

    @classmethod
    def one(cls, dim: int) -> BasicQuasiNumber:
        return cls(dim, (), (), 1)

    def is_one(self) -> bool:
        return not self.M

    def __call__(self, g: Sequence) -> int:
        if len(g) != self.dim:
            raise DimensionMismatch("point has wrong dimension")
        if not _is_integral(g):
            return 0
        g = [int(x) for x in g]
        for row, ci in zip(self.M, self.c):
            if (sum(a * b for a, b in zip(row, g)) - ci) % self.d:
                return 0
        return 1

    def to_json(self) -> dict:
        return {"M": [list(r) for r in self.M], "c": list(self.c), "d": self.d}

    @classmethod
    def from_json(cls, data: Mapping, dim: int) -> BasicQuasiNumber | None:
        return cls.make(data["M"], data["c"], int(data["d"]), dim)

    def to_latex(self, var: str = "\\gamma") -> str:
        if self.is_one():
            return "1"
        lines = []
        for row, ci in zip(self.M, self.c):
            lhs = "".join(_linear_term(a, i, var, not k) for k, (i, a) in
                          enumerate((i, a) for i, a in enumerate(row) if a)) or "0"
            lines.append(f"{lhs}\\equiv {ci}")
        body = "\\\\ ".join(lines)
        return f"\\tau\\left\\{{\\begin{{array}}{{l}}{body}\\end{{array}}\\right.(\\bmod {self.d})"


def _linear_term(a: int, i: int, var: str, first: bool) -> str:
    sign = "-" if a < 0 else ("" if first else "+")
    coef = "" if abs(a) == 1 else str(abs(a))
    return f"{sign}{coef}{var}^{{{i + 1}}}"


def tau(M: Sequence[Sequence[int]], c: Sequence[int], d: int, dim: int | None = None) -> BasicQuasiNumber | None:
    return BasicQuasiNumber.make(M, c, d, dim)


def tau_mul(a: BasicQuasiNumber, b: BasicQuasiNumber) -> BasicQuasiNumber | None:
    """Product of two basic quasinumbers; None stands for the zero function."""
    if a is None or b is None:
        return None
    if a.dim != b.dim:
        raise DimensionMismatch("quasinumbers live in different dimensions")
    D = lcm(a.d, b.d)
    fa, fb = D // a.d, D // b.d
    M = [tuple(fa * x for x in r) for r in a.M] + [tuple(fb * x for x in r) for r in b.M]
    c = [fa * x for x in a.c] + [fb * x for x in b.c]
    return BasicQuasiNumber.make(M, c, D, a.dim)


def from_lattice_shift(generators: Sequence[IntVector], delta: Sequence[int]) -> BasicQuasiNumber:
    """Indicator of ``g - delta`` lying in the lattice spanned by ``generators``."""
    n = len(generators)
    if n == 0 or any(len(v) != n for v in generators) or len(delta) != n:
        raise NotFullRank("need n generators of Z^n")
    try:
        B = invert_rational_matrix(transpose(generators))
    except SingularMatrix as exc:
        raise NotFullRank("generators are linearly dependent") from exc
    d = element_order_lcm(generators)
    M = [[int(x * d) for x in row] for row in B]
    c = [int(sum(x * y for x, y in zip(row, delta)) * d) for row in B]
    out = BasicQuasiNumber.make(M, c, d, n)
    assert out is not None
    return out


class QuasiNumber:
    """Rational combination of basic quasinumbers."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[BasicQuasiNumber, object] | Iterable = ()):
        self.dim = dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasicQuasiNumber, Fraction] = {}
        for b, q in items:
            if b is None:
                continue
            acc[b] = acc.get(b, 0) + Fraction(q)
        self.terms = {b: q for b, q in acc.items() if q}

    def __call__(self, g: Sequence) -> Fraction:
        return sum((q * b(g) for b, q in self.terms.items()), Fraction(0))

    def __add__(self, other: QuasiNumber) -> QuasiNumber:
        return QuasiNumber(self.dim, list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other):
        if isinstance(other, QuasiNumber):
            return QuasiNumber(self.dim, [(tau_mul(a, b), p * q) for a, p in self.terms.items()
                                          for b, q in other.terms.items()])
        return QuasiNumber(self.dim, [(b, q * other) for b, q in self.terms.items()])

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"QuasiNumber({self.terms!r})"


def tau_eval(q: QuasiNumber | BasicQuasiNumber, g: Sequence) -> Fraction:
    return Fraction(q(g))


class QuasiPolynomial:
    """Sum of basic quasinumbers times polynomials in the coordinates g^1..g^n."""

    __slots__ = ("dim", "_parts")

    def __init__(self, dim: int, parts: Mapping[BasicQuasiNumber, LaurentPoly] | Iterable = ()):
        self.dim = dim
        items = parts.items() if isinstance(parts, Mapping) else parts
        acc: dict[BasicQuasiNumber, LaurentPoly] = {}
        for b, p in items:
            if b is None or not p:
                continue
            if b.dim != dim or p.dim != dim:
                raise DimensionMismatch("quasipolynomial parts must share the dimension")
            acc[b] = acc[b] + p if b in acc else p
        self._parts = {b: p for b, p in acc.items() if p}

    @classmethod
    def constant(cls, dim: int, c=1) -> QuasiPolynomial:
        return cls(dim, {BasicQuasiNumber.one(dim): LaurentPoly.constant(dim, c)})

    @classmethod
    def coordinate(cls, dim: int, i: int) -> QuasiPolynomial:
        return cls(dim, {BasicQuasiNumber.one(dim): LaurentPoly.variable(dim, i)})

    @property
    def parts(self) -> dict[BasicQuasiNumber, LaurentPoly]:
        return dict(self._parts)

    @property
    def terms(self) -> dict[tuple[int, ...], QuasiNumber]:
        """Monomial exponent -> quasinumber coefficient."""
        out: dict[tuple[int, ...], list] = {}
        for b, p in self._parts.items():
            for e, c in p.items():
                out.setdefault(e, []).append((b, c))
        return {e: QuasiNumber(self.dim, lst) for e, lst in sorted(out.items())}

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __add__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        if self.dim != other.dim:
            raise DimensionMismatch("dimensions differ")
        return QuasiPolynomial(self.dim, list(self._parts.items()) + list(other._parts.items()))

    def __neg__(self) -> QuasiPolynomial:
        return QuasiPolynomial(self.dim, [(b, -p) for b, p in self._parts.items()])

    def __sub__(self, other: QuasiPolynomial) -> QuasiPolynomial:
        return self + (-other)

    def __mul__(self, other) -> QuasiPolynomial:
        if isinstance(other, QuasiPolynomial):
            return QuasiPolynomial(self.dim, [(tau_mul(a, b), p * q) for a, p in self._parts.items()
                                              for b, q in other._parts.items()])
        if isinstance(other, BasicQuasiNumber):
            return QuasiPolynomial(self.dim, [(tau_mul(a, other), p) for a, p in self._parts.items()])
        return QuasiPolynomial(self.dim, [(b, p * other) for b, p in self._parts.items()])

    __rmul__ = __mul__

    def __call__(self, g: Sequence) -> Fraction:
        return self.evaluate(g)

    def evaluate(self, g: Sequence) -> Fraction:
        if len(g) != self.dim:
            raise DimensionMismatch("point has wrong dimension")
        total = Fraction(0)
        for b, p in self._parts.items():
            if b(g):
                total += p.evaluate(g)
        return total

    def moduli(self) -> set[int]:
        return {b.d for b in self._parts}

    def max_coordinate_degree(self) -> int:
        return max((max(p.max_exponents(), default=0) for p in self._parts.values()), default=0)

    def to_json(self) -> dict:
        return {"dimension": self.dim, "parts": [
            {"tau": b.to_json(), "poly": [[list(e), str(c)] for e, c in p.items()]}
            for b, p in sorted(self._parts.items(), key=lambda bp: (bp[0].d, bp[0].M, bp[0].c))]}

    @classmethod
    def from_json(cls, data: Mapping) -> QuasiPolynomial:
        n = int(data["dimension"])
        parts = []
        for part in data["parts"]:
            b = BasicQuasiNumber.from_json(part["tau"], n)
            parts.append((b, LaurentPoly(n, [(tuple(e), Fraction(c)) for e, c in part["poly"]])))
        return cls(n, parts)

    def to_latex(self) -> str:
        if not self._parts:
            return "0"
        chunks = []
        for b, p in sorted(self._parts.items(), key=lambda bp: (bp[0].d, bp[0].M, bp[0].c)):
            poly = p.to_latex(var="\\gamma")
            chunks.append(poly if b.is_one() else f"{b.to_latex()}\\left({poly}\\right)")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"QuasiPolynomial({self.dim}, {len(self._parts)} parts)"


def possible_period(q: QuasiPolynomial) -> int:
    return lcm(1, *q.moduli())


def quasipoly_equal(p: QuasiPolynomial, q: QuasiPolynomial) -> bool:
    """Decide p == q by evaluation on a grid that pins down every coset polynomial."""
    if p.dim != q.dim:
        raise DimensionMismatch("dimensions differ")
    diff = p - q
    if not diff:
        return True
    d0 = lcm(1, *p.moduli(), *q.moduli())
    D = max(p.max_coordinate_degree(), q.max_coordinate_degree())
    side = (D + 1) * d0
    return all(diff.evaluate(g) == 0 for g in product(range(side), repeat=p.dim))


# -- one-variable tools ---------------------------------------------------------

@dataclass(frozen=True)
class Polynomial1D:
    """Univariate polynomial with ascending rational coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial1D) -> Polynomial1D:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Polynomial1D(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                  for i in range(n)))

    def __mul__(self, other) -> Polynomial1D:
        if not isinstance(other, Polynomial1D):
            return Polynomial1D(tuple(c * other for c in self.coefficients))
        out = [Fraction(0)] * max(0, len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial1D(tuple(out))

    __rmul__ = __mul__

    def compose_affine(self, a, b) -> Polynomial1D:
        """The polynomial x -> p(a x + b)."""
        lin = Polynomial1D((Fraction(b), Fraction(a)))
        acc = Polynomial1D(())
        for c in reversed(self.coefficients):
            acc = acc * lin + Polynomial1D((c,))
        return acc

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(1, {(i,): c for i, c in enumerate(self.coefficients)})


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial1D:
    """Exact Lagrange interpolation."""
    result = Polynomial1D(())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Polynomial1D((Fraction(1),))
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial1D((Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


_BERNOULLI: dict[int, Polynomial1D] = {}


def bernoulli_sum(k: int) -> Polynomial1D:
    """The polynomial B_k with B_k(x) = sum_{t=0}^x t^k for integers x >= 0 (0^0 = 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k not in _BERNOULLI:
        xs = list(range(k + 2))
        ys, acc = [], 0
        for x in xs:
            acc += x ** k
            ys.append(acc)
        _BERNOULLI[k] = interpolate(xs, ys)
    return _BERNOULLI[k]


def _tau1(l: int, m: int, d: int, t: int) -> int:
    return int((l * t - m) % d == 0)


def tau_bernoulli_quasipoly(k: int, l: int, m: int, d: int) -> QuasiPolynomial:
    """Closed form of sum_{t=0}^x [l t = m mod d] t^k as a quasipolynomial in x.

    Splitting t = r d + s, the residue p of x modulo d selects the upper bound
    r <= (x - p)/d, lowered by one when s > p.
    """
    if d < 1:
        raise ValueError("d must be positive")
    parts = []
    for p in range(d):
        total = Polynomial1D(())
        for s in range(d):
            if not _tau1(l, m, d, s):
                continue
            shift = Fraction(-p, d) - (1 if s > p else 0)
            for q in range(k + 1):
                coef = comb(k, q) * Fraction(d) ** q * Fraction(s) ** (k - q)
                total = total + bernoulli_sum(q).compose_affine(Fraction(1, d), shift) * coef
        parts.append((BasicQuasiNumber.make([[1]], [p], d), total.to_laurent()))
    return QuasiPolynomial(1, parts)


def tau_bernoulli(k: int, l: int, m: int, d: int, x) -> Fraction:
    return tau_bernoulli_quasipoly(k, l, m, d).evaluate([x])


def tau_bernoulli_direct(k: int, l: int, m: int, d: int, x: int) -> int:
    return sum(t ** k for t in range(x + 1) if _tau1(l, m, d, t))


def tau_frac(l: int, d: int, x) -> int:
    """``tau_{1,l,d}`` on (1/d)Z: the test ``d x = l (mod d)``."""
    y = Fraction(x) * d
    if y.denominator != 1:
        return 0
    return int((y.numerator - l) % d == 0)


@dataclass(frozen=True)
class FloorInterpolation:
    """f(floor x) written as sum_l tau_{1,l,d}(x) f(x - l/d) for x in (1/d)Z."""

    f: Callable
    d: int

    @property
    def terms(self) -> list[tuple[int, Fraction]]:
        return [(l, Fraction(l, self.d)) for l in range(self.d)]

    def __call__(self, x) -> object:
        x = Fraction(x)
        total = 0
        for l, shift in self.terms:
            if tau_frac(l, self.d, x):
                total = total + self.f(x - shift)
        return total


def floor_interpolate(f: Callable, d: int) -> FloorInterpolation:
    if d < 1:
        raise ValueError("d must be positive")
    return FloorInterpolation(f, d)


def tau_bernoulli_between(k: int, l: int, m: int, d: int, lo, hi, D: int) -> Fraction:
    """sum of [l t = m mod d] t^k over floor(lo) < t <= floor(hi), for lo, hi in (1/D)Z.

    Both floors are resolved with :func:`floor_interpolate`, so the closed form
    is only ever evaluated at the integers x - s/D.
    """
    B = lambda y: tau_bernoulli(k, l, m, d, y)
    F = floor_interpolate(B, D)
    return F(hi) - F(lo)


def shift_expand(t: BasicQuasiNumber, alpha: Sequence[int]) -> list[tuple[int, BasicQuasiNumber | None]]:
    """Terms (l, tau_{M, c + l M alpha, a}) with tau(g - s alpha) = sum_l [s = l mod a] term_l(g)."""
    if len(alpha) != t.dim:
        raise DimensionMismatch("direction has wrong dimension")
    a = t.d
    Ma = [sum(x * y for x, y in zip(row, alpha)) for row in t.M]
    out = []
    for l in range(a):
        c = [(ci + l * mi) % a for ci, mi in zip(t.c, Ma)]
        out.append((l, BasicQuasiNumber.make(t.M, c, a, t.dim) if t.M else t))
    return out


def eval_shift_expansion(terms: Sequence[tuple[int, BasicQuasiNumber | None]], a: int, s: int,
                         g: Sequence[int]) -> int:
    return sum(b(g) for l, b in terms if b is not None and (s - l) % a == 0)
