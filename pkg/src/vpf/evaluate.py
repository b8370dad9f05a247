"""Chamberwise quasipolynomial formulas for vector partition functions.

A reduced fraction ``x^delta / prod (1 - x^{w_i})^{m_i}`` with independent
``w_i`` expands to ``prod_i binom(<beta_i, g - delta> + m_i - 1, m_i - 1)``
on the lattice coset ``delta + Z{w_i}`` intersected with ``delta + cone``, where
the ``beta_i`` are dual to the ``w_i``.  Summing the fractions whose cone
contains a generic point of a chamber gives the partition function there.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .arith import IntVector, invert_rational_matrix, transpose
from .errors import BadIndicator, NotFullRank, SingularMatrix
from .geometry import ChamberComplex, Cone, chambers, cone_contains, interior_point, spanned_hyperplanes
from .genfunc import FractionSum, GeneratingFraction
from .laurent import LaurentPoly
from .pfd import MinAbsCoefficient, PfdResult, Strategy, decompose
from .quasi import BasicQuasiNumber, Polynomial1D, QuasiPolynomial, from_lattice_shift


@dataclass(frozen=True)
class DualBasis:
    betas: tuple[tuple[Fraction, ...], ...]

    def pair(self, i: int, v: Sequence) -> Fraction:
        return sum((b * x for b, x in zip(self.betas[i], v)), Fraction(0))


def dual_basis(alphas: Sequence[IntVector]) -> DualBasis:
    n = len(alphas)
    if n == 0 or any(len(a) != n for a in alphas):
        raise NotFullRank("need n vectors in dimension n")
    try:
        inv = invert_rational_matrix(transpose(alphas))
    except SingularMatrix as exc:
        raise NotFullRank("vectors are dependent") from exc
    return DualBasis(tuple(tuple(row) for row in inv))


@dataclass
class ChamberFormula:
    chamber: Cone
    formula: QuasiPolynomial
    indicator: tuple[Fraction, ...] | None = None

    def __call__(self, g: Sequence[int]) -> Fraction:
        return self.formula.evaluate(g)

    def to_json(self) -> dict:
        return {"chamber": self.chamber.to_json(), "formula": self.formula.to_json(),
                "indicator": [str(x) for x in self.indicator] if self.indicator else None}

    @classmethod
    def from_json(cls, data: dict) -> ChamberFormula:
        ind = data.get("indicator")
        return cls(Cone.from_json(data["chamber"]), QuasiPolynomial.from_json(data["formula"]),
                   tuple(Fraction(x) for x in ind) if ind else None)


@lru_cache(maxsize=None)
def _binomial_poly(m: int) -> Polynomial1D:
    """binom(s + m - 1, m - 1) as a polynomial in s."""
    p = Polynomial1D((Fraction(1),))
    for l in range(1, m):
        p = p * Polynomial1D((Fraction(1), Fraction(1, l)))
    return p


def _embed(p: Polynomial1D, i: int, n: int) -> LaurentPoly:
    terms = {}
    for k, c in enumerate(p.coefficients):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = c
    return LaurentPoly(n, terms)


def _substitute_linear(p: LaurentPoly, forms: Sequence[LaurentPoly]) -> LaurentPoly:
    """Replace variable i of ``p`` by the polynomial ``forms[i]``."""
    n = forms[0].dim
    cache: list[dict[int, LaurentPoly]] = [{0: LaurentPoly.one(n)} for _ in forms]

    def power(i, k):
        if k not in cache[i]:
            cache[i][k] = power(i, k - 1) * forms[i]
        return cache[i][k]

    out = LaurentPoly.zero(n)
    for e, c in p.items():
        term = LaurentPoly.constant(n, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def cone_side(gens: Sequence[IntVector], point: Sequence) -> int:
    """+1 if ``point`` is inside the open simplicial cone, 0 on a wall, -1 outside."""
    db = dual_basis(gens)
    vals = [db.pair(i, point) for i in range(len(gens))]
    if any(v < 0 for v in vals):
        return -1
    if any(v == 0 for v in vals):
        return 0
    return 1


def brion_vergne_term(f: GeneratingFraction, indicator: Sequence) -> QuasiPolynomial:
    """Quasipolynomial contributed by one reduced fraction to the chamber of ``indicator``."""
    n = f.dim
    gens = [fac.effective for fac in f.denominators]
    if len(gens) != n:
        return QuasiPolynomial(n)
    try:
        side = cone_side(gens, indicator)
    except NotFullRank:
        return QuasiPolynomial(n)
    if side == 0:
        raise BadIndicator(f"indicator {tuple(indicator)} lies on a wall of cone {gens}")
    if side < 0:
        return QuasiPolynomial(n)
    return _fraction_quasipoly(f)


@lru_cache(maxsize=65536)
def _fraction_quasipoly(f: GeneratingFraction) -> QuasiPolynomial:
    # independent of the indicator, so shared by every chamber whose indicator selects f
    n = f.dim
    gens = [fac.effective for fac in f.denominators]
    mults = [fac.multiplicity for fac in f.denominators]
    db = dual_basis(gens)
    binoms = [_binomial_poly(m) for m in mults]
    by_coset: dict[BasicQuasiNumber, LaurentPoly] = {}
    for delta, c in f.numerator.items():
        shifts = [db.pair(i, delta) for i in range(n)]
        poly = LaurentPoly.constant(n, c)
        for i in range(n):
            if mults[i] > 1:
                poly = poly * _embed(binoms[i].compose_affine(1, -shifts[i]), i, n)
        t = from_lattice_shift(gens, delta)
        by_coset[t] = by_coset[t] + poly if t in by_coset else poly
    forms = [LaurentPoly(n, {tuple(int(j == k) for j in range(n)): b for k, b in enumerate(row)})
             for row in db.betas]
    return QuasiPolynomial(n, [(t, _substitute_linear(p, forms)) for t, p in by_coset.items()])


def assemble(pfd: FractionSum, indicator: Sequence) -> QuasiPolynomial:
    total = QuasiPolynomial(pfd.dim)
    for f in pfd.fractions:
        total = total + brion_vergne_term(f, indicator)
    return total


_PFD_CACHE: dict[tuple, PfdResult] = {}


def cached_decomposition(vectors: Sequence[IntVector], strategy: Strategy = MinAbsCoefficient) -> PfdResult:
    key = (tuple(map(tuple, vectors)), strategy)
    if key not in _PFD_CACHE:
        _PFD_CACHE[key] = decompose(FractionSum.product(vectors), strategy)
    return _PFD_CACHE[key]


def _avoid(vectors: Sequence[IntVector], pfd: PfdResult) -> list[IntVector]:
    return sorted(set(spanned_hyperplanes(list(vectors))) | set(spanned_hyperplanes(sorted(pfd.support))))


def vpf_quasipoly(vectors: Sequence[IntVector], chamber: Cone, strategy: Strategy = MinAbsCoefficient,
                  indicator: Sequence | None = None) -> ChamberFormula:
    """Quasipolynomial equal to the partition function on the closed ``chamber``."""
    vectors = [tuple(v) for v in vectors]
    pfd = cached_decomposition(vectors, strategy)
    if indicator is None:
        indicator = interior_point(chamber, _avoid(vectors, pfd))
    return ChamberFormula(chamber, assemble(pfd.fractions, indicator), tuple(Fraction(x) for x in indicator))


def _formula_job(args):
    vectors, chamber, strategy, indicator = args
    return vpf_quasipoly(vectors, chamber, strategy, indicator)


def chamber_formulas(vectors: Sequence[IntVector], strategy: Strategy = MinAbsCoefficient,
                     complex_: ChamberComplex | None = None, threads: int | None = None
                     ) -> list[ChamberFormula]:
    """Formulas for every chamber; ``threads`` (or VPF_THREADS) > 1 uses worker processes."""
    vectors = [tuple(v) for v in vectors]
    cc = complex_ or chambers(vectors)
    pfd = cached_decomposition(vectors, strategy)
    avoid = _avoid(vectors, pfd)
    jobs = [(vectors, c, strategy, interior_point(c, avoid)) for c in cc.chambers]
    if threads is None:
        threads = int(os.environ.get("VPF_THREADS", "1") or 1)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(_formula_job, jobs))
    return [_formula_job(j) for j in jobs]


# -- the brute-force oracle --------------------------------------------------------

def partition_table(vectors: Sequence[IntVector], upper: Sequence[int]) -> np.ndarray:
    """Partition counts for every point of the box [0, upper], one vector at a time."""
    shape = tuple(u + 1 for u in upper)
    T = np.zeros(shape, dtype=object)
    T[(0,) * len(shape)] = 1
    for v in vectors:
        if any(x < 0 for x in v) or not any(v):
            raise ValueError("oracle needs nonzero vectors with nonnegative coordinates")
        if any(x >= s for x, s in zip(v, shape)):
            continue
        # unbounded knapsack: visiting points in lexicographic order lets T[g - v] already include v
        for g in np.ndindex(shape):
            prev = tuple(a - b for a, b in zip(g, v))
            if min(prev) >= 0:
                T[g] += T[prev]
    return T


def vpf_bruteforce(vectors: Sequence[IntVector], g: Sequence[int]) -> int:
    if any(x < 0 for x in g):
        return 0
    return int(partition_table(vectors, g)[tuple(g)])


def verify_chamber(cf: ChamberFormula, vectors: Sequence[IntVector], box_side: int,
                   chamber_id: int = 0, table: np.ndarray | None = None) -> dict:
    n = cf.chamber.dim
    if table is None:
        table = partition_table(vectors, [box_side] * n)
    tested, bad = 0, []
    for g in product(range(box_side + 1), repeat=n):
        if not cone_contains(cf.chamber, g):
            continue
        tested += 1
        got = cf.formula.evaluate(g)
        want = table[g]
        if got != want:
            bad.append({"point": list(g), "formula": str(got), "oracle": int(want)})
    return {"chamber_id": chamber_id, "points_tested": tested, "mismatches": bad}
