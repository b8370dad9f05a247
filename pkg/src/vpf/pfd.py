"""Partial fraction decomposition of sums of generating fractions.

The generic engine keeps a work list of fractions.  A fraction whose
denominator vectors are dependent gets a *preferred relation*
``a0 * g = sum a_j v_j``; one rewrite step elongates every copy of
``1/(1 - x^g)`` to ``1/(1 - x^{a0 g})`` and splits one copy of each ``v_j``
with the elongated Szenes-Vergne identity.  Children keeping all relation
vectors inherit the relation, the others start over.  Fractions with
independent denominators are final.
"""
from __future__ import annotations

import logging
import random
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .arith import IntVector, rank, solve_rational
from .errors import VectorOutsideExtendedSet, VPFError
from .genfunc import (
    DenominatorFactor,
    FractionSum,
    GeneratingFraction,
    Relation,
    _sv_numerators,
    elongation_numerator,
    power_two_term_split,
    vscale,
)
from .laurent import LaurentPoly
from .rootsys import circuits, extended_set, relation_from_circuit

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Strategy:
    """How the preferred relation is chosen.

    ``kind`` is ``"minabs"``, ``"nbc"`` or ``"classical"``; the classical
    order additionally needs a root-system label such as ``"B3"``.
    """

    kind: str = "minabs"
    system: str | None = None

    def __post_init__(self):
        if self.kind not in ("minabs", "nbc", "classical"):
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.kind == "classical" and not self.system:
            raise ValueError("the classical order needs a root-system label")


MinAbsCoefficient = Strategy("minabs")
NonBrokenCircuit = Strategy("nbc")


def ClassicalOrder(system: str) -> Strategy:
    return Strategy("classical", system)


def parse_strategy(name: str, system: str | None = None) -> Strategy:
    key = name.lower().replace("_", "").replace("-", "")
    table = {"minabs": "minabs", "minabscoefficient": "minabs",
             "nbc": "nbc", "nonbrokencircuit": "nbc",
             "classical": "classical", "classicalorder": "classical"}
    if key not in table:
        raise ValueError(f"unknown strategy {name!r}")
    return Strategy(table[key], system if table[key] == "classical" else None)


@dataclass
class PfdResult:
    fractions: FractionSum
    support: set[IntVector]
    cone_support: list[tuple[IntVector, ...]]
    steps: int = 0

    def to_json(self) -> dict:
        data = self.fractions.to_json()
        data["cone_support"] = [[list(v) for v in c] for c in self.cone_support]
        data["steps"] = self.steps
        return data


def factor_from_effective(v: Sequence[int], m: int = 1) -> DenominatorFactor:
    g = gcd(*v)
    return DenominatorFactor(tuple(x // g for x in v), g, m)


def is_independent(vectors: Sequence[IntVector]) -> bool:
    return rank(vectors) == len(vectors)


# -- choosing relations -----------------------------------------------------------

@lru_cache(maxsize=4096)
def _minabs_relation(vectors: tuple[IntVector, ...]) -> Relation | None:
    best = None
    for idx, c in circuits(vectors):
        for pos, i in enumerate(idx):
            key = (abs(c[pos]), vectors[i], len(idx), idx)
            if best is None or key < best[0]:
                best = (key, idx, c, i)
    if best is None:
        return None
    _, idx, c, i = best
    return relation_from_circuit(vectors, idx, c, i)


def _nbc_relation(vectors: tuple[IntVector, ...]) -> Relation | None:
    basis: list[IntVector] = []
    for v in vectors:
        if basis:
            x = solve_rational(list(zip(*basis)), list(v))
        else:
            x = None
        if x is None:
            basis.append(v)
            continue
        den = 1
        for c in x:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        coeffs = [int(Fraction(c) * den) for c in x]
        g = gcd(den, *coeffs)
        terms = tuple((b, c // g) for b, c in zip(basis, coeffs) if c)
        return Relation(den // g, v, terms)
    return None


def choose_relation(vectors: Sequence[IntVector], strategy: Strategy = MinAbsCoefficient) -> Relation | None:
    """A relation ``a0 * g = sum a_j v_j`` among ``vectors`` or None if they are independent."""
    vectors = tuple(dict.fromkeys(tuple(v) for v in vectors))
    if strategy.kind == "nbc":
        return _nbc_relation(vectors)
    return _minabs_relation(vectors)


# -- the generic work-list engine ---------------------------------------------------

def rewrite_step(fr: GeneratingFraction, rel: Relation) -> list[tuple[GeneratingFraction, bool]]:
    """Apply one rewrite; returns children flagged with whether they keep the relation."""
    mult = {f.effective: f.multiplicity for f in fr.denominators}
    g = rel.gaining
    m0 = mult[g]
    w = vscale(rel.a0, g)
    base = fr.numerator
    if rel.a0 != 1:
        base = base * elongation_numerator(g, rel.a0) ** m0
    rvecs = [v for v, _ in rel.terms]
    coeffs = [a for _, a in rel.terms]
    nums = _sv_numerators(rvecs, coeffs)
    rest = {v: m for v, m in mult.items() if v != g}
    out = []
    for vj, pj in zip(rvecs, nums):
        dens = dict(rest)
        dens[vj] -= 1
        keep = dens[vj] > 0
        if not keep:
            del dens[vj]
        dens[w] = dens.get(w, 0) + m0 + 1
        factors = tuple(factor_from_effective(v, m) for v, m in dens.items())
        out.append((GeneratingFraction(base * pj, factors), keep))
    return out


def _checksum_point(dim: int, rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(2, 97), rng.randint(98, 199)) * rng.choice((1, -1)) for _ in range(dim)]


def _safe_value(frs, pt) -> Fraction | None:
    try:
        return sum((f.substitute(pt) for f in frs), Fraction(0))
    except ZeroDivisionError:
        return None


def decompose(s: FractionSum, strategy: Strategy = MinAbsCoefficient, checksum: bool = False,
              seed: int = 0) -> PfdResult:
    """Rewrite ``s`` into fractions with linearly independent denominators.

    With ``checksum=True`` every single rewrite step is verified by exact
    substitution at a random rational point.
    """
    if strategy.kind == "classical":
        return classical_decompose(s, strategy.system)
    rng = random.Random(seed)
    pt = _checksum_point(s.dim, rng) if checksum else None
    with_rel: OrderedDict = OrderedDict()
    without_rel: OrderedDict = OrderedDict()
    done: OrderedDict = OrderedDict()

    def push(queue, key, num):
        if key in queue:
            num = queue[key] + num
        queue[key] = num

    for fr in s.fractions:
        if fr.numerator:
            push(without_rel, fr.denominators, fr.numerator)
    steps = 0
    while with_rel or without_rel:
        if with_rel:
            (dens, rel), num = with_rel.popitem(last=False)
            if not num:
                continue
            fr = GeneratingFraction(num, dens)
            children = rewrite_step(fr, rel)
            steps += 1
            if pt is not None:
                before = _safe_value([fr], pt)
                after = _safe_value([c for c, _ in children], pt)
                if before is not None and after is not None and before != after:
                    raise VPFError(f"checksum failed at rewrite step {steps}")
            inherited = Relation(1, vscale(rel.a0, rel.gaining), rel.terms)
            for child, keep in children:
                if keep:
                    push(with_rel, (child.denominators, inherited), child.numerator)
                else:
                    push(without_rel, child.denominators, child.numerator)
        else:
            dens, num = without_rel.popitem(last=False)
            if not num:
                continue
            vectors = tuple(f.effective for f in dens)
            rel = choose_relation(vectors, strategy)
            if rel is None:
                push(done, dens, num)
            else:
                push(with_rel, (dens, rel), num)
    return _result(s.dim, done, steps)


def _result(dim: int, done, steps: int) -> PfdResult:
    fracs = tuple(GeneratingFraction(num, dens, reduced=True) for dens, num in done.items() if num)
    support = {f.effective for fr in fracs for f in fr.denominators}
    cones = list(dict.fromkeys(tuple(f.effective for f in fr.denominators) for fr in fracs))
    return PfdResult(FractionSum(dim, fracs), support, cones, steps)


# -- the classical-root-system reduction ------------------------------------------------

def _split_label(system: str) -> tuple[str, int]:
    system = system.strip().upper()
    return system[0], int(system[1:])


def classical_decompose(s: FractionSum, system: str) -> PfdResult:
    """Pairwise reduction along the total order of the extended root set.

    Repeatedly pick the earliest pair (a, b) and n in {1, 2} with
    ``alpha_a - n alpha_b`` in the extended set and smaller than ``alpha_b``,
    and expand with :func:`power_two_term_split`.  Afterwards a factor
    ``1/(1 - x^v)`` whose double ``2v`` is also present is rewritten as
    ``(1 + x^v)/(1 - x^{2v})``.  Anything still dependent at that point is
    finished by the generic engine.
    """
    label, n = _split_label(system)
    ext = extended_set(label, n)
    for fr in s.fractions:
        for f in fr.denominators:
            if f.effective not in ext:
                raise VectorOutsideExtendedSet(f"{f.effective} is not in the extended set of {system}")
    work: OrderedDict = OrderedDict()
    reduced: OrderedDict = OrderedDict()

    def push(queue, key, num):
        queue[key] = queue[key] + num if key in queue else num

    for fr in s.fractions:
        if fr.numerator:
            push(work, fr.denominators, fr.numerator)
    steps = 0
    while work:
        dens, num = work.popitem(last=False)
        if not num:
            continue
        mult = {f.effective: f.multiplicity for f in dens}
        order = sorted(mult, key=ext.index)
        pick = _find_pair(order, ext)
        if pick is None:
            push(reduced, dens, num)
            continue
        alpha, beta, k = pick
        steps += 1
        split = power_two_term_split(alpha, beta, mult[alpha], mult[beta], k)
        rest = [factor_from_effective(v, m) for v, m in mult.items() if v not in (alpha, beta)]
        for piece in split.fractions:
            factors = rest + [factor_from_effective(f.effective, f.multiplicity) for f in piece.denominators]
            child = GeneratingFraction(num * piece.numerator, tuple(factors))
            push(work, child.denominators, child.numerator)

    done: OrderedDict = OrderedDict()
    leftovers = []
    for dens, num in reduced.items():
        mult = {f.effective: f.multiplicity for f in dens}
        for v in sorted(mult, key=ext.index):
            v2 = vscale(2, v)
            if v in mult and v2 in mult:
                m = mult.pop(v)
                num = num * (LaurentPoly.one(len(v)) + LaurentPoly.monomial(v)) ** m
                mult[v2] += m
        factors = tuple(factor_from_effective(v, m) for v, m in mult.items())
        fr = GeneratingFraction(num, factors)
        if is_independent(list(mult)):
            push(done, fr.denominators, fr.numerator)
        else:
            leftovers.append(fr)
    if leftovers:
        log.warning("%d fractions still dependent after the classical reduction", len(leftovers))
        extra = decompose(FractionSum(s.dim, tuple(leftovers)), MinAbsCoefficient)
        steps += extra.steps
        for fr in extra.fractions:
            push(done, fr.denominators, fr.numerator)
    return _result(s.dim, done, steps)


def _find_pair(order: Sequence[IntVector], ext) -> tuple[IntVector, IntVector, int] | None:
    for a in order:
        for b in order:
            if b == a:
                continue
            for k in (1, 2):
                diff = tuple(x - k * y for x, y in zip(a, b))
                if diff in ext and ext.index(diff) > ext.index(b):
                    return a, b, k
    return None
