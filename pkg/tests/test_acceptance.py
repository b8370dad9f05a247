"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import random
import time
from fractions import Fraction
from itertools import combinations, product
from math import lcm

import pytest

from conftest import ACCEPTANCE
from vpf import reference_table
from vpf.arith import rank
from vpf.errors import PoleHit
from vpf.evaluate import chamber_formulas, partition_table, verify_chamber
from vpf.genfunc import (DenominatorFactor, FractionSum, GeneratingFraction, elongation_numerator,
                         power_two_term_split, szenes_vergne, szenes_vergne_elongated, two_term_split,
                         two_term_split_double)
from vpf.geometry import chambers
from vpf.laurent import LaurentPoly
from vpf.pfd import MinAbsCoefficient, decompose
from vpf.quasi import (eval_shift_expansion, floor_interpolate, possible_period, shift_expand, tau,
                       tau_bernoulli_direct, tau_bernoulli_quasipoly, tau_mul)
from vpf.rootsys import minimal_relation, positive_roots

EIGHT = ["A2", "A3", "A4", "B2", "B3", "C2", "C3", "G2"]


def report(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def roots(name):
    return list(positive_roots(name[0], int(name[1:])).positive_roots)


def box_for(n):
    return [(0, 8 if n == 2 else 5)] * n


def rational_points(dim, count, rng, s=None):
    pts = []
    while len(pts) < count:
        pt = [Fraction(rng.randint(1, 97), rng.randint(98, 300)) * rng.choice((1, -1)) for _ in range(dim)]
        if s is not None:
            try:
                s.substitute(pt)
            except PoleHit:
                continue
        pts.append(pt)
    return pts


def test_criterion_1_reference_tables():
    t0 = time.time()
    bad = []
    for name in EIGHT:
        vecs = roots(name)
        box = box_for(len(vecs[0]))
        if reference_table(name).series(box) != FractionSum.product(vecs).series(box):
            bad.append(name)
    report(1, not bad and time.time() - t0 < 60, f"reference tables series-equal ({time.time() - t0:.1f}s) bad={bad}")


def test_criterion_2_own_decompositions():
    t0 = time.time()
    rng = random.Random(2)
    bad = []
    for name in EIGHT:
        vecs = roots(name)
        s = FractionSum.product(vecs)
        res = decompose(s, MinAbsCoefficient)
        pts = rational_points(len(vecs[0]), 3, rng, s)
        ok = all(res.fractions.substitute(p) == s.substitute(p) for p in pts)
        ok = ok and res.fractions.series(box_for(len(vecs[0]))) == s.series(box_for(len(vecs[0])))
        ok = ok and all(rank(fr.support) == len(fr.support) for fr in res.fractions.fractions)
        if not ok:
            bad.append(name)
    report(2, not bad and time.time() - t0 < 300, f"checksum + series ({time.time() - t0:.1f}s) bad={bad}")


def test_criterion_3_oracle_equivalence():
    t0 = time.time()
    mismatches, tested = {}, 0
    for name, side in [("A2", 25), ("B2", 25), ("C2", 25), ("G2", 25), ("A3", 10), ("B3", 10), ("C3", 10)]:
        vecs = roots(name)
        table = partition_table(vecs, [side] * len(vecs[0]))
        for i, cf in enumerate(chamber_formulas(vecs)):
            rep = verify_chamber(cf, vecs, side, i, table)
            tested += rep["points_tested"]
            if rep["mismatches"]:
                mismatches[f"{name}#{i}"] = len(rep["mismatches"])
    report(3, not mismatches and time.time() - t0 < 600,
           f"{tested} chamber points vs oracle ({time.time() - t0:.1f}s) mismatches={mismatches}")


def test_criterion_4_periods():
    bound = {"A2": 1, "A3": 1, "A4": 1, "B2": 2, "B3": 2, "C2": 2, "C3": 2, "G2": 6}
    got = {}
    for name in bound:
        fs = chamber_formulas(roots(name), MinAbsCoefficient)
        got[name] = lcm(1, *(possible_period(f.formula) for f in fs))
    ok = all(got[n] == 1 for n in ("A2", "A3", "A4")) and all(bound[n] % got[n] == 0 for n in bound)
    report(4, ok, f"possible periods {got}")


def test_criterion_5_unit_coefficient():
    t0 = time.time()
    failures, count = [], 0
    for name in ["A2", "A3", "B2", "B3", "C2", "C3", "G2"]:
        rs = roots(name)
        n = len(rs[0])
        for k in range(2, n + 3):
            for sub in combinations(rs, k):
                if rank(sub) == k:
                    continue
                count += 1
                rel = minimal_relation(sub)
                if rel.a0 != 1:
                    failures.append((name, sub))
    report(5, not failures and time.time() - t0 < 120,
           f"{count} dependent subsets ({time.time() - t0:.1f}s) failures={len(failures)}")


# -- criterion 6 ---------------------------------------------------------------

def _vec(rng, n, nonzero=True):
    while True:
        v = tuple(rng.randint(-3, 3) for _ in range(n))
        if any(v) or not nonzero:
            return v


def _check(lhs, rhs, rng, n):
    for _ in range(50):
        pt = rational_points(n, 1, rng)[0]
        try:
            a = lhs.substitute(pt)
            b = rhs.substitute(pt)
        except PoleHit:
            continue
        return a == b
    return False


def _single(num, *factors):
    n = len(factors[0][0])
    return FractionSum(n, (GeneratingFraction(num if num is not None else LaurentPoly.one(n),
                                              tuple(DenominatorFactor(*f) for f in factors)),))


def _lemma_instances(rng):
    """200 instances for each of the five identities, as (label, lhs, rhs, n)."""
    out = {key: [] for key in "abcde"}
    while min(len(v) for v in out.values()) < 200:
        n = rng.randint(1, 3)
        k = rng.randint(1, 4)
        vecs = [_vec(rng, n) for _ in range(k)]
        total = tuple(map(sum, zip(*vecs)))
        if any(total) and len(out["a"]) < 200:
            out["a"].append((FractionSum.product(vecs), szenes_vergne(vecs), n))
        alpha = vecs[0]
        m = rng.choice([x for x in range(-4, 5) if x])
        if len(out["b"]) < 200:
            rhs = _single(elongation_numerator(alpha, m), (tuple(m * x for x in alpha),))
            out["b"].append((FractionSum.product([alpha]), rhs, n))
        coeffs = [rng.choice([x for x in range(-3, 4) if x]) for _ in vecs]
        if any(sum(a * v[i] for a, v in zip(coeffs, vecs)) for i in range(n)) and len(out["c"]) < 200:
            out["c"].append((FractionSum.product(vecs), szenes_vergne_elongated(vecs, coeffs), n))
        beta = _vec(rng, n)
        if alpha != beta and len(out["d"]) < 200:
            out["d"].append((FractionSum.product([alpha, beta]), two_term_split(alpha, beta), n))
            if any(a - 2 * b for a, b in zip(alpha, beta)):
                out["d"][-1] = out["d"][-1] + (two_term_split_double(alpha, beta),)
        l, mm, nn = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        if any(a - nn * b for a, b in zip(alpha, beta)) and len(out["e"]) < 200:
            lhs = _single(None, (alpha, 1, l), (beta, 1, mm)) if alpha != beta else \
                _single(None, (alpha, 1, l + mm))
            out["e"].append((lhs, power_two_term_split(alpha, beta, l, mm, nn), n))
    return out


def test_criterion_6_rewrite_identities():
    rng = random.Random(6)
    failures = {}
    for key, cases in _lemma_instances(rng).items():
        bad = 0
        for case in cases:
            lhs, rhs, n = case[:3]
            if not _check(lhs, rhs, rng, n):
                bad += 1
            for extra in case[3:]:
                if not _check(lhs, extra, rng, n):
                    bad += 1
        failures[key] = bad
    report(6, not any(failures.values()), f"200 instances per identity, failures={failures}")


# -- criterion 7 ---------------------------------------------------------------

def _tau_mul_failures(rng):
    bad = 0
    for _ in range(300):
        n = rng.randint(1, 3)
        systems = []
        for _ in range(2):
            d = rng.randint(1, 6)
            rows = rng.randint(1, 2)
            M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rows)]
            c = [rng.randint(0, d - 1) for _ in range(rows)]
            systems.append(tau(M, c, d, n))
        a, b = systems
        if a is None or b is None:
            continue
        p = tau_mul(a, b)
        for g in product(range(lcm(a.d, b.d)), repeat=n):
            if (p(g) if p is not None else 0) != a(g) * b(g):
                bad += 1
    return bad


def _bernoulli_failures():
    bad = 0
    for k in range(5):
        for d in range(1, 7):
            for l in range(d):
                for m in range(d):
                    q = tau_bernoulli_quasipoly(k, l, m, d)
                    running = 0
                    for x in range(201):
                        if (l * x - m) % d == 0:
                            running += x ** k
                        if q.evaluate([x]) != running:
                            bad += 1
                    assert running == tau_bernoulli_direct(k, l, m, d, 200)
    return bad


def _interpolation_failures(rng):
    bad = 0
    for d in range(1, 7):
        f = lambda y: 2 * y ** 3 - 5 * y + Fraction(1, 3)
        F = floor_interpolate(f, d)
        for j in range(-10 * d, 10 * d + 1):
            x = Fraction(j, d)
            if F(x) != f(x.numerator // x.denominator):
                bad += 1
    for _ in range(200):
        n = rng.randint(1, 3)
        a = rng.randint(1, 6)
        t = tau([[rng.randint(-3, 3) for _ in range(n)]], [rng.randint(0, a - 1)], a, n)
        if t is None:
            continue
        alpha = [rng.randint(-3, 3) for _ in range(n)]
        terms = shift_expand(t, alpha)
        for s in range(-t.d, 2 * t.d):
            for g in product(range(t.d), repeat=n):
                if eval_shift_expansion(terms, t.d, s, g) != t([x - s * y for x, y in zip(g, alpha)]):
                    bad += 1
    return bad


def test_criterion_7_tau_toolkit():
    rng = random.Random(7)
    counts = {"tau_mul": _tau_mul_failures(rng), "tau_bernoulli": _bernoulli_failures(),
              "interpolation": _interpolation_failures(rng)}
    report(7, not any(counts.values()), f"failures={counts}")


def test_criterion_8_shared_walls():
    checked, bad = 0, []
    for name in ["A2", "B2", "G2"]:
        vecs = roots(name)
        cc = chambers(vecs)
        fs = chamber_formulas(vecs, complex_=cc)
        pairs = cc.adjacent_pairs()
        assert pairs
        for i, j in pairs:
            for g in product(range(26), repeat=2):
                if cc.chambers[i].contains(g) and cc.chambers[j].contains(g):
                    checked += 1
                    if fs[i](g) != fs[j](g):
                        bad.append((name, i, j, g))
    report(8, checked > 0 and not bad, f"{checked} shared-wall points, disagreements={len(bad)}")
