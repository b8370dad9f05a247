from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from vpf.errors import BadIndicator, NotFullRank
from vpf.evaluate import (
    ChamberFormula,
    brion_vergne_term,
    chamber_formulas,
    dual_basis,
    partition_table,
    verify_chamber,
    vpf_bruteforce,
    vpf_quasipoly,
)
from vpf.genfunc import DenominatorFactor, GeneratingFraction
from vpf.geometry import Cone, chambers
from vpf.laurent import LaurentPoly
from vpf.pfd import MinAbsCoefficient, NonBrokenCircuit
from vpf.quasi import BasicQuasiNumber, QuasiPolynomial, quasipoly_equal
from vpf.rootsys import positive_roots

A2 = [(1, 0), (0, 1), (1, 1)]


def roots(name):
    return list(positive_roots(name[0], int(name[1:])).positive_roots)


@lru_cache(maxsize=None)
def count_naive(vectors, g):
    # independent recursion: use the first vector k times, recurse on the rest
    if not vectors:
        return int(not any(g))
    v, rest = vectors[0], vectors[1:]
    total, cur = 0, g
    while min(cur) >= 0:
        total += count_naive(rest, cur)
        cur = tuple(a - b for a, b in zip(cur, v))
    return total


def test_dual_basis_examples():
    assert dual_basis([(1, 0), (0, 1)]).betas == ((1, 0), (0, 1))
    assert dual_basis([(1, 0), (1, 1)]).betas == ((1, -1), (0, 1))
    db = dual_basis([(1, 0), (1, 2)])
    assert db.betas == ((1, Fraction(-1, 2)), (0, Fraction(1, 2)))
    for i, a in enumerate([(1, 0), (1, 2)]):
        for k in range(2):
            assert db.pair(k, a) == int(i == k)
    with pytest.raises(NotFullRank):
        dual_basis([(1, 1), (2, 2)])


def fraction(num, *factors):
    return GeneratingFraction(LaurentPoly(2, num), tuple(DenominatorFactor(*f) for f in factors), reduced=True)


def test_brion_vergne_examples():
    q = brion_vergne_term(fraction({(0, 0): 1}, ((1, 0),), ((0, 1),)), (2, 1))
    assert quasipoly_equal(q, QuasiPolynomial.constant(2))
    q = brion_vergne_term(fraction({(0, 0): 1}, ((1, 0), 1, 2), ((0, 1),)), (2, 1))
    assert quasipoly_equal(q, QuasiPolynomial.coordinate(2, 0) + QuasiPolynomial.constant(2))
    q = brion_vergne_term(fraction({(0, 1): 1}, ((1, 0),), ((0, 1), 2)), (2, 1))
    for g in product(range(6), repeat=2):
        assert q.evaluate(g) == g[1] % 2


def test_brion_vergne_outside_and_wall():
    f = fraction({(0, 0): 1}, ((1, 0),), ((1, 1),))
    assert not brion_vergne_term(f, (1, 2))
    with pytest.raises(BadIndicator):
        brion_vergne_term(f, (2, 2))


def test_a2_chamber_formula():
    below = Cone.from_generators([(1, 0), (1, 1)])
    cf = vpf_quasipoly(A2, below)
    assert quasipoly_equal(cf.formula, QuasiPolynomial.coordinate(2, 1) + QuasiPolynomial.constant(2))
    assert verify_chamber(cf, A2, 25)["mismatches"] == []


def test_one_dimensional():
    cf = vpf_quasipoly([(1,)], Cone.from_generators([(1,)]))
    assert all(cf(g) == 1 for g in [(0,), (3,), (17,)])


def test_bruteforce_examples():
    assert vpf_bruteforce(A2, (1, 1)) == 2
    assert vpf_bruteforce(A2, (0, 0)) == 1
    assert vpf_bruteforce(roots("G2"), (0, 0)) == 1
    assert vpf_bruteforce(A2, (5, 3)) == 4


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=4),
       st.tuples(st.integers(0, 8), st.integers(0, 8)))
def test_bruteforce_matches_recursion(vectors, g):
    assert vpf_bruteforce(vectors, g) == count_naive(tuple(vectors), g)


@pytest.mark.parametrize("name,box", [("B2", 20), ("C2", 20), ("G2", 20)])
def test_rank_two_chambers_match_oracle(name, box):
    vecs = roots(name)
    table = partition_table(vecs, [box, box])
    for i, cf in enumerate(chamber_formulas(vecs)):
        rep = verify_chamber(cf, vecs, box, i, table)
        assert rep["points_tested"] > 0
        assert rep["mismatches"] == [], rep


def test_corrupted_formula_fails_everywhere():
    cf = chamber_formulas(A2)[0]
    bad = ChamberFormula(cf.chamber, cf.formula + QuasiPolynomial.constant(2))
    rep = verify_chamber(bad, A2, 10)
    assert len(rep["mismatches"]) == rep["points_tested"] > 0


def test_shared_walls_agree():
    vecs = roots("B2")
    cc = chambers(vecs)
    fs = chamber_formulas(vecs, complex_=cc)
    for i, j in cc.adjacent_pairs():
        for g in product(range(21), repeat=2):
            if cc.chambers[i].contains(g) and cc.chambers[j].contains(g):
                assert fs[i](g) == fs[j](g)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_indicator_independence(name):
    vecs = roots(name)
    cc = chambers(vecs)
    for cf in chamber_formulas(vecs, complex_=cc):
        gens = cf.chamber.generators
        other = tuple(sum((k + 3) * g[j] for k, g in enumerate(gens)) + Fraction(1, 101) * (j + 1)
                      for j in range(2))
        assert cf.chamber.strictly_contains(other)
        alt = vpf_quasipoly(vecs, cf.chamber, indicator=other)
        assert alt.indicator != cf.indicator
        assert quasipoly_equal(alt.formula, cf.formula)


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "G2", "A3"])
def test_strategy_independence(name):
    vecs = roots(name)
    cc = chambers(vecs)
    a = chamber_formulas(vecs, MinAbsCoefficient, cc)
    b = chamber_formulas(vecs, NonBrokenCircuit, cc)
    for fa, fb in zip(a, b):
        assert quasipoly_equal(fa.formula, fb.formula)


def test_chamber_formula_json():
    cf = chamber_formulas(roots("B2"))[1]
    back = ChamberFormula.from_json(cf.to_json())
    assert back.chamber == cf.chamber and back.indicator == cf.indicator
    assert quasipoly_equal(back.formula, cf.formula)


def test_formulas_are_nonnegative_integers():
    vecs = roots("G2")
    for cf in chamber_formulas(vecs):
        for g in product(range(12), repeat=2):
            if cf.chamber.contains(g):
                v = cf(g)
                assert v.denominator == 1 and v >= 0


def test_parallel_matches_serial():
    vecs = roots("B2")
    a = chamber_formulas(vecs, threads=1)
    b = chamber_formulas(vecs, threads=2)
    assert all(quasipoly_equal(x.formula, y.formula) for x, y in zip(a, b))


def test_basic_quasinumber_in_formula_lattice():
    # G2 formulas carry moduli dividing 6
    for cf in chamber_formulas(roots("G2")):
        assert all(6 % d == 0 for d in cf.formula.moduli())
    assert isinstance(next(iter(chamber_formulas(A2)[0].formula.parts)), BasicQuasiNumber)
