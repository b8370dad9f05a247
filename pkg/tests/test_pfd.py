import random
from fractions import Fraction
from itertools import combinations

import pytest

from vpf.arith import rank
from vpf.errors import PoleHit, VectorOutsideExtendedSet
from vpf.genfunc import FractionSum
from vpf.pfd import (
    ClassicalOrder,
    MinAbsCoefficient,
    NonBrokenCircuit,
    choose_relation,
    classical_decompose,
    decompose,
    parse_strategy,
)
from vpf.rootsys import positive_roots


def kostant(name):
    return list(positive_roots(name[0], int(name[1:])).positive_roots)


def checksum(a: FractionSum, b: FractionSum, count=3, seed=0):
    rng = random.Random(seed)
    done = 0
    while done < count:
        pt = [Fraction(rng.randint(1, 60), rng.randint(61, 200)) for _ in range(a.dim)]
        try:
            va = a.substitute(pt)
        except PoleHit:
            continue
        try:
            vb = b.substitute(pt)
        except PoleHit:
            continue
        assert va == vb
        done += 1


def assert_reduced(res):
    for fr in res.fractions.fractions:
        assert rank(fr.support) == len(fr.support)
        assert fr.reduced
    assert res.support == {v for c in res.cone_support for v in c}


def is_positive_multiple(v, r):
    k = Fraction(sum(v), sum(r))
    return k.denominator == 1 and k > 0 and all(a == k * b for a, b in zip(v, r))


def test_a2_two_fractions():
    s = FractionSum.product([(1, 0), (0, 1), (1, 1)])
    res = decompose(s)
    assert len(res.fractions) == 2
    assert_reduced(res)
    box = [(0, 8), (0, 8)]
    assert res.fractions.series(box) == s.series(box)


def test_independent_input_unchanged():
    s = FractionSum.product([(1, 0), (0, 1)])
    res = decompose(s)
    assert len(res.fractions) == 1
    fr = res.fractions.fractions[0]
    assert fr.reduced and fr.denominators == s.fractions[0].denominators and fr.numerator == 1


def test_g2_series():
    s = FractionSum.product(kostant("G2"))
    res = decompose(s, MinAbsCoefficient, checksum=True)
    assert_reduced(res)
    box = [(0, 10), (0, 10)]
    assert res.fractions.series(box) == s.series(box)


def test_choose_relation_examples():
    rel = choose_relation([(1, 0), (0, 1), (1, 1)])
    assert rel.a0 == 1
    assert rel.gaining == (0, 1)  # smallest vector with |a0| = 1
    assert choose_relation([(1, 0), (0, 1)]) is None
    assert choose_relation([(1, 0), (0, 1)], NonBrokenCircuit) is None


def test_a3_every_dependent_subset_has_unit_relation():
    roots = kostant("A3")
    for k in range(2, len(roots) + 1):
        for sub in combinations(roots, k):
            if rank(sub) < k:
                assert choose_relation(sub).a0 == 1


def test_nbc_relation_uses_earlier_vectors():
    rel = choose_relation([(1, 0), (0, 1), (1, 2)], NonBrokenCircuit)
    assert rel.gaining == (1, 2)
    assert dict(rel.terms) == {(1, 0): 1, (0, 1): 2}


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "G2", "A3", "C3"])
@pytest.mark.parametrize("strategy", [MinAbsCoefficient, NonBrokenCircuit], ids=["minabs", "nbc"])
def test_decompose_roots(name, strategy):
    vecs = kostant(name)
    s = FractionSum.product(vecs)
    res = decompose(s, strategy)
    assert_reduced(res)
    checksum(res.fractions, s)
    n = len(vecs[0])
    box = [(0, 8 if n == 2 else 5)] * n
    assert res.fractions.series(box) == s.series(box)


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "G2", "A3", "B3", "C3"])
def test_minabs_support_is_multiples_of_roots(name):
    roots = kostant(name)
    res = decompose(FractionSum.product(roots), MinAbsCoefficient)
    for v in res.support:
        assert any(is_positive_multiple(v, r) for r in roots), v


def test_d4_terminates():
    s = FractionSum.product(kostant("D4"))
    res = decompose(s)
    assert_reduced(res)
    checksum(res.fractions, s)


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "A3", "B3", "C3"])
def test_classical(name):
    vecs = kostant(name)
    s = FractionSum.product(vecs)
    res = classical_decompose(s, name)
    assert_reduced(res)
    checksum(res.fractions, s)
    n = len(vecs[0])
    box = [(0, 8 if n == 2 else 6)] * n
    assert res.fractions.series(box) == s.series(box)
    assert all(len(fr.support) <= n for fr in res.fractions.fractions)


def test_classical_b2_doubled_factor():
    res = decompose(FractionSum.product(kostant("B2")), ClassicalOrder("B2"))
    assert (0, 2) in res.support


def test_classical_rejects_foreign_vectors():
    with pytest.raises(VectorOutsideExtendedSet):
        classical_decompose(FractionSum.product([(1, 0), (0, 1), (1, 3)]), "B2")


def test_parse_strategy():
    assert parse_strategy("MinAbsCoefficient") == MinAbsCoefficient
    assert parse_strategy("nbc") == NonBrokenCircuit
    assert parse_strategy("classical", "C3") == ClassicalOrder("C3")
    with pytest.raises(ValueError):
        parse_strategy("random")


def test_result_json_is_deterministic():
    s = FractionSum.product(kostant("B2"))
    assert decompose(s).to_json() == decompose(s).to_json()
