from itertools import combinations

import pytest

from vpf.arith import rank
from vpf.errors import IndependentInput, InvalidRank
from vpf.rootsys import (
    cartan_from_roots,
    cartan_matrix,
    closure_from_cartan,
    expected_root_count,
    extended_set,
    kostant_input,
    minimal_relation,
    positive_roots,
)

SYSTEMS = [("A", n) for n in range(1, 7)] + [("B", n) for n in (2, 3, 4)] + [("C", n) for n in (2, 3, 4)] \
    + [("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("label,n", SYSTEMS)
def test_root_counts(label, n):
    rs = positive_roots(label, n)
    assert len(rs.positive_roots) == expected_root_count(label, n)
    assert len(set(rs.positive_roots)) == len(rs.positive_roots)
    assert all(min(r) >= 0 for r in rs.positive_roots)


@pytest.mark.parametrize("label,n", SYSTEMS)
def test_closure_idempotent(label, n):
    roots = positive_roots(label, n).positive_roots
    A = cartan_from_roots(roots)
    assert A == [list(r) for r in cartan_matrix(label, n)]
    assert set(closure_from_cartan(A)) == set(roots)


def test_examples():
    assert set(positive_roots("A", 2).positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert set(positive_roots("G", 2).positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}
    assert set(positive_roots("B", 2).positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert set(positive_roots("C", 2).positive_roots) == {(1, 0), (0, 1), (1, 1), (2, 1)}
    assert len(kostant_input("G", 2).fractions[0].denominators) == 6


@pytest.mark.parametrize("label,n", [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("F", 3), ("G", 3), ("X", 2)])
def test_invalid_rank(label, n):
    with pytest.raises(InvalidRank):
        positive_roots(label, n)


def test_extended_sets():
    ext = extended_set("B", 2)
    assert set(ext.extra) == {(2, 2), (0, 2)}
    assert all(v in ext for v in positive_roots("B", 2).positive_roots)
    assert len(extended_set("C", 3).vectors) == 9
    assert len(extended_set("D", 4).vectors) == 16


def test_minimal_relation_examples():
    rel = minimal_relation([(1, 0), (0, 1), (1, 1)])
    assert rel.a0 == 1
    with pytest.raises(IndependentInput):
        minimal_relation([(1, 0), (0, 1)])
    # G2 with alpha_1 long: long roots (1,0), (1,3), (2,3); short roots (0,1), (1,1), (1,2)
    rel = minimal_relation([(1, 0), (1, 3), (0, 1)])
    assert rel.a0 == 1 and rel.gaining in {(1, 0), (1, 3)}
    assert sorted(abs(a) for _, a in rel.terms) == [1, 3]
    rel = minimal_relation([(0, 1), (1, 1), (1, 2)])
    assert rel.a0 == 1


@pytest.mark.parametrize("label,n", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("G", 2)])
def test_unit_coefficient_everywhere(label, n):
    roots = positive_roots(label, n).positive_roots
    for k in range(2, n + 3):
        for sub in combinations(roots, k):
            if rank(sub) < k:
                rel = minimal_relation(sub)
                assert rel.a0 == 1
