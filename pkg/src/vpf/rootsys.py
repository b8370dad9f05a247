"""Positive roots of the simple root systems in simple-root coordinates.

Classical types are built from their realization in the orthonormal
eta-coordinates and converted exactly; exceptional types are generated from
the Cartan matrix by root-string closure.  Cartan matrices follow Humphreys'
convention ``A[i][j] = <alpha_i, alpha_j^vee>``; the E series uses Bourbaki
node numbering (node 2 hangs off node 4), F4 has its long roots first and
G2 has alpha_1 long.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import IntVector, integer_relation, rank, solve_rational
from .errors import IndependentInput, InvalidRank
from .genfunc import FractionSum, Relation

LABELS = "ABCDEFG"


def _e_cartan(n: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    edges = [(1, 3), (3, 4), (4, 2), (4, 5)] + [(k, k + 1) for k in range(5, n)]
    for a, b in edges:
        A[a - 1][b - 1] = A[b - 1][a - 1] = -1
    return A


_EXCEPTIONAL_CARTAN = {
    ("F", 4): [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    ("G", 2): [[2, -3], [-1, 2]],
}


def check_rank(label: str, n: int) -> None:
    ok = {
        "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }.get(label)
    if not ok:
        raise InvalidRank(f"no root system of type {label}{n}")


def eta_roots(label: str, n: int) -> list[tuple[int, ...]]:
    """Positive roots of a classical system in eta-coordinates."""
    def e(*pairs, dim):
        v = [0] * dim
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    if label == "A":
        return [e((i, 1), (j, -1), dim=n + 1) for i in range(n + 1) for j in range(i + 1, n + 1)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(e((i, 1), (j, -1), dim=n))
            out.append(e((i, 1), (j, 1), dim=n))
    if label == "B":
        out += [e((i, 1), dim=n) for i in range(n)]
    elif label == "C":
        out += [e((i, 2), dim=n) for i in range(n)]
    elif label != "D":
        raise InvalidRank(f"{label} is not classical")
    return out


def eta_simple_roots(label: str, n: int) -> list[tuple[int, ...]]:
    dim = n + 1 if label == "A" else n
    simple = []
    for i in range(n - 1):
        v = [0] * dim
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    last = [0] * dim
    if label == "A":
        last[n - 1], last[n] = 1, -1
    elif label == "B":
        last[n - 1] = 1
    elif label == "C":
        last[n - 1] = 2
    elif label == "D":
        last[n - 2] = last[n - 1] = 1
    simple.append(tuple(last))
    return simple


def eta_to_simple(label: str, n: int, v: Sequence[int]) -> IntVector:
    cols = list(zip(*eta_simple_roots(label, n)))
    x = solve_rational(cols, list(v))
    if x is None:
        raise ValueError(f"{v} is not in the root lattice span")
    if any(Fraction(c).denominator != 1 for c in x):
        raise ValueError(f"{v} has non-integral simple coordinates")
    return tuple(int(c) for c in x)


def _classical_cartan(label: str, n: int) -> list[list[int]]:
    S = eta_simple_roots(label, n)
    ip = lambda u, v: sum(a * b for a, b in zip(u, v))
    return [[2 * ip(S[i], S[j]) // ip(S[j], S[j]) for j in range(n)] for i in range(n)]


def cartan_matrix(label: str, n: int) -> list[list[int]]:
    check_rank(label, n)
    if label == "E":
        return _e_cartan(n)
    if label in "FG":
        return [row[:] for row in _EXCEPTIONAL_CARTAN[(label, n)]]
    return _classical_cartan(label, n)


def closure_from_cartan(A: Sequence[Sequence[int]]) -> list[IntVector]:
    """Positive roots generated level by level from root strings."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                pair = sum(beta[j] * A[j][i] for j in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        nxt.add(up)
        roots |= nxt
        layer = sorted(nxt)
    return sorted(roots, key=lambda r: (sum(r), r))


def cartan_from_roots(roots: Sequence[IntVector]) -> list[list[int]]:
    """Recover the Cartan matrix from the alpha_j-strings through alpha_i."""
    rs = set(map(tuple, roots))
    n = len(next(iter(rs)))
    A = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            q = 0
            v = [int(k == i) for k in range(n)]
            while True:
                v[j] += 1
                if tuple(v) in rs:
                    q += 1
                else:
                    break
            A[i][j] = -q
    return A


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[IntVector, ...]

    @property
    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def to_json(self) -> dict:
        return {"type": self.label, "rank": self.rank,
                "cartan": [list(r) for r in self.cartan],
                "positive_roots": [list(r) for r in self.positive_roots]}


def positive_roots(label: str, n: int) -> RootSystem:
    label = label.upper()
    if label not in LABELS:
        raise InvalidRank(f"unknown type {label!r}")
    check_rank(label, n)
    A = cartan_matrix(label, n)
    if label in "ABCD":
        roots = [eta_to_simple(label, n, v) for v in eta_roots(label, n)]
        roots.sort(key=lambda r: (sum(r), r))
    else:
        roots = closure_from_cartan(A)
    return RootSystem(label, n, tuple(map(tuple, A)), tuple(roots))


def kostant_input(label: str, n: int) -> FractionSum:
    return FractionSum.product(positive_roots(label, n).positive_roots)


def expected_root_count(label: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, -1), "F": 24, "G": 6,
    }[label]


# -- extended sets used by the classical reduction --------------------------

@dataclass(frozen=True)
class ExtendedSet:
    """A positive system enlarged by doubled short roots, with its total order.

    ``vectors`` is listed from largest to smallest; the order compares
    eta-coordinates lexicographically.
    """

    base: RootSystem
    extra: tuple[IntVector, ...]
    vectors: tuple[IntVector, ...] = field(repr=False)

    def index(self, v: IntVector) -> int:
        return self._index[v]

    def __contains__(self, v) -> bool:
        return tuple(v) in self._index

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vectors)})


def extended_set(label: str, n: int) -> ExtendedSet:
    label = label.upper()
    if label not in "ABCD":
        raise InvalidRank(f"no extended set for type {label}")
    base = positive_roots(label, n)
    etas = list(eta_roots(label, n))
    extra_eta = []
    if label in "BD":
        for i in range(n):
            v = [0] * n
            v[i] = 2
            extra_eta.append(tuple(v))
    allv = sorted(etas + extra_eta, reverse=True)
    vectors = tuple(eta_to_simple(label, n, v) for v in allv)
    extra = tuple(eta_to_simple(label, n, v) for v in extra_eta)
    return ExtendedSet(base, extra, vectors)


# -- relations ---------------------------------------------------------------

def circuits(vectors: Sequence[IntVector]) -> list[tuple[tuple[int, ...], IntVector]]:
    """All minimally dependent index subsets with their primitive relation."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    r = rank(vectors)
    out = []
    for size in range(2, r + 2):
        for idx in combinations(range(len(vectors)), size):
            c = integer_relation([vectors[i] for i in idx])
            if c is not None and all(c):
                out.append((idx, c))
    return out


def relation_from_circuit(vectors: Sequence[IntVector], idx: Sequence[int], c: Sequence[int],
                          gaining: int) -> Relation:
    """Solve the relation ``sum c_k v_k = 0`` for position ``gaining`` of the circuit."""
    k = list(idx).index(gaining)
    s = 1 if c[k] > 0 else -1
    terms = tuple((tuple(vectors[i]), -s * ci) for i, ci in zip(idx, c) if i != gaining)
    return Relation(abs(c[k]), tuple(vectors[gaining]), terms)


def minimal_relation(roots: Sequence[IntVector]) -> Relation:
    """Relation whose distinguished coefficient a0 has the least absolute value."""
    roots = [tuple(r) for r in dict.fromkeys(tuple(r) for r in roots)]
    best = None
    for idx, c in circuits(roots):
        for pos, i in enumerate(idx):
            key = (abs(c[pos]), roots[i], len(idx), idx)
            if best is None or key < best[0]:
                best = (key, idx, c, i)
    if best is None:
        raise IndependentInput("vectors are linearly independent")
    _, idx, c, i = best
    return relation_from_circuit(roots, idx, c, i)
