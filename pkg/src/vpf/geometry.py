"""Pointed rational cones and the chamber complex of a vector configuration.

Cones carry both descriptions: primitive extreme rays (``generators``) and
primitive inner facet normals (``facet_normals``, so the cone is
``{p : <h, p> >= 0 for all h}``).  Conversions are brute force over
(n-1)-subsets, which is plenty for the ranks handled here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count
from typing import Sequence

from .arith import IntVector, kernel_basis, primitive, rank
from .errors import DimensionMismatch, EmptyInterior, NotFullRank


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _normalize_sign(v: IntVector) -> IntVector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _normal_of(vectors: Sequence[IntVector], n: int) -> IntVector | None:
    """Primitive normal of the hyperplane spanned by ``vectors`` (None unless rank n-1)."""
    if n == 1:
        return (1,) if not any(any(v) for v in vectors) else None
    if not vectors:
        return None
    ker = kernel_basis([list(v) for v in vectors])
    if len(ker) != 1:
        return None
    return primitive(ker[0])


def _rays_from_normals(normals: Sequence[IntVector], n: int) -> list[IntVector]:
    rays = set()
    if n == 1:
        for s in ((1,), (-1,)):
            if all(_dot(h, s) >= 0 for h in normals):
                rays.add(s)
        return sorted(rays)
    for sub in combinations(normals, n - 1):
        r = _normal_of(sub, n)
        if r is None:
            continue
        for cand in (r, tuple(-x for x in r)):
            if all(_dot(h, cand) >= 0 for h in normals):
                rays.add(cand)
    return sorted(rays)


def _facets_from_rays(rays: Sequence[IntVector], n: int) -> list[IntVector]:
    facets = set()
    if n == 1:
        return [(1,)] if all(r[0] > 0 for r in rays) else [(-1,)]
    for sub in combinations(rays, n - 1):
        h = _normal_of(sub, n)
        if h is None:
            continue
        vals = [_dot(h, r) for r in rays]
        if all(v >= 0 for v in vals):
            facets.add(h)
        elif all(v <= 0 for v in vals):
            facets.add(tuple(-x for x in h))
    return sorted(facets)


@dataclass(frozen=True)
class Cone:
    dim: int
    generators: tuple[IntVector, ...]
    facet_normals: tuple[IntVector, ...]

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]]) -> Cone:
        gens = [primitive(g) for g in gens if any(g)]
        if not gens:
            raise NotFullRank("cone needs a nonzero generator")
        n = len(gens[0])
        if rank(gens) < n:
            raise NotFullRank("generators do not span the ambient space")
        gens = sorted(set(gens))
        facets = _facets_from_rays(gens, n)
        rays = _rays_from_normals(facets, n)
        return cls(n, tuple(rays), tuple(facets))

    @classmethod
    def from_normals(cls, normals: Sequence[Sequence[int]], n: int) -> Cone:
        normals = sorted({primitive(h) for h in normals if any(h)})
        rays = _rays_from_normals(normals, n)
        if not rays or rank(rays) < n:
            raise EmptyInterior("cone is not full-dimensional")
        # keep only normals that are tight on n-1 independent rays
        facets = [h for h in normals if rank([r for r in rays if _dot(h, r) == 0]) == n - 1]
        if n == 1:
            facets = normals
        return cls(n, tuple(rays), tuple(facets))

    def contains(self, p: Sequence) -> bool:
        return cone_contains(self, p)

    def strictly_contains(self, p: Sequence) -> bool:
        return all(_dot(h, p) > 0 for h in self.facet_normals)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators],
                "normals": [list(h) for h in self.facet_normals]}

    @classmethod
    def from_json(cls, data: dict) -> Cone:
        gens = [tuple(g) for g in data["generators"]]
        return cls(len(gens[0]), tuple(gens), tuple(tuple(h) for h in data["normals"]))


def cone_contains(c: Cone, p: Sequence) -> bool:
    if len(p) != c.dim:
        raise DimensionMismatch("point has wrong dimension")
    return all(_dot(h, p) >= 0 for h in c.facet_normals)


def spanned_hyperplanes(vectors: Sequence[IntVector]) -> list[IntVector]:
    """Sign-normalized primitive normals of hyperplanes spanned by subsets of rank n-1."""
    vectors = sorted({tuple(v) for v in vectors})
    n = len(vectors[0])
    if n == 1:
        return []
    hs = set()
    for sub in combinations(vectors, n - 1):
        h = _normal_of(sub, n)
        if h is not None:
            hs.add(_normalize_sign(h))
    return sorted(hs)


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]


def interior_point(c: Cone, avoid: Sequence[Sequence[int]] = ()) -> tuple[Fraction, ...]:
    """A rational point strictly inside ``c`` lying on none of the ``avoid`` hyperplanes."""
    if rank(list(c.generators)) < c.dim:
        raise EmptyInterior("cone is not full-dimensional")
    gens = c.generators
    for q in _PRIMES:
        for k in count(1):
            if k > 4:
                break
            base = Fraction(1, q ** k)
            w = [1 + base ** (i + 1) for i in range(len(gens))]
            p = tuple(sum(wi * g[j] for wi, g in zip(w, gens)) for j in range(c.dim))
            if c.strictly_contains(p) and all(_dot(h, p) != 0 for h in avoid):
                return p
    raise EmptyInterior("could not find a generic interior point")


@dataclass
class ChamberComplex:
    vectors: tuple[IntVector, ...]
    chambers: list[Cone]
    hyperplanes: list[IntVector] = field(default_factory=list)

    def locate(self, p: Sequence) -> list[int]:
        return [i for i, c in enumerate(self.chambers) if cone_contains(c, p)]

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Pairs of chambers meeting in a common (n-1)-dimensional wall."""
        out = []
        n = len(self.vectors[0])
        for i, j in combinations(range(len(self.chambers)), 2):
            a, b = self.chambers[i], self.chambers[j]
            shared = set(a.facet_normals) & {tuple(-x for x in h) for h in b.facet_normals}
            for h in shared:
                normals = list(a.facet_normals) + list(b.facet_normals)
                rays = _rays_from_normals(normals, n)
                if rays and rank(rays) == n - 1:
                    out.append((i, j))
                    break
        return out

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors],
                "chambers": [c.to_json() for c in self.chambers]}


def chambers(vectors: Sequence[Sequence[int]]) -> ChamberComplex:
    """Split cone(vectors) along every hyperplane spanned by rank n-1 subsets."""
    vectors = tuple(tuple(int(x) for x in v) for v in vectors)
    if not vectors:
        raise NotFullRank("no vectors")
    n = len(vectors[0])
    if rank(vectors) < n:
        raise NotFullRank("vectors do not span the ambient space")
    cells = [Cone.from_generators(vectors)]
    hs = spanned_hyperplanes(vectors)
    for h in hs:
        nxt = []
        for cell in cells:
            vals = [_dot(h, r) for r in cell.generators]
            if max(vals) > 0 and min(vals) < 0:
                neg = tuple(-x for x in h)
                nxt.append(Cone.from_normals(list(cell.facet_normals) + [h], n))
                nxt.append(Cone.from_normals(list(cell.facet_normals) + [neg], n))
            else:
                nxt.append(cell)
        cells = nxt
    cells.sort(key=lambda c: c.generators)
    return ChamberComplex(vectors, cells, hs)
