"""Lattice polytopes from posets, graphs and complexes; exact facet enumeration.

Facets come from an incremental double description run entirely in
integers: every inequality ``a . x <= b`` is kept with ``a`` primitive,
and the combinatorial adjacency test uses point-incidence bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .combinatorics import (
    Poset,
    SimpleGraph,
    SimplicialComplex,
    antichains,
    ideals,
    indicator,
    stable_sets,
)
from .exactmath import dot, nullspace, primitive_int, rank, solve_affine_span

Point = tuple[int, ...]


class NotFullDim(ValueError):
    pass


class OriginNotInterior(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    """The inequality ``a . x <= b`` with ``a`` a primitive integer vector."""

    a: tuple[int, ...]
    b: int

    def value(self, x: Sequence) -> int:
        return dot(self.a, x)

    def is_tight(self, x: Sequence) -> bool:
        return dot(self.a, x) == self.b

    def dual_vertex(self) -> tuple[Fraction, ...]:
        if self.b <= 0:
            raise OriginNotInterior(f"facet {self} does not separate the origin")
        return tuple(Fraction(c, self.b) for c in self.a)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": self.b}


@dataclass(frozen=True)
class HRep:
    dim: int
    facets: tuple[Facet, ...]

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def contains(self, x: Sequence, scale: int = 1) -> bool:
        """Membership of ``x`` in ``scale`` times the polytope (exact)."""
        return all(dot(f.a, x) <= scale * f.b for f in self.facets)

    def to_json(self) -> dict:
        return {"facets": [f.to_json() for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "HRep":
        fs = tuple(Facet(tuple(int(c) for c in f["a"]), int(f["b"])) for f in data["facets"])
        return cls(len(fs[0].a) if fs else 0, fs)


def contains(H: HRep, x: Sequence) -> bool:
    """True iff ``a . x <= b`` for every facet of ``H`` (``x`` may be rational)."""
    if len(x) != H.dim:
        raise ValueError(f"point has dimension {len(x)}, H-representation {H.dim}")
    return H.contains(x)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of a finite set of integer points.

    ``points`` is a generating set, not necessarily the vertex set. The
    H-representation is computed once on first access.
    """

    ambient_dim: int
    points: tuple[Point, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        pts = []
        seen = set()
        for p in self.points:
            p = tuple(int(c) for c in p)
            if len(p) != self.ambient_dim:
                raise ValueError(f"point {p} not in dimension {self.ambient_dim}")
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if not pts:
            raise ValueError("empty point set")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @cached_property
    def dim(self) -> int:
        return solve_affine_span(self.points)[0]

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def hrep(self) -> HRep:
        return facets(self)

    def vertices(self) -> list[Point]:
        """Generating points that are vertices (incidence rank test)."""
        H = self.hrep
        out = []
        for p in self.points:
            tight = [f.a for f in H if f.is_tight(p)]
            if rank(tight) == self.ambient_dim:
                out.append(p)
        return out

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolytope":
        return cls(int(data["ambient_dim"]), tuple(tuple(p) for p in data["points"]))


# ----------------------------------------------------------------- constructions


def order_polytope(P: Poset) -> LatticePolytope:
    return LatticePolytope(P.d, tuple(indicator(I, P.d) for I in ideals(P)), "O_P")


def chain_polytope(P: Poset) -> LatticePolytope:
    return LatticePolytope(P.d, tuple(indicator(A, P.d) for A in antichains(P)), "C_P")


def complex_polytope(delta: SimplicialComplex) -> LatticePolytope:
    return LatticePolytope(delta.d, tuple(indicator(s, delta.d) for s in delta.faces), "P_Delta")


def stable_set_polytope(G: SimpleGraph) -> LatticePolytope:
    return LatticePolytope(G.d, complex_polytope(stable_sets(G)).points, "Q_G")


def _check_pair(P1: LatticePolytope, P2: LatticePolytope):
    if P1.ambient_dim != P2.ambient_dim:
        raise ValueError(
            f"dimension mismatch: {P1.ambient_dim} vs {P2.ambient_dim}"
        )


def gamma(P1: LatticePolytope, P2: LatticePolytope) -> LatticePolytope:
    """conv(P1 union -P2)."""
    _check_pair(P1, P2)
    pts = list(P1.points) + [tuple(-c for c in q) for q in P2.points]
    return LatticePolytope(P1.ambient_dim, tuple(pts), f"Gamma({P1.label},{P2.label})")


def omega(P1: LatticePolytope, P2: LatticePolytope) -> LatticePolytope:
    """conv(P1 x {1} union -P2 x {-1}) in one dimension higher."""
    _check_pair(P1, P2)
    pts = [p + (1,) for p in P1.points] + [tuple(-c for c in q) + (-1,) for q in P2.points]
    return LatticePolytope(P1.ambient_dim + 1, tuple(pts), f"Omega({P1.label},{P2.label})")


# ------------------------------------------------------------ facet enumeration


def _hyperplane_through(pts: Sequence[Point], away: Point) -> tuple[tuple[int, ...], int]:
    """Primitive ``(a, b)`` with ``a . p = b`` on ``pts`` and ``a . away < b``."""
    D = len(away)
    rows = [list(p) + [-1] for p in pts]
    ns = nullspace(rows, D + 1)
    if len(ns) != 1:
        raise AssertionError("points do not span a hyperplane")
    v = primitive_int(_clear(ns[0]))
    a, b = v[:D], v[D]
    if dot(a, away) > b:
        a, b = tuple(-c for c in a), -b
    return tuple(a), b


def _clear(v: Sequence[Fraction]) -> list[int]:
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in v]


def _initial_simplex(points: Sequence[Point]) -> list[int]:
    D = len(points[0])
    chosen = [0]
    basis: list[list[int]] = []
    for i in range(1, len(points)):
        diff = [p - q for p, q in zip(points[i], points[0])]
        if rank(basis + [diff]) > len(basis):
            basis.append(diff)
            chosen.append(i)
            if len(basis) == D:
                break
    return chosen


def facets(Q: LatticePolytope) -> HRep:
    """Irredundant facet list of a full-dimensional lattice polytope."""
    pts = Q.points
    D = Q.ambient_dim
    if Q.dim != D:
        raise NotFullDim(f"affine dimension {Q.dim} < ambient dimension {D}")
    if D == 0:
        return HRep(0, ())
    simplex = _initial_simplex(pts)
    order = simplex + [i for i in range(len(pts)) if i not in set(simplex)]

    # each facet: [a, b, incidence bitmask over indices of pts]
    fs: list[list] = []
    for j in simplex:
        others = [pts[i] for i in simplex if i != j]
        a, b = _hyperplane_through(others, pts[j])
        inc = 0
        for i in simplex:
            if i != j:
                inc |= 1 << i
        fs.append([a, b, inc])

    for k in order[D + 1:]:
        p = pts[k]
        plus, minus = [], []
        for idx, f in enumerate(fs):
            s = dot(f[0], p) - f[1]
            if s > 0:
                plus.append((idx, s))
            elif s < 0:
                minus.append((idx, -s))
            else:
                f[2] |= 1 << k
        if not plus:
            continue
        bit = 1 << k
        incs = [f[2] for f in fs]
        new = []
        for ip, sp in plus:
            inc_p = incs[ip]
            for im, sm in minus:
                z = inc_p & incs[im]
                if z.bit_count() < D - 1:
                    continue
                # adjacent iff no third facet contains the common incidence set
                if any(inc & z == z and t != ip and t != im for t, inc in enumerate(incs)):
                    continue
                fp, fm = fs[ip], fs[im]
                a = tuple(sm * x + sp * y for x, y in zip(fp[0], fm[0]))
                b = sm * fp[1] + sp * fm[1]
                v = primitive_int(a + (b,))
                new.append([v[:D], v[D], z | bit])
        fs = [f for f in fs if dot(f[0], p) <= f[1]] + new

    out = sorted({(tuple(f[0]), f[1]) for f in fs})
    return HRep(D, tuple(Facet(a, b) for a, b in out))


# ----------------------------------------------------------------- reflexivity


@dataclass(frozen=True)
class ReflexivityReport:
    verdict: bool
    witness: Facet | None = None
    contact: tuple[Point, ...] = ()
    bad_facets: int = 0

    def to_json(self) -> dict:
        out = {"reflexive": self.verdict}
        if self.witness is not None:
            out["witness"] = {
                "facet": self.witness.to_json(),
                "dual_vertex": [str(c) for c in self.witness.dual_vertex()],
                "contact": [list(p) for p in self.contact],
            }
            out["non_integral_facets"] = self.bad_facets
        return out


def _require_interior(Q: LatticePolytope) -> HRep:
    H = Q.hrep
    for f in H:
        if f.b <= 0:
            raise OriginNotInterior(f"origin is not interior: facet {f.a} . x <= {f.b}")
    return H


def is_reflexive(Q: LatticePolytope) -> ReflexivityReport:
    """Reflexive iff every primitive facet inequality has right-hand side 1."""
    H = _require_interior(Q)
    bad = [f for f in H if f.b != 1]
    if not bad:
        return ReflexivityReport(True)
    w = bad[0]
    contact = tuple(p for p in Q.points if w.is_tight(p))
    return ReflexivityReport(False, w, contact, len(bad))


def dual_polytope(Q: LatticePolytope) -> list[tuple[Fraction, ...]]:
    """Vertices a/b of the polar dual, one per facet."""
    return [f.dual_vertex() for f in _require_interior(Q)]


def facet_contact(Q: LatticePolytope, f: Facet) -> list[Point]:
    return [p for p in Q.points if f.is_tight(p)]


def facets_containing(Q: LatticePolytope, pts: Iterable[Sequence[int]]) -> list[Facet]:
    pts = [tuple(p) for p in pts]
    return [f for f in Q.hrep if all(f.is_tight(p) for p in pts)]
