"""Lattice points of dilates, Ehrhart delta-polynomials and the integer
decomposition property.

Counting scans the integer bounding box of ``nQ`` slab by slab and filters
by facet inequalities with numpy; everything stays in int64, which is
exact for the coordinate ranges the size budget admits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .combinatorics import Perfection, SizeLimit
from .polytope import LatticePolytope

log = logging.getLogger(__name__)

DEFAULT_BOX_BUDGET = 60_000_000
_SLAB = 200_000


class NotMember(ValueError):
    pass


@dataclass(frozen=True)
class DeltaPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def normalized_volume(self) -> int:
        return sum(self.coeffs)

    def trimmed(self) -> tuple[int, ...]:
        return self.coeffs[: self.degree + 1]

    def times_one_plus_lambda(self) -> "DeltaPolynomial":
        c = self.coeffs + (0,)
        return DeltaPolynomial(tuple(c[i] + (c[i - 1] if i else 0) for i in range(len(c))))

    def is_palindromic(self, d: int | None = None) -> bool:
        d = len(self.coeffs) - 1 if d is None else d
        c = list(self.coeffs) + [0] * max(0, d + 1 - len(self.coeffs))
        return all(c[i] == c[d - i] for i in range(d + 1))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def _box(Q: LatticePolytope, n: int) -> tuple[np.ndarray, np.ndarray]:
    pts = np.array(Q.points, dtype=np.int64)
    return n * pts.min(axis=0), n * pts.max(axis=0)


def box_volume(Q: LatticePolytope, n: int) -> int:
    lo, hi = _box(Q, n)
    v = 1
    for a, b in zip(lo.tolist(), hi.tolist()):
        v *= b - a + 1
    return v


def _scan(Q: LatticePolytope, n: int, budget: int, collect: bool):
    D = Q.ambient_dim
    vol = box_volume(Q, n)
    if vol > budget:
        raise SizeLimit(f"lattice box of {n}*{Q.label or 'Q'}", vol, budget)
    H = Q.hrep
    A = np.array([f.a for f in H], dtype=np.int64).reshape(len(H), D)
    rhs = n * np.array([f.b for f in H], dtype=np.int64)
    lo, hi = _box(Q, n)
    sizes = (hi - lo + 1).tolist()
    # split the box into a grid of leading coordinates times a dense tail block
    split = D
    tail = 1
    while split > 0 and tail * sizes[split - 1] <= _SLAB:
        split -= 1
        tail *= sizes[split]
    tail_grid = np.indices(sizes[split:], dtype=np.int64).reshape(D - split, -1).T + lo[split:]
    head_ranges = [range(int(lo[i]), int(hi[i]) + 1) for i in range(split)]
    total = 0
    found = []
    for head in np.ndindex(*[len(r) for r in head_ranges]) if split else [()]:
        hv = np.array([head_ranges[i][h] for i, h in enumerate(head)], dtype=np.int64)
        partial = A[:, :split] @ hv if split else np.zeros(len(H), dtype=np.int64)
        bound = rhs - partial
        X = tail_grid
        for row in range(len(H)):
            X = X[X @ A[row, split:] <= bound[row]]
            if not len(X):
                break
        if not len(X):
            continue
        total += len(X)
        if collect:
            full = np.concatenate([np.broadcast_to(hv, (len(X), split)), X], axis=1)
            found.append(full)
    if not collect:
        return total
    if not found:
        return []
    allpts = np.concatenate(found, axis=0)
    return sorted(map(tuple, allpts.tolist()))


def lattice_points(Q: LatticePolytope, n: int = 1, budget: int = DEFAULT_BOX_BUDGET) -> list[tuple[int, ...]]:
    """All integer points of ``nQ``, sorted lexicographically."""
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    if n == 0:
        return [(0,) * Q.ambient_dim]
    return _scan(Q, n, budget, collect=True)


def count_lattice_points(Q: LatticePolytope, n: int, budget: int = DEFAULT_BOX_BUDGET) -> int:
    if n == 0:
        return 1
    return _scan(Q, n, budget, collect=False)


def ehrhart_counts(Q: LatticePolytope, upto: int, budget: int = DEFAULT_BOX_BUDGET) -> list[int]:
    """``[L(0), L(1), ..., L(upto)]``."""
    return [count_lattice_points(Q, n, budget) for n in range(upto + 1)]


def delta_from_counts(counts: Sequence[int], d: int) -> DeltaPolynomial:
    """delta_i = sum_j (-1)^(i-j) C(d+1, i-j) L(j) for i = 0..d."""
    if len(counts) < d + 1:
        raise ValueError(f"need L(0..{d}), got {len(counts)} values")
    return DeltaPolynomial(tuple(
        sum((-1) ** (i - j) * comb(d + 1, i - j) * counts[j] for j in range(i + 1))
        for i in range(d + 1)
    ))


def delta_polynomial(Q: LatticePolytope, budget: int = DEFAULT_BOX_BUDGET) -> DeltaPolynomial:
    d = Q.ambient_dim
    if Q.dim != d:
        raise ValueError("delta polynomial needs a full-dimensional polytope")
    delta = delta_from_counts(ehrhart_counts(Q, d, budget), d)
    if delta.coeffs[0] != 1 or min(delta.coeffs) < 0:
        raise AssertionError(f"impossible delta vector {delta.coeffs}")
    return delta


# ---------------------------------------------------------------- decomposition


def decompose(Q: LatticePolytope, x: Sequence[int], n: int,
              points: Sequence[tuple[int, ...]] | None = None,
              budget: int = DEFAULT_BOX_BUDGET) -> list[tuple[int, ...]] | None:
    """Write ``x`` as a sum of ``n`` lattice points of Q, or prove that none exists.

    Depth-first over Q's lattice points (largest coordinate sum first),
    pruning remainders that leave ``(k)Q`` and memoizing failures.
    """
    x = tuple(int(c) for c in x)
    H = Q.hrep
    if n < 1:
        raise ValueError("n must be positive")
    if not H.contains(x, n):
        raise NotMember(f"{x} is not in {n}*Q")
    if points is None:
        points = lattice_points(Q, 1, budget)
    cands = sorted(points, key=lambda p: (-sum(p), p))
    index = {p: i for i, p in enumerate(cands)}

    @lru_cache(maxsize=None)
    def solve(rest: tuple[int, ...], k: int, start: int):
        if k == 1:
            j = index.get(rest)
            return (rest,) if j is not None and j >= start else None
        # non-increasing candidate index avoids permutations of one multiset
        for j in range(start, len(cands)):
            p = cands[j]
            r = tuple(a - b for a, b in zip(rest, p))
            if not H.contains(r, k - 1):
                continue
            sub = solve(r, k - 1, j)
            if sub is not None:
                return (p,) + sub
        return None

    out = solve(x, n, 0)
    return list(out) if out is not None else None


@dataclass(frozen=True)
class IdpReport:
    verdict: bool
    witness: tuple[int, tuple[int, ...]] | None = None
    checked_heights: tuple[int, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out = {"idp": self.verdict, "checked_heights": list(self.checked_heights)}
        if self.witness is not None:
            out["witness"] = {"n": self.witness[0], "point": list(self.witness[1])}
        return out


def idp_height_bound(Q: LatticePolytope) -> int:
    return max(2, Q.ambient_dim - 1)


def is_idp(Q: LatticePolytope, max_height: int | None = None,
           hints: Sequence[tuple[int, Sequence[int]]] = (),
           budget: int = DEFAULT_BOX_BUDGET) -> IdpReport:
    """Integer decomposition property, checked at heights 2..max(2, d-1).

    Heights n >= d - 1 follow from height-(d-1) data by the standard
    lattice-polytope argument, so the bound is exhaustive. ``hints`` are
    candidate ``(n, point)`` counterexamples tried before the full scan.
    """
    pts = lattice_points(Q, 1, budget)
    for n, x in hints:
        x = tuple(x)
        if Q.hrep.contains(x, n) and decompose(Q, x, n, pts) is None:
            return IdpReport(False, (n, x), (n,))
    top = idp_height_bound(Q) if max_height is None else max_height
    sums = set(pts)
    checked = []
    for n in range(2, top + 1):
        sums = {tuple(a + b for a, b in zip(s, p)) for s in sums for p in pts}
        checked.append(n)
        for x in lattice_points(Q, n, budget):
            if x not in sums:
                assert decompose(Q, x, n, pts) is None
                return IdpReport(False, (n, x), tuple(checked))
    return IdpReport(True, None, tuple(checked))


# ------------------------------------------------------- undecomposable points


def antihole_witness(ell: int, d: int, cycle: Sequence[int] | None = None) -> tuple[tuple[int, ...], int]:
    """Point ``-(sum_{v in C} e_v + ell * e_{d+1})`` and its height ``ell + 1``.

    ``C`` is the odd antihole on ``2*ell + 1`` vertices (``1..2*ell+1`` by
    default); the point lies in ``(ell+1) * Omega`` but is not a sum of
    ``ell + 1`` lattice points of Omega.
    """
    cycle = tuple(range(1, 2 * ell + 2)) if cycle is None else tuple(cycle)
    if ell < 2 or len(cycle) != 2 * ell + 1:
        raise ValueError("antihole needs ell >= 2 and 2*ell+1 vertices")
    if d < 2 * ell + 1 or max(cycle) > d:
        raise ValueError(f"antihole on {2 * ell + 1} vertices does not fit in d={d}")
    x = [0] * (d + 1)
    for v in cycle:
        x[v - 1] = -1
    x[d] = -ell
    return tuple(x), ell + 1


def hole_witness(cycle: Sequence[int], d: int) -> tuple[tuple[int, ...], int]:
    """Point ``-(sum_{v in C} e_v + 2 e_{d+1})`` at height 3, for an odd hole C."""
    if len(cycle) < 5 or len(cycle) % 2 == 0 or max(cycle) > d:
        raise ValueError("need an odd hole of length >= 5 inside [d]")
    x = [0] * (d + 1)
    for v in cycle:
        x[v - 1] = -1
    x[d] = -2
    return tuple(x), 3


def nonface_witness(nonface: Sequence[int], d: int) -> tuple[tuple[int, ...], int]:
    """Point ``-(sum_{v in L} e_v + e_{d+1})`` at height 2, for a minimal nonface L."""
    if len(nonface) < 3 or max(nonface) > d:
        raise ValueError("need a minimal nonface with at least 3 elements inside [d]")
    x = [0] * (d + 1)
    for v in nonface:
        x[v - 1] = -1
    x[d] = -1
    return tuple(x), 2


def omega_witness(perf: Perfection, d: int) -> tuple[tuple[int, ...], int] | None:
    """The undecomposable point matching a hole/antihole certificate."""
    if perf.perfect:
        return None
    if perf.kind == "odd_hole":
        return hole_witness(perf.cycle, d)
    return antihole_witness((len(perf.cycle) - 1) // 2, d, perf.cycle)
