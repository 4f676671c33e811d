"""Posets, graphs and simplicial complexes on the ground set [d] = {1, ..., d}.

Subsets are ``frozenset`` of 1-based labels. Every enumeration is returned
in the canonical order of :func:`subset_key` (by cardinality, then by the
sorted element tuple), so downstream variable orders are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Subset = frozenset

DEFAULT_PERFECTION_LIMIT = 14
DEFAULT_COMPLEX_LIMIT = 8


class FlagViolation(ValueError):
    """A simplicial complex has a minimal nonface with three or more elements."""

    def __init__(self, nonface):
        super().__init__(f"complex is not flag: minimal nonface {sorted(nonface)}")
        self.nonface = frozenset(nonface)


class SizeLimit(ValueError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what: str, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def subset_key(s: Iterable[int]) -> tuple:
    t = tuple(sorted(s))
    return (len(t), t)


def _check_subset(d: int, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    bad = [i for i in s if not (isinstance(i, int) and 1 <= i <= d)]
    if bad:
        raise ValueError(f"elements {bad} lie outside [1, {d}]")
    return s


def _to_mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


def _from_mask(m: int) -> frozenset:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def _all_masks_sorted(d: int) -> list[int]:
    return sorted(range(1 << d), key=lambda m: subset_key(_from_mask(m)))


def indicator(s: Iterable[int], d: int) -> tuple[int, ...]:
    """The 0/1 vector sum of e_j over j in s."""
    s = set(s)
    return tuple(1 if j in s else 0 for j in range(1, d + 1))


# --------------------------------------------------------------------- posets


@dataclass(frozen=True)
class Poset:
    """A partial order on [d], stored as its closed relation.

    Construct with :meth:`from_covers`; ``below[i - 1]`` is the bitmask of
    all j with j <= i (i itself included).
    """

    d: int
    below: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("a poset needs d >= 1")
        if len(self.below) != self.d:
            raise ValueError("relation size does not match d")
        for i in range(1, self.d + 1):
            if not self.leq(i, i):
                raise ValueError(f"relation is not reflexive at {i}")
            for j in range(1, self.d + 1):
                if i != j and self.leq(i, j) and self.leq(j, i):
                    raise ValueError(f"relation has a cycle through {i} and {j}")
                if self.leq(i, j) and (self.below[i - 1] & ~self.below[j - 1]):
                    raise ValueError("relation is not transitive")

    @classmethod
    def from_covers(cls, d: int, covers: Iterable[Sequence[int]] = ()) -> "Poset":
        """Reflexive-transitive closure of the relations ``a < b`` in ``covers``."""
        below = [1 << (i - 1) for i in range(1, d + 1)]
        for a, b in covers:
            _check_subset(d, (a, b))
            if a == b:
                raise ValueError(f"cover ({a}, {b}) is a loop")
            below[b - 1] |= 1 << (a - 1)
        changed = True
        while changed:
            changed = False
            for i in range(d):
                m = below[i]
                acc = m
                for j in range(d):
                    if m >> j & 1:
                        acc |= below[j]
                if acc != m:
                    below[i] = acc
                    changed = True
        for i in range(d):
            for j in range(d):
                if i != j and below[i] >> j & 1 and below[j] >> i & 1:
                    raise ValueError(f"covers contain a cycle through {i + 1} and {j + 1}")
        return cls(d, tuple(below))

    @classmethod
    def chain(cls, d: int) -> "Poset":
        return cls.from_covers(d, [(i, i + 1) for i in range(1, d)])

    @classmethod
    def antichain(cls, d: int) -> "Poset":
        return cls.from_covers(d, [])

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j - 1] >> (i - 1) & 1)

    def less(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def covers(self) -> list[tuple[int, int]]:
        """The cover relations a < b with nothing strictly between."""
        out = []
        for a in range(1, self.d + 1):
            for b in range(1, self.d + 1):
                if self.less(a, b) and not any(
                    self.less(a, c) and self.less(c, b) for c in range(1, self.d + 1)
                ):
                    out.append((a, b))
        return out

    def to_json(self) -> dict:
        return {"d": self.d, "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return cls.from_covers(int(data["d"]), [tuple(c) for c in data.get("covers", [])])

    def is_ideal_mask(self, m: int) -> bool:
        i = 0
        mm = m
        while mm:
            if mm & 1 and self.below[i] & ~m:
                return False
            mm >>= 1
            i += 1
        return True

    def is_antichain_mask(self, m: int) -> bool:
        i = 0
        mm = m
        while mm:
            if mm & 1 and (self.below[i] & m) != (1 << i):
                return False
            mm >>= 1
            i += 1
        return True


def ideals(P: Poset) -> list[frozenset]:
    """All down-closed subsets of P, in canonical order."""
    return [_from_mask(m) for m in _all_masks_sorted(P.d) if P.is_ideal_mask(m)]


def antichains(P: Poset) -> list[frozenset]:
    """All subsets of pairwise incomparable elements, in canonical order."""
    return [_from_mask(m) for m in _all_masks_sorted(P.d) if P.is_antichain_mask(m)]


def is_ideal(P: Poset, s: Iterable[int]) -> bool:
    return P.is_ideal_mask(_to_mask(_check_subset(P.d, s)))


def is_antichain(P: Poset, s: Iterable[int]) -> bool:
    return P.is_antichain_mask(_to_mask(_check_subset(P.d, s)))


def max_elements(P: Poset, ideal: Iterable[int]) -> frozenset:
    """Maximal elements of a poset ideal."""
    ideal = _check_subset(P.d, ideal)
    if not is_ideal(P, ideal):
        raise ValueError(f"{sorted(ideal)} is not an ideal of the poset")
    return frozenset(i for i in ideal if not any(P.less(i, j) for j in ideal))


def ideal_from_antichain(P: Poset, antichain: Iterable[int]) -> frozenset:
    """Down-closure of an antichain; inverse of :func:`max_elements`."""
    antichain = _check_subset(P.d, antichain)
    if not is_antichain(P, antichain):
        raise ValueError(f"{sorted(antichain)} is not an antichain of the poset")
    m = 0
    for i in antichain:
        m |= P.below[i - 1]
    return _from_mask(m)


# --------------------------------------------------------------------- graphs


@dataclass(frozen=True)
class SimpleGraph:
    d: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("a graph needs d >= 1")
        norm = set()
        for e in self.edges:
            e = frozenset(e)
            if len(e) != 2:
                raise ValueError(f"edge {sorted(e)} is a loop or malformed")
            _check_subset(self.d, e)
            norm.add(e)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, d: int, edges: Iterable[Sequence[int]] = ()) -> "SimpleGraph":
        return cls(d, frozenset(frozenset(e) for e in edges))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, combinations(range(1, n + 1), 2))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n)

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(1, n)])

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbors(self, i: int) -> set[int]:
        return {j for e in self.edges if i in e for j in e if j != i}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_json(self) -> dict:
        return {"d": self.d, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "SimpleGraph":
        return cls.from_edges(int(data["d"]), [tuple(e) for e in data.get("edges", [])])


def complement(G: SimpleGraph) -> SimpleGraph:
    all_pairs = {frozenset(p) for p in combinations(range(1, G.d + 1), 2)}
    return SimpleGraph(G.d, frozenset(all_pairs - G.edges))


def comparability_graph(P: Poset) -> SimpleGraph:
    return SimpleGraph.from_edges(
        P.d, [(i, j) for i, j in combinations(range(1, P.d + 1), 2) if P.comparable(i, j)]
    )


# ---------------------------------------------------------- simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """A down-closed family of subsets of [d] containing the empty set and all singletons."""

    d: int
    faces: frozenset

    def __post_init__(self):
        faces = frozenset(_check_subset(self.d, f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        for f in faces:
            for i in f:
                if f - {i} not in faces:
                    raise ValueError(f"family is not down-closed at {sorted(f)}")
        missing = [i for i in range(1, self.d + 1) if frozenset((i,)) not in faces]
        if frozenset() not in faces or missing:
            raise ValueError(f"complex must contain the empty set and every singleton; missing {missing}")

    @classmethod
    def from_facets(cls, d: int, facets: Iterable[Iterable[int]], *,
                    limit: int | None = None) -> "SimplicialComplex":
        """Down-closure of ``facets``; singletons of [d] must be covered."""
        faces = {frozenset()}
        for f in facets:
            f = _check_subset(d, f)
            if limit is not None and len(f) > limit:
                raise SizeLimit("facet size", len(f), limit)
            for k in range(len(f) + 1):
                faces.update(frozenset(c) for c in combinations(sorted(f), k))
        return cls(d, frozenset(faces))

    @classmethod
    def boundary_of_simplex(cls, d: int) -> "SimplicialComplex":
        """All proper subsets of [d]."""
        return cls.from_facets(d, [set(range(1, d + 1)) - {i} for i in range(1, d + 1)])

    def sorted_faces(self) -> list[frozenset]:
        return sorted(self.faces, key=subset_key)

    def facets(self) -> list[frozenset]:
        return [f for f in self.sorted_faces() if not any(f < g for g in self.faces)]

    def to_json(self) -> dict:
        return {"d": self.d, "facets": [sorted(f) for f in self.facets()]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls.from_facets(int(data["d"]), data.get("facets", []))


def stable_sets(G: SimpleGraph, limit: int = DEFAULT_COMPLEX_LIMIT) -> SimplicialComplex:
    """The complex of edge-free vertex subsets of G."""
    if G.d > limit:
        raise SizeLimit("stable set enumeration (d)", G.d, limit)
    adj = [0] * (G.d + 1)
    for e in G.edges:
        i, j = tuple(e)
        adj[i] |= 1 << (j - 1)
        adj[j] |= 1 << (i - 1)
    faces = []
    for m in range(1 << G.d):
        s = _from_mask(m)
        if all(not (adj[i] & m) for i in s):
            faces.append(s)
    return SimplicialComplex(G.d, frozenset(faces))


def minimal_nonfaces(delta: SimplicialComplex, limit: int = DEFAULT_COMPLEX_LIMIT) -> list[frozenset]:
    if delta.d > limit:
        raise SizeLimit("complex enumeration (d)", delta.d, limit)
    out = []
    for m in _all_masks_sorted(delta.d):
        s = _from_mask(m)
        if s in delta.faces:
            continue
        if all(s - {i} in delta.faces for i in s):
            out.append(s)
    return out


def is_flag(delta: SimplicialComplex) -> tuple[bool, frozenset | None]:
    """Flagness test; on failure also returns a minimal nonface of size >= 3."""
    for s in minimal_nonfaces(delta):
        if len(s) >= 3:
            return False, s
    return True, None


def graph_from_flag_complex(delta: SimplicialComplex) -> SimpleGraph:
    ok, witness = is_flag(delta)
    if not ok:
        raise FlagViolation(witness)
    return SimpleGraph(delta.d, frozenset(minimal_nonfaces(delta)))


# ---------------------------------------------------------------- perfection


@dataclass(frozen=True)
class Perfection:
    """Result of :func:`perfection_witness`.

    ``kind`` is ``"perfect"``, ``"odd_hole"`` or ``"odd_antihole"``; for the
    latter two ``cycle`` lists the vertices in cyclic order, as an induced
    cycle of G (hole) or of the complement of G (antihole).
    """

    kind: str
    cycle: tuple[int, ...] = ()

    @property
    def perfect(self) -> bool:
        return self.kind == "perfect"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.cycle:
            out["cycle"] = list(self.cycle)
        return out


PERFECT = Perfection("perfect")


def induced_cycle_order(G: SimpleGraph, vertices: Sequence[int]) -> tuple[int, ...] | None:
    """Cyclic vertex order if ``vertices`` induce a single cycle in G, else None."""
    vs = sorted(vertices)
    vset = set(vs)
    nbrs = {v: sorted(u for u in vs if u != v and G.adjacent(u, v)) for v in vs}
    if any(len(n) != 2 for n in nbrs.values()):
        return None
    order = [vs[0]]
    prev, cur = None, vs[0]
    while True:
        nxt = [u for u in nbrs[cur] if u != prev]
        # first step goes to the smaller neighbour
        step = nxt[0]
        if step == vs[0]:
            break
        order.append(step)
        prev, cur = cur, step
        if len(order) > len(vs):
            return None
    if len(order) != len(vset):
        return None
    return tuple(order)


def find_odd_hole(G: SimpleGraph) -> tuple[int, ...] | None:
    for k in range(5, G.d + 1, 2):
        for vs in combinations(range(1, G.d + 1), k):
            cyc = induced_cycle_order(G, vs)
            if cyc is not None:
                return cyc
    return None


def perfection_witness(G: SimpleGraph, limit: int = DEFAULT_PERFECTION_LIMIT) -> Perfection:
    """Exhaustive odd hole / odd antihole search (strong perfect graph theorem)."""
    if G.d > limit:
        raise SizeLimit("perfection check (d)", G.d, limit)
    hole = find_odd_hole(G)
    if hole is not None:
        return Perfection("odd_hole", hole)
    antihole = find_odd_hole(complement(G))
    if antihole is not None:
        return Perfection("odd_antihole", antihole)
    return PERFECT


def is_perfect(G: SimpleGraph, limit: int = DEFAULT_PERFECTION_LIMIT) -> bool:
    return perfection_witness(G, limit).perfect
