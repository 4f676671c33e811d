"""Toric variable systems, reverse-lexicographic orders and initial ideals
truncated by degree.

The initial ideal of a toric ideal is computed fiber by fiber: within one
degree, monomials with the same lattice image form a fiber, the smallest
monomial of each fiber is standard and every other one lies in the initial
ideal. Working upward from degree 1 and only extending standard monomials
yields the minimal generators exactly up to the chosen degree bound.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .combinatorics import (
    Poset,
    SimpleGraph,
    SizeLimit,
    ideals,
    indicator,
    is_perfect,
    max_elements,
    stable_sets,
    subset_key,
)
from .ehrhart import count_lattice_points
from .polytope import chain_polytope, gamma, omega, order_polytope, stable_set_polytope

VARIANTS = ("gamma", "omega", "chain-gamma", "chain-omega")
DEFAULT_DEGREE_BOUND = 3
DEFAULT_MONOMIAL_BUDGET = 1_000_000


@dataclass(frozen=True)
class Variable:
    """One polynomial-ring variable with its lattice image.

    ``index`` is the subset naming the variable (an ideal, an antichain
    max(I), or a stable set); ``key`` is the subset whose containment
    order positions it (the ideal I for x variables).
    """

    kind: str
    index: frozenset = frozenset()
    image: tuple[int, ...] = ()
    key: frozenset = frozenset()

    @property
    def name(self) -> str:
        if self.kind == "z":
            return "z"
        return f"{self.kind}{{{','.join(map(str, sorted(self.index)))}}}"

    def __repr__(self):
        return self.name


# a monomial is a tuple of variables, sorted by canonical name, with repeats
Monomial = tuple


def monomial(*vs: Variable) -> Monomial:
    return tuple(sorted(vs, key=_var_sort))


def _var_sort(v: Variable):
    return ("zyx".index(v.kind), subset_key(v.key), subset_key(v.index))


def is_squarefree(m: Monomial) -> bool:
    return len(set(m)) == len(m)


def monomial_name(m: Monomial) -> str:
    c = Counter(m)
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in sorted(c.items(), key=lambda t: _var_sort(t[0])))


def monomial_to_json(m: Monomial) -> dict:
    out = {"x": [], "y": [], "z": 0}
    for v in m:
        if v.kind == "z":
            out["z"] += 1
        else:
            out[v.kind].append(sorted(v.index))
    return out


def divides(a: Monomial, b: Monomial) -> bool:
    ca, cb = Counter(a), Counter(b)
    return all(cb[v] >= e for v, e in ca.items())


@dataclass(frozen=True)
class MonomialSet:
    """Minimal generators of a monomial ideal."""

    generators: frozenset

    @classmethod
    def minimal(cls, gens: Iterable[Monomial]) -> "MonomialSet":
        gs = sorted(set(gens), key=len)
        kept: list[Monomial] = []
        for g in gs:
            if not any(divides(h, g) for h in kept):
                kept.append(g)
        return cls(frozenset(kept))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(sorted(self.generators, key=lambda m: (len(m), monomial_name(m))))

    def __contains__(self, m):
        return m in self.generators

    def up_to(self, degree: int) -> "MonomialSet":
        return MonomialSet(frozenset(g for g in self.generators if len(g) <= degree))

    def max_degree(self) -> int:
        return max((len(g) for g in self.generators), default=0)

    def contains_monomial(self, m: Monomial) -> bool:
        """Ideal membership: some generator divides ``m``."""
        return any(divides(g, m) for g in self.generators)

    def to_json(self) -> list:
        return [monomial_to_json(m) for m in self]


# ----------------------------------------------------------- variable systems


@dataclass(frozen=True)
class VariableSet:
    variant: str
    d: int
    variables: tuple[Variable, ...]

    def __len__(self):
        return len(self.variables)

    def restrict(self, kinds: str) -> "VariableSet":
        return VariableSet(self.variant, self.d, tuple(v for v in self.variables if v.kind in kinds))

    def find(self, kind: str, index: Iterable[int] = ()) -> Variable:
        index = frozenset(index)
        for v in self.variables:
            if v.kind == kind and v.index == index:
                return v
        raise KeyError(f"no variable {kind}{sorted(index)}")


@dataclass(frozen=True)
class RevLexOrder:
    """Graded reverse-lexicographic order given by its variables, smallest first."""

    ascending: tuple[Variable, ...]
    rank: dict = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.rank.clear()
        self.rank.update({v: i for i, v in enumerate(self.ascending)})

    def restrict(self, vs: VariableSet) -> "RevLexOrder":
        keep = set(vs.variables)
        return RevLexOrder(tuple(v for v in self.ascending if v in keep))

    def less(self, u: Monomial, v: Monomial) -> bool:
        return self.sort_key(u) < self.sort_key(v)

    def sort_key(self, m: Monomial) -> tuple:
        e = [0] * len(self.ascending)
        for var in m:
            e[self.rank[var]] += 1
        return (len(m),) + tuple(-c for c in e)


def _linear_extension(items: list[Variable], rng: random.Random | None) -> list[Variable]:
    """Containment-compatible total order on ``items`` (by their ``key``)."""
    canonical = sorted(items, key=lambda v: subset_key(v.key))
    if rng is None:
        return canonical
    remaining = list(canonical)
    out = []
    while remaining:
        minimal = [v for v in remaining if not any(w.key < v.key for w in remaining)]
        pick = rng.choice(minimal)
        out.append(pick)
        remaining.remove(pick)
    return out


def build_order(P: Poset, G: SimpleGraph, variant: str = "gamma",
                rng: random.Random | None = None) -> tuple[VariableSet, RevLexOrder]:
    """Variables of the toric ring of Gamma/Omega and the order z < y_S < x_I.

    Containment-incomparable ideals (stable sets) are tied-broken by
    (cardinality, sorted tuple), or by a random linear extension when
    ``rng`` is given.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if P.d != G.d:
        raise ValueError(f"poset on [{P.d}] but graph on [{G.d}]")
    d = P.d
    is_omega = variant.endswith("omega")
    is_chain = variant.startswith("chain")
    xs = []
    for I in ideals(P):
        if not I and not is_omega:
            continue
        idx = max_elements(P, I) if is_chain else I
        img = indicator(idx, d) + ((1,) if is_omega else ())
        xs.append(Variable("x", idx, img, I))
    ys = []
    for S in stable_sets(G).sorted_faces():
        if not S and not is_omega:
            continue
        img = tuple(-c for c in indicator(S, d)) + ((-1,) if is_omega else ())
        ys.append(Variable("y", S, img, S))
    z = Variable("z", frozenset(), (0,) * (d + (1 if is_omega else 0)))
    asc = [z] + _linear_extension(ys, rng) + _linear_extension(xs, rng)
    vs = VariableSet(variant, d, tuple([z] + ys + xs))
    return vs, RevLexOrder(tuple(asc))


# ------------------------------------------------------- truncated initial ideal


@dataclass(frozen=True)
class TruncatedInitialIdeal:
    generators: MonomialSet
    standard_counts: tuple[int, ...]
    degree_bound: int


def truncated_initial_ideal(vs: VariableSet, order: RevLexOrder, D: int = DEFAULT_DEGREE_BOUND,
                            budget: int = DEFAULT_MONOMIAL_BUDGET) -> TruncatedInitialIdeal:
    """Minimal generators of in_<(I) of degree <= D, by the fiber method."""
    if D < 1:
        raise ValueError("degree bound must be >= 1")
    order = order.restrict(vs)
    asc = order.ascending
    N = len(asc)
    imgs = [v.image for v in asc]

    def key(m: tuple[int, ...]) -> tuple:
        e = [0] * N
        for r in m:
            e[r] += 1
        return tuple(-c for c in e)

    gens: list[tuple[int, ...]] = []
    counts = [1]
    standard: set[tuple[int, ...]] = {()}
    seen = 0
    for n in range(1, D + 1):
        cands = []
        for s in standard:
            last = s[-1] if s else 0
            for r in range(last, N):
                m = s + (r,)
                # every degree n-1 divisor must be standard, else m is a non-minimal ideal member
                if n > 1 and any((m[:i] + m[i + 1:]) not in standard for i in range(n) if i == 0 or m[i] != m[i - 1]):
                    continue
                cands.append(m)
        seen += len(cands)
        if seen > budget:
            raise SizeLimit("fiber method monomials", seen, budget)
        fibers: dict[tuple, list] = defaultdict(list)
        for m in cands:
            img = tuple(sum(col) for col in zip(*(imgs[r] for r in m)))
            fibers[img].append(m)
        new_standard = set()
        for img in sorted(fibers):
            members = sorted(fibers[img], key=key)
            new_standard.add(members[0])
            gens.extend(members[1:])
        standard = new_standard
        counts.append(len(standard))
    mons = [tuple(sorted((asc[r] for r in g), key=_var_sort)) for g in gens]
    return TruncatedInitialIdeal(MonomialSet(frozenset(mons)), tuple(counts), D)


# ------------------------------------------------------- claimed generator sets


def _subsystem_generators(vs: VariableSet, order: RevLexOrder, kinds: str, D: int,
                          budget: int) -> MonomialSet:
    sub = vs.restrict(kinds)
    return truncated_initial_ideal(sub, order.restrict(sub), D, budget).generators


def ideal_generators_M(P: Poset, G: SimpleGraph, variant: str = "gamma", D: int = DEFAULT_DEGREE_BOUND,
                       rng: random.Random | None = None,
                       budget: int = DEFAULT_MONOMIAL_BUDGET) -> MonomialSet:
    """The generator set claimed for in_<(I) of Gamma/Omega, through degree D.

    Order part: products of x variables over containment-incomparable
    ideals. Stable set part: computed by the fiber method on the y (and z)
    variables. Mixed part: x_I y_S with max(I) meeting S; Omega variants
    add x_{emptyset} y_{emptyset}.
    """
    vs, order = build_order(P, G, variant, rng)
    is_omega = variant.endswith("omega")
    xs = [v for v in vs.variables if v.kind == "x"]
    ys = [v for v in vs.variables if v.kind == "y"]
    gens: list[Monomial] = []
    for i, a in enumerate(xs):
        for b in xs[i + 1:]:
            if not (a.key <= b.key or b.key <= a.key):
                gens.append(monomial(a, b))
    if D >= 2:
        gens.extend(_subsystem_generators(vs, order, "y" if is_omega else "yz", D, budget).generators)
    for a in xs:
        top = max_elements(P, a.key)
        for b in ys:
            if top & b.index:
                gens.append(monomial(a, b))
    if is_omega:
        gens.append(monomial(vs.find("x", frozenset()), vs.find("y", frozenset())))
    return MonomialSet.minimal(g for g in gens if len(g) <= D)


def standard_monomial_count(M: MonomialSet, vs: VariableSet, n: int,
                            budget: int = DEFAULT_MONOMIAL_BUDGET) -> int:
    """Number of degree-n monomials in ``vs`` divisible by no generator of M."""
    if n == 0:
        return 1
    vars_ = list(vs.variables)
    pos = {v: i for i, v in enumerate(vars_)}
    by_last: dict[int, list[Counter]] = defaultdict(list)
    for g in M.generators:
        c = Counter(pos[v] for v in g)
        by_last[max(c)].append(c)
    N = len(vars_)
    visited = 0
    exps = [0] * N

    def rec(start: int, left: int) -> int:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise SizeLimit("standard monomial enumeration", visited, budget)
        if left == 0:
            return 1
        total = 0
        for r in range(start, N):
            exps[r] += 1
            # generators whose largest variable is r are the only new possible divisors
            if not any(all(exps[i] >= e for i, e in g.items()) for g in by_last.get(r, ())):
                total += rec(r, left - 1)
            exps[r] -= 1
        return total

    return rec(0, n)


# ------------------------------------------------------------------ verification


def _polytope_for(P: Poset, G: SimpleGraph, variant: str):
    first = chain_polytope(P) if variant.startswith("chain") else order_polytope(P)
    build = omega if variant.endswith("omega") else gamma
    return build(first, stable_set_polytope(G))


def _require_perfect(G: SimpleGraph):
    if not is_perfect(G):
        raise ValueError("Groebner claims are only made for perfect graphs")


@dataclass
class GroebnerReport:
    variant: str
    degree_bound: int
    passed: bool
    generators: int = 0
    max_degree: int = 0
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    non_squarefree: list = field(default_factory=list)

    @property
    def offending(self):
        for group in (self.missing, self.extra, self.non_squarefree):
            if group:
                return group[0]
        return None

    def to_json(self) -> dict:
        return {
            "check": "groebner", "variant": self.variant, "D": self.degree_bound,
            "passed": self.passed, "generators": self.generators, "max_degree": self.max_degree,
            "missing": [monomial_name(m) for m in self.missing],
            "extra": [monomial_name(m) for m in self.extra],
            "non_squarefree": [monomial_name(m) for m in self.non_squarefree],
        }


def verify_groebner_claim(P: Poset, G: SimpleGraph, variant: str = "gamma", D: int = DEFAULT_DEGREE_BOUND,
                          rng_seed: int | None = None,
                          budget: int = DEFAULT_MONOMIAL_BUDGET) -> GroebnerReport:
    """Fiber-computed in_<(I) through degree D equals the claimed set M and is squarefree."""
    _require_perfect(G)
    rng = random.Random(rng_seed) if rng_seed is not None else None
    vs, order = build_order(P, G, variant, rng)
    rng = random.Random(rng_seed) if rng_seed is not None else None
    claimed = ideal_generators_M(P, G, variant, D, rng, budget)
    found = truncated_initial_ideal(vs, order, D, budget).generators
    missing = sorted(claimed.generators - found.generators, key=monomial_name)
    extra = sorted(found.generators - claimed.generators, key=monomial_name)
    nsf = sorted((g for g in found.generators if not is_squarefree(g)), key=monomial_name)
    return GroebnerReport(variant, D, not (missing or extra or nsf), len(found),
                          found.max_degree(), missing, extra, nsf)


@dataclass
class HilbertReport:
    variant: str
    degree_bound: int
    passed: bool
    standard_counts: list
    lattice_counts: list

    @property
    def first_mismatch(self) -> int | None:
        for n, (a, b) in enumerate(zip(self.standard_counts, self.lattice_counts)):
            if a != b:
                return n
        return None

    def to_json(self) -> dict:
        return {"check": "hilbert", "variant": self.variant, "D": self.degree_bound, "passed": self.passed,
                "standard_counts": self.standard_counts, "lattice_counts": self.lattice_counts,
                "first_mismatch": self.first_mismatch}


def verify_hilbert_match(P: Poset, G: SimpleGraph, variant: str = "gamma", D: int = DEFAULT_DEGREE_BOUND,
                         rng_seed: int | None = None,
                         budget: int = DEFAULT_MONOMIAL_BUDGET) -> HilbertReport:
    """Standard monomials of (M) in degree n versus lattice points of n*Poly, n = 0..D."""
    _require_perfect(G)
    rng = random.Random(rng_seed) if rng_seed is not None else None
    vs, _ = build_order(P, G, variant, rng)
    rng = random.Random(rng_seed) if rng_seed is not None else None
    M = ideal_generators_M(P, G, variant, D, rng, budget)
    poly = _polytope_for(P, G, variant)
    std = [standard_monomial_count(M, vs, n, budget) for n in range(D + 1)]
    lat = [count_lattice_points(poly, n) for n in range(D + 1)]
    return HilbertReport(variant, D, std == lat, std, lat)


@dataclass
class PhiReport:
    degree_bound: int
    passed: bool
    unmatched: list = field(default_factory=list)
    chain_groebner: GroebnerReport | None = None
    counts_order: list = field(default_factory=list)
    counts_chain: list = field(default_factory=list)
    lattice_counts_chain: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": "phi", "D": self.degree_bound, "passed": self.passed,
                "unmatched": [monomial_name(m) for m in self.unmatched],
                "chain_groebner": self.chain_groebner.to_json() if self.chain_groebner else None,
                "counts_order": self.counts_order, "counts_chain": self.counts_chain,
                "lattice_counts_chain": self.lattice_counts_chain}


def phi_map(P: Poset, vs_order: VariableSet, vs_chain: VariableSet) -> dict[Variable, Variable]:
    """x_I -> x_{max(I)}, identity on y variables and z."""
    lookup = {(v.kind, v.key): v for v in vs_chain.variables}
    return {v: lookup[(v.kind, v.key)] for v in vs_order.variables}


def verify_phi_isomorphism(P: Poset, G: SimpleGraph, D: int = DEFAULT_DEGREE_BOUND,
                           budget: int = DEFAULT_MONOMIAL_BUDGET) -> PhiReport:
    """The variable bijection x_I -> x_{max(I)} carries the order-side generator
    set onto the chain-side one, and Hilbert functions agree through degree D."""
    _require_perfect(G)
    vs_o, _ = build_order(P, G, "gamma")
    vs_c, _ = build_order(P, G, "chain-gamma")
    phi = phi_map(P, vs_o, vs_c)
    M_o = ideal_generators_M(P, G, "gamma", D, budget=budget)
    M_c = ideal_generators_M(P, G, "chain-gamma", D, budget=budget)
    image = {monomial(*(phi[v] for v in g)) for g in M_o.generators}
    unmatched = sorted(image ^ set(M_c.generators), key=monomial_name)
    bijective = len(image) == len(M_o) and not unmatched
    chain_gb = verify_groebner_claim(P, G, "chain-gamma", D, budget=budget)
    co = [standard_monomial_count(M_o, vs_o, n, budget) for n in range(D + 1)]
    cc = [standard_monomial_count(M_c, vs_c, n, budget) for n in range(D + 1)]
    poly = _polytope_for(P, G, "chain-gamma")
    lat = [count_lattice_points(poly, n) for n in range(D + 1)]
    ok = bijective and chain_gb.passed and co == cc == lat
    return PhiReport(D, ok, unmatched, chain_gb, co, cc, lat)
