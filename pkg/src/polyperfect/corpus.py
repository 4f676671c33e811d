"""Instances, seeded random generators and the verification corpus."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .combinatorics import (
    Poset,
    SimpleGraph,
    SimplicialComplex,
    comparability_graph,
    complement,
    is_perfect,
    stable_sets,
)


@dataclass(frozen=True)
class Instance:
    poset: Poset | None = None
    graph: SimpleGraph | None = None
    complex: SimplicialComplex | None = None
    label: str = ""
    seed: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        present = [s for s in (self.poset, self.graph, self.complex) if s is not None]
        if not present:
            raise ValueError("an instance needs at least one of poset, graph, complex")
        dims = {s.d for s in present}
        if len(dims) > 1:
            raise ValueError(f"inconsistent ground sets in instance: {sorted(dims)}")

    @property
    def d(self) -> int:
        return next(s.d for s in (self.poset, self.graph, self.complex) if s is not None)

    def to_json(self) -> dict:
        out: dict = {}
        if self.label:
            out["label"] = self.label
        if self.seed is not None:
            out["seed"] = self.seed
        if self.poset is not None:
            out["poset"] = self.poset.to_json()
        if self.graph is not None:
            out["graph"] = self.graph.to_json()
        if self.complex is not None:
            out["complex"] = self.complex.to_json()
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Instance":
        # bare structure files are accepted too
        if "poset" not in data and "graph" not in data and "complex" not in data:
            if "covers" in data:
                return cls(poset=Poset.from_json(data))
            if "edges" in data:
                return cls(graph=SimpleGraph.from_json(data))
            if "facets" in data:
                return cls(complex=SimplicialComplex.from_json(data))
            raise ValueError("unrecognised instance JSON")
        return cls(
            poset=Poset.from_json(data["poset"]) if "poset" in data else None,
            graph=SimpleGraph.from_json(data["graph"]) if "graph" in data else None,
            complex=SimplicialComplex.from_json(data["complex"]) if "complex" in data else None,
            label=data.get("label", ""),
            seed=data.get("seed"),
            meta=data.get("meta", {}),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def load_instance(path: str | Path) -> Instance:
    return Instance.from_json(json.loads(Path(path).read_text()))


def merge_instances(*parts: Instance) -> Instance:
    kw: dict = {}
    for p in parts:
        for name in ("poset", "graph", "complex"):
            if getattr(p, name) is not None:
                kw[name] = getattr(p, name)
        if p.label:
            kw["label"] = p.label
    return Instance(**kw)


# ------------------------------------------------------------------- random


def random_poset(d: int, rng: random.Random, density: float = 0.35) -> Poset:
    """Random DAG on a shuffled labelling, closed transitively."""
    perm = list(range(1, d + 1))
    rng.shuffle(perm)
    covers = [(perm[i], perm[j]) for i, j in combinations(range(d), 2) if rng.random() < density]
    return Poset.from_covers(d, covers)


def random_graph(d: int, rng: random.Random, density: float = 0.5) -> SimpleGraph:
    return SimpleGraph.from_edges(d, [e for e in combinations(range(1, d + 1), 2) if rng.random() < density])


def random_perfect_graph(d: int, rng: random.Random, density: float = 0.5, tries: int = 10_000) -> SimpleGraph:
    for _ in range(tries):
        G = random_graph(d, rng, density)
        if is_perfect(G):
            return G
    raise RuntimeError(f"no perfect graph found on {d} vertices in {tries} tries")


def random_flag_complex(d: int, rng: random.Random, density: float = 0.5) -> SimplicialComplex:
    return stable_sets(random_graph(d, rng, density))


def random_instance(kind: str, d: int, seed: int) -> Instance:
    rng = random.Random(seed)
    if kind == "poset":
        return Instance(poset=random_poset(d, rng), label=f"random-poset-{d}-{seed}", seed=seed)
    if kind == "perfect-graph":
        return Instance(graph=random_perfect_graph(d, rng), label=f"random-perfect-{d}-{seed}", seed=seed)
    if kind == "flag-complex":
        return Instance(complex=random_flag_complex(d, rng), label=f"random-flag-{d}-{seed}", seed=seed)
    raise ValueError(f"unknown kind {kind!r}")


# ------------------------------------------------------------------- corpora


def perfect_corpus(d: int, count: int, seed: int) -> list[Instance]:
    """``count`` random (poset, perfect graph) pairs on [d]; every other pair
    uses the poset's own comparability graph."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        P = random_poset(d, rng)
        G = comparability_graph(P) if k % 2 else random_perfect_graph(d, rng)
        kind = "comparability" if k % 2 else "random-perfect"
        out.append(Instance(poset=P, graph=G, label=f"d{d}-{kind}-{k}", seed=seed))
    return out


def adversarial_corpus(seed: int, posets_each: int = 1, max_dim: int = 7) -> list[Instance]:
    """C5, C7, complement(C7) and the triangle boundary, each with random posets."""
    rng = random.Random(seed ^ 0x5EED)
    base = [
        ("C5", SimpleGraph.cycle(5), None),
        ("C7", SimpleGraph.cycle(7), None),
        ("co-C7", complement(SimpleGraph.cycle(7)), None),
        ("triangle-boundary", None, SimplicialComplex.boundary_of_simplex(3)),
    ]
    out = []
    for name, G, delta in base:
        d = G.d if G is not None else delta.d
        if d > max_dim:
            continue
        for k in range(posets_each):
            out.append(Instance(poset=random_poset(d, rng), graph=G, complex=delta,
                                label=f"adversarial-{name}-{k}", seed=seed))
    return out
