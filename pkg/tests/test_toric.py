import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import posets
from oracles import brute_initial_generators, brute_standard_count
from polyperfect.combinatorics import Poset, SimpleGraph, comparability_graph, is_perfect
from polyperfect.ehrhart import count_lattice_points
from polyperfect.polytope import gamma, order_polytope, stable_set_polytope
from polyperfect.toric import (
    VARIANTS,
    MonomialSet,
    build_order,
    ideal_generators_M,
    is_squarefree,
    monomial,
    monomial_name,
    standard_monomial_count,
    truncated_initial_ideal,
    verify_groebner_claim,
    verify_hilbert_match,
    verify_phi_isomorphism,
)

CHAIN2 = Poset.chain(2)
K2 = SimpleGraph.complete(2)
V4 = Poset.from_covers(4, [(1, 3), (2, 3), (2, 4)])
GRAPHS4 = [SimpleGraph.path(4), SimpleGraph.cycle(4), SimpleGraph.complete(4), SimpleGraph.empty(4)]


def _names(M):
    return sorted(monomial_name(m) for m in M)


def _as_indices(gens, order):
    rank = {v: i for i, v in enumerate(order.ascending)}
    return {tuple(sorted(rank[v] for v in g)) for g in gens}


def test_build_order_examples():
    _, o = build_order(CHAIN2, K2, "gamma")
    assert [v.name for v in o.ascending] == ["z", "y{1}", "y{2}", "x{1}", "x{1,2}"]
    _, o = build_order(CHAIN2, K2, "omega")
    assert [v.name for v in o.ascending] == ["z", "y{}", "y{1}", "y{2}", "x{}", "x{1}", "x{1,2}"]
    _, o = build_order(CHAIN2, K2, "chain-gamma")
    assert [v.name for v in o.ascending][-2:] == ["x{1}", "x{2}"]
    with pytest.raises(ValueError):
        build_order(CHAIN2, SimpleGraph.complete(3))
    with pytest.raises(ValueError):
        build_order(CHAIN2, K2, "delta")


def test_generator_examples():
    assert _names(ideal_generators_M(CHAIN2, K2, "gamma")) == ["y{1}*x{1}", "y{2}*x{1,2}"]
    assert _names(ideal_generators_M(CHAIN2, K2, "omega")) == ["y{1}*x{1}", "y{2}*x{1,2}", "y{}*x{}"]
    M = ideal_generators_M(Poset.antichain(2), SimpleGraph.empty(2), "gamma")
    assert _names(M) == ["x{1}*x{2}", "y{1,2}*x{1,2}", "y{1,2}*x{1}", "y{1,2}*x{2}",
                         "y{1}*x{1,2}", "y{1}*x{1}", "y{1}*y{2}", "y{2}*x{1,2}", "y{2}*x{2}"]


def test_truncated_ideal_matches_brute_force():
    for P, G in [(CHAIN2, K2), (Poset.antichain(2), SimpleGraph.empty(2)), (V4, SimpleGraph.path(4))]:
        for variant in VARIANTS:
            vs, o = build_order(P, G, variant)
            ours = truncated_initial_ideal(vs, o, 3).generators
            brute = brute_initial_generators([v.image for v in o.ascending], 3)
            assert _as_indices(ours, o) == brute


@pytest.mark.parametrize("G", GRAPHS4, ids=["path", "cycle", "complete", "empty"])
@pytest.mark.parametrize("variant", VARIANTS)
def test_groebner_and_hilbert_d4(G, variant):
    g = verify_groebner_claim(V4, G, variant, 3)
    assert g.passed, g.to_json()
    assert g.max_degree == 2
    h = verify_hilbert_match(V4, G, variant, 3)
    assert h.passed and h.first_mismatch is None


def test_order_only_subsystem_is_incomparable_pairs():
    """On x variables alone the order-polytope generators are the products of
    containment-incomparable ideals, for every poset on at most 5 elements we try."""
    rng = random.Random(7)
    for d in range(1, 6):
        for _ in range(3):
            covers = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1) if rng.random() < 0.4]
            P = Poset.from_covers(d, covers)
            vs, o = build_order(P, SimpleGraph.empty(d), "omega")
            xs = vs.restrict("x")
            found = truncated_initial_ideal(xs, o.restrict(xs), 3).generators
            expect = {monomial(a, b) for i, a in enumerate(xs.variables) for b in xs.variables[i + 1:]
                      if not (a.key <= b.key or b.key <= a.key)}
            assert set(found) == expect


def test_standard_monomial_count_examples():
    vs, _ = build_order(Poset.chain(1), SimpleGraph.empty(1), "gamma")
    sub = vs.restrict("xy")
    x, y = sub.find("x", {1}), sub.find("y", {1})
    assert standard_monomial_count(MonomialSet(frozenset()), sub, 2) == 3
    assert standard_monomial_count(MonomialSet(frozenset({monomial(x, y)})), sub, 2) == 2
    vs, _ = build_order(Poset.antichain(2), SimpleGraph.empty(2), "gamma")
    M = ideal_generators_M(Poset.antichain(2), SimpleGraph.empty(2), "gamma")
    hexagon = gamma(order_polytope(Poset.antichain(2)), stable_set_polytope(SimpleGraph.empty(2)))
    assert standard_monomial_count(M, vs, 2) == count_lattice_points(hexagon, 2) == 19
    _, o = build_order(Poset.antichain(2), SimpleGraph.empty(2), "gamma")
    gens = _as_indices(M, o)
    for n in range(4):
        assert standard_monomial_count(M, vs, n) == brute_standard_count(gens, len(vs), n)


def test_hilbert_one_dimensional():
    h = verify_hilbert_match(Poset.chain(1), SimpleGraph.empty(1), "gamma", 3)
    assert h.standard_counts == [1, 3, 5, 7] and h.passed
    h = verify_hilbert_match(Poset.chain(1), SimpleGraph.empty(1), "omega", 3)
    assert h.standard_counts == [1, 5, 13, 25] and h.passed


def test_refuses_imperfect_graph():
    with pytest.raises(ValueError):
        verify_groebner_claim(Poset.antichain(5), SimpleGraph.cycle(5))


@pytest.mark.parametrize("G", GRAPHS4, ids=["path", "cycle", "complete", "empty"])
def test_phi_isomorphism(G):
    rep = verify_phi_isomorphism(V4, G, 3)
    assert rep.passed, rep.to_json()
    assert rep.counts_order == rep.counts_chain == rep.lattice_counts_chain


@settings(max_examples=15, deadline=None)
@given(posets(max_d=4), st.integers(0, 10**6))
def test_random_order_variant_is_robust(P, seed):
    G = comparability_graph(P)
    assert is_perfect(G)
    for variant in ("gamma", "omega"):
        g = verify_groebner_claim(P, G, variant, 3, rng_seed=seed)
        assert g.passed, g.to_json()
        assert all(is_squarefree(m) for m in truncated_initial_ideal(*build_order(P, G, variant, random.Random(seed)), 3).generators)
