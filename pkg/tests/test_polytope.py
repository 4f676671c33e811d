from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import graphs, posets
from oracles import qhull_facets
from polyperfect.combinatorics import Poset, SimpleGraph, SimplicialComplex, comparability_graph, complement
from polyperfect.exactmath import solve_affine_span
from polyperfect.polytope import (
    LatticePolytope,
    NotFullDim,
    OriginNotInterior,
    chain_polytope,
    complex_polytope,
    contains,
    dual_polytope,
    facets_containing,
    gamma,
    is_reflexive,
    omega,
    order_polytope,
    stable_set_polytope,
)

UNIT = Poset.chain(1)
SQUARE = LatticePolytope(2, ((0, 0), (1, 0), (0, 1), (1, 1)))


def _facet_set(Q):
    return {(f.a, f.b) for f in Q.hrep}


def test_constructions():
    assert order_polytope(Poset.chain(2)).points == ((0, 0), (1, 0), (1, 1))
    assert chain_polytope(Poset.chain(2)).points == ((0, 0), (0, 1), (1, 0))
    assert stable_set_polytope(SimpleGraph.empty(2)).points == SQUARE.points
    g = gamma(order_polytope(UNIT), stable_set_polytope(SimpleGraph.empty(1)))
    assert g.points == ((-1,), (0,), (1,))
    w = omega(order_polytope(UNIT), stable_set_polytope(SimpleGraph.empty(1)))
    assert w.points == ((-1, -1), (0, -1), (0, 1), (1, 1))
    with pytest.raises(ValueError):
        gamma(order_polytope(Poset.chain(2)), stable_set_polytope(SimpleGraph.empty(3)))


def test_hexagon_facets():
    H = gamma(SQUARE, SQUARE)
    assert len(H.hrep) == 6
    assert all(f.b == 1 for f in H.hrep)
    assert _facet_set(H) == {((1, 0), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 1), ((1, -1), 1), ((-1, 1), 1)}
    assert is_reflexive(H).verdict


def test_omega_unit_interval():
    W = omega(order_polytope(UNIT), stable_set_polytope(SimpleGraph.empty(1)))
    assert len(W.hrep) == 4
    assert is_reflexive(W).verdict


def test_segment_and_dual():
    seg = LatticePolytope(1, ((-1,), (0,), (1,)))
    assert _facet_set(seg) == {((1,), 1), ((-1,), 1)}
    assert sorted(dual_polytope(seg)) == [(Fraction(-1),), (Fraction(1),)]
    box = LatticePolytope(2, tuple((a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)))
    assert sorted(dual_polytope(box)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_contains():
    H = SQUARE.hrep
    assert contains(H, (1, 1))
    assert not contains(H, (2, 0))
    assert H.contains((2, 2), scale=2)


def test_errors():
    with pytest.raises(NotFullDim):
        LatticePolytope(2, ((0, 0), (1, 1))).hrep
    with pytest.raises(OriginNotInterior):
        is_reflexive(SQUARE)


def test_hole_obstruction_facets():
    """Imperfect inputs force a facet with right-hand side 2 whose dual vertex
    has coordinate sum -(k)/2 over the hole (k = 5, 7) or the nonface (k = 3)."""
    P5 = Poset.from_covers(5, [(1, 2), (3, 4)])
    P7 = Poset.from_covers(7, [(1, 2), (3, 4)])
    cases = [
        (P5, stable_set_polytope(SimpleGraph.cycle(5)), range(1, 6), Fraction(-5, 2)),
        (P7, stable_set_polytope(complement(SimpleGraph.cycle(7))), range(1, 8), Fraction(-7, 2)),
        (Poset.chain(3), complex_polytope(SimplicialComplex.boundary_of_simplex(3)), range(1, 4), Fraction(-3, 2)),
    ]
    for P, Q, cyc, total in cases:
        g = gamma(order_polytope(P), Q)
        rep = is_reflexive(g)
        assert not rep.verdict and rep.witness.b == 2
        assert sum(rep.witness.dual_vertex()[v - 1] for v in cyc) == total
        tops = [tuple(-c for c in q) for q in Q.points if sum(q) == max(map(sum, Q.points))]
        if len(cyc) == 5:
            # the five maximal stable sets of C5 span one facet
            (f,) = facets_containing(g, tops)
            assert f == rep.witness


@settings(max_examples=25, deadline=None)
@given(posets(max_d=5))
def test_chain_polytope_is_stable_set_polytope_of_comparability(P):
    assert chain_polytope(P).points == stable_set_polytope(comparability_graph(P)).points
    assert order_polytope(P).dim == P.d == chain_polytope(P).dim


@settings(max_examples=25, deadline=None)
@given(posets(max_d=4), graphs(min_d=4, max_d=4))
def test_hull_soundness_against_qhull(P, G):
    if P.d != 4:
        P = Poset.antichain(4)
    for Q in (gamma(order_polytope(P), stable_set_polytope(G)),
              omega(chain_polytope(P), stable_set_polytope(G))):
        H = Q.hrep
        assert _facet_set(Q) == qhull_facets(Q.points)
        for p in Q.points:
            assert H.contains(p)
        for f in H:
            tight = [p for p in Q.points if f.is_tight(p)]
            assert solve_affine_span(tight)[0] == Q.ambient_dim - 1
        # V -> H -> V: the hull of the vertices alone has the same facets
        V = LatticePolytope(Q.ambient_dim, tuple(Q.vertices()))
        assert _facet_set(V) == _facet_set(Q)


@settings(max_examples=20, deadline=None)
@given(graphs(min_d=3, max_d=5))
def test_reflexivity_does_not_depend_on_poset(G):
    d = G.d
    verdicts = set()
    for P in (Poset.chain(d), Poset.antichain(d), Poset.from_covers(d, [(1, 2)])):
        for partner in (order_polytope(P), chain_polytope(P)):
            verdicts.add(is_reflexive(gamma(partner, stable_set_polytope(G))).verdict)
    assert len(verdicts) == 1


def test_json_roundtrip():
    Q = gamma(SQUARE, SQUARE)
    assert LatticePolytope.from_json(Q.to_json()) == Q
    assert Q.hrep.to_json()["facets"][0] == {"a": [-1, 0], "b": 1}
