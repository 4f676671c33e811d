"""Per-instance analysis records and witness re-validation."""

from __future__ import annotations

import time
from fractions import Fraction

from .combinatorics import (
    SizeLimit,
    complement,
    graph_from_flag_complex,
    induced_cycle_order,
    is_flag,
    perfection_witness,
)
from .corpus import Instance
from .ehrhart import (
    DEFAULT_BOX_BUDGET,
    decompose,
    delta_polynomial,
    is_idp,
    nonface_witness,
    omega_witness,
)
from .exactmath import solve_affine_span
from .polytope import (
    Facet,
    LatticePolytope,
    chain_polytope,
    complex_polytope,
    gamma,
    is_reflexive,
    omega,
    order_polytope,
    stable_set_polytope,
)

CONSTRUCTIONS = ("gamma", "omega")
PARTNERS = ("O", "C")


def build_polytope(inst: Instance, construction: str = "gamma", partner: str = "O") -> LatticePolytope:
    """Gamma/Omega of (O_P or C_P) with (Q_G or P_Delta)."""
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
    if partner not in PARTNERS:
        raise ValueError(f"partner must be one of {PARTNERS}")
    if inst.poset is None:
        raise ValueError("instance has no poset")
    first = order_polytope(inst.poset) if partner == "O" else chain_polytope(inst.poset)
    if inst.graph is not None:
        second = stable_set_polytope(inst.graph)
    elif inst.complex is not None:
        second = complex_polytope(inst.complex)
    else:
        raise ValueError("instance needs a graph or a simplicial complex")
    return (gamma if construction == "gamma" else omega)(first, second)


def structure_certificates(inst: Instance, perfection_limit: int = 14) -> dict:
    """Flagness and perfection of the second factor, with certificates."""
    out: dict = {}
    G = inst.graph
    if inst.complex is not None and G is None:
        flag, nonface = is_flag(inst.complex)
        out["flag"] = flag
        if not flag:
            out["minimal_nonface"] = sorted(nonface)
            return out
        G = graph_from_flag_complex(inst.complex)
    if G is not None:
        out["perfection"] = perfection_witness(G, perfection_limit)
    return out


def idp_hints(inst: Instance, certs: dict) -> list:
    d = inst.d
    if "minimal_nonface" in certs:
        return [tuple(reversed(nonface_witness(certs["minimal_nonface"], d)))]
    perf = certs.get("perfection")
    if perf is not None and not perf.perfect:
        x, n = omega_witness(perf, d)
        return [(n, x)]
    return []


def analyze(inst: Instance, construction: str = "gamma", partner: str = "O", *,
            budget: int = DEFAULT_BOX_BUDGET, with_delta: bool = True,
            with_idp: bool = True, idp_max_height: int | None = None) -> dict:
    """Reflexivity, IDP, delta-polynomial and perfection for one construction."""
    t0 = time.perf_counter()
    Q = build_polytope(inst, construction, partner)
    certs = structure_certificates(inst)
    rec: dict = {
        "label": inst.label,
        "construction": f"{construction}({partner}_P,{'Q_G' if inst.graph is not None else 'P_Delta'})",
        "d": inst.d,
        "ambient_dim": Q.ambient_dim,
        "points": len(Q.points),
        "facets": len(Q.hrep),
    }
    if "flag" in certs:
        rec["flag"] = certs["flag"]
        if "minimal_nonface" in certs:
            rec["minimal_nonface"] = certs["minimal_nonface"]
    if "perfection" in certs:
        rec["perfection"] = certs["perfection"].to_json()
    t1 = time.perf_counter()
    rec["reflexive"] = is_reflexive(Q).to_json()
    t2 = time.perf_counter()
    hints = idp_hints(inst, certs) if construction == "omega" else []
    if with_idp:
        try:
            rec["idp"] = is_idp(Q, idp_max_height, hints=hints, budget=budget).to_json()
        except SizeLimit as e:
            rec["idp"] = {"idp": None, "error": str(e), "budget": e.limit}
    t3 = time.perf_counter()
    if with_delta:
        try:
            rec["delta"] = delta_polynomial(Q, budget).to_json()
        except SizeLimit as e:
            rec["delta"] = {"coeffs": None, "error": str(e), "budget": e.limit}
    t4 = time.perf_counter()
    rec["timings"] = {"build": round(t1 - t0, 4), "reflexive": round(t2 - t1, 4),
                      "idp": round(t3 - t2, 4), "delta": round(t4 - t3, 4)}
    return rec


# ----------------------------------------------------------------- validation


def validate_facet_witness(Q: LatticePolytope, a, b) -> bool:
    """A genuine non-reflexive certificate: a facet of Q with right-hand side >= 2."""
    f = Facet(tuple(a), int(b))
    if f.b < 2:
        return False
    if any(f.value(p) > f.b for p in Q.points):
        return False
    contact = [p for p in Q.points if f.is_tight(p)]
    if not contact:
        return False
    return solve_affine_span(contact)[0] == Q.ambient_dim - 1


def validate_idp_witness(Q: LatticePolytope, n: int, point) -> bool:
    point = tuple(point)
    return Q.hrep.contains(point, n) and decompose(Q, point, n) is None


def validate_perfection_witness(inst: Instance, data: dict) -> bool:
    kind = data["kind"]
    if kind == "perfect":
        return True
    G = inst.graph if inst.graph is not None else graph_from_flag_complex(inst.complex)
    H = G if kind == "odd_hole" else complement(G)
    cyc = data["cycle"]
    return len(cyc) >= 5 and len(cyc) % 2 == 1 and induced_cycle_order(H, cyc) is not None


def validate_record(inst: Instance, rec: dict, construction: str, partner: str) -> list[str]:
    """Re-check every witness embedded in ``rec``; returns the failures."""
    problems = []
    Q = build_polytope(inst, construction, partner)
    refl = rec.get("reflexive", {})
    if refl.get("reflexive") is False:
        w = refl.get("witness")
        if not w or not validate_facet_witness(Q, w["facet"]["a"], w["facet"]["b"]):
            problems.append("reflexivity witness does not re-validate")
        elif all(Fraction(c).denominator == 1 for c in w["dual_vertex"]):
            problems.append("reflexivity witness has an integral dual vertex")
    idp = rec.get("idp", {})
    if idp.get("idp") is False:
        w = idp.get("witness")
        if not w or not validate_idp_witness(Q, w["n"], w["point"]):
            problems.append("IDP witness does not re-validate")
    if "perfection" in rec and not validate_perfection_witness(inst, rec["perfection"]):
        problems.append("perfection witness does not re-validate")
    return problems
