"""Corpus-level checks of the reflexivity/IDP equivalences and delta identities."""

from __future__ import annotations

from typing import Iterator

from .combinatorics import SizeLimit
from .corpus import Instance, adversarial_corpus, perfect_corpus
from .ehrhart import DEFAULT_BOX_BUDGET, DeltaPolynomial
from .report import analyze, structure_certificates, validate_record
from .toric import (
    DEFAULT_DEGREE_BOUND,
    verify_groebner_claim,
    verify_hilbert_match,
    verify_phi_isomorphism,
)

GROEBNER_MAX_D = 4


def _delta(rec: dict) -> DeltaPolynomial | None:
    c = rec.get("delta", {}).get("coeffs")
    return DeltaPolynomial(tuple(c)) if c is not None else None


def delta_sanity(rec: dict) -> list[str]:
    """delta_0 = 1, nonnegative coefficients, palindromic when reflexive."""
    delta = _delta(rec)
    if delta is None:
        return []
    out = []
    if delta.coeffs[0] != 1:
        out.append("delta_0 != 1")
    if min(delta.coeffs) < 0:
        out.append("negative delta coefficient")
    if rec["reflexive"]["reflexive"] and not delta.is_palindromic(rec["ambient_dim"]):
        out.append("reflexive polytope with non-palindromic delta")
    return out


def check_perfect_pair(inst: Instance, *, budget: int = DEFAULT_BOX_BUDGET,
                       degree_bound: int = DEFAULT_DEGREE_BOUND,
                       groebner_max_d: int = GROEBNER_MAX_D,
                       order_seed: int | None = None) -> dict:
    """All four constructions reflexive + IDP, delta identities, and (small d)
    the Groebner/Hilbert/isomorphism checks."""
    recs = {(c, p): analyze(inst, c, p, budget=budget) for c in ("gamma", "omega") for p in ("O", "C")}
    failures = []
    for (c, p), rec in recs.items():
        name = f"{c}({p})"
        if rec["reflexive"]["reflexive"] is not True:
            failures.append(f"{name} not reflexive")
        if rec["idp"].get("idp") is not True:
            failures.append(f"{name} not IDP")
        failures.extend(f"{name}: {m}" for m in delta_sanity(rec))
        failures.extend(f"{name}: {m}" for m in validate_record(inst, rec, c, p))
    dg_o, dg_c = _delta(recs["gamma", "O"]), _delta(recs["gamma", "C"])
    do_o, do_c = _delta(recs["omega", "O"]), _delta(recs["omega", "C"])
    identities = {}
    if None not in (dg_o, dg_c, do_o, do_c):
        identities = {
            "gamma_O_eq_gamma_C": dg_o == dg_c,
            "omega_O_eq_omega_C": do_o == do_c,
            "omega_eq_one_plus_lambda_gamma": do_o.coeffs == dg_o.times_one_plus_lambda().coeffs,
        }
        failures.extend(k for k, ok in identities.items() if not ok)
    else:
        failures.append("delta polynomial exceeded the budget")
    algebra = []
    if inst.d <= groebner_max_d:
        for variant in ("gamma", "omega"):
            g = verify_groebner_claim(inst.poset, inst.graph, variant, degree_bound, order_seed)
            h = verify_hilbert_match(inst.poset, inst.graph, variant, degree_bound, order_seed)
            algebra += [g.to_json(), h.to_json()]
            if not g.passed:
                failures.append(f"groebner {variant}: offending {g.offending}")
            if not h.passed:
                failures.append(f"hilbert {variant}: mismatch at n={h.first_mismatch}")
        phi = verify_phi_isomorphism(inst.poset, inst.graph, degree_bound)
        algebra.append(phi.to_json())
        if not phi.passed:
            failures.append("phi isomorphism")
    return {
        "kind": "perfect",
        "instance": inst.to_json(),
        "records": {f"{c}_{p}": r for (c, p), r in recs.items()},
        "identities": identities,
        "algebra": algebra,
        "failures": failures,
        "passed": not failures,
    }


def check_adversarial(inst: Instance, *, budget: int = DEFAULT_BOX_BUDGET) -> dict:
    """Imperfect or non-flag input: Gamma not reflexive, Omega not IDP, both with witnesses."""
    certs = structure_certificates(inst)
    g = analyze(inst, "gamma", "O", budget=budget, with_delta=False, with_idp=False)
    o = analyze(inst, "omega", "O", budget=budget, with_delta=False)
    failures = []
    perf = certs.get("perfection")
    if perf is not None and perf.perfect:
        failures.append("adversarial instance is perfect")
    if g["reflexive"]["reflexive"] is not False:
        failures.append("gamma reflexive on imperfect input")
    elif g["reflexive"]["witness"]["facet"]["b"] < 2:
        failures.append("gamma witness has rhs < 2")
    if o["idp"].get("idp") is not False:
        failures.append("omega IDP on imperfect input")
    failures += [f"gamma: {m}" for m in validate_record(inst, g, "gamma", "O")]
    failures += [f"omega: {m}" for m in validate_record(inst, o, "omega", "O")]
    return {
        "kind": "adversarial",
        "instance": inst.to_json(),
        "records": {"gamma_O": g, "omega_O": o},
        "failures": failures,
        "passed": not failures,
    }


def verify_theorems(d: int, count: int, seed: int, *, max_dim: int = 7, budget: int = DEFAULT_BOX_BUDGET,
                    degree_bound: int = DEFAULT_DEGREE_BOUND, adversarial: bool = True,
                    order_seed: int | None = None) -> Iterator[dict]:
    """Yield one result per corpus item, perfect pairs first, then adversarial inputs."""
    if d > max_dim:
        raise SizeLimit("verify corpus dimension", d, max_dim)
    for inst in perfect_corpus(d, count, seed) if count else []:
        yield check_perfect_pair(inst, budget=budget, degree_bound=degree_bound, order_seed=order_seed)
    if adversarial:
        for inst in adversarial_corpus(seed, 1, max_dim):
            yield check_adversarial(inst, budget=budget)

