"""Command-line front end. Every command writes JSON lines."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .combinatorics import SizeLimit
from .corpus import Instance, load_instance, merge_instances, random_instance
from .ehrhart import DEFAULT_BOX_BUDGET, delta_polynomial
from .polytope import LatticePolytope
from .report import analyze, build_polytope, validate_record
from .toric import (
    DEFAULT_DEGREE_BOUND,
    VARIANTS,
    verify_groebner_claim,
    verify_hilbert_match,
    verify_phi_isomorphism,
)
from .verify import verify_theorems

log = logging.getLogger("polyperfect")


def _emit(out, record: dict):
    out.write(json.dumps(record, sort_keys=True) + "\n")
    out.flush()


def _instance_from_args(args) -> Instance:
    parts = []
    if args.instance:
        parts.append(load_instance(args.instance))
    for name in ("poset", "graph", "complex"):
        path = getattr(args, name, None)
        if path:
            parts.append(load_instance(path))
    if not parts:
        raise SystemExit("provide --instance or --poset with --graph/--complex")
    return merge_instances(*parts) if len(parts) > 1 else parts[0]


def _order_seed(args) -> int | None:
    return args.seed if args.order_variant == "random" else None


def cmd_invariants(args, out) -> int:
    inst = _instance_from_args(args)
    rec = analyze(inst, args.construction, args.partner, budget=args.budget,
                  idp_max_height=args.idp_max_height)
    problems = validate_record(inst, rec, args.construction, args.partner)
    rec["witnesses_valid"] = not problems
    if problems:
        rec["witness_problems"] = problems
    _emit(out, rec)
    return 0 if not problems else 1


def cmd_verify(args, out) -> int:
    failed = 0
    total = 0
    for result in verify_theorems(args.d, args.count, args.seed, max_dim=args.max_dim,
                                  budget=args.budget, degree_bound=args.degree_bound,
                                  adversarial=not args.no_adversarial, order_seed=_order_seed(args)):
        total += 1
        failed += not result["passed"]
        _emit(out, result)
    _emit(out, {"summary": True, "items": total, "failed": failed, "passed": failed == 0})
    return 1 if failed else 0


def cmd_random(args, out) -> int:
    _emit(out, random_instance(args.kind, args.d, args.seed).to_json())
    return 0


def _polytope_from_args(args) -> LatticePolytope:
    if args.polytope:
        return LatticePolytope.from_json(json.loads(Path(args.polytope).read_text()))
    return build_polytope(_instance_from_args(args), args.construction, args.partner)


def cmd_delta(args, out) -> int:
    Q = _polytope_from_args(args)
    _emit(out, delta_polynomial(Q, args.budget).to_json())
    return 0


def cmd_facets(args, out) -> int:
    Q = _polytope_from_args(args)
    _emit(out, Q.hrep.to_json())
    return 0


def cmd_groebner_check(args, out) -> int:
    inst = _instance_from_args(args)
    if inst.poset is None or inst.graph is None:
        raise SystemExit("groebner-check needs a poset and a graph")
    seed = _order_seed(args)
    ok = True
    variants = VARIANTS if args.variant == "all" else (args.variant,)
    for v in variants:
        g = verify_groebner_claim(inst.poset, inst.graph, v, args.degree_bound, seed)
        h = verify_hilbert_match(inst.poset, inst.graph, v, args.degree_bound, seed)
        _emit(out, g.to_json())
        _emit(out, h.to_json())
        ok &= g.passed and h.passed
    if args.variant in ("all", "gamma"):
        phi = verify_phi_isomorphism(inst.poset, inst.graph, args.degree_bound)
        _emit(out, phi.to_json())
        ok &= phi.passed
    return 0 if ok else 1


def _add_instance_args(p: argparse.ArgumentParser):
    p.add_argument("--instance", help="instance JSON (poset plus graph or complex)")
    p.add_argument("--poset", help='poset JSON, e.g. {"d": 3, "covers": [[1, 3]]}')
    p.add_argument("--graph", help='graph JSON, e.g. {"d": 5, "edges": [[1, 2]]}')
    p.add_argument("--complex", help='complex JSON, e.g. {"d": 3, "facets": [[1, 2]]}')


def _add_construction_args(p: argparse.ArgumentParser):
    p.add_argument("--construction", choices=("gamma", "omega"), default="gamma")
    p.add_argument("--partner", choices=("O", "C"), default="O",
                   help="order polytope (O) or chain polytope (C) of the poset")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyperfect", description=__doc__)
    parser.add_argument("-o", "--output", help="write JSON lines here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--budget", type=int, default=DEFAULT_BOX_BUDGET,
                        help="largest lattice box scanned when counting points")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
    parser.add_argument("--order-variant", choices=("canonical", "random"), default="canonical",
                        help="tie-break of the variable order: canonical or a seeded random linear extension")
    parser.add_argument("--max-dim", type=int, default=7)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="reflexivity, IDP, delta and perfection of one construction")
    _add_instance_args(p)
    _add_construction_args(p)
    p.add_argument("--idp-max-height", type=int, default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="run the equivalence and delta-identity suite on a random corpus")
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--no-adversarial", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="seeded random instance")
    p.add_argument("--kind", choices=("poset", "perfect-graph", "flag-complex"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_random)

    for name, func, helptext in (("delta", cmd_delta, "Ehrhart delta-polynomial"),
                                 ("facets", cmd_facets, "exact facet list")):
        p = sub.add_parser(name, help=helptext)
        _add_instance_args(p)
        _add_construction_args(p)
        p.add_argument("--polytope", help='polytope JSON {"ambient_dim": d, "points": [...]}')
        p.set_defaults(func=func)

    p = sub.add_parser("groebner-check", help="truncated initial ideal, Hilbert and isomorphism checks")
    _add_instance_args(p)
    p.add_argument("--variant", choices=VARIANTS + ("all",), default="all")
    p.set_defaults(func=cmd_groebner_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        if getattr(args, "d", None) is not None and args.d > args.max_dim:
            raise SizeLimit("--d", args.d, args.max_dim)
        return args.func(args, out)
    except SizeLimit as e:
        _emit(out, {"error": "size-limit", "what": e.what, "size": e.size, "budget": e.limit})
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
