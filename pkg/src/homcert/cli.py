"""Command-line surface.

Subcommands: count, classify, closed, qpoly, bound, sweep, generate.
Exit codes: 0 success, 1 runtime error, 2 violations found, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bounds import best_bound
from .closedforms import compare_cross_powers, hom_kdd_closed, hom_kdp1_closed
from .errors import GUARD_ENV_VAR, HomcertError
from .generate import enumerate_regular
from .graphs import ConstraintGraph, Graph, catalog, parse_constraint, parse_graph6, serialize_graph6
from .homcount import hom_bruteforce, hom_dp, hom_inclusion_exclusion
from .qpoly import DeletionSpec, family_polynomial, threshold_q
from .structure import classify as classify_target
from .structure import empirical_type, structural_profile
from .sweep import SweepConfig, run_sweep

USAGE_ERROR = 64
RUNTIME_ERROR = 1
VIOLATIONS_FOUND = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _load_graph(spec: str) -> Graph:
    if spec.startswith("@"):
        text = Path(spec[1:]).read_text(encoding="utf-8")
        for line in text.splitlines():
            if line.strip():
                return parse_graph6(line)
        raise HomcertError(f"no graph6 line found in {spec[1:]}")
    return parse_graph6(spec)


def _load_target(spec: str) -> ConstraintGraph:
    if spec.startswith("@"):
        h, _ = parse_constraint(Path(spec[1:]).read_text(encoding="utf-8"))
        return h
    built = catalog(spec)
    if not isinstance(built, ConstraintGraph):
        raise HomcertError(f"{spec!r} names a source graph, not a constraint graph")
    return built


def _parse_family(text: str):
    if text == "chromatic":
        return "chromatic"
    if text.startswith("loops:"):
        return ("loops", int(text.split(":", 1)[1]))
    if text.startswith("bip:"):
        pairs = []
        for chunk in text.split(":", 1)[1].split(","):
            r, s = chunk.split("x")
            pairs.append((int(r), int(s)))
        return ("bipartite", DeletionSpec(tuple(pairs)))
    raise HomcertError(
        f"unknown family {text!r}; use chromatic, loops:<l>, or bip:<r>x<s>[,...]"
    )


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _cmd_count(args) -> int:
    g = _load_graph(args.graph)
    h = _load_target(args.target)
    brute = hom_bruteforce(g, h)
    dp = hom_dp(g, h)
    incexc = hom_inclusion_exclusion(g, h)
    agree = brute == dp == incexc
    payload = {
        "graph6": serialize_graph6(g),
        "bruteforce": brute,
        "dp": dp,
        "inclusion_exclusion": incexc,
        "agree": agree,
    }
    _emit(args, payload,
          f"bruteforce={brute} dp={dp} inclusion-exclusion={incexc} agree={agree}")
    return 0 if agree else VIOLATIONS_FOUND


def _cmd_classify(args) -> int:
    h = _load_target(args.target)
    profile = structural_profile(h)
    verdict = classify_target(h)
    report = empirical_type(h, args.dmax)
    payload = {
        "kind": verdict.kind,
        "condition": verdict.condition,
        "crossover_d": report.crossover_d,
        "agrees_empirically": report.agrees_with_classifier,
        "profile": {
            "k": profile.k, "eta": profile.eta, "m": profile.m,
            "a": profile.a, "b": profile.b, "n": profile.n,
            "eta_p": profile.eta_p, "m_p": profile.m_p, "a_p": profile.a_p,
            "b_p": profile.b_p, "n_p": profile.n_p,
        },
        "comparisons": [
            {"d": v.d, "sign": v.sign} for v in report.verdicts
        ],
    }
    lines = [
        f"type: {verdict.kind} (condition {verdict.condition})",
        f"profile: eta={profile.eta} m={profile.m} a={profile.a} "
        f"b={profile.b} n={profile.n}",
    ]
    if profile.eta_p is not None:
        lines.append(
            f"primed: eta'={profile.eta_p} m'={profile.m_p} a'={profile.a_p} "
            f"b'={profile.b_p} n'={profile.n_p}"
        )
    lines.append("cross-power signs: " + " ".join(
        f"d={v.d}:{v.sign}" for v in report.verdicts))
    lines.append(f"crossover d: {report.crossover_d} "
                 f"(agrees: {report.agrees_with_classifier})")
    _emit(args, payload, "\n".join(lines))
    return 0 if report.agrees_with_classifier else VIOLATIONS_FOUND


def _cmd_closed(args) -> int:
    h = _load_target(args.target)
    kdd = hom_kdd_closed(h, args.d)
    kdp1 = hom_kdp1_closed(h, args.d)
    verdict = compare_cross_powers(h, args.d)
    payload = {
        "d": args.d,
        "hom_kdd": kdd,
        "hom_kdp1_closed": kdp1.value,
        "kdp1_closed_valid": kdp1.valid,
        "left": verdict.left,
        "right": verdict.right,
        "sign": verdict.sign,
    }
    _emit(args, payload,
          f"hom(K_{{d,d}})={kdd} hom(K_{{d+1}}) closed={kdp1.value} "
          f"(valid={kdp1.valid}) cross-power: {verdict.sign}")
    return 0


def _cmd_qpoly(args) -> int:
    g = _load_graph(args.graph)
    family = _parse_family(args.family)
    poly = family_polynomial(g, family)
    payload = {"graph6": serialize_graph6(g), "family": args.family,
               "coeffs": list(poly.coeffs)}
    lines = [f"coeffs (lowest power first): {list(poly.coeffs)}"]
    ref = None
    if args.ref:
        ref = _load_graph(args.ref)
    else:
        d = g.regular_degree()
        if d is not None and d >= 1:
            from .graphs import clique, complete_bipartite, copies

            kind = family[0] if isinstance(family, tuple) else family
            if kind in ("chromatic", "loops") and g.n % (2 * d) == 0:
                ref = copies(complete_bipartite(d, d), g.n // (2 * d))
            elif kind == "bipartite" and g.n % (d + 1) == 0:
                ref = copies(clique(d + 1), g.n // (d + 1))
    if ref is not None:
        result = threshold_q(ref, g, family)
        payload["threshold"] = {"kind": result.kind, "q0": result.q0,
                                "ref_graph6": serialize_graph6(ref)}
        lines.append(f"threshold vs {serialize_graph6(ref)}: {result.kind}"
                     + (f", q0={result.q0}" if result.q0 is not None else ""))
    else:
        lines.append("threshold: no reference (divisibility not met; pass --ref)")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_bound(args) -> int:
    g = _load_graph(args.graph)
    h = _load_target(args.target)
    cert = best_bound(g, h, trials=args.trials, seed=args.seed)
    payload = {
        "graph6": serialize_graph6(g), "d": cert.d,
        "order": list(cert.order), "lhs": cert.lhs, "rhs": cert.rhs,
        "holds": cert.holds,
    }
    _emit(args, payload,
          f"lhs=hom^d={cert.lhs} rhs={cert.rhs} holds={cert.holds} "
          f"order={list(cert.order)}")
    return 0 if cert.holds else VIOLATIONS_FOUND


def _cmd_sweep(args) -> int:
    config = SweepConfig.from_file(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if overrides:
        data = config.to_dict()
        data.update(overrides)
        config = SweepConfig.from_dict(data)
    report = run_sweep(config)
    counts = report.summary["counts"]
    if args.json:
        print(json.dumps(report.summary, sort_keys=True))
    else:
        print(f"records={counts['records']} violations={counts['violations']} "
              f"skipped={counts['skipped']} equalities={counts['equalities']}")
        if config.output:
            print(f"report written to {config.output}")
    return VIOLATIONS_FOUND if report.violations else 0


def _cmd_generate(args) -> int:
    for g in enumerate_regular(args.n, args.d, connected=args.connected):
        print(serialize_graph6(g))
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="homcert",
                     description="Exact H-coloring counting and certification")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--guard-limit", type=int, default=None,
                        help="override resource guards (states/subsets)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="run all three hom counters")
    p.add_argument("graph", help="graph6 string or @file")
    p.add_argument("target", help="catalog name or @file")

    p = sub.add_parser("classify", help="structural profile and type verdict")
    p.add_argument("target")
    p.add_argument("--dmax", type=int, default=12)

    p = sub.add_parser("closed", help="closed-form counts and cross-power sign")
    p.add_argument("target")
    p.add_argument("d", type=int)

    p = sub.add_parser("qpoly", help="polynomial in q and threshold vs reference")
    p.add_argument("graph")
    p.add_argument("family", help="chromatic | loops:<l> | bip:<r>x<s>[,...]")
    p.add_argument("--ref", help="reference graph6 (default: extremal union)")

    p = sub.add_parser("bound", help="best ordering product bound")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", help="run a sweep from a JSON config")
    p.add_argument("config")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("generate", help="emit regular graphs as graph6 lines")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--connected", action="store_true")

    args = parser.parse_args(argv)
    if args.guard_limit is not None:
        os.environ[GUARD_ENV_VAR] = str(args.guard_limit)

    handlers = {
        "count": _cmd_count,
        "classify": _cmd_classify,
        "closed": _cmd_closed,
        "qpoly": _cmd_qpoly,
        "bound": _cmd_bound,
        "sweep": _cmd_sweep,
        "generate": _cmd_generate,
    }
    try:
        return handlers[args.command](args)
    except HomcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
