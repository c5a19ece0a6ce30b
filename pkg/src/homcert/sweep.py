"""Exhaustive sweep harness: enumerate regular graphs, run the requested
exact checks against every target, and persist one verdict record per item.

Reports are JSON lines, one record object per line, with a final summary
object carrying the schema tag.  Identical config and seed reproduce the
report byte for byte apart from the summary timestamp.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bounds import mt_bound, ordering_heuristic
from .canon import constraint_canonical_key, graph_canonical_key
from .closedforms import conjecture_rhs_compare
from .errors import FeasibilityError, HomcertError, ResourceGuardError
from .generate import enumerate_constraint_graphs, enumerate_regular
from .graphs import (
    ConstraintGraph,
    Graph,
    catalog,
    clique,
    complete_bipartite,
    copies,
    count_c3,
    count_c4,
    count_p4,
    parse_constraint,
    serialize_graph6,
    standard_catalog,
)
from .homcount import hom_dp, indep_profile

CHECKS = ("conjecture", "lemma-c4", "lemma-p4c4", "mt-bound", "lambda-identity")
LAMBDA_VALUES = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
SCHEMA = "homcert/1"


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters.  (n, d) pairs with odd n*d or n < d+1 admit no
    regular graphs and are dropped during expansion; divisibility
    preconditions of individual checks produce explicit skip records."""

    n_values: tuple[int, ...]
    d_values: tuple[int, ...]
    connected_only: bool = False
    targets: tuple[str, ...] = ()
    checks: tuple[str, ...] = ("conjecture",)
    output: str | None = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for c in self.checks:
            if c not in CHECKS:
                raise ValueError(f"unknown check {c!r}; choose from {CHECKS}")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    @staticmethod
    def from_dict(data: dict) -> "SweepConfig":
        if "n" in data:
            n_values = tuple(data["n"])
        elif "n_range" in data:
            lo, hi = data["n_range"]
            n_values = tuple(range(lo, hi + 1))
        else:
            raise ValueError("config needs 'n' (list) or 'n_range' ([lo, hi])")
        if "d" in data:
            d_values = tuple(data["d"])
        elif "d_range" in data:
            lo, hi = data["d_range"]
            d_values = tuple(range(lo, hi + 1))
        else:
            raise ValueError("config needs 'd' (list) or 'd_range' ([lo, hi])")
        return SweepConfig(
            n_values=n_values,
            d_values=d_values,
            connected_only=bool(data.get("connected_only", False)),
            targets=tuple(data.get("targets", ())),
            checks=tuple(data.get("checks", ("conjecture",))),
            output=data.get("output"),
            seed=int(data.get("seed", 0)),
            workers=int(data.get("workers", 1)),
        )

    @staticmethod
    def from_file(path: str) -> "SweepConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return SweepConfig.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "d": list(self.d_values),
            "connected_only": self.connected_only,
            "targets": list(self.targets),
            "checks": list(self.checks),
            "output": self.output,
            "seed": self.seed,
            "workers": self.workers,
        }


def expand_targets(specs) -> list[tuple[str, ConstraintGraph]]:
    """Resolve target specs to (name, graph) pairs, one per isomorphism
    class.  Specs: catalog names, "catalog:<k>" for the standard catalog up
    to k vertices, "all:<k>" for every constraint graph up to k vertices,
    and "@path" for a constraint-matrix file."""
    out: list[tuple[str, ConstraintGraph]] = []
    seen: set[tuple] = set()

    def add(name: str, h: ConstraintGraph):
        key = constraint_canonical_key(h)
        if key not in seen:
            seen.add(key)
            out.append((name, h))

    for spec in specs:
        if spec.startswith("@"):
            path = Path(spec[1:])
            h, _ = parse_constraint(path.read_text(encoding="utf-8"))
            add(path.name, h)
        elif spec.startswith("catalog:"):
            for name, h in standard_catalog(int(spec.split(":", 1)[1])):
                add(name, h)
        elif spec.startswith("all:"):
            k = int(spec.split(":", 1)[1])
            for i, h in enumerate(enumerate_constraint_graphs(k)):
                add(f"h{h.k}-{i}", h)
        else:
            built = catalog(spec)
            if not isinstance(built, ConstraintGraph):
                raise ValueError(f"target {spec!r} is not a constraint graph")
            add(spec, built)
    return out


@dataclass
class SweepReport:
    config: SweepConfig
    records: list[dict]
    summary: dict

    @property
    def violations(self) -> int:
        return self.summary["counts"]["violations"]

    def write(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
            fh.write(json.dumps(self.summary, sort_keys=True) + "\n")

    def write_summary_csv(self, path: str):
        lines = ["check,records,violations,skipped,equalities"]
        per = self.summary["per_check"]
        for check in sorted(per):
            c = per[check]
            lines.append(
                f"{check},{c['records']},{c['violations']},{c['skipped']},{c['equalities']}"
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _pair_records(n: int, d: int, connected_only: bool, checks: tuple[str, ...],
                  targets: list[tuple[str, ConstraintGraph]], seed: int) -> list[dict]:
    """All records for one (n, d) cell, in deterministic order."""
    records: list[dict] = []
    graphs = enumerate_regular(n, d, connected=connected_only)
    g6 = [serialize_graph6(g) for g in graphs]

    for check in checks:
        if check == "conjecture":
            for hname, h in targets:
                for g, code in zip(graphs, g6):
                    try:
                        v = conjecture_rhs_compare(g, h)
                    except (ResourceGuardError, FeasibilityError) as exc:
                        records.append(_skip(check, n, d, code, hname, str(exc)))
                        continue
                    records.append({
                        "check": check, "n": n, "d": d, "graph6": code,
                        "target": hname, "hom": v.hom, "kdd": v.kdd,
                        "kdp1": v.kdp1, "dominant": v.dominant,
                        "satisfied": v.satisfied, "equality": v.equality,
                        "violation": not v.satisfied,
                    })
        elif check == "lemma-c4":
            if n % (2 * d):
                records.append(_skip(check, n, d, None, None,
                                     f"needs 2d | n, got n={n}, d={d}"))
                continue
            ref = copies(complete_bipartite(d, d), n // (2 * d))
            ref_c4 = count_c4(ref)
            ref_key = graph_canonical_key(ref)
            for g, code in zip(graphs, g6):
                if count_c3(g):
                    continue
                c4 = count_c4(g)
                is_ref = graph_canonical_key(g) == ref_key
                ok = c4 < ref_c4 or (c4 == ref_c4 and is_ref)
                records.append({
                    "check": check, "n": n, "d": d, "graph6": code,
                    "c4": c4, "ref_c4": ref_c4, "is_ref": is_ref,
                    "violation": not ok,
                })
        elif check == "lemma-p4c4":
            if n % (d + 1):
                records.append(_skip(check, n, d, None, None,
                                     f"needs (d+1) | n, got n={n}, d={d}"))
                continue
            ref = copies(clique(d + 1), n // (d + 1))
            ref_val = count_p4(ref) - count_c4(ref)
            ref_key = graph_canonical_key(ref)
            for g, code in zip(graphs, g6):
                val = count_p4(g) - count_c4(g)
                is_ref = graph_canonical_key(g) == ref_key
                ok = val > ref_val or (val == ref_val and is_ref)
                records.append({
                    "check": check, "n": n, "d": d, "graph6": code,
                    "p4_minus_c4": val, "ref_value": ref_val, "is_ref": is_ref,
                    "violation": not ok,
                })
        elif check == "mt-bound":
            for hname, h in targets:
                for g, code in zip(graphs, g6):
                    try:
                        hom_value = hom_dp(g, h)
                    except (ResourceGuardError, FeasibilityError) as exc:
                        records.append(_skip(check, n, d, code, hname, str(exc)))
                        continue
                    for trial in range(5):
                        order = ordering_heuristic(g, seed + trial).order
                        cert = mt_bound(g, h, order, hom_value=hom_value)
                        records.append({
                            "check": check, "n": n, "d": d, "graph6": code,
                            "target": hname, "seed": seed + trial,
                            "lhs": cert.lhs, "rhs": cert.rhs,
                            "holds": cert.holds, "violation": not cert.holds,
                        })
        elif check == "lambda-identity":
            if n % (2 * d):
                records.append(_skip(check, n, d, None, None,
                                     f"needs 2d | n, got n={n}, d={d}"))
                continue
            ref = copies(complete_bipartite(d, d), n // (2 * d))
            ref_profile = indep_profile(ref)
            for g, code in zip(graphs, g6):
                prof = indep_profile(g)
                for lam in LAMBDA_VALUES:
                    lhs = prof.weighted_sum(lam)
                    rhs = ref_profile.weighted_sum(lam)
                    records.append({
                        "check": check, "n": n, "d": d, "graph6": code,
                        "lambda": str(lam), "lhs": str(lhs), "rhs": str(rhs),
                        "violation": lhs > rhs,
                    })
    return records


def _skip(check, n, d, code, hname, reason) -> dict:
    rec = {"check": check, "n": n, "d": d, "skipped": True, "reason": reason,
           "violation": False}
    if code is not None:
        rec["graph6"] = code
    if hname is not None:
        rec["target"] = hname
    return rec


def run_sweep(config: SweepConfig) -> SweepReport:
    targets = expand_targets(config.targets)
    needs_targets = any(c in ("conjecture", "mt-bound") for c in config.checks)
    if needs_targets and not targets:
        raise ValueError("requested checks need at least one target")
    cells = [
        (n, d)
        for n in sorted(config.n_values)
        for d in sorted(config.d_values)
        if (n * d) % 2 == 0 and n >= d + 1
    ]
    args = [
        (n, d, config.connected_only, config.checks, targets, config.seed)
        for n, d in cells
    ]
    if config.workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_pair_records_star, args))
    else:
        chunks = [_pair_records(*a) for a in args]
    records = [rec for chunk in chunks for rec in chunk]

    per_check: dict[str, dict] = {}
    for rec in records:
        c = per_check.setdefault(
            rec["check"],
            {"records": 0, "violations": 0, "skipped": 0, "equalities": 0},
        )
        c["records"] += 1
        if rec.get("skipped"):
            c["skipped"] += 1
        if rec["violation"]:
            c["violations"] += 1
        if rec.get("equality"):
            c["equalities"] += 1
    equality_cases = [
        {"check": r["check"], "graph6": r["graph6"], "target": r.get("target"),
         "dominant": r.get("dominant")}
        for r in records
        if r.get("equality")
    ]
    counts = {
        "records": len(records),
        "violations": sum(c["violations"] for c in per_check.values()),
        "skipped": sum(c["skipped"] for c in per_check.values()),
        "equalities": sum(c["equalities"] for c in per_check.values()),
    }
    from . import __version__

    summary = {
        "schema": SCHEMA,
        "version": __version__,
        "seed": config.seed,
        "config": config.to_dict(),
        "counts": counts,
        "per_check": per_check,
        "equality_cases": equality_cases,
        "generated_at": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
    }
    report = SweepReport(config, records, summary)
    if config.output:
        report.write(config.output)
    return report


def _pair_records_star(args):
    return _pair_records(*args)
