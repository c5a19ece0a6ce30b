"""Sweep configuration, execution, determinism, and report persistence."""

import json

import pytest

from homcert import SweepConfig, expand_targets, run_sweep
from homcert.canon import constraint_canonical_key


def small_config(**overrides):
    base = dict(
        n_values=(4, 6),
        d_values=(2, 3),
        connected_only=False,
        targets=("IND", "E2o", "P3o"),
        checks=("conjecture", "lemma-c4", "lemma-p4c4", "mt-bound", "lambda-identity"),
        seed=0,
        workers=1,
    )
    base.update(overrides)
    return SweepConfig(**base)


def test_config_roundtrip():
    cfg = small_config()
    again = SweepConfig.from_dict(cfg.to_dict())
    assert again == cfg
    ranged = SweepConfig.from_dict({"n_range": [4, 6], "d": [2], "targets": ["IND"]})
    assert ranged.n_values == (4, 5, 6)


def test_config_rejects_unknown_check():
    with pytest.raises(ValueError):
        SweepConfig(n_values=(4,), d_values=(2,), checks=("nope",))


def test_expand_targets_dedups_by_isomorphism():
    targets = expand_targets(["IND", "HC1", "P3o", "WR3", "all:2"])
    keys = [constraint_canonical_key(h) for _, h in targets]
    assert len(keys) == len(set(keys))
    # IND == HC1 and P3o == WR3, so only the first of each pair survives
    names = [name for name, _ in targets]
    assert "IND" in names and "HC1" not in names
    assert "P3o" in names and "WR3" not in names


def test_expand_targets_file(tmp_path):
    path = tmp_path / "target.txt"
    path.write_text("2\n01\n11\n", encoding="utf-8")
    targets = expand_targets([f"@{path}"])
    assert len(targets) == 1 and targets[0][0] == "target.txt"


def test_sweep_runs_clean_and_counts(tmp_path):
    out = tmp_path / "report.jsonl"
    cfg = small_config(output=str(out))
    report = run_sweep(cfg)
    assert report.violations == 0
    counts = report.summary["counts"]
    assert counts["records"] == len(report.records)
    assert counts["skipped"] > 0  # (4,2) has no (d+1) | n for lemma-p4c4
    # persisted file: records then summary
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(report.records) + 1
    last = json.loads(lines[-1])
    assert last["schema"] == "homcert/1"
    for line in lines[:-1]:
        rec = json.loads(line)
        assert "check" in rec and "violation" in rec


def test_sweep_skip_records_name_their_guard():
    cfg = small_config(checks=("lemma-p4c4",))
    report = run_sweep(cfg)
    skips = [r for r in report.records if r.get("skipped")]
    assert skips and all("d+1" in r["reason"] for r in skips)
    # (6,2) satisfies 3 | 6, so real records exist too
    real = [r for r in report.records if not r.get("skipped")]
    assert real and all(not r["violation"] for r in real)


def test_sweep_deterministic_modulo_timestamp(tmp_path):
    cfg = small_config(output=str(tmp_path / "a.jsonl"))
    run_sweep(cfg)
    cfg2 = small_config(output=str(tmp_path / "b.jsonl"))
    run_sweep(cfg2)

    def normalized(path):
        lines = path.read_text(encoding="utf-8").splitlines()
        summary = json.loads(lines[-1])
        summary.pop("generated_at")
        summary["config"].pop("output")
        return lines[:-1], summary

    ra, sa = normalized(tmp_path / "a.jsonl")
    rb, sb = normalized(tmp_path / "b.jsonl")
    assert ra == rb and sa == sb


def test_sweep_workers_match_serial():
    serial = run_sweep(small_config())
    parallel = run_sweep(small_config(workers=2))
    assert serial.records == parallel.records


def test_sweep_equality_cases_surface_extremal_graphs():
    cfg = small_config(n_values=(4,), d_values=(2,), targets=("IND",),
                       checks=("conjecture",))
    report = run_sweep(cfg)
    eq = report.summary["equality_cases"]
    assert len(eq) == 1 and eq[0]["dominant"] == "kdd"
    # 2C3 attains the clique bound for two bare loops
    cfg = small_config(n_values=(6,), d_values=(2,), targets=("E2o",),
                       checks=("conjecture",))
    report = run_sweep(cfg)
    eq = report.summary["equality_cases"]
    assert any(e["dominant"] == "kdp1" for e in eq)


def test_sweep_summary_csv(tmp_path):
    cfg = small_config()
    report = run_sweep(cfg)
    path = tmp_path / "summary.csv"
    report.write_summary_csv(str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "check,records,violations,skipped,equalities"
    assert len(lines) == 1 + len(report.summary["per_check"])


def test_sweep_needs_targets_for_target_checks():
    with pytest.raises(ValueError):
        run_sweep(small_config(targets=(), checks=("conjecture",)))
