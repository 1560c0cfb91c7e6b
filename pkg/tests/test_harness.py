import csv
import hashlib
import io
import json

import numpy as np
import pytest

from hilbcover.checks import CheckConfig, REGISTRY, list_checks, run_check
from hilbcover.cli import main
from hilbcover.config import ExperimentConfig
from hilbcover.errors import EmptyReport, InvalidParameter, UnknownCheck
from hilbcover.harness import SWEEP_COLUMNS, duality_experiment, render_sweep
from hilbcover.report import CSV_COLUMNS, CheckReport, emit_report, render_report

REQUIRED = ["polar_involution", "slice_project_dual", "funk_variational", "hilbert_additivity",
            "sandwich", "finsler_sandwich", "polar_sum_gauge", "mink_stability_sharp",
            "hilb_stability_sharp", "funk_vol_duality", "funk_area_duality",
            "hilb_measure_polarity_beta", "mink_measure_duality", "cauchy_area",
            "busemann_cube_halfspace", "jacobian_symmetry", "ball_growth", "expansion_fatness",
            "boundary_transfer", "complementary_chord", "rogers_shephard_union",
            "core_cover_volume"]

FAST = ["polar_involution", "funk_variational", "hilbert_additivity", "sandwich",
        "finsler_sandwich", "polar_sum_gauge", "mink_stability_sharp", "hilb_stability_sharp",
        "mink_measure_duality", "cauchy_area", "busemann_cube_halfspace",
        "rogers_shephard_union", "core_cover_volume"]


def test_registry_is_complete():
    ids = [c for c, _ in list_checks()]
    assert set(REQUIRED) <= set(ids)
    for cid, anchor in list_checks():
        assert anchor and len(anchor) > 10


@pytest.mark.parametrize("cid", FAST)
def test_fast_checks_pass(cid):
    rep = run_check(cid, CheckConfig(trials=5))
    assert rep.passed, rep
    assert rep.check_id == cid


@pytest.mark.parametrize("dim", [1, 3])
def test_checks_other_dimensions(dim):
    for cid in ("polar_involution", "hilbert_additivity", "mink_measure_duality",
                "rogers_shephard_union", "core_cover_volume"):
        assert run_check(cid, CheckConfig(dim=dim, trials=5)).passed


def test_sharp_examples_values():
    r = run_check("mink_stability_sharp", CheckConfig(alpha=0.2))
    assert r.lhs == pytest.approx(0.2, abs=1e-12)
    assert r.rhs == pytest.approx(0.6, abs=1e-12)
    assert r.ratio == pytest.approx(3.0, abs=1e-9)
    r = run_check("hilb_stability_sharp", CheckConfig(alpha=0.3))
    assert r.ratio == pytest.approx(3.0, abs=1e-9)


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_check("no_such_check")


def test_check_is_deterministic():
    a = run_check("funk_vol_duality", CheckConfig(trials=3, samples=4000, seed=5))
    b = run_check("funk_vol_duality", CheckConfig(trials=3, samples=4000, seed=5))
    assert render_report([a]) == render_report([b])


def test_report_roundtrip_and_errors(tmp_path):
    with pytest.raises(EmptyReport):
        render_report([])
    r = CheckReport("x", {"dim": 2, "alpha": 0.5}, 0.1, 0.2, 0.5, 1e-9, True, 3, 12.5, 0.0)
    text = emit_report([r], tmp_path / "r.csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == CSV_COLUMNS
    assert float(rows[0]["lhs"]) == 0.1 and rows[0]["pass"] == "true" and rows[0]["seed"] == "3"
    assert rows[0]["runtime_ms"] == ""
    j = json.loads(render_report([r], "json", timing=True))[0]
    assert j["pass"] is True and j["runtime_ms"] == 12.5 and j["lhs"] == 0.1
    assert (tmp_path / "r.csv").read_text() == text


def test_sweep_one_dim_matches_oracle():
    rows, summary = duality_experiment(ExperimentConfig(dim=1, n_instances=4, seeds=(0, 1)))
    assert summary["all_pass"]
    for r in rows:
        assert r["upper_a"] == r["oracle_a"] and r["upper_b"] == r["oracle_b"]
        assert max(r["ratio_ab"], r["ratio_ba"]) <= 3
    rows, summary = duality_experiment(ExperimentConfig(dim=1, geometry="minkowski",
                                                        n_instances=4, seeds=(0,)))
    assert summary["all_pass"]


def test_sweep_disks_near_one():
    cfg = ExperimentConfig(dim=2, geometry="disks", n_instances=1, alphas=(0.2, 0.5),
                           seeds=(0,), n_samples=4000)
    rows, summary = duality_experiment(cfg)
    assert summary["max_ratio_upper"] <= 1.5
    assert np.median([r["ratio_upper"] for r in rows]) == pytest.approx(1.0, abs=0.2)


def test_sweep_alpha_range():
    with pytest.raises(InvalidParameter):
        duality_experiment(ExperimentConfig(alphas=(0.5, 2.0)))


def test_sweep_worker_independence():
    cfg = ExperimentConfig(dim=2, n_instances=2, alphas=(0.5,), seeds=(0,), n_samples=2000)
    a = render_sweep(*duality_experiment(cfg, workers=1), cfg)
    b = render_sweep(*duality_experiment(cfg, workers=2), cfg)
    assert a == b
    header = [l for l in a.splitlines() if not l.startswith("#")][0]
    assert header.split(",") == SWEEP_COLUMNS


def test_cli_verbs(tmp_path, capsys):
    assert main(["list-checks"]) == 0
    out = capsys.readouterr().out
    assert "mink_stability_sharp\t" in out
    assert main(["body", "cube", "--dim", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["volume"] == pytest.approx(8.0)
    assert main(["dist", "cube", "0,0", "0.5,0"]) == 0
    assert json.loads(capsys.readouterr().out)["distance"] == pytest.approx(np.arctanh(0.5))
    assert main(["ball", "cube", "0,0", "--alpha", "0.5", "--ndir", "8"]) == 0
    assert len(json.loads(capsys.readouterr().out)["points"]) == 8
    assert main(["measure", "cube", "cube", "--geometry", "minkowski", "--kind", "area"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(8.0)
    assert main(["cover", "cube", "ngon:6,0.5", "--alpha", "0.5"]) == 0
    est = json.loads(capsys.readouterr().out)
    assert 1 <= est["lower"] <= est["upper"]
    out = tmp_path / "c.csv"
    assert main(["check", "mink_stability_sharp", "--alpha", "0.2", "--out", str(out)]) == 0
    assert "mink_stability_sharp" in out.read_text()
    assert main(["check", "no_such_check"]) == 2
    assert main(["body", "{bad json"]) == 2


def test_cli_exit_code_reflects_failure(monkeypatch):
    from hilbcover import checks

    def failing(cfg):
        return CheckReport("always_fails", {}, 1.0, 0.0, 0.0, 0.0, False)

    monkeypatch.setitem(REGISTRY, "always_fails",
                        checks.Check("always_fails", "a check that never holds", failing))
    assert main(["check", "always_fails"]) == 1
    assert main(["check", "polar_involution", "--trials", "2"]) == 0


def test_cli_sweep_is_byte_identical(tmp_path):
    args = ["sweep", "--dim", "1", "--instances", "3", "--n-seeds", "2", "--seed", "4"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert hashlib.sha256(a.read_bytes()).digest() == hashlib.sha256(b.read_bytes()).digest()
