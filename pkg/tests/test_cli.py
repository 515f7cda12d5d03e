import json

import pytest

from phaseless.cli import RunConfig, load_config, packaged_configs, run
from phaseless.errors import ConfigError


def test_packaged_configs_load():
    names = packaged_configs()
    for n in ("fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig2", "gauss", "real", "shifted", "lattice"):
        assert n in names
        assert load_config(n).name == n


def test_props(tmp_path):
    assert run(["props", "--out", str(tmp_path), "--quiet"]) == 0
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["passed"] and man["command"] == "props"
    assert "version" in man and man["outputs"][-1].endswith("_report.json")


@pytest.mark.parametrize("name", ["fig2", "fig2a"])
def test_verify_lines_fig2(tmp_path, name):
    assert run(["verify-lines", "--config", name, "--out", str(tmp_path), "--quiet"]) == 0
    rep = json.loads((tmp_path / f"{name}_report.json").read_text())
    assert rep["passed"]
    assert [c["claim_id"] for c in rep["children"]] == ["spectrogram_equality", "non_equivalence", "nontriviality"]


def test_props_with_seed(tmp_path):
    assert run(["props", "--seed", "0", "--out", str(tmp_path), "--quiet"]) == 0
    assert run(["props", "--seed", "-3", "--out", str(tmp_path), "--quiet"]) == 2


def test_reproducible_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["synth", "--config", "fig2a", "--out", str(d), "--quiet"]) == 0
    assert (a / "fig2a_signals.csv").read_bytes() == (b / "fig2a_signals.csv").read_bytes()
    assert (a / "manifest.json").read_bytes() == (b / "manifest.json").read_bytes()
    for d in (a, b):
        assert run(["verify-lines", "--config", "fig2", "--out", str(d), "--quiet"]) == 0
    assert (a / "fig2_report.json").read_bytes() == (b / "fig2_report.json").read_bytes()


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(["synth", "--config", str(p), "--out", str(tmp_path)]) == 2


def test_unknown_command_and_bad_override(tmp_path):
    assert run(["frobnicate"]) == 2
    assert run(["props", "--tol", "-1", "--out", str(tmp_path)]) == 2
    assert run(["props", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 2


@pytest.mark.parametrize("patch", [
    {"step": -1},
    {"window": {"kind": "boxcar"}},
    {"rectangle": [1, 0, 0, 1]},
    {"coefficients": "abc"},
])
def test_config_validation(patch):
    base = load_config("fig2a").to_dict()
    base.update(patch)
    with pytest.raises(ConfigError):
        RunConfig.from_dict(base)


@pytest.mark.filterwarnings("ignore::phaseless.constructions.EquivalenceWarning")
def test_verification_failure_exit_code(tmp_path):
    cfg = load_config("fig2a").to_dict()
    cfg["coefficients"] = [[-1, 1, 0], [1, 1, 0]]
    p = tmp_path / "real.json"
    p.write_text(json.dumps(cfg))
    assert run(["verify-lines", "--config", str(p), "--out", str(tmp_path), "--quiet"]) == 1


def test_manifest_config_round_trips():
    for name in packaged_configs():
        cfg = load_config(name)
        assert RunConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
