import json
import os

import numpy as np
import pytest

from sweepdescent.cli import ExperimentConfig, main
from sweepdescent.errors import ConfigError


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def test_descend_radial(tmp_path, capsys):
    code = run(tmp_path / "a", "descend", "--function", "norm", "--x0", "2,0",
               "--alpha2", "2", "--T", "1", "--k", "1000")
    out = capsys.readouterr().out
    assert code == 0
    assert "endpoint: [1.0, 0.0]" in out
    lines = (tmp_path / "a" / "forward.csv").read_text().splitlines()
    assert lines[0].startswith("# sweepdescent ")
    assert lines[1] == "step,t,level,x0,x1,f,speed,dist_to_boundary"
    assert len(lines) == 2 + 1001


def test_descend_zero_horizon_single_row(tmp_path):
    code = run(tmp_path, "descend", "--function", "norm", "--x0", "2,0",
               "--T", "0")
    assert code == 0
    lines = (tmp_path / "forward.csv").read_text().splitlines()
    assert len(lines) == 3  # comment, header, one sample


def test_descend_reverse_requires_evidence(tmp_path, capsys):
    code = run(tmp_path, "descend", "--function", "norm", "--x0", "2,0",
               "--T", "0.5", "--k", "100", "--reverse")
    err = capsys.readouterr().err
    assert code == 2
    assert "prox-regular" in err


def test_descend_reverse_roundtrip(tmp_path, capsys):
    code = run(tmp_path, "descend", "--function", "tube", "--epsilon", "0.25",
               "--x0", "3.25,0", "--alpha2", "2", "--T", "0.5", "--k", "500",
               "--reverse")
    out = capsys.readouterr().out
    assert code == 0
    gap = float(out.split("recovery gap: ")[1].split()[0])
    assert gap <= 1e-2
    assert (tmp_path / "reverse.csv").exists()


def test_descend_theta_guard_exit(tmp_path, capsys):
    code = run(tmp_path, "descend", "--function", "norm", "--epsilon", "0.5",
               "--x0", "2,0", "--T", "1", "--k", "1", "--reverse",
               "--map-lipschitz", "1.0", "--prox-radius", "0.5")
    assert code == 2
    assert "theta" in capsys.readouterr().err


def test_config_file_and_flag_override(tmp_path):
    cfg = {"function": "norm", "x0": [2.0, 0.0], "alpha2": 2.0, "T": 1.0,
           "k": 50, "command": "descend"}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    out1 = tmp_path / "o1"
    code = main(["descend", "--config", str(path), "--k", "100",
                 "--out", str(out1)])
    assert code == 0
    echoed = json.loads("\n".join(
        line for line in (out1 / "config.echo.json").read_text().splitlines()
        if not line.startswith("#")))
    assert echoed["k"] == 100  # flag overrides file
    assert echoed["function"] == "norm"


def test_unknown_config_key_rejected(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"nope": 1}))
    code = main(["descend", "--config", str(path), "--out", str(tmp_path)])
    assert code == 2


def test_round_trip_byte_identical(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    code = main(["descend", "--function", "norm", "--x0", "1.7,0.4",
                 "--T", "0.6", "--k", "64", "--seed", "9", "--out", str(out1)])
    assert code == 0
    code = main(["descend", "--config", str(out1 / "config.echo.json"),
                 "--out", str(out2)])
    assert code == 0
    assert (out1 / "forward.csv").read_bytes() == (out2 / "forward.csv").read_bytes()


def test_verify_norm_passes(tmp_path, capsys):
    code = run(tmp_path, "verify", "--function", "norm")
    out = capsys.readouterr().out
    assert code == 0
    assert "FAIL" not in out
    report_lines = (tmp_path / "report.json").read_text().splitlines()
    assert report_lines[0].startswith("# sweepdescent ")
    payload = json.loads("\n".join(report_lines[1:]))
    assert payload["constants"]["slope_floor"] == pytest.approx(1.0, abs=1e-2)
    assert payload["constants"]["map_lipschitz"] == pytest.approx(1.0, abs=1e-2)


def test_verify_gauge_window_degenerates(tmp_path, capsys):
    code = run(tmp_path, "verify", "--function", "gauge", "--levels",
               "0.9:1.1:5")
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL  h3-complement-prox-radius" in out


def test_foliate_writes_index_last(tmp_path, capsys):
    code = run(tmp_path, "foliate", "--function", "norm", "--epsilon", "0.5",
               "--alpha2", "1.5", "--T", "1", "--k", "50", "--grid-size", "8")
    assert code == 0
    index = (tmp_path / "index.csv").read_text().splitlines()
    assert index[1] == "file,m0,m1,end0,end1,min_endpoint_gap"
    assert len(index) == 2 + 8
    for row in index[2:]:
        name = row.split(",")[0]
        assert (tmp_path / name).exists()
    # radial endpoints all at radius 1
    ends = np.array([[float(v) for v in row.split(",")[3:5]] for row in index[2:]])
    assert np.allclose(np.linalg.norm(ends, axis=1), 1.0, atol=1e-9)


def test_foliate_requires_epsilon(tmp_path, capsys):
    code = run(tmp_path, "foliate", "--function", "norm", "--alpha2", "1.5")
    assert code == 2


def test_gallery_lists_entries(tmp_path, capsys):
    code = main(["gallery"])
    out = capsys.readouterr().out
    assert code == 0
    for name in ("norm", "tube", "gauge", "localized:"):
        assert name in out


def test_regularize_table(tmp_path, capsys):
    code = run(tmp_path, "regularize", "--function", "norm", "--epsilon",
               "0.5", "--points", "2,0;0.25,0")
    out = capsys.readouterr().out
    assert code == 0
    rows = [r for r in out.splitlines() if not r.startswith("x0")]
    first = rows[0].split(",")
    assert float(first[3]) == pytest.approx(1.5)  # f_eps at (2, 0)
    second = rows[1].split(",")
    assert float(second[3]) == 0.0


def test_regularize_requires_epsilon(tmp_path):
    code = run(tmp_path, "regularize", "--function", "norm",
               "--points", "2,0")
    assert code == 2


def test_experiment_config_rejects_unknown():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"bogus": True})


def test_bad_point_and_window_parsing(tmp_path):
    assert main(["descend", "--function", "norm", "--x0", "nope",
                 "--out", str(tmp_path)]) == 2
    assert main(["verify", "--function", "norm", "--levels", "1:2",
                 "--out", str(tmp_path)]) == 2
