"""Command line interface: subcommands, config layering, and determinism."""

import json
from pathlib import Path

import pytest

from sixvertex import __version__
from sixvertex.cli import main
from sixvertex.serialize import read_ensemble

GOLDEN_PATH = Path(__file__).parent / "data" / "l2_golden.txt"


def test_export_golden_matches_frozen_file(tmp_path, capsys):
    out = tmp_path / "golden.txt"
    assert main(["export-golden", "--out", str(out)]) == 0
    assert out.read_text() == GOLDEN_PATH.read_text()
    assert main(["export-golden"]) == 0
    assert capsys.readouterr().out.endswith(GOLDEN_PATH.read_text())


def test_sample_writes_all_formats(tmp_path):
    bin_path = tmp_path / "e.bin"
    json_path = tmp_path / "e.json"
    svg_path = tmp_path / "e.svg"
    rc = main(["sample", "--seed", "11", "--model", "cs6v", "--width", "15",
               "--height", "12", "--out", str(bin_path), "--json",
               str(json_path), "--svg", str(svg_path)])
    assert rc == 0
    e, meta = read_ensemble(bin_path)
    assert (e.width, e.height, e.variant) == (15, 12, "cs6v")
    assert meta["command"] == "sample"
    assert meta["version"] == __version__
    assert meta["params"]["seed"] == 11
    assert "out" not in meta["params"]  # output paths are execution details
    doc = json.loads(json_path.read_text())
    assert doc["meta"]["params"]["width"] == 15
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and "sixvertex" in svg


def test_sample_colored_model(tmp_path):
    out = tmp_path / "c.bin"
    rc = main(["sample", "--seed", "4", "--model", "colored", "--blocks", "3",
               "--dir", "2,1", "--out", str(out)])
    assert rc == 0
    e, meta = read_ensemble(out)
    assert (e.width, e.height, e.n_colors) == (6, 3, 3)
    assert meta["params"]["dir"] == "2,1"


def test_sample_determinism(tmp_path):
    a, b, c = (tmp_path / n for n in ("a.bin", "b.bin", "c.bin"))
    main(["sample", "--seed", "9", "--out", str(a)])
    main(["sample", "--seed", "9", "--out", str(b)])
    main(["sample", "--seed", "9", "--replica", "1", "--out", str(c)])
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_config_file_layering(tmp_path):
    cfg = tmp_path / "conf.json"
    cfg.write_text(json.dumps({"model": "cs6v", "width": 25, "height": 14,
                               "b1": 0.4}))
    out = tmp_path / "e.bin"
    rc = main(["sample", "--seed", "2", "--config", str(cfg),
               "--width", "10", "--out", str(out)])
    assert rc == 0
    e, meta = read_ensemble(out)
    assert (e.width, e.height) == (10, 14)  # flag beats file, file beats default
    assert meta["params"]["b1"] == 0.4


@pytest.mark.parametrize("argv, fragment", [
    (["sample"], "--seed is required"),
    (["sample", "--seed", "-3"], "nonnegative"),
    (["sample", "--seed", "1", "--b1", "1.5"], "[0, 1]"),
    (["sample", "--seed", "1", "--model", "colored", "--blocks", "99"],
     "--blocks"),
    (["converge", "--seed", "1", "--sizes", "50,20"], "nondecreasing"),
    (["converge", "--seed", "1", "--dir", "0,1"], "positive"),
    (["hammersley", "--seed", "1", "--p", "0"], "(0, 1)"),
    (["verify", "--seed", "1", "--n", "0"], "--n"),
    ([], "subcommand"),
])
def test_config_errors_are_json_on_stderr(argv, fragment, capsys):
    rc = main(argv)
    assert rc == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "config"
    assert fragment in err["error"]["message"]


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "conf.json"
    cfg.write_text('{"no_such_option": 1}')
    rc = main(["sample", "--seed", "1", "--config", str(cfg)])
    assert rc == 2
    err = json.loads(capsys.readouterr().err)
    assert "no_such_option" in err["error"]["message"]


def test_verify_quick_battery(tmp_path, capsys):
    report = tmp_path / "report.json"
    rc = main(["verify", "--seed", "1", "--n", "1", "--trials", "5",
               "--replicas", "10", "--max-size", "6", "--out", str(report)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "verify: PASS" in out
    doc = json.loads(report.read_text())
    assert doc["passed"] is True
    assert doc["config"]["command"] == "verify"
    assert all(c["passed"] for c in doc["checks"])
    assert {c["name"] for c in doc["checks"]} >= {
        "stochasticity n=1", "two-color table", "complement duality",
        "boundary monotonicity"}


def test_converge_outputs_embed_config(tmp_path):
    csv_path = tmp_path / "r.csv"
    json_path = tmp_path / "r.json"
    rc = main(["converge", "--seed", "3", "--sizes", "40,80", "--replicas",
               "3", "--csv", str(csv_path), "--json", str(json_path)])
    assert rc == 0
    first = csv_path.read_text().splitlines()[0]
    meta = json.loads(first[2:])
    assert meta["command"] == "converge"
    assert meta["params"]["sizes"] == "40,80"
    assert "workers" not in meta["params"]
    doc = json.loads(json_path.read_text())
    assert doc["meta"]["params"]["replicas"] == 3


def test_converge_tolerance_gate(capsys):
    rc = main(["converge", "--seed", "3", "--b1", "0.2", "--b2", "0.6",
               "--sizes", "200", "--replicas", "4", "--tol", "0.05"])
    assert rc == 0
    rc = main(["converge", "--seed", "3", "--b1", "0.2", "--b2", "0.6",
               "--sizes", "200", "--replicas", "4", "--tol", "0.0001"])
    assert rc == 1


def test_workers_do_not_change_output(tmp_path, monkeypatch):
    monkeypatch.delenv("SIXVERTEX_WORKERS", raising=False)
    outs = []
    for w in ("1", "2"):
        csv_path = tmp_path / f"w{w}.csv"
        rc = main(["converge", "--seed", "5", "--sizes", "30,60",
                   "--replicas", "4", "--workers", w, "--csv", str(csv_path)])
        assert rc == 0
        outs.append(csv_path.read_bytes())
    assert outs[0] == outs[1]
    monkeypatch.setenv("SIXVERTEX_WORKERS", "2")
    csv_path = tmp_path / "wenv.csv"
    assert main(["converge", "--seed", "5", "--sizes", "30,60", "--replicas",
                 "4", "--csv", str(csv_path)]) == 0
    assert csv_path.read_bytes() == outs[0]


def test_hammersley_subcommand(tmp_path, capsys):
    report = tmp_path / "h.json"
    rc = main(["hammersley", "--seed", "2", "--p", "0.5", "--width", "20",
               "--height", "20", "--coupling-seeds", "3", "--law-max", "2",
               "--out", str(report)])
    assert rc == 0
    doc = json.loads(report.read_text())
    assert doc["passed"] is True
    names = {c["name"] for c in doc["checks"]}
    assert any(n.startswith("hammersley law") for n in names)
    assert "limit identity" in names
