import json

import numpy as np
import pytest

from paraflux import (build_dyadic_system, build_grid, pure_wave,
                      read_field, write_field)
from paraflux.cli import main


def test_norm_pure_wave_both_families(capsys):
    assert main(["norm", "--grid", "64", "--wave", "4",
                 "--s", "2", "--p", "2"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("B^2_{2,inf}")
    assert lines[1].startswith("F^2_{2,inf}")
    for line in lines:
        assert line.split()[-1] == "16"


def test_norm_json_matches_text(capsys):
    args = ["norm", "--grid", "64", "--wave", "4", "--s", "2", "--p", "2",
            "--q", "2"]
    assert main(args) == 0
    text = capsys.readouterr().out
    assert main(args + ["--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    values = [row["value"] for row in doc["norms"]]
    plain = [float(line.split()[-1]) for line in text.strip().splitlines()]
    assert values == plain


def test_norm_accepts_inf_and_reads_files(tmp_path, capsys):
    g = build_grid(1, 64)
    f = pure_wave(g, 4)
    path = tmp_path / "w.fld"
    write_field(str(path), f)
    assert main(["norm", "--in", str(path), "--s", "2", "--p", "inf",
                 "--q", "inf"]) == 0
    out = capsys.readouterr().out
    # F-norm needs p < inf, so only the Besov line appears
    lines = out.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].split()[-1] == "16"


def test_norm_config_errors(capsys):
    assert main(["norm", "--grid", "64", "--s", "2", "--p", "2"]) == 2
    assert main(["norm", "--grid", "64", "--wave", "4", "--s", "2"]) == 2
    assert main(["norm", "--grid", "64", "--wave", "4", "--s", "2",
                 "--p", "x"]) == 2
    assert main(["norm", "--grid", "64", "--wave", "4", "--s", "1",
                 "--s", "2", "--p", "1", "--p", "2", "--p", "3"]) == 2
    capsys.readouterr()


def test_missing_input_file_is_io_error(capsys):
    assert main(["norm", "--in", "/nonexistent/q.fld", "--s", "1",
                 "--p", "2"]) == 3
    capsys.readouterr()


def test_lemmas_csv_deterministic(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["lemmas", "--grid", "64", "--only", "hardy"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("name,params,lhs,rhs_core,ratio,bound,verdict")
    assert ",fail" not in text


def test_lemmas_unknown_section(capsys):
    assert main(["lemmas", "--grid", "64", "--only", "nope"]) == 2
    assert "unknown section" in capsys.readouterr().err


def test_audit_manifest_run(tmp_path, capsys):
    manifest = {
        "n": 1, "resolutions": [64], "seed": 3,
        "multiplications": [
            {"mode": "positive", "params": [[0.4, 2.0], [1.0, 2.0]],
             "q": 2.0, "tuples": 1},
        ],
    }
    path = tmp_path / "m.json"
    path.write_text(json.dumps(manifest))
    out = tmp_path / "result.csv"
    assert main(["audit", "--manifest", str(path), "--out", str(out)]) == 0
    capsys.readouterr()
    assert "mult-total" in out.read_text()


def test_audit_bad_hypotheses_exit_2(tmp_path, capsys):
    manifest = {
        "n": 1, "resolutions": [64],
        "multiplications": [
            # s1 = n/p1: hypothesis violation must be named on stderr
            {"mode": "positive", "params": [[0.5, 2.0], [1.0, 2.0]],
             "q": 2.0, "tuples": 1},
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(manifest))
    assert main(["audit", "--manifest", str(path)]) == 2
    err = capsys.readouterr().err
    assert "s1-subcritical" in err


def test_audit_manifest_io_and_parse_errors(tmp_path, capsys):
    assert main(["audit", "--manifest", str(tmp_path / "none.json")]) == 3
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    assert main(["audit", "--manifest", str(bad)]) == 2
    capsys.readouterr()


def test_decompose_artifacts(tmp_path, capsys):
    out = tmp_path / "dec"
    assert main(["decompose", "--grid", "64", "--m", "2", "--out",
                 str(out), "--dump-bands"]) == 0
    text = capsys.readouterr().out
    assert "hard annulus" in text
    assert (out / "manifest.json").exists()
    assert (out / "product.fld").exists()
    assert list(out.glob("pi1_k*_j*.fld"))
    prod = read_field(str(out / "product.fld"))
    assert prod.grid.sizes == (64,)


def test_decompose_from_files(tmp_path, capsys):
    g = build_grid(1, 64)
    pa = tmp_path / "a.fld"
    pb = tmp_path / "b.fld"
    write_field(str(pa), pure_wave(g, 12))
    write_field(str(pb), pure_wave(g, 1))
    out = tmp_path / "dec2"
    assert main(["decompose", "--grid", "64", "--in", str(pa),
                 "--in", str(pb), "--out", str(out)]) == 0
    capsys.readouterr()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["m"] == 2


def test_gen_wave_roundtrip(tmp_path, capsys):
    out = tmp_path / "fields"
    assert main(["gen", "--grid", "64", "--wave", "4", "--out",
                 str(out)]) == 0
    capsys.readouterr()
    index = json.loads((out / "index.json").read_text())
    assert len(index) == 1
    f = read_field(str(out / index[0]["file"]))
    g = build_grid(1, 64)
    assert np.array_equal(f.spectral, pure_wave(g, 4).spectral)


def test_gen_bank_and_spec_files(tmp_path, capsys):
    out = tmp_path / "bank"
    assert main(["gen", "--grid", "64", "--bank", "--out", str(out)]) == 0
    capsys.readouterr()
    index = json.loads((out / "index.json").read_text())
    assert len(index) >= 20
    # each listed spec rematerializes to the stored samples
    from paraflux.testbank import GeneratorSpec, materialize
    row = index[3]
    spec = GeneratorSpec.from_json(json.dumps(row["spec"]))
    again = materialize(spec)
    stored = read_field(str(out / row["file"]))
    assert np.allclose(stored.physical, again.physical, atol=1e-14)


def test_gen_needs_a_source(capsys):
    assert main(["gen", "--grid", "64"]) == 2
    capsys.readouterr()


def test_usage_error_exit_code(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
