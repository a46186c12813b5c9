import csv
import io
import json
import subprocess
import sys

import pytest

from gcas.cli import main

from conftest import TABLE_I

EXAMPLE_PARAMS = {"theorem": "t1", "q": 6, "b": 2, "m": 1, "n": 3, "N": 3, "k": 1,
                  "partitions": [[4, 1, 2, 3]], "d": [[1, 1, 1]], "lambda0": 0}


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def table_set(tmp_path, capsys):
    out = tmp_path / "set.json"
    assert main(["gen", write(tmp_path / "p.json", EXAMPLE_PARAMS), "--output", str(out)]) == 0
    capsys.readouterr()
    return out


def test_gen_example(table_set):
    doc = json.loads(table_set.read_text())
    assert len(doc["members"]) == 9
    assert all(len(m) == 2 and all(len(r) == 8 for r in m) for m in doc["members"])


def test_gen_csv(tmp_path, capsys):
    assert main(["gen", write(tmp_path / "p.json", EXAMPLE_PARAMS), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:2] == ["q,rows,cols", "6,2,8"] and len(lines) == 11


def test_gen_validation_failure(tmp_path, capsys):
    assert main(["gen", write(tmp_path / "p.json", dict(EXAMPLE_PARAMS, N=4))]) == 2
    assert "divide" in capsys.readouterr().err


def test_gen_missing_and_bad_files(tmp_path, capsys):
    assert main(["gen", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["gen", str(bad)]) == 1
    assert main(["gen", write(tmp_path / "x.json", {"theorem": "t9"})]) == 1


def test_gen_t2_strategy_override(tmp_path, capsys):
    doc = {"theorem": "t2", "q": 4, "b1": 2, "b2": 2, "m": 2, "n": 2, "N1": 2, "N2": 2,
           "x_partitions": [[1, 2]], "y_partitions": [[1, 2]]}
    p = write(tmp_path / "t2.json", doc)
    for strategy in ("as-printed", "as-printed-scaled", "mirror-t1"):
        out = tmp_path / f"{strategy}.json"
        assert main(["gen", p, "--strategy", strategy, "-o", str(out)]) == 0
        assert main(["verify", str(out)]) == 0


def test_verify_table_i(table_set, capsys):
    assert main(["verify", str(table_set)]) == 0
    out = capsys.readouterr().out
    assert "peak=144" in out and "GCAS: yes (9,2,8)" in out


def test_verify_perturbed(table_set, tmp_path, capsys):
    doc = json.loads(table_set.read_text())
    doc["members"][4][1][5] = (doc["members"][4][1][5] + 1) % 6
    assert main(["verify", write(tmp_path / "bad.json", doc)]) == 3
    assert "nonzero at" in capsys.readouterr().out


def test_verify_singleton(tmp_path, capsys):
    doc = {"q": 2, "rows": 1, "cols": 1, "members": [[[1]]]}
    assert main(["verify", write(tmp_path / "one.json", doc)]) == 0


def test_verify_unparsable(tmp_path, capsys):
    assert main(["verify", write(tmp_path / "x.json", {"q": 2})]) == 1


def test_example1_output(capsys):
    assert main(["example1"]) == 0
    out = capsys.readouterr().out
    lines = {line.strip() for line in out.splitlines()}
    for rows in TABLE_I:
        assert set(rows) <= lines
    assert out.splitlines()[-1] == "GCAS: yes (9,2,8)"
    assert main(["example1"]) == 0
    assert capsys.readouterr().out == out


def test_aacf_dump(table_set, tmp_path, capsys):
    out = tmp_path / "aacf.csv"
    assert main(["aacf-dump", str(table_set), "--output", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 3 * 15
    assert "0,0,144.0,0.0,0" in out.read_text().splitlines()
    for r in rows:
        if (r["u1"], r["u2"]) != ("0", "0"):
            assert r["exact_zero"] == "1"
            assert abs(float(r["re"])) < 1e-6 and abs(float(r["im"])) < 1e-6


def test_aacf_dump_singleton(tmp_path, capsys):
    p = write(tmp_path / "one.json", {"q": 2, "rows": 1, "cols": 1, "members": [[[0]]]})
    assert main(["aacf-dump", p]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["0,0,1.0,0.0,0"]


def test_sweep_small(tmp_path, capsys):
    bounds = {"t1": {"max_vars": 3, "max_cells": 8, "max_set_size": 16, "draws": 2},
              "t2": {"max_m": 1, "max_n": 2, "max_set_size": 32, "moduli": [4], "draws": 1}}
    report = tmp_path / "report.csv"
    assert main(["sweep", "--bounds", write(tmp_path / "b.json", bounds), "--output", str(report)]) == 0
    rows = list(csv.DictReader(io.StringIO(report.read_text())))
    assert rows and all(r["verdict"] == "pass" for r in rows if r["theorem"] == "t1")
    assert {r["strategy"] for r in rows if r["theorem"] == "t2"} == {"as-printed", "as-printed-scaled", "mirror-t1"}


def test_sweep_empty_bounds(tmp_path, capsys):
    bounds = {"t1": {"moduli": [5]}, "t2": {"moduli": [5]}}
    report = tmp_path / "report.csv"
    assert main(["sweep", "--bounds", write(tmp_path / "b.json", bounds), "-o", str(report)]) == 0
    assert report.read_text().splitlines() == ["theorem,params,strategy,draw,verdict,elapsed"]
    assert "warning" in capsys.readouterr().err


def test_sweep_bad_bounds(tmp_path, capsys):
    assert main(["sweep", "--bounds", write(tmp_path / "b.json", {"t7": {}})]) == 1


def test_compare_default(capsys):
    assert main(["compare"]) == 0
    out = capsys.readouterr().out
    section = out.split("== Th1 vs Ref18a ==")[1].split("==")[0]
    assert any(line.split()[:8] == ["2", "8", "6", "N=3;b=2;k=1;m=1;n=3", "9", "3", "3", "*"]
               for line in section.splitlines())


def test_compare_zero_bounds(tmp_path, capsys):
    p = write(tmp_path / "b.json", {"max_L1": 0, "max_L2": 0, "max_set_size": 0, "max_q": 0})
    assert main(["compare", "--bounds", p]) == 0
    assert "==" not in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gcas", "example1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "41445255" in proc.stdout
