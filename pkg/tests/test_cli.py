import json
import os

import pytest

from ribbonforge.cli import RunConfig, _parse_range, main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_errors(capsys):
    code, _, err = run(capsys, ["verify", "radford", "1", "3"])
    assert code == 2 and "m >= 2" in err
    code, _, err = run(capsys, ["verify", "radford", "2"])
    assert code == 2
    code, _, err = run(capsys, ["verify", "taft", "3", "2"])
    assert code == 2
    code, _, err = run(capsys, ["ribbon", "1", "3"])
    assert code == 2
    code, _, err = run(capsys, ["sweep", "--m", "3..2", "--n", "1..1"])
    assert code == 2
    code, _, err = run(capsys, ["sweep", "--m", "bogus", "--n", "1..1"])
    assert code == 2


def test_argparse_exits_2_on_unknown_command():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_parse_range():
    assert _parse_range("2..4") == (2, 3, 4)
    assert _parse_range("3") == (3,)


def test_runconfig_invariants():
    with pytest.raises(ValueError):
        RunConfig(command="verify", full_bound=0)
    with pytest.raises(ValueError):
        RunConfig(command="sweep", m_range=(), n_range=(1,))


def test_verify_taft(capsys):
    code, out, _ = run(capsys, ["verify", "taft", "2"])
    assert code == 0
    assert "all checks passed" in out


def test_verify_json_stdout(capsys):
    code, out, _ = run(capsys, ["verify", "radford", "2", "1", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "ribbonforge-verify-v1"
    assert data["ok"] is True
    names = {c["name"] for c in data["checks"]}
    assert {"base_axioms", "dual_axioms", "dual_coopposite_axioms",
            "dual_structure", "dual_basis_formula", "double_axioms",
            "quasitriangular", "drinfeld_u_conjugation",
            "drinfeld_u_comultiplication"} <= names


def test_ribbon_counts_and_exit(capsys):
    code, out, _ = run(capsys, ["ribbon", "3", "1"])
    assert code == 0
    assert "quasi-ribbon elements: 1" in out
    assert "ribbon elements: 1" in out
    assert "closed-form elements match: True" in out


def test_ribbon_degenerate_exit(capsys):
    # counts are produced but theorem comparison honestly fails at n = 1
    # with even m, so the exit code reports a mismatch
    code, out, _ = run(capsys, ["ribbon", "2", "1"])
    assert code == 1
    assert "ribbon elements: 4" in out
    assert "MISMATCH" in out


def test_ribbon_out_file_deterministic(tmp_path, capsys):
    out_dir = str(tmp_path / "reports")
    code, _, _ = run(capsys, ["ribbon", "3", "1", "--out", out_dir])
    assert code == 0
    path = os.path.join(out_dir, "ribbon-m3-n1.json")
    with open(path, "rb") as fh:
        first = fh.read()
    data = json.loads(first.decode("utf-8"))
    assert data["schema"] == "ribbonforge-report-v1"
    assert data["counts"]["ribbon"] == 1
    assert "timing_seconds" not in data
    code, _, _ = run(capsys, ["ribbon", "3", "1", "--out", out_dir])
    assert code == 0
    with open(path, "rb") as fh:
        assert fh.read() == first


def test_sweep_cached_and_forced(tmp_path, capsys):
    out_dir = str(tmp_path / "sw")
    args = ["sweep", "--m", "3..3", "--n", "1..1", "--out", out_dir]
    code, out, _ = run(capsys, args)
    assert code == 0
    assert "(3,1) quasi-ribbon=1 ribbon=1" in out
    index_path = os.path.join(out_dir, "sweep-index.json")
    with open(index_path, "rb") as fh:
        first_index = fh.read()

    code, out, _ = run(capsys, args)
    assert code == 0
    assert "(3,1) cached" in out
    with open(index_path, "rb") as fh:
        assert fh.read() == first_index

    code, out, _ = run(capsys, args + ["--force"])
    assert code == 0
    assert "(3,1) cached" not in out

    # a corrupted cell report is recomputed, not trusted
    cell = os.path.join(out_dir, "ribbon-m3-n1.json")
    with open(cell, "w", encoding="utf-8") as fh:
        fh.write("{not json")
    code, out, _ = run(capsys, args)
    assert code == 0
    assert "(3,1) cached" not in out
    with open(cell, encoding="utf-8") as fh:
        assert json.load(fh)["counts"]["ribbon"] == 1

    assert not [p for p in os.listdir(out_dir) if p.startswith(".tmp-")]


def test_sweep_budget_skip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RIBBONFORGE_BUDGET", "100")
    out_dir = str(tmp_path / "sw")
    code, out, _ = run(capsys, ["sweep", "--m", "3..3", "--n", "2..2",
                                "--out", out_dir])
    assert code == 0
    assert "(3,2) skipped: dim 144 exceeds budget" in out
    with open(os.path.join(out_dir, "sweep-index.json"), encoding="utf-8") as fh:
        index = json.load(fh)
    cell = index["cells"][0]
    assert cell["status"] == "skipped"
    assert cell["reason"] == "dim 144 exceeds budget"
    assert not os.path.exists(os.path.join(out_dir, "ribbon-m3-n2.json"))


def test_sweep_index_parity_fields(tmp_path, capsys):
    out_dir = str(tmp_path / "sw")
    code, _, _ = run(capsys, ["sweep", "--m", "3..3", "--n", "1..2",
                              "--out", out_dir])
    assert code == 0
    with open(os.path.join(out_dir, "sweep-index.json"), encoding="utf-8") as fh:
        index = json.load(fh)
    assert index["schema"] == "ribbonforge-sweep-v1"
    assert set(index["parity"]) == {
        "no_quasi_ribbon_iff_n_even",
        "one_ribbon_iff_m_and_n_odd",
        "two_ribbons_iff_m_even_n_odd",
    }
    assert all(index["parity"].values())
    assert [(c["m"], c["n"]) for c in index["cells"]] == [(3, 1), (3, 2)]
