import csv
import json

from curvint.cli import main


def test_verify_writes_report(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--dim", "2", "--k1", "0", "--k2", "-1", "--prop", "4", "--samples", "8", "--seed", "1", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0 and doc["overall_pass"]
    assert doc["spec"] == {"dim": 2, "k1": 0.0, "k2": -1.0}


def test_verify_exit_code_reflects_failure(tmp_path):
    out = tmp_path / "r.json"
    # a tolerance no floating-point residual can meet
    code = main(["verify", "--dim", "2", "--k1", "1", "--k2", "1", "--prop", "2", "--samples", "5", "--tol", "0", "--out", str(out)])
    assert code == 1
    assert not json.loads(out.read_text())["overall_pass"]


def test_verify_is_byte_identical(tmp_path):
    args = ["verify", "--dim", "3", "--k1", "-1", "--k2", "1", "--system", "gkc", "--i", "2", "--samples", "6", "--seed", "42"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_with_explicit_parameters(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--dim", "3", "--k1", "1", "--k2", "1", "--prop", "3", "--beta0", "0.5", "--beta", "0.2,0.3,0.4", "--samples", "5", "--out", str(out)])
    assert code == 0


def test_simulate_csv(tmp_path):
    out = tmp_path / "t.csv"
    code = main([
        "simulate", "--dim", "3", "--k1", "-1", "--k2", "1", "--system", "sw", "--beta0", "0.5", "--beta", "0.1,0.1,0.1",
        "--q0", "0.8,0.7,1.2", "--p0", "0.1,0.05,0.02", "--dt", "1e-3", "--steps", "20", "--stride", "10", "--out", str(out),
    ])
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["t", "r", "theta", "phi3", "p_r", "p_theta", "p_phi3", "H", "Q^(2)", "Q^(3)", "Q_(2)", "I01", "I02", "I03"]
    assert len(rows) == 4
    assert rows[1][1] == "0.80000000000000004"
    assert all(float(v) == float(v) for v in rows[-1])


def test_simulate_reports_singularity(tmp_path):
    out = tmp_path / "t.csv"
    code = main([
        "simulate", "--dim", "3", "--k1", "0", "--k2", "1", "--system", "free",
        "--q0", "1.0,0.05,1.0", "--p0", "0,-0.5,0", "--dt", "1e-2", "--steps", "500", "--method", "rk4", "--out", str(out),
    ])
    assert code == 2
    assert len(out.read_text().splitlines()) > 2


def test_brackets_golden(tmp_path, capsys):
    golden = tmp_path / "g.txt"
    assert main(["brackets", "--exact", "--dim", "3", "--golden", str(golden)]) == 0
    assert "0 nonzero residuals" in capsys.readouterr().out
    assert golden.read_text().startswith("# dim 3: 15 pairs, 0 failures")


def test_map(capsys):
    assert main(["map", "--dim", "2", "--k1", "0", "--k2", "1", "--coords", "2,0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["x"] == [1.0, 2.0, 0.0]
    assert doc["label"] == "Euclidean"
    main(["map", "--dim", "2", "--k1", "0", "--k2", "1", "--coords", "2,0", "--with-momenta", "0.5,1.0"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["p"] == [-1.0, 0.5, 0.5]
