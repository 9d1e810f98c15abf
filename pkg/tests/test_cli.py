import json
import math

import pytest

from freeconv.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def envelope(out):
    return json.loads(out.splitlines()[0])


def test_nc_enumerate(capsys):
    code, out, _ = run_cli(capsys, "nc", "enumerate", "--n", "3")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["count"] == 5
    assert "{1,3}{2}" in payload["partitions"]


def test_nc_kreweras_serialization(capsys):
    code, out, _ = run_cli(capsys, "nc", "kreweras",
                           "--partition", "{1,4,5}{2,3}")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["kreweras"] == "{1,3}{2}{4}{5}"
    assert payload["geodesic_perm"] == "(1 4 5)(2 3)"


def test_nc_mobius(capsys):
    code, out, _ = run_cli(capsys, "nc", "mobius", "--a", "{1}{2}{3}{4}")
    assert code == 0
    assert envelope(out)["payload"]["mobius"] == -5


def test_transform_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "transform", "m2r",
                           "--moments", "[0, 1, 0, 2, 0, 5]")
    assert code == 0
    r = envelope(out)["payload"]
    assert r["coeffs"] == pytest.approx([0, 1, 0, 0, 0, 0], abs=1e-12)
    code, out, _ = run_cli(capsys, "transform", "r2m",
                           "--series", json.dumps(r))
    assert code == 0
    assert envelope(out)["payload"]["moments"] == pytest.approx(
        [0, 1, 0, 2, 0, 5], abs=1e-12)


def test_cumulants_subcommand(capsys):
    code, out, _ = run_cli(capsys, "cumulants", "--spec",
                           "marchenko-pastur:lambda=0.5", "--order", "8")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["cumulants"] == pytest.approx([0.5] * 8, abs=1e-10)
    assert payload["route_agreement_error"] < 1e-9


def test_catalog_csv(capsys, tmp_path):
    out_path = tmp_path / "sc.csv"
    code, out, _ = run_cli(capsys, "catalog", "semicircle",
                           "--grid", "-2.5:2.5:101", "--eps", "1e-4",
                           "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x,density,G_re,G_im"
    assert len(lines) == 102
    header = json.loads((tmp_path / "sc.json").read_text())
    assert header["moments"][:4] == [0.0, 1.0, 0.0, 2.0]
    # density column peaks near 1/pi at the center
    mid = lines[51].split(",")
    assert float(mid[1]) == pytest.approx(1 / math.pi, abs=1e-3)


def test_catalog_stdout_csv(capsys):
    code, out, _ = run_cli(capsys, "catalog", "bernoulli1", "--param", "p=0.25",
                           "--grid", "0:1:3", "--eps", "1e-3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "x,density,G_re,G_im"
    assert len(lines) == 5


def test_catalog_plot(capsys, tmp_path):
    out_path = tmp_path / "mp.csv"
    code, out, _ = run_cli(capsys, "catalog", "marchenko-pastur",
                           "--param", "lambda=1", "--grid", "0:4.5:41",
                           "--out", str(out_path), "--plot")
    assert code == 0
    assert (tmp_path / "mp.png").exists()
    assert envelope(out)["payload"]["plot_path"] == str(tmp_path / "mp.png")


def test_convolve_add(capsys):
    code, out, _ = run_cli(capsys, "convolve", "add", "bernoulli2",
                           "bernoulli2", "--order", "12")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["moments"][:6] == pytest.approx([0, 2, 0, 6, 0, 20])


def test_convolve_compress(capsys):
    code, out, _ = run_cli(capsys, "convolve", "compress", "bernoulli2",
                           "--t", "0.5", "--rescale", "--order", "6")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["moments"] == pytest.approx([0, 0.5, 0, 0.375, 0, 0.3125],
                                               abs=1e-10)
    code, out, _ = run_cli(capsys, "convolve", "compress", "bernoulli2",
                           "--t", "0.5", "--order", "6")
    assert envelope(out)["payload"]["atom_at_zero_lower_bound"] == 0.5


def test_convolve_product_support(capsys):
    code, out, _ = run_cli(capsys, "convolve", "product-support",
                           "free-poisson-1", "--n", "100000")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["L_n_over_n"] == pytest.approx(math.e, rel=0.01)


def test_mc_trace_with_prediction(capsys):
    code, out, _ = run_cli(capsys, "mc", "trace", "--word", "A A A A",
                           "--N", "16", "--reps", "400", "--seed", "7")
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["exact_prediction"] == pytest.approx(2 + 1 / 256)
    assert abs(payload["z"]) < 5


def test_mc_spectrum_files(capsys, tmp_path):
    out_path = tmp_path / "h.csv"
    code, out, _ = run_cli(capsys, "mc", "spectrum", "--ensemble", "gue",
                           "--N", "32", "--reps", "2", "--bins", "10",
                           "--seed", "3", "--out", str(out_path), "--plot")
    assert code == 0
    rows = out_path.read_text().strip().splitlines()
    assert rows[0] == "bin_lo,bin_hi,count,density"
    assert len(rows) == 11
    assert sum(int(r.split(",")[2]) for r in rows[1:]) == 64
    assert (tmp_path / "h.png").exists()


def test_brown_radial_csv(capsys, tmp_path):
    out_path = tmp_path / "radial.csv"
    code, out, _ = run_cli(capsys, "brown", "radial", "--sigma",
                           "spec:marchenko-pastur:lambda=1", "--w", "0",
                           "--grid", "64", "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().strip().splitlines()
    assert rows[0] == "r,F,rho"
    r, f, rho = map(float, rows[-1].split(","))
    assert r == pytest.approx(1.0)
    assert f == pytest.approx(1.0)
    assert rho == pytest.approx(2.0, abs=1e-6)


def test_brown_fkdet(capsys, tmp_path):
    mat = tmp_path / "m.json"
    mat.write_text(json.dumps([[0, 1], [1, 0]]))
    code, out, _ = run_cli(capsys, "brown", "fkdet", "--matrix", str(mat))
    assert code == 0
    payload = envelope(out)["payload"]
    assert payload["fk_det"] == pytest.approx(1.0)
    assert payload["relative_gap"] < 1e-12
    # complex entries as [re, im] pairs
    mat.write_text(json.dumps([[[0, 1], [0, 0]], [[0, 0], [0, 1]]]))
    code, out, _ = run_cli(capsys, "brown", "fkdet", "--matrix", str(mat))
    assert envelope(out)["payload"]["fk_det"] == pytest.approx(1.0)


def test_repro_subcommand(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "repro", "addition",
                           "--out", str(report_path))
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["pass"] is True
    for check in report["checks"]:
        assert {"name", "observed", "expected", "tol", "pass",
                "anchor"} <= set(check)


def test_repro_failure_exit_code(capsys):
    # the Poisson-limit suite carries the unattainable written tolerance
    code, out, _ = run_cli(capsys, "repro", "poisson")
    assert code == 1
    payload = envelope(out)["payload"]
    failing = [c for c in payload["checks"] if not c["pass"]]
    assert failing  # orders 3..8


def test_payload_determinism(capsys):
    args = ("mc", "trace", "--word", "A A", "--N", "8", "--reps", "50",
            "--seed", "90125")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    p1 = json.dumps(envelope(out1)["payload"], sort_keys=True)
    p2 = json.dumps(envelope(out2)["payload"], sort_keys=True)
    assert p1 == p2


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("FREECONV_SEED", "777")
    code, out, _ = run_cli(capsys, "mc", "trace", "--word", "A A",
                           "--N", "8", "--reps", "20")
    assert code == 0
    assert envelope(out)["payload"]["seed"] == 777


def test_validation_exit_codes(capsys):
    code, _, err = run_cli(capsys, "catalog", "nosuchlaw")
    assert code == 2
    assert "unknown distribution" in err
    code, _, _ = run_cli(capsys, "nc", "enumerate", "--n", "99")
    assert code == 2
    code, _, _ = run_cli(capsys, "transform", "m2s",
                         "--moments", "[0, 1, 0, 2]")
    assert code == 2  # vanishing mean: S undefined


def test_numerical_failure_exit_code(capsys):
    # pole-limited support: no branch-point critical value
    code, _, err = run_cli(capsys, "convolve", "product-support",
                           "bernoulli-mean1:p=0.5", "--n", "2")
    assert code == 1
    assert "numerical failure" in err


def test_threads_flag_same_result(capsys):
    base = ("mc", "trace", "--word", "A A A A", "--N", "8", "--reps", "60",
            "--seed", "31")
    _, out1, _ = run_cli(capsys, *base)
    _, out2, _ = run_cli(capsys, *base, "--threads", "3")
    m1 = envelope(out1)["payload"]["mean"]
    m2 = envelope(out2)["payload"]["mean"]
    assert m1 == pytest.approx(m2, abs=1e-12)


def test_transform_bridge_cli(capsys):
    code, out, _ = run_cli(capsys, "transform", "r2s", "--series",
                           json.dumps({"coeffs": [2.0] * 8, "order": 7}))
    assert code == 0
    s = envelope(out)["payload"]
    # S of the rate-2 free Poisson law: 1/(2+z)
    assert s["coeffs"][0] == pytest.approx(0.5)
    code, out, _ = run_cli(capsys, "transform", "s2r", "--series",
                           json.dumps(s))
    assert envelope(out)["payload"]["coeffs"] == pytest.approx([2.0] * 8,
                                                               abs=1e-9)


def test_nc_all_pairings_flag(capsys):
    code, out, _ = run_cli(capsys, "nc", "pairings", "--n", "4", "--all")
    assert code == 0
    assert envelope(out)["payload"]["count"] == 3
    code, out, _ = run_cli(capsys, "nc", "pairings", "--n", "4")
    assert envelope(out)["payload"]["count"] == 2


def test_convolve_missing_operand(capsys):
    code, _, err = run_cli(capsys, "convolve", "add", "bernoulli2")
    assert code == 2
    assert "two laws" in err


def test_convolve_mul_cli_matches_oracle(capsys):
    code, out, _ = run_cli(capsys, "convolve", "mul",
                           "marchenko-pastur:lambda=1", "bernoulli1:p=0.5",
                           "--order", "8")
    assert code == 0
    moments = envelope(out)["payload"]["moments"]
    # E(xyxy) = m2(x) m1(y)^2 + m1(x)^2 m2(y) - (m1(x) m1(y))^2
    assert moments[1] == pytest.approx(2 * 0.25 + 1 * 0.5 - 0.25)


def test_brown_fkdet_dict_matrix_format(capsys, tmp_path):
    mat = tmp_path / "m.json"
    mat.write_text(json.dumps({"re": [[0, 0], [0, 0]], "im": [[1, 0], [0, 1]]}))
    code, out, _ = run_cli(capsys, "brown", "fkdet", "--matrix", str(mat))
    assert code == 0
    assert envelope(out)["payload"]["fk_det"] == pytest.approx(1.0)
