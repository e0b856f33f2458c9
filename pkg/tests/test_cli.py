import csv
import json
import math

import numpy as np
import pytest

from relheat.cli import main


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_poly_json(capsys):
    assert main(["poly", "--family", "bessel", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == '{"n":3,"coefficients":["0","3","3","1"]}'


def test_poly_rational_strings(capsys):
    assert main(["poly", "--family", "gen_ab", "--n", "2", "--alpha", "1", "--beta", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["coefficients"] == ["0", "5/4", "1/4"]
    assert main(["poly", "--family", "rhp", "--n", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 2 and payload["terms"]


def test_poly_needs_index(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["poly", "--family", "gen_lk", "--n", "2"])
    assert exc.value.code == 2


def test_verify_polynomials(capsys):
    assert main(["verify", "--suite", "polynomials", "--nmax", "20"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_bad_arguments_exit_two(capsys):
    for argv in (["poly", "--family", "nope", "--n", "1"], ["evolve", "--equation", "rel_heat"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_figures_two(tmp_path):
    assert main(["figures", "--which", "2", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig2_t0.csv", "fig2_t1.csv", "fig2_t2.csv"]
    for name in names:
        header, data = read_csv(tmp_path / name)
        assert header == ["x", "F"]
        mass = np.trapezoid(data[:, 1], data[:, 0])
        assert mass == pytest.approx(1.0, abs=1e-6)
    _, t0 = read_csv(tmp_path / "fig2_t0.csv")
    np.testing.assert_allclose(t0[:, 1], np.exp(-t0[:, 0] ** 2) / math.sqrt(math.pi), atol=1e-12)


def test_figure_three_is_normalized(tmp_path):
    argv = ["figures", "--which", "3", "--out", str(tmp_path), "--x-min", "-10", "--x-max", "10", "--points", "81"]
    assert main(argv) == 0
    for t in (0, 1, 2):
        _, data = read_csv(tmp_path / f"fig3_t{t}.csv")
        centre = np.argmin(np.abs(data[:, 0]))
        assert data[centre, 1] == pytest.approx(1.0, abs=1e-12)
    _, t0 = read_csv(tmp_path / "fig3_t0.csv")
    np.testing.assert_allclose(t0[:, 1], np.exp(-t0[:, 0] ** 2), atol=1e-12)


def test_output_is_deterministic(tmp_path):
    argv = ["evolve", "--equation", "rel_heat", "--t", "1", "--x-min", "-5", "--x-max", "5", "--points", "21"]
    assert main(argv + ["--out", str(tmp_path / "a.csv")]) == 0
    assert main(argv + ["--out", str(tmp_path / "b.csv")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    header, data = read_csv(tmp_path / "a.csv")
    assert header == ["x", "F"] and data.shape == (21, 2)
    # 17 significant digits round-trip the doubles
    line = (tmp_path / "a.csv").read_text().splitlines()[5]
    assert all(float(v) == float(repr(float(v))) for v in line.split(","))


def test_routes_agree_through_cli(tmp_path):
    common = ["evolve", "--equation", "sqrt_drift", "--t", "1", "--x-min", "-4", "--x-max", "4", "--points", "17"]
    for route in ("closed", "spectral"):
        assert main(common + ["--route", route, "--out", str(tmp_path / f"{route}.csv")]) == 0
    _, a = read_csv(tmp_path / "closed.csv")
    _, b = read_csv(tmp_path / "spectral.csv")
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_numerical_failure_exits_one(capsys):
    argv = ["evolve", "--equation", "gen_lk", "--index", "1/3", "--mu", "3", "--route", "convolution", "--t", "1"]
    assert main(argv) == 1
    assert "relheat:" in capsys.readouterr().err


def test_config_merges_under_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "bessel", "n": 4}))
    assert main(["--config", str(cfg), "poly"]) == 0
    assert json.loads(capsys.readouterr().out)["coefficients"] == ["0", "15", "15", "6", "1"]
    assert main(["--config", str(cfg), "poly", "--n", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["coefficients"] == ["0", "1", "1"]


def test_bad_config_is_usage_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    with pytest.raises(SystemExit) as exc:
        main(["--config", str(cfg), "poly", "--family", "bessel", "--n", "1"])
    assert exc.value.code == 2


def test_expand_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(["expand", "--f", "0,0,0,1", "--y", "1", "--nmax", "4", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"y", "coefficients", "error_estimates"}
    np.testing.assert_allclose(payload["coefficients"], [0, 3, 0, 1, 0], atol=1e-9)
    assert main(["expand", "--f", "rh:3", "--y", "0.5", "--nmax", "4", "--out", str(out)]) == 0
    np.testing.assert_allclose(json.loads(out.read_text())["coefficients"], [0, 0, 0, 1, 0], atol=1e-9)


def test_expand_rejects_zero_y():
    with pytest.raises(SystemExit) as exc:
        main(["expand", "--f", "1", "--y", "0"])
    assert exc.value.code == 2


def test_dirac_commands(tmp_path, capsys):
    assert main(["dirac", "--check"]) == 0
    assert "FAIL" not in capsys.readouterr().out
    out = tmp_path / "d.csv"
    assert main(["dirac", "--t", "0.5", "--x-min", "-3", "--x-max", "3", "--points", "13", "--out", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["x", "phi1", "phi2"] and data.shape == (13, 3)
