import json

import numpy as np
import pytest

MODEL = ["--d", "1", "--lambda", "0.1", "--nu", "1", "--h", "1/32"]


def _factorize(tmp_path, capsys):
    from tgrf.experiments.cli import main
    path = tmp_path / "factor.tgrf"
    code = main(["factorize", *MODEL, "--scheme", "classical", "--gamma", "2", "--out", str(path)])
    return code, path, json.loads(capsys.readouterr().out)


def test_version(capsys):
    import tgrf
    from tgrf.experiments.cli import main
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert tgrf.__version__ in capsys.readouterr().out


def test_factorize(tmp_path, capsys):
    import tgrf
    code, path, summary = _factorize(tmp_path, capsys)
    assert code == 0
    assert summary["is_pd"]
    assert summary["grid"]["n_per_axis"] == 128
    factor = tgrf.torus.load_factor(path)
    assert factor.checksum == summary["checksum"]


def test_factorize_reports_indefinite_factor(tmp_path, capsys):
    from tgrf.experiments.cli import main
    path = tmp_path / "bad.tgrf"
    code = main([
        "factorize", "--d", "1", "--nu", "1", "--h", "2**-10", "--scheme", "classical",
        "--gamma", "1", "--out", str(path),
    ])
    assert code == 1
    assert not json.loads(capsys.readouterr().out)["is_pd"]


def test_sample(tmp_path, capsys):
    import pandas as pd
    import tgrf
    from tgrf.experiments.cli import main
    _, factor_path, _ = _factorize(tmp_path, capsys)
    binary = tmp_path / "samples.tgrf"
    assert main(["sample", "--factor", str(factor_path), "--count", "5", "--seed", "3", "--out", str(binary)]) == 0
    batch = tgrf.torus.load_samples(binary)
    assert batch.values.shape == (5, 33)
    assert batch.seed == 3

    csv = tmp_path / "samples.csv"
    assert main(["sample", "--factor", str(factor_path), "--count", "5", "--seed", "3", "--csv", "--out", str(csv)]) == 0
    np.testing.assert_array_equal(pd.read_csv(csv, float_precision="round_trip").to_numpy(), batch.values)
    assert "Wrote 5 realizations" in capsys.readouterr().out


def test_min_gamma(capsys):
    from tgrf.experiments.cli import main
    assert main(["min-gamma", "--d", "1", "--nu", "1", "--h", "1/64", "--scheme", "classical"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["n_star"] % 2 == 0
    assert result["gamma_star"] == pytest.approx(result["n_star"] / 128)
    assert result["scheme"] == "classical"


def test_eig_decay(tmp_path, capsys):
    from tgrf.experiments.cli import main
    out = tmp_path / "decay.csv"
    code = main([
        "eig-decay", "--d", "1", "--lambda", "0.1", "--nu", "1", "--h", "1/128",
        "--scheme", "expsmooth", "--n", "1024", "--out", str(out),
    ])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["expected_exponent"] == -3.0
    assert (summary["j_min"], summary["j_max"]) == (16, 256)
    assert out.read_text().startswith("j,eigenvalue")
    assert json.loads(out.with_suffix(".json").read_text())["exponent"] == summary["exponent"]


def test_fig2_from_config(tmp_path, capsys):
    import tgrf
    from tgrf.experiments.cli import main
    config = tgrf.SweepConfig.fig2(1, h_list=[2**-6], schemes=[{"kind": "expsmooth"}], workers=1)
    config_path = tmp_path / "fig2.json"
    config.to_json_file(config_path)
    output = tmp_path / "fig2.csv"
    assert main(["fig2", "--config", str(config_path), "--output", str(output)]) == 0
    assert capsys.readouterr().out.strip() == f"Wrote {output}"
    assert output.read_text().splitlines()[0] == ",".join(tgrf.experiments.FIG2_COLUMNS)


def test_validate(tmp_path, capsys):
    from tgrf.experiments.cli import main
    _, factor_path, _ = _factorize(tmp_path, capsys)
    out = tmp_path / "report.json"
    code = main(["validate", "--factor", str(factor_path), "--count", "2000", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == (0 if report["passed"] else 1)
    assert {"lags", "normality", "half_sample_max_abs_correlation"} <= set(report)


def test_missing_size_is_an_error(capsys):
    from tgrf.experiments.cli import main
    with pytest.raises(SystemExit) as e:
        main(["factorize", *MODEL, "--scheme", "classical", "--out", "x.tgrf"])
    assert e.value.code == 2


def test_eig_decay_with_classical_trend(capsys):
    from tgrf.experiments.cli import main
    code = main([
        "eig-decay", "--d", "1", "--lambda", "0.1", "--nu", "1", "--h", "1/128",
        "--scheme", "expsmooth", "--n", "1024", "--trend-h", "1/32,1/64",
    ])
    assert code == 0
    out = capsys.readouterr().out
    summary = json.loads(out[out.index("{"):])
    trend = summary["classical_prefactor_trend"]
    assert [row["h"] for row in trend["rows"]] == [1 / 32, 1 / 64]
    assert all(row["gamma"] == pytest.approx(4.0) for row in trend["rows"])
    assert np.isfinite(trend["slope"])


def test_fig2_h_list_override(tmp_path, capsys):
    import pandas as pd
    from tgrf.experiments.cli import main
    output = tmp_path / "fig2.csv"
    code = main(["fig2", "--d", "1", "--h-list", "2**-6", "--workers", "1", "--output", str(output)])
    assert code == 0
    assert capsys.readouterr().out.strip() == f"Wrote {output}"
    table = pd.read_csv(output)
    assert set(table["h"]) == {2**-6}
    assert set(table["scheme"]) >= {"classical"}
