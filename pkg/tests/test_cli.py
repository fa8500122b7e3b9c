import csv
import json
import math

import numpy as np
import pytest

from hausdorff_bergman.cli import format_complex, main, parse_complex

ATOM1 = {"atoms": [{"t": 1.0, "w": 1.0}], "segments": []}
SEG12 = {
    "atoms": [],
    "segments": [
        {"lo": 1.0, "hi": 2.0, "density": {"kind": "const", "params": [1.0]}}
    ],
}
DIVERGENT = {
    "atoms": [],
    "segments": [
        {"lo": 0.0, "hi": "inf", "density": {"kind": "const", "params": [1.0]},
         "exp_lo": 0.0, "exp_hi": 0.0}
    ],
}


@pytest.fixture
def measures(tmp_path):
    paths = {}
    for name, doc in (("atom1", ATOM1), ("seg12", SEG12), ("divergent", DIVERGENT)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    return paths


# ---------------------------------------------------------------------------
# complex parsing / formatting
# ---------------------------------------------------------------------------


def test_parse_complex_forms():
    assert parse_complex("0+1i") == 1j
    assert parse_complex("-0.25+0i") == -0.25
    assert parse_complex("0.3+1.2i") == 0.3 + 1.2j
    assert parse_complex("1e-3-2.5e+1i") == complex(1e-3, -25.0)


def test_parse_complex_rejects_bad_forms():
    for bad in ("1", "i", "1+i", "1 + 2i", "2i", "abc"):
        with pytest.raises(ValueError):
            parse_complex(bad)


def test_format_complex_snaps_noise():
    assert format_complex(complex(-0.25, -3e-17)) == "-0.25+0i"
    assert format_complex(complex(0.3, 1.2)) == "0.3+1.2i"


# ---------------------------------------------------------------------------
# apply
# ---------------------------------------------------------------------------


def test_apply_identity_atom(measures, capsys):
    code = main(["apply", "-m", measures["atom1"], "-f", "ratpow:shift=1,exp=2",
                 "-z", "0+1i"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "-0.25+0i"


def test_apply_uniform_segment(measures, capsys):
    code = main(["apply", "-m", measures["seg12"], "-f", "ratpow:shift=1,exp=2",
                 "-z", "0+1i"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    value = float(out[0].split("+")[0])
    np.testing.assert_allclose(value, -(math.log(1.5) - 1.0 / 6.0), rtol=1e-8)


def test_apply_divergent_needs_delta(measures, capsys):
    code = main(["apply", "-m", measures["divergent"], "-f",
                 "ratpow:shift=1,exp=2", "-z", "0+1i"])
    err = capsys.readouterr().err
    assert code == 1
    assert "moment diverges" in err


def test_apply_divergent_with_delta(measures, capsys):
    code = main(["apply", "-m", measures["divergent"], "-f",
                 "ratpow:shift=1,exp=2", "-z", "0+1i", "--delta", "0.25"])
    assert code == 0


def test_apply_batch_csv(measures, tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("0+1i\n# comment\n1+2i\n")
    code = main(["apply", "-m", measures["seg12"], "-f", "ratpow:shift=1,exp=2",
                 "--points", str(pts)])
    out = capsys.readouterr().out
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["x", "y", "re", "im", "err"]
    assert len(rows) == 3
    assert float(rows[1][0]) == 0.0 and float(rows[1][1]) == 1.0


def test_apply_requires_point(measures, capsys):
    code = main(["apply", "-m", measures["atom1"], "-f", "ratpow:shift=1,exp=2"])
    assert code == 2


def test_apply_negative_real_point(measures, capsys):
    code = main(["apply", "-m", measures["atom1"], "-f", "ratpow:shift=1,exp=2",
                 "-z", "-5+2i"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    expected = (complex(-5, 2) + 1j) ** -2
    assert parse_complex(out[0]) == pytest.approx(expected, rel=1e-10)


def test_apply_quasi(measures, capsys):
    code = main(["apply", "-m", measures["atom1"], "-f", "ratpow:shift=1,exp=2",
                 "-z", "0+1i", "--quasi"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "-0.25+0i"  # identity atom


# ---------------------------------------------------------------------------
# norm / moment / classify
# ---------------------------------------------------------------------------


def test_norm_of_rational(capsys):
    code = main(["norm", "-f", "ratpow:shift=1,exp=2", "-p", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    np.testing.assert_allclose(float(out[0]), 0.5, rtol=1e-6)


def test_moment_alpha(measures, capsys):
    code = main(["moment", "-m", measures["seg12"], "--alpha", "0"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    np.testing.assert_allclose(float(out[0]), 1.0, rtol=1e-10)


def test_moment_infinite(measures, capsys):
    code = main(["moment", "-m", measures["divergent"], "-p", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "inf"


def test_classify(measures, capsys):
    code = main(["classify", "-m", measures["divergent"], "-p", "2"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "Unbounded"
    code = main(["classify", "-m", measures["seg12"], "-p", "2"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "Bounded"


def test_missing_measure_file_is_usage_error(capsys):
    code = main(["moment", "-m", "/nonexistent.json", "--alpha", "0"])
    assert code == 2


# ---------------------------------------------------------------------------
# sweep + plotdata
# ---------------------------------------------------------------------------


def test_sweep_and_plotdata(measures, tmp_path, capsys):
    out = tmp_path / "sweepdir"
    code = main(["sweep", "-m", measures["seg12"], "-p", "2",
                 "--epsilons", "0.2,0.1,0.05", "-o", str(out)])
    assert code == 0
    capsys.readouterr()
    doc = json.loads((out / "sweep.json").read_text())
    assert doc["schema_version"] == 1
    assert len(doc["ratios"]) == 3
    assert doc["passed"] is True

    code = main(["plotdata", "--report", str(out / "sweep.json"), "-o", str(out)])
    assert code == 0
    capsys.readouterr()
    lines = (out / "sweep_plot.dat").read_text().splitlines()
    # target line equals the report target to the digit
    assert float(lines[0].split()[-1]) == doc["target"]
    data = [line.split() for line in lines[1:]]
    assert [float(e) for e, _ in data] == doc["epsilons"]
    assert [float(r) for _, r in data] == doc["ratios"]


def test_plotdata_missing_report(tmp_path, capsys):
    code = main(["plotdata", "--report", str(tmp_path / "none.json")])
    assert code == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def small_suite(extra=None):
    experiments = [
        {"kind": "gnorm", "lambdas": [1.0], "deltas": [1.0], "p": 2.0},
        {"kind": "sector", "case": "I", "p": 6.0, "eps": 0.05, "samples": 500},
        {"kind": "sharpness", "p": 2.0, "epsilons": [0.2, 0.1, 0.05],
         "measure": SEG12},
    ]
    if extra:
        experiments.extend(extra)
    return {"experiments": experiments}


def test_verify_suite_passes(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps(small_suite()))
    out = tmp_path / "reports"
    code = main(["verify", "--suite", str(suite), "-o", str(out)])
    stdout = capsys.readouterr().out
    assert code == 0
    doc = json.loads((out / "reports.json").read_text())
    assert doc["schema_version"] == 1
    assert all(r["passed"] for r in doc["reports"])
    assert "PASS" in stdout
    with open(out / "reports.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "experiment"
    assert len(rows) == len(doc["reports"]) + 1


def test_verify_suite_with_measure_paths(tmp_path, capsys):
    (tmp_path / "m.json").write_text(json.dumps(SEG12))
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"experiments": [
        {"kind": "sharpness", "p": 2.0, "epsilons": [0.2, 0.1, 0.05],
         "measure": "m.json"},
        {"kind": "boundedness", "ps": [2.0], "measures": ["m.json"]},
    ]}))
    out = tmp_path / "reports"
    code = main(["verify", "--suite", str(suite), "-o", str(out)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads((out / "reports.json").read_text())
    assert all(r["passed"] for r in doc["reports"])


def test_norm_of_truncated_operator_image(measures, capsys):
    code = main(["norm", "-f", "ratpow:shift=1,exp=2", "-m", measures["divergent"],
                 "--delta", "0.25", "-p", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert float(out[0]) > 0.0


def test_verify_designed_failure(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps(small_suite(
        [{"kind": "sharpness", "p": 2.0, "epsilons": [0.2, 0.1, 0.05],
          "measure": DIVERGENT}]
    )))
    out = tmp_path / "reports"
    code = main(["verify", "--suite", str(suite), "-o", str(out)])
    stdout = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in stdout
    doc = json.loads((out / "reports.json").read_text())
    assert any(not r["passed"] for r in doc["reports"])


def test_verify_empty_suite(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({"experiments": []}))
    out = tmp_path / "reports"
    code = main(["verify", "--suite", str(suite), "-o", str(out)])
    assert code == 0
    doc = json.loads((out / "reports.json").read_text())
    assert doc["reports"] == []


def test_verify_bad_config(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text("{not json")
    assert main(["verify", "--suite", str(suite)]) == 2
    suite.write_text(json.dumps({"experiments": [{"kind": "bogus"}]}))
    assert main(["verify", "--suite", str(suite)]) == 2


def test_unknown_flag_exits_2(measures):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "-m", measures["seg12"], "--frobnicate"])
    assert exc.value.code == 2


def test_cli_deterministic(measures, capsys):
    main(["apply", "-m", measures["seg12"], "-f", "test:p=2,eps=0.1",
          "-z", "0.3+1.2i"])
    first = capsys.readouterr().out
    main(["apply", "-m", measures["seg12"], "-f", "test:p=2,eps=0.1",
          "-z", "0.3+1.2i"])
    second = capsys.readouterr().out
    assert first == second
