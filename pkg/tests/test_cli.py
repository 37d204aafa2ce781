"""Command-line verbs, serialization and exit codes."""

import json
import math

import numpy as np
import pytest

from lamesusy import acceptance
from lamesusy.acceptance import CheckResult
from lamesusy.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, ResultDocument, main, run


def _json(capsys, argv):
    doc, code = run(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return json.loads(out), code


def test_edges_analytic_lame2(capsys):
    obj, code = _json(capsys, ["edges", "--p", "6", "--q", "0", "--m", "0.5", "--source", "analytic"])
    assert code == EXIT_OK
    m = 0.5
    d = math.sqrt(1 - m + m * m)
    # closed-form edges of V = 6m sn^2, shifted so the lowest one is 0
    raw = sorted([2 + 2 * m - 2 * d, 1 + m, 1 + 4 * m, 4 + m, 2 + 2 * m + 2 * d])
    ref = [e - raw[0] for e in raw]
    got = [r["E"] for r in obj["records"]]
    assert got == pytest.approx(ref, abs=1e-13)
    assert [r["nodes"] for r in obj["records"]] == [0, 1, 1, 2, 2]
    assert obj["meta"]["verb"] == "edges" and obj["meta"]["version"]


def test_gap_delta2_scan_is_zero_at_three_halves(capsys):
    obj, code = _json(capsys, ["scan", "--quantity", "gap-delta2", "--a", "3/2"])
    assert code == EXIT_OK
    assert len(obj["records"]) == 50
    assert obj["records"][-1]["m"] == 0.998
    assert all(r["delta2"] == 0.0 for r in obj["records"])


def test_free_particle_numeric_edges(capsys):
    obj, code = _json(capsys, ["edges", "--p", "0", "--q", "0", "--m", "0", "--source", "numeric",
                               "--e-max", "10"])
    assert code == EXIT_OK
    E = [r["E"] for r in obj["records"]]
    assert E == pytest.approx([0, 1, 1, 4, 4, 9, 9], abs=1e-8)


def test_fraction_input_resolves_named_table(capsys):
    obj, _ = _json(capsys, ["edges", "--p", "63/4", "--q", "3/4", "--m", "0.5"])
    assert obj["meta"]["analytic"].startswith("named")
    assert len(obj["records"]) == 5


def test_parabola_union(capsys):
    obj, _ = _json(capsys, ["edges", "--p", "12", "--q", "2", "--m", "0.5"])
    assert obj["meta"]["analytic"].startswith("parabolas")
    provs = [r["provenance"] for r in obj["records"]]
    assert all(p.startswith("table3/") for p in provs)


def test_profile_with_partner(capsys):
    obj, code = _json(capsys, ["profile", "--a", "2", "--m", "0.5", "--grid", "41", "--partner"])
    assert code == EXIT_OK
    recs = obj["records"]
    assert len(recs) == 41
    x = np.array([r["x"] for r in recs])
    from scipy import special
    sn = special.ellipj(x, 0.5)[0]
    V = np.array([r["V"] for r in recs])
    assert np.allclose(V - obj["meta"]["offset"], 3.0 * sn**2, atol=1e-12)
    assert np.allclose([r["V_minus"] for r in recs], V, atol=1e-10)


def test_partner_verdicts(capsys):
    obj, _ = _json(capsys, ["partner", "--p", "2", "--q", "2", "--m", "0.5", "--grid", "5"])
    assert obj["meta"]["verdict"] == "self-isospectral"
    obj, _ = _json(capsys, ["partner", "--p", "6", "--q", "6", "--m", "0.5", "--grid", "5"])
    assert obj["meta"]["verdict"] == "not self-isospectral"


def test_dispersion_table(capsys):
    obj, code = _json(capsys, ["dispersion", "--p", "0", "--q", "0", "--m", "0", "--e-min", "0.1",
                               "--e-max", "3", "--grid", "7"])
    assert code == EXIT_OK
    L = math.pi  # 2K(0)
    for r in obj["records"]:
        assert r["D"] == pytest.approx(2 * math.cos(math.sqrt(r["E"]) * L), abs=1e-8)
        assert "k" in r


def test_parabolas_report(capsys):
    obj, _ = _json(capsys, ["parabolas", "--p", "63/4", "--q", "3/4"])
    assert obj["meta"]["point"]["parabolas"] == [3, 5]
    obj, _ = _json(capsys, ["parabolas", "--points", "--grid", "6"])
    for r in obj["records"]:
        a, n = r["a"], r["n"]
        assert r["p"] == pytest.approx(a * (a + 1))
        assert r["q"] == pytest.approx((a - n + 1) * (a - n))


@pytest.mark.parametrize("argv", [
    ["edges", "--p", "6", "--a", "2", "--m", "0.5"],
    ["edges", "--p", "6", "--m", "1.2"],
    ["edges", "--p", "6"],
    ["edges", "--p", "-1", "--m", "0.5"],
    ["edges", "--p", "5", "--q", "5", "--m", "0.5"],
    ["edges", "--p", "x/0", "--m", "0.5"],
    ["frobnicate"],
    ["scan", "--quantity", "gap-delta2"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    capsys.readouterr()


def test_numeric_failure_exit_code(monkeypatch, capsys):
    from lamesusy import cli
    from lamesusy.errors import NumericalError

    def boom(*a, **k):
        raise NumericalError("synthetic")
    monkeypatch.setattr(cli, "band_edges_numeric", boom)
    assert main(["edges", "--p", "6", "--m", "0.5", "--source", "numeric"]) == EXIT_NUMERIC
    assert "synthetic" in capsys.readouterr().err


def test_verify_exit_codes(monkeypatch, capsys):
    assert main(["verify", "--only", "1"]) == EXIT_OK
    monkeypatch.setattr(acceptance, "CHECKS", [(1, "always fails", lambda: (False, "no"), None)])
    assert main(["verify"]) == EXIT_VERIFY
    capsys.readouterr()


def test_csv_and_json_carry_the_same_numbers(tmp_path, capsys):
    argv = ["edges", "--p", "6", "--q", "2", "--m", "0.37"]
    main(argv + ["--format", "json", "--output", str(tmp_path / "a.json")])
    main(argv + ["--format", "csv", "--output", str(tmp_path / "a.csv")])
    j = ResultDocument.from_json((tmp_path / "a.json").read_text())
    raw = (tmp_path / "a.csv").read_bytes()
    assert b"\r\n" not in raw
    c = ResultDocument.from_csv(raw.decode())
    assert j.records == c.records


def test_document_round_trip_keeps_15_digits():
    rng = np.random.default_rng(3)
    vals = rng.normal(size=20) * 10.0 ** rng.integers(-8, 8, 20)
    doc = ResultDocument({"k": 1}, [{"i": i, "v": float(v), "s": "x"} for i, v in enumerate(vals)])
    back = ResultDocument.from_json(doc.to_json())
    again = ResultDocument.from_json(back.to_json())
    assert again.records == back.records
    for r, v in zip(back.records, vals):
        assert r["v"] == pytest.approx(v, rel=1e-14)
    assert ResultDocument.from_csv(doc.to_csv()).records == back.records
