import json
from fractions import Fraction

import pytest

import nsi

QUADRIC = json.dumps({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -2]]})
P2 = json.dumps({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]]})


def test_pairing():
    f = nsi.Fan.from_json(QUADRIC)
    assert nsi.pair(f, [0, 0, 1], [0, 0, 1]) == Fraction(1, 2)
    assert nsi.cartier_index(f, [0, 0, 1]) == 2
    assert not nsi.is_cartier(f, [0, 0, 1])
    assert nsi.canonical_divisor(f) == [-1, -1, -1]


def test_chi():
    f = nsi.Fan.from_json(P2)
    assert nsi.chi(f, [1, 0, 0]) == 3
    rep = nsi.chi_report(f, [-1, -1, -1])
    assert rep["h"] == [0, 0, 1]
    assert rep["chi"] == 1


def test_limits_agree_with_pairing():
    f = nsi.Fan.from_json(QUADRIC)
    lim = nsi.self_pair_limit(f, [0, 0, 1])
    assert lim["value"] == Fraction(1, 2)
    assert lim["period"] == 2
    assert lim["samples"][:3] == [(1, 2), (2, 4), (3, 6)]
    assert nsi.pair_limit(f, [0, 0, 1], [0, 1, 0]) == nsi.pair(f, [0, 0, 1], [0, 1, 0])


def test_defects():
    f = nsi.Fan.from_json(QUADRIC)
    rep = nsi.rr_defect(f, [0, 0, 1])
    assert rep["total"] == Fraction(-1, 4)
    assert rep["per_point"] == {0: Fraction(-1, 4)}
    sweep = nsi.defect_sweep(f, 1)
    assert sweep["values"] == [Fraction(-1, 4), 0]
    assert sweep["min"] == Fraction(-1, 4)
    assert sweep["max"] == 0


def test_model_round_trip():
    f = nsi.Fan.from_json(QUADRIC)
    m = nsi.export_model(f)
    again = nsi.Model.from_json(m.to_json())
    assert again.to_json() == m.to_json()
    assert nsi.model_pair(m, [0, 0, 1, 0], [0, 0, 1, 0]) == Fraction(1, 2)
    assert nsi.mumford_pullback(m, [0, 0, 1, 0]) == [0, 0, 1, Fraction(1, 2)]
    assert nsi.sharp_pullback(m, [0, 0, 1, 0]) == [0, 0, 1, 1]
    pb = nsi.pullback(f, [0, 0, 1])
    assert pb["D(0,-1)"] == Fraction(1, 2)


def test_sheaf_ledger():
    m = nsi.Model.from_json(nsi.export_model(nsi.Fan.from_json(QUADRIC)).to_json())
    s = nsi.Sheaf.from_json(
        json.dumps({"rank": 2, "c1": [1, 0, 1, 0], "local_c2": {"0": "1/4"}, "smooth_c2": 2})
    )
    assert nsi.delta(s, m) == 5
    assert nsi.ch2(s, m) == Fraction(-3, 4)
    assert nsi.bogomolov_check(s, m)


def test_frobenius():
    f = nsi.Fan.from_json(P2)
    assert nsi.frobenius_ch2_limit(f, [1, 0, 0], 2) == Fraction(1, 2)


def test_cli_round_trip(tmp_path):
    fan_path = tmp_path / "quadric.fan"
    fan_path.write_text(QUADRIC)
    code, out, err = nsi.run_cli(
        ["pair", "--model", str(fan_path), "--d1", "0,0,1", "--d2", "0,0,1"]
    )
    assert (code, out, err) == (0, "1/2\n", "")
    code, out, err = nsi.run_cli(["chi", "--fan", str(fan_path), "--d", "0,0,-4"])
    assert (code, out) == (0, "1\n")  # the canonical class
    code, out, err = nsi.run_cli(["validate"])
    assert code == 2


def test_errors_are_exceptions():
    with pytest.raises(RuntimeError, match="ParseError"):
        nsi.Fan.from_json("{oops")
    f = nsi.Fan.from_json(QUADRIC)
    with pytest.raises(RuntimeError, match="NotCartier"):
        nsi.cartier_product(f, [[0, 0, 1], [0, 0, 1]])
