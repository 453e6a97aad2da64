import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import CONFIGS
from onecenter.cli import main
from onecenter.io import decimal_str, load_config, parse_config, piecewise_from_json
from onecenter.polyalg import compare
from onecenter.tracker import InvalidInstance, trace_single

EX1 = str(CONFIGS / "example1.json")
EX2 = str(CONFIGS / "example2.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_example1(capsys):
    code, out, _ = run(capsys, "trace", EX1)
    assert code == 0
    obj = json.loads(out)
    assert obj["format"] == 1
    assert len(obj["arcs"]) == 3
    assert [e["kind"] for e in obj["events"]][1:3] == ["SUPPORT_CHANGE"] * 2
    assert obj["arcs"][1]["center"][0] == {"num": ["0", "0", "1/2"], "den": ["4", "1"]}


def test_trace_example2_event(capsys):
    _, out, _ = run(capsys, "trace", EX2)
    ev = json.loads(out)["events"][2]["time"]
    assert ev["rational"] is False
    assert abs(Fraction(ev["approx"]) - Fraction("1.5874010519682")) < Fraction(1, 10**9)
    lo, hi = map(Fraction, ev["exact"]["interval"])
    assert lo ** 3 < 4 < hi ** 3


def test_trace_is_deterministic(capsys):
    outs = {run(capsys, "trace", EX2)[1] for _ in range(2)}
    assert len(outs) == 1


def test_trace_round_trip(capsys):
    _, out, _ = run(capsys, "trace", EX2)
    pc = piecewise_from_json(json.loads(out))
    cfg = load_config(EX2)
    direct = trace_single(cfg.static, cfg.mobile[0], cfg.domain)
    for k in range(-20, 21):
        t = Fraction(k, 10)
        assert pc(t) == direct(t)
    for a, b in zip(pc.events, direct.events):
        assert compare(a.time, b.time) == 0 and a.kind == b.kind


def test_duplicate_static_exit_2(capsys):
    code, out, err = run(capsys, "trace", str(CONFIGS / "duplicate_static.json"))
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "invalid_input"


def test_malformed_configs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    for text in ["{", '{"dimension": 1, "domain": ["0", "1"]}',
                 '{"dimension": 2, "domain": ["1", "0"]}',
                 '{"dimension": 2, "domain": ["0", "1"], "static": [["0.1", "x"]]}']:
        bad.write_text(text)
        assert run(capsys, "trace", str(bad))[0] == 2


def test_pole_in_domain_rejected():
    raw = json.loads((CONFIGS / "example1.json").read_text())
    raw["mobile"][0][0]["den"] = ["-1", "1"]
    with pytest.raises(InvalidInstance):
        parse_config(raw)


def test_decimal_inputs_are_exact():
    raw = json.loads((CONFIGS / "example1.json").read_text())
    raw["static"][0] = ["0.1", "4"]
    assert parse_config(raw).static[0][0] == Fraction(1, 10)


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("ONECENTER_SEED", "17")
    assert load_config(EX1).options.seed == 17


def test_verify_examples(capsys):
    for cfg in (EX1, EX2):
        code, out, _ = run(capsys, "verify", cfg)
        rep = json.loads(out)
        assert code == 0 and rep["ok"] and rep["exact_matches"] == 200


def test_verify_corrupted_trace_exit_1(tmp_path, capsys):
    _, out, _ = run(capsys, "trace", EX1)
    obj = json.loads(out)
    obj["arcs"][1]["center"][0]["num"] = ["0", "1", "1/2"]
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", EX1, "--trace", str(path))
    assert code == 1 and json.loads(out)["failure_count"] > 0


def test_eval(capsys):
    _, out, _ = run(capsys, "eval", EX1, "--t", "2")
    assert json.loads(out)["center"]["exact"] == ["1/3", "5/3"]
    _, out, _ = run(capsys, "eval", EX1, "--t", "0", "--derivative", "both")
    der = json.loads(out)["derivative"]
    assert der["left"]["exact"] == ["1/2", "0"] and der["right"]["exact"] == ["0", "0"]
    _, out, _ = run(capsys, "eval", EX2, "--t", "0", "--derivative", "both")
    der = json.loads(out)["derivative"]
    assert der["left"]["exact"] == der["right"]["exact"] == ["0", "0"]
    assert run(capsys, "eval", EX1, "--t", "99")[0] == 2


def test_plot_csv(tmp_path, capsys):
    out = tmp_path / "e1.csv"
    assert run(capsys, "plot", EX1, "--out", str(out), "--format", "csv", "--samples", "4")[0] == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "t,x,y,arc"
    assert "2,0.333333333333,1.666666666667,1" in rows
    run(capsys, "plot", EX1, "--out", str(out), "--format", "csv", "--samples", "1")
    rows = out.read_text().splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == ["-4", "0", "0", "4", "4", "8"]


def test_plot_svg_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "plot", EX1, "--out", str(a), "--samples", "10")
    run(capsys, "plot", EX1, "--out", str(b), "--samples", "10")
    text = a.read_text()
    assert text == b.read_text()
    assert text.count('class="arc"') == 3 and text.count('class="static"') == 2
    assert "stroke-dasharray" in text


def test_plot_requires_planar(tmp_path, capsys):
    cfg = tmp_path / "d3.json"
    cfg.write_text(json.dumps({
        "dimension": 3, "domain": ["0", "1"], "static": [["0", "0", "1"]],
        "mobile": [[{"num": ["0", "1"]}, {"num": ["0"]}, {"num": ["0"]}]]}))
    assert run(capsys, "plot", str(cfg), "--out", str(tmp_path / "x.svg"))[0] == 2


def test_seb_command(tmp_path, capsys):
    code, out, _ = run(capsys, "seb", str(CONFIGS / "triangle_points.json"), "--check")
    obj = json.loads(out)
    assert code == 0 and obj["check"]
    assert obj["center"]["exact"] == ["2", "0"] and obj["radius_sq"] == "4" and obj["support"] == [0, 1]
    single = tmp_path / "one.json"
    single.write_text('[["1/2", "3"]]')
    assert json.loads(run(capsys, "seb", str(single))[1])["radius_sq"] == "0"


def test_complexity_guard_exit_3(tmp_path, capsys):
    raw = json.loads((CONFIGS / "example1.json").read_text())
    raw["mobile"].append([{"num": ["1", "-1"]}, {"num": ["1"]}])
    raw["options"]["candidate_cap"] = 3
    path = tmp_path / "guard.json"
    path.write_text(json.dumps(raw))
    code, _, err = run(capsys, "trace", str(path))
    assert code == 3 and json.loads(err)["error"] == "complexity_guard"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "onecenter", "eval", EX1, "--t", "5"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["center"]["exact"] == ["3/2", "1"]


@given(st.fractions(max_denominator=10**6))
def test_decimal_str_rounding(x):
    s = decimal_str(x)
    assert abs(Fraction(s) - x) <= Fraction(1, 2 * 10**12)
