import json

import pytest
from click.testing import CliRunner

from cangroth import verify
from cangroth.cli import cli
from cangroth.polynomial import Poly


@pytest.fixture
def invoke():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(cli, list(args))

    return go


def test_compute_stable_G(invoke):
    r = invoke("compute", "G", "--outer", "1", "--inner", "2", "--nvars", "2")
    assert r.exit_code == 0 and r.output.strip() == "a2 + b1"


def test_compute_g(invoke):
    r = invoke("compute", "g", "--outer", "[1]", "--nvars", "2")
    assert r.exit_code == 0 and r.output.strip() == "x1 + x2"
    r = invoke("compute", "g", "--outer", "2,1", "--inner", "2,1", "--nvars", "2", "--json")
    assert json.loads(r.output) == {"poly": [{"exponents": {}, "coeff": "1"}], "exact": True}


def test_compute_unicode(invoke):
    r = invoke("compute", "g", "--outer", "1,1", "--nvars", "1", "--unicode")
    assert r.output.strip() == "x₁β₁"


def test_compute_series_needs_flag(invoke):
    r = invoke("compute", "G", "--outer", "1", "--nvars", "2")
    assert r.exit_code == 3 and "genuine series" in r.stderr
    r = invoke("compute", "G", "--outer", "1", "--nvars", "1", "--series", "--cutoff", "2")
    assert r.exit_code == 0 and r.output.strip() == "x1^3*a1^2 - x1^2*a1 + x1 + O(a+b^3)"


def test_compute_series_json(invoke):
    r = invoke("compute", "G", "--outer", "1", "--nvars", "1", "--series", "--cutoff", "1", "--json")
    out = json.loads(r.output)
    assert out["exact"] is False and out["cutoff"] == 1
    assert Poly.from_json(json.dumps(out["poly"])) == Poly.from_json(
        json.dumps([{"exponents": {"x1": 1}, "coeff": "1"}, {"exponents": {"x1": 2, "a1": 1}, "coeff": "-1"}])
    )


def test_compute_flagged(invoke):
    r = invoke("compute", "G", "--outer", "1", "--inner", "1", "--nvars", "2", "--flag-r", "1", "--flag-s", "1")
    assert r.exit_code == 0 and r.output.strip() == "1"


@pytest.mark.parametrize(
    "args",
    [
        ["compute", "G", "--outer", "1,2", "--nvars", "2"],
        ["compute", "G", "--outer", "x", "--nvars", "2"],
        ["compute", "g", "--outer", "1", "--nvars", "1", "--flag-r", "1", "--flag-s", "1"],
        ["compute", "G", "--outer", "1", "--nvars", "1", "--flag-r", "1"],
        ["compute", "G", "--outer", "2,1", "--nvars", "2", "--flag-r", "1", "--flag-s", "2"],
        ["expand", "schur", "--of", "G", "--outer", "1", "--nvars", "2"],
        ["verify", "nonsense"],
        ["verify", "omega", "--box", "3by3"],
    ],
)
def test_usage_errors_exit_2(invoke, args):
    assert invoke(*args).exit_code == 2


def test_expand_schur_G11(invoke):
    r = invoke("expand", "schur", "--of", "G", "--outer", "1,1", "--nvars", "3", "--max-degree", "3")
    assert r.exit_code == 0
    terms = {tuple(t["shape"]): Poly.from_json(json.dumps(t["coeff"])) for t in json.loads(r.output)["terms"]}
    a1 = Poly.from_json(json.dumps([{"exponents": {"a1": 1}, "coeff": "-1"}]))
    assert terms[(1, 1)] == 1 and terms[(2, 1)] == a1


def test_expand_schur_text(invoke):
    r = invoke("expand", "schur", "--of", "g", "--outer", "1,1", "--nvars", "2", "--text")
    assert r.output.strip() == "(b1)*s[1] + (1)*s[1,1]"


def test_expand_one_param(invoke):
    r = invoke("expand", "one-param", "--side", "g", "--outer", "2,2,2")
    out = json.loads(r.output)
    assert [t["shape"] for t in out["terms"]] == [[2, 2, 2], [2, 2, 1], [2, 1, 1], [1, 1, 1]]
    assert [t["text"] for t in out["terms"]][:2] == ["1", "a1"]
    r = invoke("expand", "one-param", "--side", "G", "--outer", "1,1", "--text")
    assert r.output.splitlines() == ["2,2: -a1*b1", "3,1: a1^2", "2,1: -a1", "1,1: 1"]


def test_verify_ok(invoke):
    r = invoke("verify", "duality", "--box", "2x2")
    assert r.exit_code == 0
    assert json.loads(r.output) == {"suite": "duality", "cases": 36, "failures": []}


def test_verify_sample(invoke):
    r = invoke("verify", "forms", "--box", "2x2", "--nvars", "2", "--sample", "3", "--seed", "1", "--no-stability")
    assert json.loads(r.output)["cases"] == 3


def test_verify_failure_exit_1(invoke, monkeypatch):
    def broken(**_):
        rep = verify.Report("omega", cases=1)
        rep.fail(outer=[1], inner=[])
        return rep

    monkeypatch.setitem(verify.SUITES, "omega", broken)
    r = invoke("verify", "omega")
    assert r.exit_code == 1
    assert "counterexample" in r.stderr
