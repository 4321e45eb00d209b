import io
import json
import subprocess
import sys

import pytest

from monoid_factor.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_lengths_text():
    code, out = call("lengths", "--q", "5/2", "--element", "5")
    assert code == 0
    assert out.startswith("route: rational q = 5/2")
    assert "lengths: {2, 5}" in out


def test_lengths_json_matches_text():
    _, text = call("lengths", "--q", "5/2", "--element", "5")
    code, out = call("lengths", "--q", "5/2", "--element", "5", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["schema"] == 1 and obj["command"] == "lengths"
    assert obj["result"]["lengths"] == [2, 5] and obj["complete"] is True
    assert obj["spec"]["min_poly"] == [-5, 2]
    assert "{" + ", ".join(map(str, obj["result"]["lengths"])) + "}" in text


def test_betti():
    code, out = call("betti", "--q", "3/2", "--element", "3")
    assert code == 0 and "Betti, components 2" in out
    code, out = call("betti", "--q", "3/2", "--element", "3", "--json")
    obj = json.loads(out)["result"]
    assert obj["is_betti"] and len(obj["components"]) == 2


def test_betti_scan():
    code, out = call("betti", "--q", "3/2", "--scan", "--support", "3", "--coeff-max", "3", "--json")
    obj = json.loads(out)["result"]
    assert code == 0 and obj["betti"] == ["3", "9/2", "27/4", "81/8"] and obj["matches_formula"]


def test_factorize_min_poly():
    code, out = call("factorize", "--min-poly", "X^4-6X^3+4X^2-2X-2", "--element", "x^5+6x^2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["result"]["count"] == 3 and obj["result"]["complete"]
    assert sorted(sum(c for _, c in z) for z in obj["result"]["factorizations"]) == [7, 17, 22]


def test_root_route_and_catenary():
    code, out = call("catenary", "--root", "3/2", "--n", "2", "--element", "3", "--json")
    assert code == 0 and json.loads(out)["result"]["catenary"] == 3


def test_catenary_scan():
    code, out = call("catenary", "--q", "4/3", "--scan", "--support", "2", "--coeff-max", "4", "--json")
    obj = json.loads(out)["result"]
    assert obj["formula"] == 4 and obj["observed"] <= 4


def test_atoms_and_spec():
    code, out = call("atoms", "--min-poly", "X^4-6X^3+4X^2-2X-2", "--K", "7", "--json")
    rows = json.loads(out)["result"]["atoms"]
    assert [r["exponent"] for r in rows if r["is_atom"]] == [0, 1, 2, 3, 4, 5]
    code, out = call("spec", "--min-poly", "3x^2 - 2")
    assert code == 0 and "ACCP: no" in out


def test_furcus():
    code, out = call("furcus", "--q", "3/2", "--k", "3", "--json")
    obj = json.loads(out)["result"]
    assert obj["found"] and obj["element"] == "5" and obj["min_length"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["lengths", "--q", "5/2", "--element", "5 +"],
        ["lengths", "--q", "5/2", "--min-poly", "x", "--element", "5"],
        ["lengths", "--root", "3/2", "--element", "3"],
        ["lengths", "--q", "abc", "--element", "3"],
        ["lengths", "--q", "2/3", "--element", "3"],
        ["betti", "--q", "3/2"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _ = call(*argv)
    assert code == 2


def test_require_complete():
    code, _ = call("lengths", "--q", "2/3", "--element", "3", "--D", "3", "--require-complete")
    assert code == 3
    code, _ = call("lengths", "--q", "2/3", "--element", "3", "--D", "3")
    assert code == 0


def test_domain_errors():
    assert call("spec", "--min-poly", "x^2 - 4")[0] == 1
    assert call("factorize", "--q", "1/2", "--element", "1", "--D", "2")[0] == 1
    assert call("lengths", "--q", "3/2", "--element", "1/2")[0] == 1


def test_reproduce_single_case():
    code, out = call("reproduce", "--case", "nonAP-lengths", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["cases"][0]["case"] == "nonAP-lengths"


def test_entry_point_module():
    proc = subprocess.run(
        [sys.executable, "-m", "monoid_factor", "lengths", "--q", "5/2", "--element", "5", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["lengths"] == [2, 5]


@pytest.mark.slow
def test_reproduce_all():
    code, out = call("reproduce", "--all")
    assert code == 0 and "9/9 passed" in out
