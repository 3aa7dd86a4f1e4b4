import io
import json

import pytest

from enriques_kit import serialize as S
from enriques_kit.cli import run
from enriques_kit.model import polynomial as P


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def test_signature_of_d4():
    assert call("lattice", "signature", "--name", "D4neg") == (0, "(0,4,0)\n", "")


def test_signature_json():
    code, out, _ = call("lattice", "signature", "--name", "D4neg", "--json")
    assert code == 0 and json.loads(out)["signature"] == [0, 4, 0]
    assert json.loads(call("--json", "lattice", "signature", "D4neg")[1])["signature"] == [0, 4, 0]


def test_lattice_names():
    assert call("lattice", "is-even", "4A1")[1].strip() == "true"
    assert call("lattice", "is-even", "diag(-1,-2)")[1].strip() == "false"
    code, out, _ = call("lattice", "signature", "U+E8neg")
    assert code == 0 and out.strip() == "(1,9,0)"
    assert call("lattice", "signature", "L")[1].strip() == "(1,9,0)"
    assert call("lattice", "discriminant-group", "D4neg")[1].strip() == "[2,2]"


def test_lattice_from_file(tmp_path):
    f = tmp_path / "lat.json"
    f.write_text(json.dumps({"gram": [[-2, 1], [1, -2]]}))
    assert call("lattice", "signature", str(f))[1].strip() == "(0,2,0)"
    assert call("lattice", "signature", "--file", str(f))[1].strip() == "(0,2,0)"
    assert call("lattice", "signature", stdin=f.read_text())[1].strip() == "(0,2,0)"


def test_isometry_exit_codes():
    assert call("lattice", "isometry", "D4neg", "D4neg")[0] == 0
    code, out, _ = call("lattice", "isometry", "4A1", "D4neg")
    assert code == 1 and "no isometry" in out
    code, out, _ = call("lattice", "isometry", "D4neg", "--to-name", "D4neg", "--json")
    assert code == 0 and len(json.loads(out)["isometry"]["matrix"]) == 4


def test_max_even():
    code, out, _ = call("lattice", "max-even", "diag(-1,-1,-1,-1)", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["det"] == 4 and len(doc["basis"]) == 4


def test_actions_table():
    code, out, _ = call("actions", "table")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "P1 x P1"
    assert sum(line.startswith("type") for line in lines) == 7
    assert "rulings swapped" in lines[5]


def test_actions_classify_round_trip(tmp_path):
    from enriques_kit import quadric as Q

    for t in range(1, 6):
        doc = S.action_to_json(Q.canonical_action(t))
        code, out, _ = call("actions", "classify", "--json", stdin=json.dumps(doc))
        assert code == 0 and json.loads(out)["type_id"] == t


def test_model_center_round_trips():
    code, out, _ = call("model", "center", "--json")
    assert code == 0 and S.polynomial_from_json(json.loads(out)) == P.center_polynomial()


def test_model_check():
    doc = json.dumps(S.polynomial_to_json(P.center_polynomial()))
    code, out, _ = call("model", "check", stdin=doc)
    assert code == 0 and "PlusExposition" in out
    bad = json.dumps(S.polynomial_to_json(P.monomials({"x^2": 1, "x^2 y^4": 1})))
    code, out, _ = call("model", "check", "--json", stdin=bad)
    assert code == 1 and json.loads(out)["clause"] == "corners"


def test_model_validate():
    good = json.dumps({"coeffs": [{"i": 2, "j": 2, "re": "1"}]})
    assert call("model", "validate", stdin=good)[0] == 0
    bad = json.dumps({"coeffs": [{"i": 1, "j": 0, "re": "1"}]})
    assert call("model", "validate", stdin=bad)[0] == 1


def test_model_sample_is_seeded():
    a = call("model", "sample", "--seed", "4", "--radius", "1/10", "--json")
    assert a == call("model", "sample", "--seed", "4", "--radius", "1/10", "--json") and a[0] == 0


def test_involution_sample_and_classify():
    code, out, _ = call("involution", "sample", "--seed", "2")
    doc = json.loads(out)
    assert code == 0 and {"m", "eps", "u1", "u2", "d4"} <= set(doc)
    code, out, _ = call("involution", "find-i0w2", "--json", stdin=out)
    assert code == 0
    pair = json.loads(out)
    doc.update(u1=pair["u1"], u2=pair["u2"])
    code, out, _ = call("involution", "classify-plane", stdin=json.dumps(doc))
    assert code == 0 and out.strip() == "I(0,w2)"


def test_find_isotropic():
    _, out, _ = call("involution", "sample", "--seed", "5")
    code, found, _ = call("involution", "find-isotropic", "--json", stdin=out)
    assert code in (0, 1) and found.strip()


def test_usage_errors():
    assert call()[0] == 2
    assert call("lattice")[0] == 2
    assert call("lattice", "signature", "--name", "nonsense")[0] == 2
    code, _, err = call("model", "check", stdin="not json")
    assert code == 2 and err.startswith("enriques-kit: error:")
    assert call("model", "check", stdin=json.dumps({"coeffs": [{"i": 2, "j": 2, "re": 0.5}]}))[0] == 2
    assert call("--help")[0] == 0


def test_verify_paper_only():
    code, out, _ = call("verify-paper", "--only", "AC-3")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("AC-3: PASS") and lines[-1] == "1/1 verified"
    code, out, _ = call("verify-paper", "--only", "AC-1", "--only", "AC-2", "--json")
    doc = json.loads(out)
    assert doc["ok"] and [e["id"] for e in doc["entries"]] == ["AC-1", "AC-2"]
    assert call("verify-paper", "--only", "AC-99")[0] == 2
