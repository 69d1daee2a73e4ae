import io
import json
import subprocess
import sys

import jsonschema
import pytest

from utpoly.cli import CliConfig, main, run
from utpoly.freealg import commutator_product, format_poly
from utpoly.parsing import parse
from utpoly.triangular import evaluate, matrix_from_json

RATIONAL = {"type": "string", "pattern": r"^-?\d+/\d+$"}
MATRIX = {
    "type": "object",
    "required": ["n", "entries"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer"}, {"type": "integer"}, RATIONAL],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
}
PROFILE = {
    "type": "object",
    "required": ["k", "T", "t"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "T": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "t": {"type": "array", "items": {"type": "integer"}},
    },
}
DEGREE_REPORT = {
    "type": "object",
    "required": ["degree", "witness", "beta", "profiles_checked"],
    "additionalProperties": False,
    "properties": {
        "degree": {"type": "integer", "minimum": 0},
        "witness": PROFILE,
        "beta": RATIONAL,
        "profiles_checked": {"type": "integer", "minimum": 1},
    },
}
CERTIFICATE = {
    "type": "object",
    "required": ["degree", "seed", "retries", "witness", "matrices", "target", "verified"],
    "additionalProperties": False,
    "properties": {
        "degree": {"type": "integer"},
        "seed": {"type": "integer", "minimum": 0},
        "retries": {"type": "integer", "minimum": 0},
        "witness": PROFILE,
        "matrices": {"type": "array", "items": MATRIX},
        "target": MATRIX,
        "verified": {"const": True},
    },
}


def invoke(command, poly=None, stdin="", **kwargs):
    out, err = io.StringIO(), io.StringIO()
    config = CliConfig(command=command, poly_text=poly, **kwargs)
    code = run(config, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_degree():
    code, out, _ = invoke("degree", "[x1,x2]*[x3,x4]")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, DEGREE_REPORT)
    assert data["degree"] == 2


def test_degree_text():
    code, out, _ = invoke("degree", "x1*x2", output="text")
    assert code == 0
    assert out.startswith("commutator-degree: 0")


def test_preimage():
    target = '{"n":2,"entries":[[1,2,"1"]]}'
    code, out, _ = invoke("preimage", "x1*x2-x2*x1", n=2, target=target)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, CERTIFICATE)
    mats = [matrix_from_json(m) for m in data["matrices"]]
    assert evaluate(parse("[x1,x2]"), mats) == matrix_from_json(json.loads(target))


def test_preimage_target_file(tmp_path):
    path = tmp_path / "target.json"
    path.write_text('{"n": 3, "entries": [[1, 3, "5/2"]]}')
    code, out, _ = invoke("preimage", "St", target=str(path))
    assert code == 1  # bad polynomial
    code, out, _ = invoke("preimage", format_poly(commutator_product(2)), target=str(path), seed=4)
    assert code == 0
    assert json.loads(out)["seed"] == 4


def test_preimage_outside_image():
    code, _, err = invoke("preimage", "[x1,x2]", target='{"n":2,"entries":[[1,1,"1"]]}')
    assert code == 1
    assert "TargetOutsideImage" in err


def test_parse_not_multilinear():
    code, out, err = invoke("parse", "x1*x1")
    assert code == 1
    assert "NotMultilinear" in err and out == ""


def test_parse_canonical():
    code, out, _ = invoke("parse", "-x2*x1 + x1*x2", output="text")
    assert (code, out) == (0, "x1*x2 - x2*x1\n")


def test_stdin_and_file(tmp_path):
    code, out, _ = invoke("parse", "-", stdin="[x1,x2]\n", output="text")
    assert out == "x1*x2 - x2*x1\n"
    path = tmp_path / "f.txt"
    path.write_text("[x2,x1]")
    code, out, _ = invoke("parse", None, poly_file=str(path), output="text")
    assert (code, out) == (0, "-x1*x2 + x2*x1\n")


def test_usage_errors():
    assert invoke("parse")[0] == 2
    assert invoke("parse", "x1", poly_file="f")[0] == 2
    assert invoke("identity", "x1")[0] == 2
    assert invoke("certify", "x1")[0] == 2
    assert invoke("preimage", "x1")[0] == 2
    assert invoke("preimage", "x1", target="{not json")[0] == 2
    assert invoke("preimage", "x1", target="/nonexistent/target.json")[0] == 2


def test_zero_polynomial():
    code, _, err = invoke("degree", "0")
    assert code == 1 and "ZeroPolynomial" in err


def test_identity():
    code, out, _ = invoke("identity", "[x1,x2]*[x3,x4]", n=2)
    assert code == 0 and json.loads(out) == {"n": 2, "identity": True, "substitutions": 81}
    code, out, _ = invoke("identity", "[x1,x2]*[x3,x4]", n=3)
    assert json.loads(out)["identity"] is False


def test_identity_cost_guard():
    poly = format_poly(commutator_product(4))
    code, _, err = invoke("identity", poly, n=10)
    assert code == 1 and "force" in err


def test_witness():
    code, out, _ = invoke("witness", "[x1,x2]*[x3,x4]")
    assert code == 0
    data = json.loads(out)
    assert data["matches"] is True
    assert data["value"] == data["expected"] == {"n": 3, "entries": [[1, 3, data["beta"]]]}
    for m in data["matrices"]:
        jsonschema.validate(m, MATRIX)
    code, _, err = invoke("witness", "x1*x2")
    assert code == 1


def test_certify():
    code, out, _ = invoke("certify", "[x1,x2]", n=3, samples=5)
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["image"] == "J" and data["surjectivity"]["solved"] == 8


def test_determinism():
    args = dict(n=4, target='{"n":4,"entries":[[1,3,"2"],[2,4,"-1/3"],[1,4,"7"]]}', seed=11)
    first = invoke("preimage", "[x1,x2]*[x3,x4]", **args)
    second = invoke("preimage", "[x1,x2]*[x3,x4]", **args)
    assert first == second and first[0] == 0
    assert invoke("certify", "[x1,x2]", n=3, samples=4) == invoke("certify", "[x1,x2]", n=3, samples=4)


def test_main_argparse(capsys):
    assert main(["degree", "--format", "text", "[x1,x2]"]) == 0
    assert "commutator-degree: 1" in capsys.readouterr().out
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "utpoly", "degree", "[x1,x2]*[x3,x4]"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["degree"] == 2
