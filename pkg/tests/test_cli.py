import json
from fractions import Fraction

import pytest

from degenskel import ModelDescription, PluricanonicalForm
from degenskel.cli import main
from helpers import FIXTURES


def fx(name: str) -> str:
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ks_chain_vertex(capsys):
    code, out, _ = run(capsys, "ks", fx("chain_123.json"), fx("chain_form_vertex.json"))
    assert code == 0
    payload = json.loads(out)
    assert payload["strata"] == ["E3"]
    assert payload["globalWeight"] == "1/3"
    assert payload["connected"] is True
    assert payload["pseudomanifold"] is True


def test_ks_output_is_deterministic(capsys):
    first = run(capsys, "ks", fx("kulikov_k3.json"), fx("kulikov_form.json"))
    second = run(capsys, "ks", fx("kulikov_k3.json"), fx("kulikov_form.json"))
    assert first == second


def test_complex_dot(capsys):
    code, out, _ = run(capsys, "complex", fx("coordinate_planes.json"), "--dot")
    assert code == 0
    assert out.count("(N=1)") == 3
    assert out.count(" -- ") == 3
    assert "// 2-face C123: E1, E2, E3" in out


def test_complex_json_round_trips(capsys):
    code, out, _ = run(capsys, "complex", fx("star_curve.json"))
    assert code == 0
    payload = json.loads(out)
    reparsed = ModelDescription.from_dict(payload)
    original = ModelDescription.from_dict(
        json.loads((FIXTURES / "star_curve.json").read_text())
    )
    assert reparsed == original
    assert payload["dimension"] == 1
    assert payload["counts"] == {"0": 4, "1": 3}


def test_check_valid_fixture(capsys):
    code, out, _ = run(
        capsys,
        "check",
        fx("chain_123.json"),
        fx("chain_form_flat.json"),
        "--samples",
        "50",
    )
    assert code == 0
    assert "model invariants hold" in out
    assert "form invariants hold" in out
    assert "sampled points respect the weight bounds" in out


def test_check_invalid_model_exits_1(capsys):
    code, _, err = run(capsys, "check", fx("invalid_model.json"))
    assert code == 1
    assert "S1234" in err
    assert "incompatible face maps" in err


def test_check_invalid_form_exits_1(capsys):
    code, _, err = run(capsys, "check", fx("chain_123.json"), fx("invalid_form.json"))
    assert code == 1
    assert "E2" in err and "horizontal" in err


def test_weight_command(capsys):
    point = json.dumps(
        {"stratum": "C12", "barycentric": {"E1": "1/2", "E2": "1/2"}}
    )
    code, out, _ = run(
        capsys, "weight", fx("chain_123.json"), fx("chain_form_flat.json"), point
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"stratum": "C12", "weight": "1", "lowerBoundOnly": False}


def test_weight_command_from_file(tmp_path, capsys):
    path = tmp_path / "point.json"
    path.write_text(
        json.dumps({"stratum": "E3", "barycentric": {"E3": "1"}})
    )
    code, out, _ = run(
        capsys, "weight", fx("chain_123.json"), fx("chain_form_vertex.json"), str(path)
    )
    assert code == 0
    assert json.loads(out)["weight"] == "1/3"


def test_essential_command(capsys):
    code, out, _ = run(
        capsys,
        "essential",
        fx("disconnected_argmin.json"),
        fx("disconnected_form.json"),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["strata"] == ["E1", "E3"]
    assert payload["connected"] is False
    assert payload["pseudomanifold"] is False
    assert payload["globalWeight"] == ["1"]


def test_flow_command(capsys):
    code, out, _ = run(capsys, "flow", "1", "1", "t/(1+t)", "1+t", "1/2", "T1+T2")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "0"
    assert payload["terms"] == [
        {"i": 0, "vK": "0"},
        {"i": 1, "vK": "1"},
        {"i": 2, "vK": "1"},
    ]


def test_flow_rejects_invalid_point(capsys):
    code, _, err = run(capsys, "flow", "2", "1", "t/(1+t)", "(1+t)^2/t", "0", "T1")
    assert code == 1
    assert "negative valuation" in err
    code, _, err = run(capsys, "flow", "2", "3", "t", "1", "0", "T1")
    assert code == 1
    assert "must equal t" in err


def test_retract_command(capsys):
    code, out, _ = run(capsys, "retract", "1", "1", "t*(1+t)", "1/(1+t)")
    assert code == 0
    payload = json.loads(out)
    assert payload["stratum"] == "O"
    assert payload["alpha"] == {"E1": "1", "E2": "0"}
    assert payload["skeletonPoint"] == {
        "stratum": "E1",
        "barycentric": {"E1": "1"},
    }


def test_ks_output_reparses_to_equal_subcomplex(capsys):
    from degenskel import Subcomplex, build_complex, ks_skeleton, parse_rational
    from helpers import load_form, load_model

    model = load_model("chain_123.json")
    form = load_form("chain_form_vertex.json")
    code, out, _ = run(capsys, "ks", fx("chain_123.json"), fx("chain_form_vertex.json"))
    assert code == 0
    payload = json.loads(out)
    rebuilt = Subcomplex(build_complex(model), payload["strata"])
    assert rebuilt == ks_skeleton(model, form)
    assert parse_rational(payload["globalWeight"]) == Fraction(1, 3)


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["essential", fx("chain_123.json")])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_malformed_json_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "complex", str(bad))
    assert code == 1
    assert "malformed JSON" in err


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "complex", "no_such_file.json")
    assert code == 1
    assert "cannot read" in err


def test_output_to_file(tmp_path, capsys):
    out_path = tmp_path / "ks.json"
    code, out, _ = run(
        capsys,
        "ks",
        fx("chain_123.json"),
        fx("chain_form_vertex.json"),
        "-o",
        str(out_path),
    )
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["strata"] == ["E3"]
