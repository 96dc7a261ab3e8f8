import json

from toricfrob import OracleMismatch
from toricfrob import cli as cli_mod
from toricfrob.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_push_golden_json(capsys):
    code, out, _ = run(capsys, "push", "--variety", "P1", "--p", "2", "--json")
    assert code == 0
    assert out.strip() == (
        '{"q":2,"summands":[{"class":[0],"mult":1},{"class":[-1],"mult":1}],'
        '"det":[-1],"certified":true}'
    )


def test_push_text_mode(capsys):
    code, out, _ = run(capsys, "push", "--variety", "P2", "--p", "3")
    assert code == 0
    assert "det" in out and "certified: True" in out


def test_push_symbolic_divisor(capsys):
    code, out, _ = run(
        capsys, "push", "--variety", "P1", "--p", "2", "--divisor=-K", "--json"
    )
    assert code == 0
    assert json.loads(out)["q"] == 2


def test_fan_check_file(tmp_path, capsys):
    path = tmp_path / "fan.json"
    path.write_text(
        json.dumps({"name": "plane", "rays": [[1, 0], [0, 1], [-1, -1]],
                    "max_cones": [[0, 1], [1, 2], [0, 2]]})
    )
    code, out, _ = run(capsys, "fan", "check", "--fan", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["valid"] and payload["pic_rank"] == 1


def test_fan_check_rejects_malformed(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"rays": [[2, 0], [0, 1], [-1, -1]],
                    "max_cones": [[0, 1], [1, 2], [0, 2]]})
    )
    code, _, err = run(capsys, "fan", "check", "--fan", str(path))
    assert code == 1
    assert "primitive" in err


def test_missing_fan_file(capsys):
    code, _, err = run(capsys, "fan", "check", "--fan", "/nonexistent.json")
    assert code == 1


def test_unknown_variety(capsys):
    code, _, err = run(capsys, "cohom", "--variety", "P9", "--divisor", "0")
    assert code == 1
    assert "unknown variety" in err


def test_bad_divisor(capsys):
    code, _, err = run(capsys, "cohom", "--variety", "P2", "--divisor", "1,2")
    assert code == 1


def test_cohom(capsys):
    code, out, _ = run(
        capsys, "cohom", "--variety", "P2", "--divisor", "2,0,0", "--json"
    )
    assert code == 0
    assert json.loads(out) == {"dims": [6, 0, 0]}


def test_ext_and_tilting(capsys):
    code, out, _ = run(capsys, "ext", "--variety", "P2", "--p", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"dims": [19, 0, 0], "strong_exceptional": True}
    code, out, _ = run(capsys, "tilting", "--variety", "P2", "--p", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["strong_exceptional"] and payload["contains_collection"]
    assert payload["quiver"][0][0] == 1


def test_tilting_without_collection_is_input_error(tmp_path, capsys):
    path = tmp_path / "fan.json"
    path.write_text(
        json.dumps({"rays": [[1], [-1]], "max_cones": [[0], [1]]})
    )
    code, _, err = run(capsys, "tilting", "--fan", str(path), "--p", "2")
    assert code == 1
    assert "collection" in err


def test_ext_identity_frobenius(capsys):
    code, out, _ = run(capsys, "ext", "--variety", "P2", "--p", "3", "--n", "0", "--json")
    assert code == 0
    assert json.loads(out)["dims"] == [1, 0, 0]


def test_catalog_run_rejects_large_q(capsys):
    code, _, err = run(capsys, "catalog", "run", "--p", "5", "--n", "2")
    assert code == 1
    assert "exceeds" in err


def test_catalog_list_and_run(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert len(out.strip().splitlines()) == 12
    code, out, _ = run(capsys, "catalog", "run", "--p", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == {"vanishing": 12, "failing": 0, "errors": 0}


def test_blowup_check(capsys):
    code, out, _ = run(capsys, "blowup-check", "--p", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["corank"] == payload["corank_oracle"] == 3
    assert abs(payload["multiple"]) == 3


def test_jets(capsys):
    code, out, _ = run(capsys, "jets", "--p", "2", "--n", "1", "--rank", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim_h0"] == 19 and payload["surjective_rank"] == 4


def test_pbundle_check(capsys):
    code, out, _ = run(
        capsys, "pbundle-check", "--base", "P2", "--a", "2,0,0", "--p", "3", "--json"
    )
    assert code == 0
    assert json.loads(out)["split_check"] is True


def test_cech_commands(capsys):
    code, out, _ = run(
        capsys, "cech", "incidence", "--a", "-3", "--b", "0", "--p", "3", "--json"
    )
    assert code == 0
    assert json.loads(out)["dims"] == [0, 0, 1, 0]
    code, out, _ = run(capsys, "cech", "validate", "--json")
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_internal_invariant_exit_code(monkeypatch, capsys):
    def explode(*args, **kwargs):
        raise OracleMismatch("deliberately corrupted decomposition")

    monkeypatch.setattr(cli_mod, "frobenius_decompose", explode)
    code, _, err = run(capsys, "push", "--variety", "P1", "--p", "2")
    assert code == 2
    assert "invariant" in err


def test_deterministic_output_bytes(capsys):
    _, first, _ = run(capsys, "catalog", "run", "--p", "2", "--json")
    _, second, _ = run(capsys, "catalog", "run", "--p", "2", "--json")
    assert first == second
