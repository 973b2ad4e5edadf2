import json
import math

import numpy as np
import pytest

from kinematica import cli
from kinematica.affine import AffineElement
from kinematica.classify import CaseLabel, rotation_generators
from kinematica.groups import boost_closed_form, membership, p_generator
from kinematica.matcore import mat_exp, op_norm


def write_file(tmp_path, payload, name="data.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def generator_payload(n, sigma):
    gens = rotation_generators(n) + [
        p_generator(np.eye(n)[i], sigma) for i in range(n)
    ]
    return {"n": n, "matrices": [g.ravel().tolist() for g in gens]}


def test_parse_sigma_spellings():
    assert cli._parse_sigma("inf").is_infinite
    assert cli._parse_sigma(" INF ").is_infinite
    assert cli._parse_sigma("0.5").value == 0.5
    assert cli._parse_sigma("-2").value == -2.0
    with pytest.raises(ValueError):
        cli._parse_sigma("seven")
    with pytest.raises(ValueError):
        cli._parse_sigma("nan")


def test_load_accepts_flat_and_nested_matrices(tmp_path):
    flat = [0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    nested = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    path = write_file(tmp_path, {"n": 2, "matrices": [flat, nested]})
    mf = cli.load_matrix_file(path)
    assert mf.n == 2
    assert len(mf.matrices) == 2
    np.testing.assert_array_equal(mf.matrices[0], mf.matrices[1])


def test_dump_load_round_trip_with_affine(tmp_path):
    g = AffineElement(np.arange(9.0).reshape(3, 3), np.array([1.0, 2.0, 3.0]))
    mf = cli.MatrixFile(n=2, matrices=[np.eye(3)], affine=[g])
    path = write_file(tmp_path, cli.dump_matrix_file(mf))
    back = cli.load_matrix_file(path)
    assert back.n == 2
    np.testing.assert_array_equal(back.matrices[0], np.eye(3))
    assert len(back.affine) == 1
    np.testing.assert_array_equal(back.affine[0].linear, g.linear)
    np.testing.assert_array_equal(back.affine[0].translation, g.translation)


@pytest.mark.parametrize("payload", [
    [1, 2, 3],
    {"matrices": []},
    {"n": True, "matrices": []},
    {"n": 0, "matrices": []},
    {"n": 2, "matrices": {}},
    {"n": 2, "matrices": [[1.0, 2.0]]},
    {"n": 2, "matrices": [[math.nan] * 9]},
    {"n": 2, "matrices": [], "affine": [[]]},
    {"n": 2, "matrices": [],
     "affine": [{"linear": [0.0] * 9, "translation": [1.0]}]},
])
def test_load_rejects_bad_schema(tmp_path, payload):
    path = write_file(tmp_path, payload)
    with pytest.raises(ValueError):
        cli.load_matrix_file(path)


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValueError, match="not valid JSON"):
        cli.load_matrix_file(str(path))


def test_classify_command_success(tmp_path, capsys):
    path = write_file(tmp_path, generator_payload(2, 0.0))
    code = cli.main(["classify", path])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["outcome"] == "Kinematical"
    assert out["case"] == "Galilei"
    assert out["sigma"] == 0.0
    assert "diagnostics" in out


def test_classify_command_carroll_sigma_spelling(tmp_path, capsys):
    path = write_file(tmp_path, generator_payload(2, math.inf))
    code = cli.main(["classify", path])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["case"] == "Carroll"
    assert out["sigma"] == "inf"


def test_classify_command_rejection_exit_code(tmp_path, capsys):
    payload = generator_payload(2, 1.0)
    payload["matrices"].append(np.eye(3).ravel().tolist())
    path = write_file(tmp_path, payload)
    code = cli.main(["classify", path])
    out = json.loads(capsys.readouterr().out)
    assert code == 2
    assert out["outcome"] == "NotKinematical"
    assert "reason" in out


def test_classify_missing_file(capsys):
    code = cli.main(["classify", "/no/such/file.json"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_classify_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("[1, 2,")
    assert cli.main(["classify", str(path)]) == 1


def test_usage_errors_exit_one(capsys):
    assert cli.main([]) == 1
    assert cli.main(["no-such-command"]) == 1
    assert cli.main(["decompose"]) == 1  # --sigma is required
    capsys.readouterr()


def test_generate_then_decompose_round_trip(tmp_path, capsys):
    assert cli.main(["generate", "--case", "lorentz", "--sigma", "1", "--n", "2",
                     "--count", "3", "--seed", "11"]) == 0
    payload = capsys.readouterr().out
    path = tmp_path / "members.json"
    path.write_text(payload)

    assert cli.main(["decompose", str(path), "--sigma", "1"]) == 0
    entries = json.loads(capsys.readouterr().out)
    originals = cli.load_matrix_file(str(path)).matrices
    assert len(entries) == 3
    for entry, a in zip(entries, originals):
        assert entry["lambda"] == pytest.approx(1.0, abs=1e-9)
        k = np.array(entry["k"]).reshape(3, 3)
        Z = np.array(entry["Z"]).reshape(3, 3)
        rebuilt = math.sqrt(entry["lambda"]) * k @ mat_exp(Z)
        assert op_norm(rebuilt - a) <= 1e-9


def test_decompose_reports_failures_with_exit_two(tmp_path, capsys):
    shear = np.eye(3)
    shear[0, 1] = 0.5
    payload = {"n": 2,
               "matrices": [boost_closed_form(np.array([0.3, 0.0]), 1.0).ravel().tolist(),
                            shear.ravel().tolist()]}
    path = write_file(tmp_path, payload)
    code = cli.main(["decompose", path, "--sigma", "1"])
    entries = json.loads(capsys.readouterr().out)
    assert code == 2
    assert "lambda" in entries[0]
    assert entries[1] == {"error": "NotInNormalizer"}


def test_decompose_rejects_bad_sigma(tmp_path, capsys):
    path = write_file(tmp_path, {"n": 2, "matrices": []})
    assert cli.main(["decompose", path, "--sigma", "inf"]) == 1
    assert cli.main(["decompose", path, "--sigma", "-1"]) == 1
    assert cli.main(["decompose", path, "--sigma", "bogus"]) == 1
    capsys.readouterr()


def test_generate_output_is_deterministic(capsys):
    argv = ["generate", "--case", "carroll", "--n", "3", "--count", "2",
            "--seed", "3"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert cli.main(["generate", "--case", "carroll", "--n", "3",
                     "--count", "2", "--seed", "4"]) == 0
    assert capsys.readouterr().out != first


def test_generate_members_pass_membership(capsys):
    specs = [
        (["--case", "lorentz", "--sigma", "0.5"], CaseLabel.LORENTZ, 0.5),
        (["--case", "galilei"], CaseLabel.GALILEI, None),
        (["--case", "orthogonal", "--sigma", "-1"], CaseLabel.ORTHOGONAL, -1.0),
        (["--case", "carroll"], CaseLabel.CARROLL, None),
        (["--case", "aristotle"], CaseLabel.ARISTOTLE, None),
    ]
    for extra, case, sigma in specs:
        assert cli.main(["generate", "--count", "4", "--seed", "9"] + extra) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["matrices"]) == 4
        for flat in data["matrices"]:
            a = np.array(flat).reshape(3, 3)
            assert membership(a, case, sigma, tol=1e-8)


def test_generate_validation_errors(capsys):
    assert cli.main(["generate", "--case", "aristotle", "--sigma", "1"]) == 1
    assert cli.main(["generate", "--case", "lorentz"]) == 1
    assert cli.main(["generate", "--case", "lorentz", "--sigma", "1",
                     "--n", "1"]) == 1
    assert cli.main(["generate", "--case", "lorentz", "--sigma", "1",
                     "--count", "-2"]) == 1
    assert cli.main(["generate", "--case", "lorentz", "--sigma", "1",
                     "--boost-bound", "-1"]) == 1
    capsys.readouterr()


def test_verify_command_passes(capsys):
    code = cli.main(["verify", "--n", "2", "--trials", "3", "--seed", "1"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["pass"] is True
    assert "wraparound" in report["properties"]


def test_verify_sigma_list_controls_the_jobs(capsys):
    code = cli.main(["verify", "--n", "2", "--sigma-list", "1,0",
                     "--trials", "2"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert "wraparound" not in report["properties"]


def test_verify_bad_arguments(capsys):
    assert cli.main(["verify", "--trials", "0"]) == 1
    assert cli.main(["verify", "--n", "x"]) == 1
    assert cli.main(["verify", "--sigma-list", "1,green"]) == 1
    capsys.readouterr()


def test_env_tolerance_is_honored(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("KINEMATICA_TOL", "1e-16")
    code = cli.main(["verify", "--n", "2", "--sigma-list", "1",
                     "--trials", "2"])
    capsys.readouterr()
    assert code == 2


def test_flag_tolerance_beats_the_environment(capsys, monkeypatch):
    monkeypatch.setenv("KINEMATICA_TOL", "1e-16")
    code = cli.main(["verify", "--n", "2", "--sigma-list", "1",
                     "--trials", "2", "--tol", "1e-9"])
    capsys.readouterr()
    assert code == 0


def test_env_tolerance_validation(capsys, monkeypatch):
    for bad in ("abc", "-1", "0", "inf"):
        monkeypatch.setenv("KINEMATICA_TOL", bad)
        assert cli.main(["verify", "--n", "2", "--trials", "2"]) == 1
        capsys.readouterr()
