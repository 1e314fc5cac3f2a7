"""End-to-end command line behavior, driven in-process."""

import json

import pytest

from mixedval import certify_dissection, dissection_from_json
from mixedval.cli import main

TRI_SEG = {
    "lattice": "Z",
    "dim": 2,
    "polytopes": {"T": [[0, 0], [1, 0], [0, 1]], "S": [[0, 0], [1, 1]]},
}
TRIANGLE = {"lattice": "Z", "dim": 2, "polytopes": {"T": [[0, 0], [1, 0], [0, 1]]}}
NESTED = {
    "lattice": "Z",
    "dim": 2,
    "polytopes": {
        "P": [[0, 0], [1, 0], [0, 1]],
        "Q": [[0, 0], [2, 0], [0, 2]],
        "S": [[0, 0], [1, 0]],
    },
    "pairs": [["P", "Q"]],
}
AXES = {
    "lattice": "Z",
    "dim": 2,
    "polytopes": {"E1": [[0, 0], [1, 0]], "E2": [[0, 0], [0, 1]]},
}
THREE = {
    "lattice": "Z",
    "dim": 2,
    "polytopes": {
        "A": [[0, 0], [2, 0], [0, 2], [2, 2]],
        "B": [[0, 0], [1, 0], [0, 1]],
        "C": [[0, 0], [1, 2]],
    },
}


@pytest.fixture
def instance(tmp_path):
    def write(doc, name="inst.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_cm_human_output(instance, capsys):
    assert main(["cm", "--input", instance(TRI_SEG)]) == 0
    out = capsys.readouterr().out
    assert "cm[dvol](T, S) = 2" in out
    assert "positive: True" in out


def test_cm_json_report(instance, capsys):
    code, report = run_json(capsys, ["cm", "--input", instance(TRI_SEG)])
    assert code == 0
    assert report["command"] == "cm"
    assert report["results"]["value"] == 2
    assert len(report["results"]["terms"]) == 4
    assert {w["owner"] for w in report["results"]["witness"]} == {"T", "S"}


def test_cm_above_dimension_notes_vanishing(instance, capsys):
    code, report = run_json(capsys, ["cm", "--input", instance(THREE)])
    assert code == 0
    assert report["results"]["value"] == 0
    assert "note" in report["results"]
    assert report["results"]["positive"] is False


def test_json_output_is_byte_stable(instance, capsys):
    path = instance(TRI_SEG)
    main(["cm", "--input", path, "--json"])
    first = capsys.readouterr().out
    main(["cm", "--input", path, "--json"])
    second = capsys.readouterr().out
    assert first == second


def test_elapsed_goes_to_stderr_only(instance, capsys):
    main(["cm", "--input", instance(TRI_SEG), "--json"])
    captured = capsys.readouterr()
    assert "elapsed" not in captured.out
    assert "elapsed" in captured.err


def test_ehrhart_single_polytope(instance, capsys):
    code, report = run_json(capsys, ["ehrhart", "--input", instance(TRIANGLE), "--dilate", "3"])
    assert code == 0
    coeffs = {tuple(row["alpha"]): row["value"] for row in report["results"]["coefficients"]}
    assert coeffs == {(0,): 1, (1,): 2, (2,): 1}
    assert report["results"]["h_vector"] == [1, 0, 0]
    assert [row["value"] for row in report["results"]["dilations"]] == [1, 3, 6, 10]


def test_ehrhart_pair_has_no_h_vector(instance, capsys):
    code, report = run_json(capsys, ["ehrhart", "--input", instance(TRI_SEG)])
    assert code == 0
    assert "h_vector" not in report["results"]
    coeffs = {tuple(row["alpha"]): row["value"] for row in report["results"]["coefficients"]}
    assert coeffs[(1, 1)] == 2


def test_ehrhart_dilate_rejected_for_families(instance, capsys):
    assert main(["ehrhart", "--input", instance(TRI_SEG), "--dilate", "2"]) == 1
    assert "single-polytope" in capsys.readouterr().err


def test_mixed_volume(instance, capsys):
    code, report = run_json(capsys, ["mixed-volume", "--input", instance(TRI_SEG)])
    assert code == 0
    assert report["results"]["normalized"] == 2
    assert report["results"]["mixed_volume"] == 1
    assert report["results"]["lattice_cross_check"]["agrees"] is True


def test_mixed_volume_needs_matching_arity(instance, capsys):
    assert main(["mixed-volume", "--input", instance(TRIANGLE)]) == 1


def test_positivity_report(instance, capsys):
    code, report = run_json(capsys, ["positivity", "--input", instance(TRI_SEG)])
    assert code == 0
    assert report["results"]["positive"] is True
    assert report["results"]["cylinder_lower_bound"] == 1
    assert {w["owner"] for w in report["results"]["witness"]} == {"T", "S"}


def test_positivity_fallback_valuation(instance, capsys):
    code, report = run_json(
        capsys, ["positivity", "--input", instance(TRI_SEG), "--valuation", "euler"]
    )
    assert code == 0
    assert report["results"]["value"] == 0
    assert report["results"]["positive"] is False


def test_dissect_boxcell(instance, capsys):
    code, report = run_json(capsys, ["dissect", "--mode", "boxcell", "--dim", "2", "--dilate", "2"])
    assert code == 0
    assert report["results"]["census"] == {"1": 2, "2": 1}
    back = dissection_from_json(report["dissection"])
    assert certify_dissection(back) == 6


def test_dissect_boxcell_needs_dimensions(capsys):
    assert main(["dissect", "--mode", "boxcell"]) == 1


def test_dissect_staircase(instance, capsys):
    code, report = run_json(capsys, ["dissect", "--mode", "staircase", "--input", instance(AXES)])
    assert code == 0
    assert report["results"]["certificates"]["closed_total"] == 4
    assert report["results"]["certificates"]["volume_total"] == 1


def test_dissect_staircase_rejects_inexact_pairs(instance, capsys):
    assert main(["dissect", "--mode", "staircase", "--input", instance(TRI_SEG)]) == 1


def test_dissect_cayley_round_trip(instance, capsys):
    code, report = run_json(capsys, ["dissect", "--mode", "cayley", "--input", instance(TRI_SEG)])
    assert code == 0
    back = dissection_from_json(report["dissection"])
    assert certify_dissection(back) == report["results"]["certificates"]["closed_total"]


def test_dissect_difference(instance, capsys):
    code, report = run_json(
        capsys, ["dissect", "--mode", "difference", "--input", instance(NESTED)]
    )
    assert code == 0
    assert report["results"]["difference_total"] >= 1
    assert report["results"]["difference_cell_count"] >= 1


def test_dissect_difference_needs_pairs(instance, capsys):
    assert main(["dissect", "--mode", "difference", "--input", instance(TRI_SEG)]) == 1
    assert "pairs" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    assert main(["verify", "hull-idempotent", "--trials", "8"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out
    assert "1/1 suites passed" in out


def test_verify_unknown_suite(capsys):
    assert main(["verify", "nope"]) == 1
    assert "unknown suite" in capsys.readouterr().err


def test_verify_failure_exits_two(capsys, monkeypatch):
    # Negative control through the real pipeline: inject a failing suite.
    import mixedval.verify as verify_module

    def broken(rng, dims, budget):
        return 1, "forced counterexample"

    monkeypatch.setitem(verify_module.SUITES, "forced-failure", (broken, 1))
    assert main(["verify", "forced-failure", "--trials", "4"]) == 2
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "forced counterexample" in out


def test_usage_errors_exit_one(capsys):
    assert main(["not-a-command"]) == 1
    assert main(["cm"]) == 1
    assert main(["cm", "--input", "/nonexistent.json"]) == 1


def test_bad_valuation_exits_one(instance, capsys):
    assert main(["cm", "--input", instance(TRI_SEG), "--valuation", "nope"]) == 1
    assert "unknown valuation" in capsys.readouterr().err


def test_rational_instance_with_lattice_valuation_exits_one(instance, capsys):
    doc = {
        "lattice": "Q",
        "dim": 2,
        "polytopes": {"P": [["1/2", 0], [0, "1/2"], [0, 0]]},
    }
    assert main(["cm", "--input", instance(doc)]) == 1
