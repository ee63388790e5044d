"""Command-line surface: exit codes, report shape, determinism."""

import hashlib
import json

import pytest

from fcrystal import cli, make_field


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


def test_build_companion(capsys):
    code, rep, _ = report(capsys, ["build", "--p", "5", "--d", "3", "--rep", "companion"])
    assert code == 0
    assert rep["command"] == "build"
    assert rep["job"]["m"] == 2  # minimal field with 3 | 5^m - 1
    obj = rep["result"]["object"]
    assert rep["result"]["rank"] == 2
    assert sorted(int(k) for k in obj["weights"]) == [1, 2]
    assert obj["weights"]["1"]["shift"] == 2 and obj["weights"]["2"]["shift"] == 1


def test_build_extension(capsys):
    code, rep, _ = report(capsys, ["build", "--p", "5", "--c", "t^-2"])
    assert code == 0
    assert rep["result"]["kind"] == "extension"
    assert rep["result"]["n"] == 1


def test_rep_and_class_conflict(capsys):
    code, out, err = run(
        capsys, ["build", "--p", "5", "--d", "3", "--rep", "companion", "--c", "t^-2"]
    )
    assert code == 2
    assert "mutually exclusive" in err


def test_vfilt_report(capsys):
    code, rep, _ = report(
        capsys, ["vfilt", "--p", "5", "--d", "3", "--rep", "companion", "--window", "4"]
    )
    assert code == 0
    res = rep["result"]
    assert res["all_pass"] is True
    assert {"num": 1, "den": 3} in res["jumps"]
    assert {"num": -1, "den": 3} in res["jumps"]
    assert set(res["checks"]) >= {"A1", "A2", "A3", "A4", "SS1", "SS2", "SS3"}


def test_graded_report(capsys):
    code, rep, _ = report(
        capsys, ["graded", "--p", "5", "--d", "3", "--rep", "companion", "--window", "4"]
    )
    assert code == 0
    assert rep["result"]["all_invertible"] is True


def test_check_crystal_passes(capsys):
    code, rep, _ = report(
        capsys, ["check", "--p", "5", "--d", "3", "--rep", "companion", "--window", "6"]
    )
    assert code == 0
    assert rep["result"]["all_pass"] is True


def test_check_extension_reports_failures(capsys):
    # positive fractional levels break the graded-Frobenius axiom; the
    # command reports that honestly and signals it in the exit code
    code, rep, _ = report(capsys, ["check", "--p", "5", "--c", "t^-2", "--window", "6"])
    assert code == 1
    assert rep["result"]["all_pass"] is False


def test_compare_inflation_equal(capsys):
    code, rep, _ = report(
        capsys,
        ["compare", "--p", "5", "--d", "3", "--rep", "companion", "--e", "2", "--window", "4"],
    )
    assert code == 0
    assert rep["result"]["compare"]["verdict"] == "equal"
    assert rep["result"]["presentations"] == [3, 6]


def test_compare_shift_not_equal(capsys):
    code, rep, _ = report(
        capsys,
        ["compare", "--p", "5", "--d", "3", "--rep", "companion", "--shift", "1", "--window", "4"],
    )
    assert code == 1
    assert rep["result"]["compare"]["verdict"] == "reverse-contained"


def test_pullback(capsys):
    code, rep, _ = report(
        capsys,
        ["pullback", "--p", "5", "--d", "3", "--rep", "companion", "--dprime", "2", "--window", "4"],
    )
    assert code == 0
    assert rep["result"]["all_pass"] is True


def test_pullback_degree_must_be_prime_to_p(capsys):
    code, out, err = run(
        capsys, ["pullback", "--p", "5", "--d", "3", "--rep", "companion", "--dprime", "5"]
    )
    assert code == 2
    assert "prime to p" in err


def test_nearby_full(capsys):
    code, rep, _ = report(capsys, ["nearby", "--p", "5", "--d", "3", "--rep", "companion", "--full"])
    assert code == 0
    classes = rep["result"]["nearby"]["classes"]
    assert [(c["a"], c["dim"]) for c in classes] == [(1, 1), (2, 1)]


def test_vanishing(capsys):
    code, rep, _ = report(capsys, ["vanishing", "--p", "5", "--d", "3", "--rep", "companion"])
    assert code == 0
    assert rep["result"]["vanishing"]["commutes"] is True


def test_recover(capsys):
    code, rep, _ = report(capsys, ["recover", "--p", "5", "--d", "3", "--rep", "companion"])
    assert code == 0
    assert rep["result"]["isomorphic"] is True
    assert rep["result"]["recovered"]["d"] == 3


def test_sol_extension(capsys):
    code, rep, _ = report(capsys, ["sol", "--p", "5", "--c", "t^-2"])
    assert code == 0
    assert rep["result"]["dimension"] == 0
    assert rep["result"]["obstruction"] == [[1, [1]]]

    code, rep, _ = report(capsys, ["sol", "--p", "5", "--c", "0"])
    assert code == 0
    assert rep["result"]["dimension"] == 1


def test_sol_crystal(capsys):
    code, rep, _ = report(capsys, ["sol", "--p", "5", "--d", "3", "--rep", "trivial", "--rank", "3"])
    assert code == 0
    assert rep["result"]["dimension"] == 3


def test_glue_split(capsys):
    code, rep, _ = report(capsys, ["glue", "--p", "5", "--c", "0"])
    assert code == 0
    triple = rep["result"]["triple"]
    assert triple["consistent"] is True
    assert triple["delta_multiplicity"] == 1


def test_glue_rejects_pole(capsys):
    code, out, err = run(capsys, ["glue", "--p", "5", "--c", "t^-2"])
    assert code == 2
    assert "pole part [1]*t^-2" in err


def test_roundtrip_sampled(capsys):
    code, rep, _ = report(capsys, ["roundtrip", "--p", "5", "--seed", "9", "--count", "8"])
    assert code == 0
    res = rep["result"]
    assert res["source"] == "sampled"
    assert res["ds"] == [2, 3, 4, 6]
    assert res["reps"]["fail"] == 0
    assert res["objects"]["fail"] == 0
    assert res["naturality"]["fail"] == 0


def test_roundtrip_file_object(capsys, tmp_path):
    gamma = make_field(7, 2).generator
    entry = {"d": 1, "classes": [{"a": 0, "dim": 1, "C": [[list(gamma)]]}]}
    path = tmp_path / "objs.json"
    path.write_text(json.dumps([entry]))

    # the fixed space only saturates at degree 6; a lower cap must abort
    code, out, err = run(
        capsys, ["roundtrip", "--p", "7", "--m", "2", "--rep", str(path), "--cap", "3"]
    )
    assert code == 3
    assert "within 3 extension degrees" in err

    code, rep, _ = report(
        capsys, ["roundtrip", "--p", "7", "--m", "2", "--rep", str(path), "--cap", "8"]
    )
    assert code == 0
    assert rep["result"]["counts"] == {"fail": 0, "pass": 1, "rejected": 0}


def test_reports_are_deterministic(capsys):
    argv = ["vfilt", "--p", "5", "--d", "3", "--rep", "companion", "--window", "6"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_digest_matches_payload(capsys):
    code, out, _ = run(capsys, ["build", "--p", "7", "--d", "6", "--rep", "regular"])
    assert code == 0
    rep = json.loads(out)
    digest = rep.pop("digest")
    canon = json.dumps(rep, sort_keys=True, separators=(",", ":"))
    assert digest == hashlib.sha256(canon.encode()).hexdigest()


def test_minimal_field_in_echo(capsys):
    _, rep, _ = report(capsys, ["build", "--p", "7", "--d", "3", "--rep", "regular"])
    assert rep["job"]["m"] == 1  # 3 divides 7 - 1 already
    _, rep, _ = report(capsys, ["build", "--p", "7", "--d", "4", "--rep", "regular"])
    assert rep["job"]["m"] == 2  # 4 divides 48 but not 6
