import json
import subprocess
import sys
import time

import pytest

from loopforms.algebra import KIND_LIE, MultTableAlgebra, make_table
from loopforms.cyclo import CycloNum


def run_cli(*argv, binary=False, timeout=300):
    return subprocess.run(
        [sys.executable, "-m", "loopforms", *argv],
        capture_output=True,
        text=not binary,
        timeout=timeout,
    )


def report_of(result):
    assert result.stdout, result.stderr
    return json.loads(result.stdout)


def _sl2_table(h_e_coeff):
    def q(x):
        return CycloNum.rational(1, x)

    c = q(h_e_coeff)
    table = make_table({
        (0, 1): {1: c},
        (1, 0): {1: -c},
        (0, 2): {2: q(-2)},
        (2, 0): {2: q(2)},
        (1, 2): {0: q(1)},
        (2, 1): {0: q(-1)},
    })
    return MultTableAlgebra(
        dim=3, scalar_order=1, kind=KIND_LIE,
        constants=table, basis_labels=("h", "e", "f"),
    )


# -- happy paths -----------------------------------------------------------------


def test_build_d4():
    result = run_cli("build", "--type", "D4")
    assert result.returncode == 0
    report = report_of(result)
    assert report["command"] == "build"
    assert report["status"] == "pass"
    assert report["payload"]["dim"] == 28
    assert report["payload"]["roots"] == 24
    assert report["payload"]["rank"] == 4
    assert "elapsed:" in result.stderr


def test_grade_triality():
    result = run_cli("grade", "--type", "D4", "--auto", '{"pi": [3, 2, 4, 1]}')
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert payload["dims"] == [14, 7, 7]
    assert payload["period"] == 3


def test_classify_d4():
    result = run_cli("classify", "--type", "D4")
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert len(payload["classes"]) == 3
    assert sorted(r["twist_order"] for r in payload["classes"]) == [1, 2, 3]
    assert payload["r_classes"] == payload["k_classes"] == 3
    assert payload["inverse_conjugacy"] is True
    assert payload["centroid_trivial"] is True


def test_classify_matrix_algebra():
    result = run_cli("classify", "--matrix-algebra", "2")
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert payload["classes"] == 1
    assert payload["note"] == "all loop algebras trivial"
    assert payload["witness_checks"]
    assert all(c["status"] == "pass" for c in payload["witness_checks"])


def test_extract_gcm_triality():
    result = run_cli("extract-gcm", "--type", "D4", "--auto", '{"pi": [3, 2, 4, 1]}')
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert payload["label"] == "D4^(3)"
    assert payload["grading_dims"] == [14, 7, 7]
    assert payload["gcm"] == [[2, -1, 0], [-3, 2, -1], [0, -1, 2]]


def test_untwist_toral():
    result = run_cli("untwist", "--type", "A2", "--auto", '{"s": [1, 0], "m": 3}')
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_descent_verify_defaults():
    result = run_cli("descent-verify", "--type", "A1", "--auto", '{"s": [1], "m": 2}')
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    names = {c["check"] for c in payload["checks"]}
    assert names == {"cocycle-identity", "twisted-fixed-points"}
    assert payload["fixed_dims"]["0"] == 1


def test_centroid_flip():
    result = run_cli("centroid", "--type", "A2", "--auto", '{"pi": [2, 1], "m": 2}')
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert payload["by_shift"] == [
        {"shift": 0, "solution_dim": 1, "contains_identity": True},
        {"shift": 1, "solution_dim": 0, "contains_identity": False},
    ]


def test_external_algebra_file(tmp_path):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(_sl2_table(2).to_obj()))
    result = run_cli("build", "--algebra", str(path))
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert payload["dim"] == 3
    assert payload["kind"] == "lie"


# -- output modes ----------------------------------------------------------------


def test_text_rendering():
    result = run_cli("classify", "--type", "D4", "--text")
    assert result.returncode == 0
    assert not result.stdout.startswith("{")
    assert "D4^(3)" in result.stdout
    assert "yes" in result.stdout


def test_out_file(tmp_path):
    path = tmp_path / "report.json"
    result = run_cli("build", "--type", "A1", "--out", str(path))
    assert result.returncode == 0
    assert result.stdout == ""
    report = json.loads(path.read_text())
    assert report["payload"]["dim"] == 3


def test_identical_requests_identical_bytes():
    argv = ("extract-gcm", "--type", "D4", "--auto", '{"pi": [3, 2, 4, 1]}')
    first = run_cli(*argv, binary=True)
    second = run_cli(*argv, binary=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.endswith(b"\n")


# -- failure and error paths -------------------------------------------------------


def test_verification_failure_exits_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(_sl2_table(3).to_obj()))
    result = run_cli("build", "--algebra", str(path))
    assert result.returncode == 1
    report = report_of(result)
    assert report["status"] == "fail"
    violations = report["payload"]["validation"]["violations"]
    assert violations and all(v["law"] == "jacobi" for v in violations)
    assert ["h", "e", "f"] in [v["labels"] for v in violations]


@pytest.mark.parametrize(
    "argv",
    [
        ("build", "--type", "Z9"),  # unknown label
        ("build",),  # no input source
        ("build", "--type", "A1", "--matrix-algebra", "2"),  # two sources
        ("grade", "--type", "A1", "--auto", "{not json"),
        ("grade", "--type", "A2", "--auto", '{"pi": [2, 1], "s": [1, 0], "m": 2}'),
        ("grade", "--type", "A1", "--auto", '{"sigma": 1}'),  # unknown key
        ("extract-gcm", "--matrix-algebra", "2"),  # unsupported source
        ("classify", "--matrix-algebra", "0"),
        ("verify-all", "--type", "A1"),  # no inputs allowed
    ],
)
def test_malformed_requests_exit_2(argv):
    result = run_cli(*argv)
    assert result.returncode == 2
    assert result.stdout == ""
    assert "error" in result.stderr.lower() or "usage" in result.stderr.lower()


def test_unreadable_and_invalid_files_exit_2(tmp_path):
    missing = run_cli("build", "--algebra", str(tmp_path / "nope.json"))
    assert missing.returncode == 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("[1, 2,")
    result = run_cli("build", "--algebra", str(garbled))
    assert result.returncode == 2


def test_missing_subcommand_exits_2():
    result = run_cli()
    assert result.returncode == 2


# -- the full suite through the CLI -------------------------------------------------


def test_verify_all_subprocess():
    started = time.monotonic()
    result = run_cli("verify-all", timeout=400)
    wall = time.monotonic() - started
    assert result.returncode == 0
    payload = report_of(result)["payload"]
    assert [row["id"] for row in payload["criteria"]] == list(range(1, 9))
    assert all(row["status"] == "pass" for row in payload["criteria"])
    assert wall < 240
