"""End-to-end command-line checks: envelopes, exit codes, and determinism."""

import json

import pytest

from liep import charp, cli
from liep.charp import FpMatrix


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, json.loads(captured.out), captured.err


def _no_floats(x):
    if isinstance(x, float):
        return False
    if isinstance(x, list):
        return all(_no_floats(v) for v in x)
    if isinstance(x, dict):
        return all(_no_floats(v) for v in x.values())
    return True


def _drop_elapsed(x):
    if isinstance(x, dict):
        return {k: _drop_elapsed(v) for k, v in x.items() if k != "elapsed_us"}
    if isinstance(x, list):
        return [_drop_elapsed(v) for v in x]
    return x


def test_envelope_schema(capsys):
    code, out, _ = run_cli(capsys, ["coxeter", "--type", "E", "--rank", "8"])
    assert code == 0
    assert set(out) == {"subcommand", "result", "invariants", "elapsed_us"}
    assert out["subcommand"] == "coxeter"
    assert isinstance(out["invariants"], list) and out["invariants"]
    assert isinstance(out["elapsed_us"], int)
    assert _no_floats(out)


def test_coxeter_routes(capsys):
    code, out, _ = run_cli(capsys, ["coxeter", "--type", "E", "--rank", "8"])
    assert code == 0
    r = out["result"]
    assert r["h"] == r["via_marks"] == r["via_rho"] == r["via_element"] == 30
    assert r["agreement"] is True


def test_roots_report(capsys):
    code, out, _ = run_cli(capsys, ["roots", "--type", "E", "--rank", "8"])
    assert code == 0
    r = out["result"]
    assert r["root_count"] == 240
    assert r["coxeter_number"] == 30
    assert len(r["positive_roots"]) == 120


def test_goodprime(capsys):
    code, out, _ = run_cli(capsys, ["goodprime", "--type", "E", "--rank", "8", "--p", "7"])
    assert code == 0 and out["result"]["good"] is True
    code, out, _ = run_cli(capsys, ["goodprime", "--type", "E", "--rank", "8", "--p", "5"])
    assert code == 0 and out["result"]["good"] is False


def test_parabolic(capsys):
    code, out, _ = run_cli(capsys, ["parabolic", "--type", "A", "--rank", "3", "--subset", "1,3"])
    assert code == 0
    assert out["result"]["max_degree"] == 1
    assert any("mark" in s for s in out["invariants"])


def test_height_examples(capsys):
    code, out, _ = run_cli(capsys, ["height", "--type", "A", "--rank", "1", "--weight", "0"])
    assert code == 0 and out["result"]["height"] == 0
    code, out, _ = run_cli(capsys, ["height", "--type", "A", "--rank", "4", "--weight", "1,0,0,1"])
    assert code == 0
    assert out["result"]["height"] == out["result"]["via_difference"] == 8


def test_lowheight(capsys):
    code, out, _ = run_cli(
        capsys, ["lowheight", "--type", "A", "--rank", "4", "--weight", "1,0,0,1", "--p", "11"]
    )
    assert code == 0 and out["result"]["low_height"] is True


def test_minheight(capsys):
    code, out, _ = run_cli(capsys, ["minheight", "--type", "F", "--rank", "4"])
    assert code == 0
    assert out["result"]["min_height"] == 16
    assert out["result"]["coxeter_number"] == 12


def test_glheight_with_bound(capsys):
    code, out, _ = run_cli(capsys, ["glheight", "--dims", "4", "--ms", "2", "--p", "5"])
    assert code == 0
    assert out["result"]["height"] == 4
    assert out["result"]["bound_ok"] is True


def test_basis_with_oracle(capsys):
    code, out, _ = run_cli(
        capsys, ["basis", "--type", "A", "--rank", "2", "--phi", "1/9,1/9", "--oracle"]
    )
    assert code == 0
    r = out["result"]
    assert r["weyl_word"] == []
    assert r["basis_roots"] == [[1, 0], [0, 1]]
    assert r["oracle_member"] is True
    assert r["oracle_count"] >= 1
    assert sorted(r["critical_roots"]) == [[0, 1], [1, 0], [1, 1]]


def test_critical_boundary_instance(capsys):
    code, out, _ = run_cli(capsys, ["critical", "--type", "A", "--rank", "2", "--phi", "1/3,1/3"])
    assert code == 0
    r = out["result"]
    assert r["window"] == "1/3"
    assert r["critical_roots"] == []
    assert sorted(r["boundary_roots"]) == [[-1, -1], [0, 1], [1, 0]]


def test_reduce_transcript(capsys):
    code, out, _ = run_cli(capsys, ["reduce", "--type", "A", "--rank", "2", "--point", "4/3,1/3"])
    assert code == 0
    r = out["result"]
    assert r["reduced_point"] == ["1/3", "1/3"]
    assert r["weyl_word"] == [2, 1, 2, 1]
    assert r["net_translation"] == [2, -1]
    assert all(s["kind"] in {"translate", "reflect", "affine_reflect"} for s in r["steps"])


def test_exp_frozen(capsys):
    code, out, _ = run_cli(
        capsys, ["exp", "--p", "5", "--matrix", "[[0,1,0],[0,0,1],[0,0,0]]"]
    )
    assert code == 0
    assert out["result"]["output"] == {"p": 5, "matrix": [[1, 1, 3], [0, 1, 1], [0, 0, 1]]}


def test_log_inverts_exp(capsys):
    code, out, _ = run_cli(
        capsys, ["log", "--p", "5", "--matrix", "[[1,1,3],[0,1,1],[0,0,1]]"]
    )
    assert code == 0
    assert out["result"]["output"]["matrix"] == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]


def test_tpower(capsys):
    code, out, _ = run_cli(
        capsys, ["tpower", "--p", "3", "--matrix", "[[1,1],[0,1]]", "--t", "5"]
    )
    assert code == 0
    assert out["result"]["output"]["matrix"] == [[1, 2], [0, 1]]


def test_bch_terms_and_application(capsys):
    x = "[[0,1,3],[0,0,1],[0,0,0]]"
    y = "[[0,2,0],[0,0,4],[0,0,0]]"
    code, out, _ = run_cli(capsys, ["bch", "--p", "5", "--degree", "2", "--x", x, "--y", y])
    assert code == 0
    r = out["result"]
    assert {"degree": 2, "word": [0, 1], "coefficient": "1/2"} in r["terms"]
    table = charp.bch_table(5, 2)
    expected = charp.bch_apply(
        table, FpMatrix.from_rows(5, json.loads(x)), FpMatrix.from_rows(5, json.loads(y))
    )
    assert r["applied"]["z"]["matrix"] == [list(row) for row in expected.rows]


def test_bch_requires_both_operands(capsys):
    code, out, _ = run_cli(capsys, ["bch", "--p", "5", "--degree", "2", "--x", "[[0]]"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_cycle(capsys):
    code, out, _ = run_cli(capsys, ["cycle", "--p", "3", "--t", "1,2,1"])
    assert code == 0
    r = out["result"]
    assert r["matrix"]["matrix"] == [[0, 1, 0], [0, 0, 2], [1, 0, 0]]
    assert r["power_scalar"] == 2
    assert r["is_nilpotent"] is False


def test_pgl_lift(capsys):
    code, out, _ = run_cli(
        capsys, ["pgl-lift", "--p", "3", "--matrix", "[[0,1,0],[0,0,1],[1,0,0]]"]
    )
    assert code == 0
    assert out["result"]["det"] == 1
    assert out["result"]["lift"]["matrix"] == [[2, 1, 0], [0, 2, 1], [1, 0, 2]]


def test_heisenberg(capsys):
    code, out, _ = run_cli(capsys, ["heisenberg", "--p", "5"])
    assert code == 0
    assert out["result"]["span_dimension"] == 25


def test_weightdemo(capsys):
    code, out, _ = run_cli(capsys, ["weightdemo", "--p", "3"])
    assert code == 0
    r = out["result"]
    assert r["component_dims"] == [[0, 2], [3, 3], [6, 3]]
    assert r["alpha_carries_cycle"] is True
    assert r["witness_is_nilpotent"] is False


# --- error paths -------------------------------------------------------------

def test_contract_violation_exits_2(capsys):
    code, out, _ = run_cli(capsys, ["exp", "--p", "3", "--matrix", "[[1,0],[0,1]]"])
    assert code == 2
    assert out["error"]["kind"] == "contract"
    assert out["subcommand"] == "exp"


def test_nonnilpotent_lift_exits_2(capsys):
    code, out, _ = run_cli(capsys, ["pgl-lift", "--p", "3", "--matrix", "[[1,0,0],[0,2,0],[0,0,0]]"])
    assert code == 2
    assert out["error"]["kind"] == "contract"


def test_malformed_matrix_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["exp", "--p", "5", "--matrix", "not json"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_nonprime_p_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["exp", "--p", "4", "--matrix", "[[0]]"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_malformed_rational_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["basis", "--type", "A", "--rank", "2", "--phi", "x,y"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_wrong_arity_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["critical", "--type", "A", "--rank", "2", "--phi", "1/3"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_unknown_subcommand_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["frobnicate"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_missing_required_flag_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["coxeter", "--type", "A"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


def test_bad_rank_exits_1(capsys):
    code, out, _ = run_cli(capsys, ["roots", "--type", "D", "--rank", "3"])
    assert code == 1
    assert out["error"]["kind"] == "usage"


# --- determinism and the self-test -------------------------------------------

def test_reports_are_deterministic(capsys):
    argv = ["basis", "--type", "B", "--rank", "3", "--phi", "1/7,2/7,3/7", "--oracle"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert _drop_elapsed(first) == _drop_elapsed(second)


def test_selftest_small_is_deterministic(capsys):
    argv = ["selftest", "--seed", "123", "--trials", "3"]
    code1, first, _ = run_cli(capsys, argv)
    code2, second, _ = run_cli(capsys, argv)
    assert code1 == code2 == 0
    assert _drop_elapsed(first) == _drop_elapsed(second)


def test_selftest_reports_each_criterion(capsys):
    code, out, err = run_cli(capsys, ["selftest", "--trials", "3"])
    assert code == 0
    assert out["result"]["all_passed"] is True
    assert len(out["result"]["criteria"]) == 11
    lines = [line for line in err.splitlines() if line.strip()]
    assert len(lines) == 11
    for k, line in enumerate(lines, start=1):
        assert line.startswith(f"PASS criterion {k}: ")
    assert _no_floats(out)
