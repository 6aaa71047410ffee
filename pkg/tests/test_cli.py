from __future__ import annotations

import random
from pathlib import Path

import pytest

from teamdim.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(DATA / a) if (DATA / a).is_file() else a for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [dict(field.split("=", 1) for field in line.split()) for line in out.splitlines()]


@pytest.mark.parametrize(
    "golden, argv",
    [
        ("dims_even3.txt", ["dims", "even3.fam"]),
        ("dims_interval.txt", ["dims", "interval.fam"]),
        ("dims_interval_table.txt", ["dims", "interval.fam", "--which", "dd,cd", "--format", "table"]),
        ("family_dep_tsv.txt", ["family", "dep(x;y)", "--vars", "x,y", "--n", "2", "--dims", "--no-witness", "--format", "tsv"]),
        ("family_eq.txt", ["family", "x = y", "--vars", "x,y", "--n", "2"]),
        ("dnf_xor3.txt", ["dnf", "xor3.bf", "--check-cd"]),
        ("atom_dep.txt", ["atom", "--kind", "dep", "--n", "2"]),
        ("tensor_or.txt", ["tensor", "or", "interval.fam", "interval.fam"]),
    ],
)
def test_golden(capsys, golden, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text()


class TestDims:
    def test_random_family_inequalities(self, capsys, tmp_path):
        rng = random.Random(9)
        members = {rng.getrandbits(5) for _ in range(12)}
        lines = ["base 5"] + [" ".join(str(i) for i in range(5) if m >> i & 1) or "-" for m in sorted(members)]
        path = tmp_path / "r.fam"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "dims", str(path), "--no-witness")
        values = {r["which"]: int(r["value"]) for r in records(out)}
        assert code == EXIT_OK
        assert values["dd"] <= values["cd"] and values["ddd"] <= values["cd"]

    def test_budget_bounded_exit(self, capsys, tmp_path):
        rng = random.Random(0)
        members = [m for m in range(1 << 10) if rng.random() < 0.5]
        lines = ["base 10"] + [" ".join(str(i) for i in range(10) if m >> i & 1) or "-" for m in members]
        path = tmp_path / "big.fam"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "--budget-ms", "50", "dims", str(path), "--which", "cd", "--no-witness")
        assert code == EXIT_BUDGET
        assert records(out)[0]["status"] == "upperBoundBudget"

    def test_duplicate_member_is_an_input_error(self, capsys, tmp_path):
        path = tmp_path / "dup.fam"
        path.write_text("base 2\n0\n0\n")
        code, _, err = run(capsys, "dims", str(path))
        assert code == EXIT_INPUT and "line 3" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "dims", "/nonexistent/x.fam")
        assert code == EXIT_INPUT and err.startswith("error:")

    def test_bad_which(self, capsys):
        assert run(capsys, "dims", "even3.fam", "--which", "xd")[0] == EXIT_INPUT


class TestEval:
    def test_dependence_true(self, capsys):
        code, out, _ = run(capsys, "eval", "bare3.model", "dep_team.team", "dep(x;y)")
        assert (code, out) == (EXIT_OK, "true\n")

    def test_inclusion_true(self, capsys):
        code, out, _ = run(capsys, "eval", "bare3.model", "inc_team.team", "inc(x;y)")
        assert (code, out) == (EXIT_OK, "true\n")

    def test_nonempty_on_empty_team(self, capsys):
        code, out, _ = run(capsys, "eval", "bare3.model", "empty.team", "NE")
        assert (code, out) == (EXIT_FALSE, "false\n")

    def test_malformed_formula(self, capsys):
        code, _, err = run(capsys, "eval", "bare3.model", "dep_team.team", "dep(x;")
        assert code == EXIT_INPUT and "column" in err

    def test_unbound_variable(self, capsys):
        assert run(capsys, "eval", "bare3.model", "dep_team.team", "x = z")[0] == EXIT_INPUT

    def test_strict_semantics_rejected(self, capsys):
        code, _, err = run(capsys, "--strict", "eval", "bare3.model", "dep_team.team", "dep(x;y)")
        assert code == EXIT_INPUT and "lax" in err


class TestVerify:
    def test_translations_report(self, capsys):
        code, out, _ = run(capsys, "verify", "translations", "--n", "2")
        recs = records(out)
        summary = recs[-1]
        assert summary["summary"] == "total"
        assert int(summary["passed"]) + int(summary["failed"]) == len(recs) - 1
        assert [int(r["index"]) for r in recs[:-1]] == list(range(len(recs) - 1))
        assert code == (EXIT_VERIFY if int(summary["failed"]) else EXIT_OK)

    def test_dnf_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "dnf", "--n", "6", "--samples", "10")
        assert code == EXIT_OK and records(out)[-1]["failed"] == "0"

    def test_operators_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "operators", "--samples", "50")
        assert code == EXIT_OK and records(out)[-1]["failed"] == "0"

    def test_atom_verify_prints_expected_and_computed(self, capsys):
        code, out, _ = run(capsys, "atom", "--kind", "dep", "--n", "2", "--verify")
        rec = records(out)[0]
        assert code == EXIT_OK and rec["result"] == "PASS" and rec["expected"] == rec["computed"]

    def test_atom_verify_failure_exit(self, capsys):
        # the inclusion closed form overstates the dual dimensions at this size
        code, out, _ = run(capsys, "atom", "--kind", "inc", "--n", "2", "--verify")
        assert code == EXIT_VERIFY and records(out)[0]["result"] == "FAIL"


class TestOther:
    def test_kripke(self, capsys, tmp_path):
        path = tmp_path / "id.kr"
        path.write_text("kripke 1 2 2\n- ; -\n0 ; 0\n1 ; 1\n0 1 ; 0 1\n")
        code, out, _ = run(capsys, "kripke", str(path))
        assert code == EXIT_OK
        assert records(out)[0] == {"local": "true", "separating": "true", "star_sharp": "true", "star_flat": "true"}

    def test_tensor_truth_table_alias(self, capsys):
        by_name = run(capsys, "tensor", "or", "even3.fam", "interval.fam")
        by_bits = run(capsys, "tensor", "0111", "even3.fam", "interval.fam")
        assert by_name == by_bits

    def test_compose_method(self, capsys):
        a = run(capsys, "family", "E y . dep(x;y)", "--vars", "x", "--n", "2")
        b = run(capsys, "family", "E y . dep(x;y)", "--vars", "x", "--n", "2", "--method", "compose")
        assert a == b and a[0] == EXIT_OK

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == EXIT_INPUT

    def test_format_before_or_after_subcommand(self, capsys):
        assert run(capsys, "--format", "tsv", "atom", "--kind", "ne", "--n", "2") == run(
            capsys, "atom", "--kind", "ne", "--n", "2", "--format", "tsv"
        )
