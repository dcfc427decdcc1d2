import contextlib
import io

import pytest

from treedeck import cli


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.run(argv)
    return code, out.getvalue(), err.getvalue()


def body(stdout: str) -> list[str]:
    return [line for line in stdout.splitlines() if not line.startswith("#")]


def test_header_present():
    code, out, err = run_cli(["enumerate", "--n", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# treedeck ")
    assert lines[1].startswith("# config: enumerate")
    assert "# wall-time-s:" in err


def test_enumerate():
    code, out, _ = run_cli(["enumerate", "--n", "4"])
    assert code == 0
    assert body(out) == ["(*,(*,(*,*)))", "((*,*),(*,*))"]
    code, out, _ = run_cli(["enumerate", "--n", "9", "--count-only"])
    assert body(out) == ["count\t46"]


def test_deck_of_caterpillar():
    code, out, _ = run_cli(["deck", "--tree", "(*,(*,(*,(*,*))))", "--j", "4"])
    assert code == 0
    assert body(out) == ["(*,(*,(*,*)))"]


def test_multideck_matches_oracle_flag():
    args = ["multideck", "--tree", "((*,*),((*,*),(*,*)))", "--j", "5"]
    _, fast, _ = run_cli(args)
    _, slow, _ = run_cli([*args, "--oracle"])
    assert body(fast) == body(slow) == ["(*,((*,*),(*,*)))\t2", "((*,*),(*,(*,*)))\t4"]


def test_reconstruct_number_and_report():
    code, out, _ = run_cli(["reconstruct", "--n", "6"])
    assert code == 0
    assert "reconstruction-number\t5" in body(out)
    code, out, _ = run_cli(["reconstruct", "--n", "5", "--j", "4", "--multideck"])
    assert "determined\ttrue" in body(out)


def test_counterexample():
    code, out, _ = run_cli(["counterexample", "--n", "8"])
    assert code == 0
    rows = dict(line.split("\t", 1) for line in body(out))
    assert rows["deck-equal"] == "true"
    assert rows["deck-size"] == "4"
    assert rows["t1"] != rows["t2"]


def test_counterexample_unsupported_size():
    code, _, err = run_cli(["counterexample", "--n", "7"])
    assert code == 2
    assert "no family" in err


def test_extremal_quantities():
    code, out, _ = run_cli(["extremal", "--n", "8", "--quantity", "max-deck"])
    assert code == 0
    assert "value\t4" in body(out)
    code, out, _ = run_cli(["extremal", "--n", "8", "--quantity", "singleton"])
    assert sum(1 for line in body(out) if line.startswith("achiever\t")) == 3


def test_extremal_infeasible_exit_code():
    code, _, err = run_cli(["extremal", "--n", "40", "--quantity", "max-deck"])
    assert code == 3
    assert "refused" in err


def test_universal_command():
    code, out, _ = run_cli(["universal", "--k", "6"])
    assert code == 0
    rows = body(out)
    assert "u\t9" in rows
    assert "exhaustive\ttrue" in rows
    assert sum(1 for line in rows if line.startswith("witness\t")) == 6


def test_universal_budgeted_upper_bound():
    code, out, _ = run_cli(["universal", "--k", "9", "--budget", "100"])
    assert code == 0
    rows = body(out)
    assert "u\t<=16" in rows
    assert "exhaustive\tfalse" in rows


def test_kalmar_command():
    code, out, _ = run_cli(["kalmar", "--upto", "5"])
    assert body(out) == ["1\t1", "2\t2", "3\t3", "4\t5", "5\t6"]


def test_universal_table_exact_small():
    code, out, _ = run_cli(["universal-table", "--max-k", "5"])
    assert code == 0
    assert body(out) == [
        "k\t1\t2\t3\t4\t5",
        "kalmar\t1\t2\t3\t5\t6",
        "u\t1\t2\t3\t5\t6",
    ]


def test_universal_table_budgeted_marks_bounds():
    code, out, _ = run_cli(["universal-table", "--max-k", "12", "--budget", "5000"])
    assert code == 0
    u_row = next(line for line in body(out) if line.startswith("u\t"))
    cells = u_row.split("\t")[1:]
    assert cells[11] == "<=28"
    assert cells[10] == "<=21"
    assert cells[3] == "5"  # cheap entries still exact under the budget


def test_plain_format():
    _, out, _ = run_cli(["kalmar", "--upto", "2", "--format", "plain"])
    assert body(out) == ["1: 1", "2: 2"]


def test_bad_tree_text_is_usage_error():
    code, _, err = run_cli(["deck", "--tree", "(*,*", "--j", "2"])
    assert code == 2
    assert "error:" in err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        run_cli(["frobnicate"])
    assert exc.value.code == 2


def test_verify_all_quick():
    code, out, _ = run_cli(["verify-all", "--level", "quick"])
    assert code == 0
    rows = body(out)
    assert rows[-1] == "result\tPASS"
    assert sum(1 for line in rows if "\tPASS\t" in line) == 13


def test_universal_table_single_column():
    code, out, _ = run_cli(["universal-table", "--max-k", "1"])
    assert code == 0
    assert body(out) == ["k\t1", "kalmar\t1", "u\t1"]


def test_out_of_domain_size_is_usage_error():
    code, _, err = run_cli(["enumerate", "--n", "0"])
    assert code == 2
    assert "error:" in err


def test_output_identical_across_processes():
    # separate interpreters randomize hashes differently; stdout must
    # not depend on that
    import subprocess
    import sys

    for argv in (["enumerate", "--n", "7"],
                 ["universal", "--k", "5"],
                 ["reconstruct", "--n", "6"]):
        outs = set()
        for seed in ("0", "1", "2"):
            proc = subprocess.run(
                [sys.executable, "-m", "treedeck", *argv],
                capture_output=True, check=True,
                env={"PATH": "", "PYTHONHASHSEED": seed, "PYTHONPATH": ":".join(sys.path)},
            )
            outs.add(proc.stdout)
        assert len(outs) == 1, argv
