#!/usr/bin/env python3
"""Test the command-line interface: JSON reports and exit codes."""
import json
import shutil

import pytest
from rich.console import Console

from cli import EXIT_BUDGET, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main, recorded_argv
from config import CONFIG

console = Console(stderr=True)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lct_report_on_stdout(capsys, corpus_dir):
    """A successful command prints exactly one JSON report on stdout."""
    console.print("\n[bold cyan]Testing CLI report output[/bold cyan]")

    code, out, _ = run_cli(capsys, "--no-timing", "lct-monomial", str(corpus_dir / "lct_cusp.ri"))
    report = json.loads(out)

    assert code == EXIT_OK
    assert report["command"] == "lct-monomial"
    assert report["outputs"] == {"lct": "5/6"}
    assert report["argv"] == []
    assert "timing_seconds" not in report
    assert len(report["inputs_digest"]) == 64

    console.print("[green]✓ Report parsed from stdout[/green]")


def test_flags_after_source_are_recorded(capsys, corpus_dir):
    code, out, _ = run_cli(capsys, "saturate", str(corpus_dir / "saturate_monomial.ri"),
                           "--by", "J")
    report = json.loads(out)

    assert code == EXIT_OK
    assert report["argv"] == ["--by", "J"]
    assert report["outputs"]["ideal"] == ["x^2"]
    assert report["timing_seconds"] >= 0


def test_flags_before_source_are_recorded(capsys, corpus_dir):
    """Flag position around the source path does not change argv or the digest."""
    source = str(corpus_dir / "saturate_monomial.ri")
    _, before, _ = run_cli(capsys, "--no-timing", "saturate", "--by", "J", source)
    _, after, _ = run_cli(capsys, "--no-timing", "saturate", source, "--by", "J")
    _, bare, _ = run_cli(capsys, "--no-timing", "saturate", source)

    assert json.loads(before)["argv"] == ["--by", "J"]
    assert before == after
    assert json.loads(bare)["inputs_digest"] != json.loads(before)["inputs_digest"]


@pytest.mark.parametrize("argv,expected", [
    (["lct-monomial", "a.ri"], []),
    (["--no-timing", "--workers", "2", "dim", "a.ri"], []),
    (["residual", "--t", "3", "a.ri", "--seed", "7"], ["--t", "3", "--seed", "7"]),
    (["commands"], []),
])
def test_recorded_argv(argv, expected):
    command = next(a for a in argv if not a.startswith("-") and not a.isdigit())
    source = "a.ri" if "a.ri" in argv else None
    assert recorded_argv(argv, command, source) == expected


def test_verbose_output_stays_off_stdout(capsys, corpus_dir):
    """Banners, logs and success lines go to stderr; stdout is the report alone."""
    code, out, err = run_cli(capsys, "--verbose", "--no-timing", "lct-monomial",
                             str(corpus_dir / "lct_cusp.ri"))

    assert code == EXIT_OK
    assert json.loads(out)["outputs"] == {"lct": "5/6"}
    assert out.strip().startswith("{") and out.strip().endswith("}")
    assert "finished" in err


def test_reports_are_deterministic(capsys, corpus_dir):
    source = str(corpus_dir / "two_planes_dim.ri")
    _, first, _ = run_cli(capsys, "--no-timing", "dim", source)
    _, second, _ = run_cli(capsys, "--no-timing", "dim", source)
    assert first == second


def test_input_errors_exit_2(capsys, corpus_dir, tmp_path):
    """Missing files, bad flag values and parse errors all exit with 2."""
    console.print("\n[bold cyan]Testing input-error exit codes[/bold cyan]")

    code, out, err = run_cli(capsys, "dim", str(tmp_path / "missing.ri"))
    assert code == EXIT_INPUT
    assert out == ""
    assert "not found" in err

    code, _, _ = run_cli(capsys, "residual", str(corpus_dir / "link_point.ri"), "--t", "0")
    assert code == EXIT_INPUT

    broken = tmp_path / "broken.ri"
    broken.write_text("ring x y\nideal I = x + q\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "dim", str(broken))
    assert code == EXIT_INPUT
    assert "line 2" in err

    code, _, _ = run_cli(capsys, "--workers", "0", "dim", str(corpus_dir / "two_planes_dim.ri"))
    assert code == EXIT_INPUT

    console.print("[green]✓ Input errors map to exit code 2[/green]")


def test_budget_exit_3(capsys, corpus_dir):
    saved = CONFIG.GB_STEP_BUDGET
    code, out, err = run_cli(capsys, "dim", str(corpus_dir / "two_planes_dim.ri"),
                             "--budget", "1")

    assert code == EXIT_BUDGET
    assert out == ""
    assert "budget" in err
    assert CONFIG.GB_STEP_BUDGET == saved


def test_no_command_prints_help(capsys):
    code, out, err = run_cli(capsys)
    assert code == EXIT_OK
    assert out == ""
    assert "usage" in err


def test_commands_listing(capsys):
    code, out, err = run_cli(capsys, "commands")
    assert code == EXIT_OK
    assert "residual" in err


def test_unknown_subcommand_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_corpus_command(capsys, corpus_dir, tmp_path):
    """corpus exits 0 when every case matches and 1 on a mismatch."""
    for name in ("lct_cusp", "saturate_monomial"):
        shutil.copy(corpus_dir / f"{name}.ri", tmp_path)
        shutil.copy(corpus_dir / f"{name}.expected.json", tmp_path)

    code, out, _ = run_cli(capsys, "--no-timing", "corpus", "--dir", str(tmp_path))
    summary = json.loads(out)["outputs"]
    assert code == EXIT_OK
    assert summary["passed"] == 2

    expected = tmp_path / "lct_cusp.expected.json"
    data = json.loads(expected.read_text(encoding="utf-8"))
    data["outputs"]["lct"] = "1/1"
    expected.write_text(json.dumps(data), encoding="utf-8")

    code, out, _ = run_cli(capsys, "--no-timing", "corpus", "--dir", str(tmp_path))
    summary = json.loads(out)["outputs"]
    assert code == EXIT_FAILURE
    assert summary["failed"] == 1
    assert {"name": "lct_cusp", "passed": False} in summary["cases"]
