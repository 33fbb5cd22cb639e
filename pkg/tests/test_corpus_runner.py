#!/usr/bin/env python3
"""Test the golden-corpus runner and run the bundled corpus."""
import json
import shutil

import pytest
from rich.console import Console
from rich.table import Table

from algebra.errors import InputError
from corpus_runner import CorpusRunner, is_frozen, load_expectation, project_outputs, strip_timing
from schema import VERSION, canonical_json, compute_digest

console = Console()


def copy_cases(corpus_dir, target, *names):
    for name in names:
        shutil.copy(corpus_dir / f"{name}.ri", target)
        shutil.copy(corpus_dir / f"{name}.expected.json", target)


def test_project_outputs():
    """Only keys pinned by the expectation are compared."""
    actual = {"a": 1, "b": {"c": 2, "d": 3}, "e": [{"f": 4, "g": 5}], "h": 6}
    expected = {"a": 0, "b": {"c": 0}, "e": [{"f": 0}], "z": 0}

    assert project_outputs(actual, expected) == {
        "a": 1,
        "b": {"c": 2},
        "e": [{"f": 4}],
        "z": "<missing>",
    }
    assert project_outputs([1, 2], [1]) == [1, 2]


def test_load_expectation_validation(tmp_path):
    source = tmp_path / "case.ri"
    source.write_text("ring x\nideal I = x\n", encoding="utf-8")
    expected = tmp_path / "case.expected.json"

    expected.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_expectation(source)

    expected.write_text(json.dumps({"command": "dim"}), encoding="utf-8")
    with pytest.raises(InputError):
        load_expectation(source)


def test_empty_or_incomplete_corpus(tmp_path):
    with pytest.raises(InputError):
        CorpusRunner(tmp_path / "missing").run()
    with pytest.raises(InputError):
        CorpusRunner(tmp_path).run()

    (tmp_path / "orphan.ri").write_text("ring x\n", encoding="utf-8")
    with pytest.raises(InputError):
        CorpusRunner(tmp_path).run()


def test_perturbed_expectation_fails_with_diff(corpus_dir, tmp_path):
    """A wrong committed value shows up as a failing case with a unified diff."""
    console.print("\n[bold cyan]Testing perturbed corpus[/bold cyan]")

    copy_cases(corpus_dir, tmp_path, "lct_cusp", "mult_ideal", "parse_zero_ideal")
    expected = tmp_path / "mult_ideal.expected.json"
    data = json.loads(expected.read_text(encoding="utf-8"))
    data["outputs"]["trivial"] = True
    expected.write_text(json.dumps(data), encoding="utf-8")

    runner = CorpusRunner(tmp_path, max_workers=2)
    summary = runner.run()

    assert summary.total == 3
    assert summary.failed == 1
    assert not summary.success
    assert [c.name for c in summary.cases] == ["lct_cusp", "mult_ideal", "parse_zero_ideal"]

    failed = summary.cases[1]
    assert not failed.passed
    assert '-    "trivial": true' in failed.diff
    assert '+    "trivial": false' in failed.diff
    assert runner.total_failed == 1

    console.print("[green]✓ Mismatch reported with a diff[/green]")


def test_frozen_expectation_compares_whole_report(corpus_dir, tmp_path):
    """Any drift in a frozen report fails, not just in hand-picked output keys."""
    console.print("\n[bold cyan]Testing frozen report comparison[/bold cyan]")

    copy_cases(corpus_dir, tmp_path, "two_planes_dim")
    expected = tmp_path / "two_planes_dim.expected.json"
    original = json.loads(expected.read_text(encoding="utf-8"))
    assert is_frozen(original)

    runner = CorpusRunner(tmp_path)
    assert runner.run().success

    for mutate in (
        lambda d: d["outputs"].update(nvars=5),
        lambda d: d.update(inputs_digest="0" * 64),
        lambda d: d.update(version="0.0.0"),
        lambda d: d.update(seed=1),
        lambda d: d["outputs"].update(extra=None),
    ):
        data = json.loads(json.dumps(original))
        mutate(data)
        expected.write_text(json.dumps(data), encoding="utf-8")
        summary = CorpusRunner(tmp_path).run()
        assert not summary.success
        assert summary.cases[0].diff

    data = dict(original, timing_seconds=123.0)
    expected.write_text(json.dumps(data), encoding="utf-8")
    assert CorpusRunner(tmp_path).run().success

    console.print("[green]✓ Every non-timing field is compared[/green]")


def test_strip_timing():
    data = {"timing_seconds": 1.0, "outputs": {"a": [{"timing_seconds": 2, "b": 3}]}}
    assert strip_timing(data) == {"outputs": {"a": [{"b": 3}]}}


def test_update_freezes_reports(corpus_dir, tmp_path):
    """Update mode rewrites a pinned expectation as the full canonical report."""
    copy_cases(corpus_dir, tmp_path, "lct_cusp")
    expected = tmp_path / "lct_cusp.expected.json"
    expected.write_text(json.dumps({"command": "lct-monomial", "outputs": {"lct": "0/1"}}),
                        encoding="utf-8")

    assert not CorpusRunner(tmp_path).run().success
    assert CorpusRunner(tmp_path, update=True).run().success

    frozen = expected.read_text(encoding="utf-8")
    data = json.loads(frozen)
    assert frozen == canonical_json(data) + "\n"
    assert is_frozen(data)
    assert "timing_seconds" not in data
    assert data["outputs"] == {"lct": "5/6"}
    assert data == json.loads((corpus_dir / "lct_cusp.expected.json").read_text(encoding="utf-8"))
    assert CorpusRunner(tmp_path).run().success


def test_frozen_digests_match_sources(corpus_dir):
    """Each frozen expectation hashes its own source text, command and argv."""
    frozen = 0
    for source in sorted(corpus_dir.glob("*.ri")):
        data = load_expectation(source)
        if not is_frozen(data):
            continue
        frozen += 1
        text = source.read_text(encoding="utf-8")
        assert data["inputs_digest"] == compute_digest(text, data["command"], data["argv"]), source.name
        assert data["version"] == VERSION
    assert frozen >= 12


def test_case_errors_are_captured(corpus_dir, tmp_path):
    copy_cases(corpus_dir, tmp_path, "lct_cusp")
    (tmp_path / "lct_cusp.ri").write_text("ring x y\nideal a = x + y^2\n", encoding="utf-8")

    summary = CorpusRunner(tmp_path).run()
    case = summary.cases[0]

    assert not case.passed
    assert case.error.startswith("NotMonomialError")


def test_full_corpus(corpus_dir):
    """Every bundled case reproduces its committed expectation."""
    console.print("\n[bold cyan]Running the golden corpus[/bold cyan]")

    runner = CorpusRunner(corpus_dir)
    summary = runner.run()

    table = Table(title="Golden corpus")
    table.add_column("Case", style="cyan")
    table.add_column("Status", style="white")
    for case in summary.cases:
        table.add_row(case.name, "✓" if case.passed else "✗")
    console.print(table)

    failures = {c.name: c.diff or c.error for c in summary.cases if not c.passed}
    assert not failures, failures
    assert summary.total >= 25
