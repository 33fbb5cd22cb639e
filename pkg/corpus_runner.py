#!/usr/bin/env python3
"""Golden-corpus runner: executes every bundled case and diffs it against its expectation."""
import difflib
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from threading import Lock
from typing import Any, Dict, List, Optional

from tqdm import tqdm
from rich.console import Console
from rich.table import Table
from rich import box

from config import CONFIG
from algebra.errors import InputError
from problem_source import load_source
from safeguards import discover_corpus_cases, expected_path
from schema import CorpusCaseResult, CorpusSummary, canonical_json
from tools import execute_command, options_from_argv

logger = logging.getLogger(__name__)
console = Console(stderr=True)


TIMING_KEYS = frozenset({"timing_seconds"})


def strip_timing(data: Any) -> Any:
    """Drop timing keys at every depth; they are the only fields allowed to vary."""
    if isinstance(data, dict):
        return {k: strip_timing(v) for k, v in data.items() if k not in TIMING_KEYS}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data


def is_frozen(expectation: Dict[str, Any]) -> bool:
    """A frozen expectation is a whole report (it carries the inputs digest)."""
    return "inputs_digest" in expectation


def project_outputs(actual: Any, expected: Any) -> Any:
    """Restrict ``actual`` to the keys pinned in ``expected`` (recursively)."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        return {k: project_outputs(actual[k], v) if k in actual else "<missing>"
                for k, v in expected.items()}
    if (isinstance(expected, list) and isinstance(actual, list)
            and len(expected) == len(actual)
            and all(isinstance(e, dict) for e in expected)):
        return [project_outputs(a, e) for a, e in zip(actual, expected)]
    return actual


def load_expectation(source: Path) -> Dict[str, Any]:
    path = expected_path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path.name}: invalid JSON ({e})")
    for key in ("command", "outputs"):
        if key not in data:
            raise InputError(f"{path.name}: missing '{key}'")
    return data


class CorpusRunner:
    """
    Runs golden cases concurrently up to the worker cap.

    Frozen expectations are compared as whole canonical reports with timing
    removed. Older expectations that pin only some output keys are compared
    on those keys. With ``update=True`` every case is re-run and its
    expectation is rewritten as a frozen report.
    """

    def __init__(self, corpus_dir: Optional[Path] = None, max_workers: Optional[int] = None,
                 update: bool = False):
        self.corpus_dir = Path(corpus_dir or CONFIG.CORPUS_DIR)
        self.max_workers = max_workers or CONFIG.MAX_WORKERS
        self.update = update
        self.lock = Lock()
        self.total_passed = 0
        self.total_failed = 0
        logger.info(f"Corpus directory: {self.corpus_dir}")
        logger.info(f"Worker cap: {self.max_workers}")

    def run_case(self, source_path: Path) -> CorpusCaseResult:
        name = source_path.stem
        start = time.perf_counter()
        try:
            expectation = load_expectation(source_path)
            command = expectation["command"]
            argv = list(expectation.get("argv", []))
            source = load_source(source_path)
            report = execute_command(command, source, options_from_argv(argv), argv)
            actual = strip_timing(report.to_dict(include_timing=False))
            if self.update:
                expected_path(source_path).write_text(canonical_json(actual) + "\n",
                                                      encoding="utf-8")
                logger.info(f"Froze {name}")
                expectation = actual
            if is_frozen(expectation):
                want = canonical_json(strip_timing(expectation))
                got = canonical_json(actual)
            else:
                want = canonical_json(expectation["outputs"])
                got = canonical_json(project_outputs(report.outputs, expectation["outputs"]))
            diff = None
            if want != got:
                diff = "".join(difflib.unified_diff(
                    want.splitlines(keepends=True), got.splitlines(keepends=True),
                    fromfile=f"{name}.expected", tofile=f"{name}.actual"))
            result = CorpusCaseResult(name=name, command=command, passed=diff is None, diff=diff,
                                      timing_seconds=round(time.perf_counter() - start, 3))
        except Exception as e:
            logger.error(f"Case {name} raised: {e}")
            result = CorpusCaseResult(name=name, command="?", passed=False,
                                      error=f"{type(e).__name__}: {e}",
                                      timing_seconds=round(time.perf_counter() - start, 3))
        with self.lock:
            if result.passed:
                self.total_passed += 1
            else:
                self.total_failed += 1
        return result

    def run(self, sources: Optional[List[Path]] = None) -> CorpusSummary:
        """
        Run every case (or the given subset).

        Raises:
            InputError: if the corpus directory is missing or empty
        """
        sources = sources if sources is not None else discover_corpus_cases(self.corpus_dir)
        results: List[CorpusCaseResult] = []
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            futures = {pool.submit(self.run_case, s): s for s in sources}
            with tqdm(total=len(futures), desc="Corpus cases", unit="case") as pbar:
                for future in as_completed(futures):
                    result = future.result()
                    results.append(result)
                    pbar.set_description(f"{result.name}: {'pass' if result.passed else 'FAIL'}")
                    pbar.update(1)
        results.sort(key=lambda r: r.name)
        passed = sum(1 for r in results if r.passed)
        logger.info(f"✓ Corpus finished: {passed}/{len(results)} passed")
        return CorpusSummary(total=len(results), passed=passed, failed=len(results) - passed,
                             cases=results)

    def print_report(self, summary: CorpusSummary) -> None:
        table = Table(show_header=True, header_style="bold cyan", box=box.ROUNDED)
        table.add_column("Case", style="cyan")
        table.add_column("Command", style="white")
        table.add_column("Status", style="white", width=10)
        table.add_column("Time (s)", justify="right", style="dim")
        for case in summary.cases:
            status = "[green]✓ PASS[/green]" if case.passed else "[red]✗ FAIL[/red]"
            table.add_row(case.name, case.command, status, f"{case.timing_seconds:.2f}")
        console.print(table)
        for case in summary.cases:
            if case.error:
                console.print(f"[red]{case.name}:[/red] {case.error}")
            if case.diff:
                console.print(f"[red]{case.name} diff:[/red]")
                console.print(case.diff, markup=False, highlight=False)
        console.print(f"\n[bold]Results: {summary.passed}/{summary.total} cases passed[/bold]")
