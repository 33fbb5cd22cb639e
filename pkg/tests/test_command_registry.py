#!/usr/bin/env python3
"""Test the command registry, the command context and command outputs."""
import pytest
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from algebra.errors import InputError
from problem_source import parse_source
from schema import CommandOptions
from tools import (
    COMMAND_EXECUTORS,
    COMMAND_REGISTRY,
    CommandContext,
    IDEAL_COMMANDS,
    INVARIANT_COMMANDS,
    RESIDUAL_COMMANDS,
    execute_command,
    get_command_definition,
    get_command_names,
    get_commands_by_category,
    options_from_argv,
)

console = Console()

POINT_SOURCE = "ring x y\nideal X = x, y\nideal Z = x\nsystem f = x, y\nseed 3\n"


def run(command, text=POINT_SOURCE, argv=()):
    return execute_command(command, parse_source(text), options_from_argv(argv), argv)


def test_command_registry_structure():
    """Test COMMAND_REGISTRY structure."""
    console.print("\n[bold cyan]Testing COMMAND_REGISTRY Structure[/bold cyan]")

    assert isinstance(COMMAND_REGISTRY, dict), "COMMAND_REGISTRY should be a dict"

    for name, definition in COMMAND_REGISTRY.items():
        assert 'name' in definition, f"{name} missing 'name' field"
        assert 'description' in definition, f"{name} missing 'description'"
        assert 'options' in definition, f"{name} missing 'options'"
        assert definition['name'] == name, f"Name mismatch for {name}"

    assert set(COMMAND_REGISTRY) == set(COMMAND_EXECUTORS)
    assert all(callable(executor) for executor in COMMAND_EXECUTORS.values())

    table = Table(title="Registered Commands")
    table.add_column("Command", style="cyan")
    table.add_column("Description", style="white")
    for name, definition in COMMAND_REGISTRY.items():
        table.add_row(name, definition['description'])
    console.print(table)


def test_categories_cover_registry():
    categorized = IDEAL_COMMANDS + RESIDUAL_COMMANDS + INVARIANT_COMMANDS
    assert sorted(categorized) == sorted(get_command_names())
    assert [d['name'] for d in get_commands_by_category("ideal")] == IDEAL_COMMANDS
    assert get_command_definition("residual")['name'] == "residual"

    with pytest.raises(ValueError):
        get_commands_by_category("nonexistent")
    with pytest.raises(KeyError):
        get_command_definition("nonexistent")


def test_unknown_command():
    with pytest.raises(InputError):
        run("frobnicate")


def test_options_from_argv():
    options = options_from_argv(["--t", "3", "--seed", "42", "--lambda", "1/2", "--augment"])
    assert options.t == 3
    assert options.seed == 42
    assert options.lam == "1/2"
    assert options.augment

    with pytest.raises(InputError):
        options_from_argv(["--t", "three"])
    with pytest.raises(InputError):
        options_from_argv(["--no-such-flag"])


def test_context_falls_back_to_source():
    """Flags win over source options; the source seed wins over the default."""
    source = parse_source(POINT_SOURCE + "option t 2\noption level 4\n")

    ctx = CommandContext(source, CommandOptions())
    assert ctx.t() == 2
    assert ctx.level(1) == 4
    assert ctx.seed == 3
    assert ctx.ideal() is source.ideal("X")

    ctx = CommandContext(source, CommandOptions(t=1, seed=9, ideal="Z"))
    assert ctx.t() == 1
    assert ctx.seed == 9
    assert ctx.ideal() is source.ideal("Z")

    bare = CommandContext(parse_source("ring x\nideal I = x\n"), CommandOptions())
    assert bare.seed == 0
    with pytest.raises(InputError):
        bare.t()
    with pytest.raises(InputError):
        bare.second_ideal()
    with pytest.raises(InputError):
        bare.rational("lam")
    with pytest.raises(InputError):
        bare.keep


def test_report_fields():
    """Test the Report wrapper produced by execute_command."""
    console.print("\n[bold cyan]Testing command reports[/bold cyan]")

    report = run("dim", argv=["--ideal", "X"])
    again = run("dim", argv=["--ideal", "X"])

    assert report.command == "dim"
    assert report.argv == ["--ideal", "X"]
    assert report.outputs == {"dimension": 0, "codimension": 2, "empty": False, "nvars": 2}
    assert report.inputs_digest == again.inputs_digest
    assert report.seed == 3
    assert "timing_seconds" not in report.to_dict(include_timing=False)

    console.print(f"[green]✓ Digest {report.inputs_digest[:16]}…[/green]")


def test_ideal_commands():
    gb = run("gb", "ring x y\nideal I = x^2 - y, x*y\n", ["--order", "lex"])
    assert gb.outputs["order"] == "lex"
    assert gb.outputs["basis"] == ["x^2 - y", "x*y", "y^2"]
    assert not gb.outputs["unit"]

    colon = run("colon", "ring x y\nideal I = x*y\nideal J = x\n", ["--by", "J"])
    assert colon.outputs == {"ideal": ["y"], "unit": False}

    saturated = run("saturate", "ring x y\nideal I = x^2*y\nideal J = x\n", ["--by", "J"])
    assert saturated.outputs["ideal"] == ["y"]
    assert saturated.outputs["exponent"] == 2

    eliminated = run("eliminate", "ring t x y\nideal I = x - t^2, y - t^3\n",
                     ["--keep", "x", "y"])
    assert eliminated.outputs["ideal"] == ["x^3 - y^2"]

    with pytest.raises(ValidationError):
        run("gb", "ring x\nideal I = x\n", ["--order", "deglex"])


def test_residual_commands():
    link = run("link")
    assert link.outputs["empty"]
    assert link.outputs["t"] == 2
    assert link.outputs["valid"]

    predict = run("predict", argv=["--t", "2"])
    assert predict.outputs["nonempty"] is False
    assert predict.outputs["dimV"] == 2
    assert predict.outputs["cone"] is True

    augment = run("augment")
    assert augment.outputs["count"] == 4
    assert augment.outputs["same_ideal"]

    with pytest.raises(InputError):
        run("residual", argv=["--t", "3"])


def test_invariant_commands():
    assert run("lct-monomial").outputs == {"lct": "2/1"}
    assert run("glct-monomial", argv=["--by", "Z", "--lambda", "1"]).outputs["glct"] == "3/1"

    mld = run("mld-monomial", argv=["--exponent", "3"])
    assert mld.outputs["mld"] == "-inf"
    assert mld.outputs["minus_infinity"]

    mult = run("mult-ideal", argv=["--exponent", "2"])
    assert mult.outputs["ideal"] == ["x", "y"]
    assert mult.outputs["c"] == "2/1"

    with pytest.raises(InputError):
        run("lct-monomial", "ring x y\nideal I = x + y^2\n")
