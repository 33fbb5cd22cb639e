#!/usr/bin/env python3
"""Test jet ideals and the jet-codimension lct estimate."""
from fractions import Fraction

import pytest
from rich.console import Console
from rich.table import Table

from algebra.errors import BudgetExceededError, InputError
from algebra.groebner import IdealHandle
from algebra.invariants import lct_monomial, monomial_ideal
from algebra.jets import jet_ideal, jet_ring, lct_jet_estimate

console = Console()


def test_jet_ring_names(ring):
    jets = jet_ring(ring("x y"), 1)
    assert jets.variables == ("x_0", "y_0", "x_1", "y_1")

    with pytest.raises(InputError):
        jet_ring(ring("x y"), -1)


def test_jet_ring_variable_cap(ring, config_override):
    config_override(JET_VARIABLE_CAP=4)
    jet_ring(ring("x y"), 1)
    with pytest.raises(BudgetExceededError):
        jet_ring(ring("x y"), 2)


def test_jet_ideal_of_node(ring, ideal):
    """xy truncated at ε^1 gives x_0*y_0 and x_0*y_1 + x_1*y_0."""
    jets = jet_ideal(ideal(ring("x y"), "x*y"), 1)
    r = jets.ring

    assert jets.equals(IdealHandle.parse(r, ["x_0*y_0", "x_0*y_1 + x_1*y_0"]))
    assert jets.dimension() == 2


def test_jet_ideal_keeps_coefficients(ring, ideal):
    jets = jet_ideal(ideal(ring("x"), "x^2 + 3*x"), 1)
    r = jets.ring
    assert jets.equals(IdealHandle.parse(r, ["x_0^2 + 3*x_0", "2*x_0*x_1 + 3*x_1"]))


def test_estimate_for_node(ring, ideal):
    estimate = lct_jet_estimate(ideal(ring("x y"), "x*y"), 2)

    assert estimate.estimate == 1
    assert estimate.minimizing_level == 0
    assert estimate.complete
    assert [r.level for r in estimate.levels] == [0, 1, 2]


def test_estimate_over_input_field(ring, ideal):
    estimate = lct_jet_estimate(ideal(ring("x y"), "x", "y"), 1, over_prime_field=False)
    assert estimate.estimate == 2
    assert all(r.normalized_codimension == 2 for r in estimate.levels)


@pytest.mark.slow
def test_cusp_estimate_level5(ring, ideal):
    """The cusp reaches 5/6 at level 5, the first level m with 6 | m + 1."""
    console.print("\n[bold cyan]Testing cusp jet estimates[/bold cyan]")

    estimate = lct_jet_estimate(ideal(ring("x y"), "y^2 - x^3"), 5)

    table = Table(title="Normalized jet codimensions")
    table.add_column("m", style="cyan")
    table.add_column("variables", style="white")
    table.add_column("dim", style="white")
    table.add_column("c_m", style="white")
    for report in estimate.levels:
        table.add_row(str(report.level), str(report.variable_count), str(report.dimension),
                      str(report.normalized_codimension))
    console.print(table)

    assert estimate.estimate == Fraction(5, 6)
    assert estimate.minimizing_level == 5
    assert estimate.complete


def test_estimate_stops_at_variable_cap(ring, ideal, config_override):
    """Levels past the variable cap are reported as a failure, not an error."""
    config_override(JET_VARIABLE_CAP=4)
    estimate = lct_jet_estimate(ideal(ring("x y"), "x*y"), 3)

    assert not estimate.complete
    assert [r.level for r in estimate.levels] == [0, 1]
    assert estimate.estimate == 1
    assert "level 2" in estimate.failure


def test_estimate_rejects_bad_input(ring, ideal):
    r = ring("x y")
    with pytest.raises(InputError):
        lct_jet_estimate(ideal(r, "x"), -1)
    with pytest.raises(InputError):
        lct_jet_estimate(IdealHandle.unit(r), 1)
    with pytest.raises(InputError):
        lct_jet_estimate(IdealHandle(r), 1)


def test_random_jet_estimate_bounds_lct_property(ring, np_rng):
    """Every finite-level jet estimate is an upper bound for the exact monomial lct."""
    r = ring("x y")
    for _ in range(6):
        exps = {tuple(int(e) for e in row) for row in np_rng.integers(0, 3, size=(2, 2))}
        a = monomial_ideal(r, [u for u in exps if any(u)] or [(1, 1)])
        estimate = lct_jet_estimate(a, 1)

        assert estimate.complete
        assert estimate.estimate >= lct_monomial(a), a
