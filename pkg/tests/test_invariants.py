#!/usr/bin/env python3
"""Test exact monomial invariants: lct, glct, mld, multiplier ideals."""
from fractions import Fraction

import pytest
from rich.console import Console
from rich.table import Table

from algebra.errors import BudgetExceededError, InputError, NotMonomialError
from algebra.groebner import IdealHandle
from algebra.ideal_ops import ideal_power
from algebra.invariants import (
    FormalProduct,
    glct_monomial,
    gr_multiplier_ideal,
    lct_monomial,
    mld_monomial_origin,
    mldmj_origin_monomial,
    monomial_ideal,
    multiplier_ideal_monomial,
    newton_polyhedron,
    require_monomial,
)

console = Console()


def test_lct_examples(ring, ideal, two_planes_ring, two_planes):
    """Test log canonical thresholds against hand values."""
    console.print("\n[bold cyan]Testing lct_monomial[/bold cyan]")

    r = ring("x y")
    cases = [
        ("(x, y)", ideal(r, "x", "y"), Fraction(2)),
        ("(x^2, y^3)", ideal(r, "x^2", "y^3"), Fraction(5, 6)),
        ("(x*y)", ideal(r, "x*y"), Fraction(1)),
        ("(x^2)", ideal(r, "x^2"), Fraction(1, 2)),
        ("two planes", IdealHandle(two_planes_ring, two_planes), Fraction(2)),
    ]

    table = Table(title="lct")
    table.add_column("Ideal", style="cyan")
    table.add_column("lct", style="white")

    for label, i, expected in cases:
        value = lct_monomial(i)
        assert value == expected, f"{label}: {value} != {expected}"
        table.add_row(label, str(value))

    console.print(table)


def test_newton_polyhedron_facets(ring, ideal):
    poly = newton_polyhedron(ideal(ring("x y"), "x^2", "y^3"))
    assert poly.facets == ((Fraction(1, 2), Fraction(1, 3)),)
    assert poly.coordinate_facets == (0, 1)
    assert poly.contains([Fraction(2), Fraction(0)])
    assert not poly.contains([Fraction(1), Fraction(1)])


def test_monomial_requirements(ring, ideal, config_override):
    r = ring("x y")
    with pytest.raises(NotMonomialError):
        require_monomial(ideal(r, "x + y^2"))
    with pytest.raises(InputError):
        require_monomial(IdealHandle.unit(r))
    with pytest.raises(InputError):
        require_monomial(IdealHandle(r))

    config_override(NEWTON_MAX_DIMENSION=1)
    with pytest.raises(BudgetExceededError):
        lct_monomial(ideal(r, "x", "y"))


def test_multiplier_ideals(ring, ideal):
    """Test Howald's description on small ideals."""
    console.print("\n[bold cyan]Testing multiplier ideals[/bold cyan]")

    r = ring("x y")
    maximal = ideal(r, "x", "y")

    assert multiplier_ideal_monomial(maximal, 0).is_unit()
    assert multiplier_ideal_monomial(maximal, Fraction(3, 2)).is_unit()
    assert multiplier_ideal_monomial(maximal, 2).equals(maximal)
    assert multiplier_ideal_monomial(maximal, 3).equals(ideal(r, "x^2", "x*y", "y^2"))

    cusp = ideal(r, "x^2", "y^3")
    assert multiplier_ideal_monomial(cusp, 1).equals(maximal)
    assert multiplier_ideal_monomial(cusp, "3/2").equals(ideal(r, "x^2", "x*y", "y^3"))

    with pytest.raises(InputError):
        multiplier_ideal_monomial(maximal, -1)

    console.print("[green]✓ Multiplier ideals match lattice-point counts[/green]")


def test_random_multiplier_ideal_is_trivial_below_lct_property(ring, rng):
    """𝓘(a^c) = ⟨1⟩ exactly when c < lct(a), on seeded random monomial ideals."""
    r = ring("x y")
    for _ in range(20):
        exps = {(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 3))}
        exps = [u for u in exps if any(u)] or [(1, 0)]
        a = monomial_ideal(r, exps)
        lct = lct_monomial(a)
        below = lct * Fraction(rng.randint(1, 9), 10)
        assert multiplier_ideal_monomial(a, below).is_unit()
        assert not multiplier_ideal_monomial(a, lct).is_unit()


def test_glct(ring, ideal):
    r = ring("x y")
    point = ideal(r, "x", "y")

    assert glct_monomial(point, None, 0) == 2
    assert glct_monomial(point, ideal(r, "x"), 1) == 3
    assert glct_monomial(point, point, 1) == 3
    assert glct_monomial(ideal(r, "x^2", "y^3"), point, "1/2") == 1

    with pytest.raises(InputError):
        glct_monomial(point, None, 1)
    with pytest.raises(InputError):
        glct_monomial(point, point, -1)


def test_mld_at_origin(ring, ideal):
    """Test minimal log discrepancies of formal products at the origin."""
    console.print("\n[bold cyan]Testing mld_monomial_origin[/bold cyan]")

    r = ring("x y")
    point = ideal(r, "x", "y")

    smooth = mld_monomial_origin(FormalProduct(r))
    assert smooth.value == 2
    assert smooth.verified

    assert mld_monomial_origin(FormalProduct(r).times(point, 2)).value == 0
    assert mld_monomial_origin(FormalProduct(r).times(point, "1/2")).value == Fraction(3, 2)

    negative = mld_monomial_origin(FormalProduct(r).times(point, 3))
    assert negative.is_minus_infinity

    console.print("[green]✓ mld values match hand computation[/green]")


def test_formal_product_validation(ring, ideal):
    r = ring("x y")
    with pytest.raises(InputError):
        FormalProduct(r).times(ideal(r, "x"), -1)
    with pytest.raises(NotMonomialError):
        FormalProduct(r).times(ideal(r, "x + y"), 1)
    with pytest.raises(InputError):
        FormalProduct(r).times(ideal(ring("x y z"), "x"), 1)


def test_mldmj(ring, ideal, two_planes_ring, two_planes):
    assert mldmj_origin_monomial(IdealHandle(two_planes_ring, two_planes)).value == 0
    # a smooth curve in the plane: mld(A^2, (x)^1) = 1
    assert mldmj_origin_monomial(ideal(ring("x y"), "x")).value == 1


def test_gr_multiplier_ideal(ring, ideal):
    r = ring("x y z")
    report = gr_multiplier_ideal(ideal(r, "x", "y"), 3)

    assert report.nonsingular
    assert report.expected_power == 2
    assert report.matches_power
    assert report.ideal.equals(ideal(r, "x^2", "x*y", "y^2"))

    singular = gr_multiplier_ideal(ideal(r, "x*y"), 1)
    assert not singular.nonsingular
    assert singular.matches_power is None

    with pytest.raises(InputError):
        gr_multiplier_ideal(ideal(r, "x", "y"), 1)


def _random_monomial_ideal(r, np_rng, count=3, max_exp=4):
    exps = {tuple(int(e) for e in row)
            for row in np_rng.integers(0, max_exp + 1, size=(count, r.nvars))}
    return monomial_ideal(r, [u for u in exps if any(u)] or [(1,) + (0,) * (r.nvars - 1)])


def test_random_lct_laws_property(ring, np_rng):
    """lct ≤ codim, lct grows with the ideal, and lct(a^k) = lct(a)/k."""
    console.print("\n[bold cyan]Testing lct laws on random monomial ideals[/bold cyan]")

    table = Table(title="Sample")
    table.add_column("ideal", style="cyan")
    table.add_column("lct", style="white")

    for names in ("x y", "x y z"):
        r = ring(names)
        for n in range(15):
            a = _random_monomial_ideal(r, np_rng)
            lct = lct_monomial(a)

            assert 0 < lct <= a.codimension()

            bigger = monomial_ideal(r, require_monomial(a) + require_monomial(
                _random_monomial_ideal(r, np_rng, count=1)))
            assert lct_monomial(bigger) >= lct

            k = int(np_rng.integers(2, 4))
            assert lct_monomial(ideal_power(a, k)) == lct / k

            if n < 3:
                table.add_row(str(a), str(lct))

    console.print(table)
