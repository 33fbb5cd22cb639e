"""
Pytest configuration and shared fixtures for the residual-intersection tests.

This file is automatically loaded by pytest and provides:
- Custom markers applied from test names
- Ring and ideal factories
- The standard and augmented generator systems of the two-planes example
- A fixture that turns on the Buchberger self-check
"""

import pytest
import logging
import random
from pathlib import Path

import numpy as np

from config import CONFIG
from algebra.groebner import IdealHandle
from algebra.poly_core import PrimeField, QQ, RingContext

PROJECT_ROOT = Path(__file__).resolve().parent.parent

# Configure logging for tests
logging.basicConfig(
    level=logging.WARNING,  # Reduce noise during tests
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

TWO_PLANES = ["x*z", "x*w", "y*z", "y*w"]
TWO_PLANES_AUGMENTED = TWO_PLANES + ["x^2*z", "x*y*z", "x*z^2", "x*z*w"]


# ============================================================================
# Pytest Configuration Hooks
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom settings."""
    output_dir = PROJECT_ROOT / "output"
    output_dir.mkdir(exist_ok=True)


def pytest_collection_modifyitems(config, items):
    """
    Modify test items after collection.

    Automatically marks tests based on naming conventions:
    - test_corpus* files → corpus, slow
    - test_cli* files → cli
    - tests with 'property' or 'random' in name → property
    - tests with 'augmented' or 'jets_level5' in name → slow
    """
    for item in items:
        if "test_corpus" in item.nodeid:
            item.add_marker(pytest.mark.corpus)
            item.add_marker(pytest.mark.slow)

        if "test_cli" in item.nodeid:
            item.add_marker(pytest.mark.cli)

        if "property" in item.name or "random" in item.name:
            item.add_marker(pytest.mark.property)

        if "augmented" in item.name or "level5" in item.name:
            item.add_marker(pytest.mark.slow)

        # Auto-mark unit tests (default)
        if not any(mark.name in ['slow', 'corpus', 'property']
                   for mark in item.iter_markers()):
            item.add_marker(pytest.mark.unit)


# ============================================================================
# Shared Fixtures
# ============================================================================

@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return PROJECT_ROOT / "corpus"


@pytest.fixture
def ring():
    """
    Factory for ring contexts.

    Usage:
        def test_something(ring):
            r = ring("x y")            # Q[x, y]
            s = ring("x y", p=32003)   # F_32003[x, y]
    """
    def _ring(names: str, p: int = 0) -> RingContext:
        return RingContext(tuple(names.split()), PrimeField(p) if p else QQ)

    return _ring


@pytest.fixture
def ideal():
    """
    Factory for ideals from polynomial strings.

    Usage:
        def test_something(ring, ideal):
            i = ideal(ring("x y"), "x^2", "x*y")
    """
    def _ideal(r: RingContext, *texts: str) -> IdealHandle:
        return IdealHandle.parse(r, texts)

    return _ideal


@pytest.fixture
def two_planes_ring(ring) -> RingContext:
    return ring("x y z w")


@pytest.fixture
def two_planes(two_planes_ring):
    """Generators of I_X = (xz, xw, yz, yw) over Q."""
    return [two_planes_ring.parse(t) for t in TWO_PLANES]


@pytest.fixture
def two_planes_augmented_fp(ring):
    """The eight augmented generators over F_32003."""
    r = ring("x y z w", p=32003)
    return [r.parse(t) for t in TWO_PLANES_AUGMENTED]


@pytest.fixture
def two_planes_augmented(two_planes_ring):
    """The eight augmented generators over Q."""
    return [two_planes_ring.parse(t) for t in TWO_PLANES_AUGMENTED]


@pytest.fixture
def rng() -> random.Random:
    """Seeded random source for property tests."""
    return random.Random(20240611)


@pytest.fixture
def np_rng() -> np.random.Generator:
    """Seeded numpy generator for property tests."""
    return np.random.default_rng(20240611)


@pytest.fixture
def random_polynomial(np_rng):
    """
    Factory for seeded random nonzero polynomials with integer coefficients.

    Usage:
        def test_something(ring, random_polynomial):
            f = random_polynomial(ring("x y"), terms=3, max_exp=2)
    """
    def _random(r: RingContext, terms: int = 3, max_exp: int = 2, bound: int = 5):
        while True:
            exps = np_rng.integers(0, max_exp + 1, size=(terms, r.nvars))
            coeffs = np_rng.integers(-bound, bound + 1, size=terms)
            f = r.zero()
            for e, c in zip(exps, coeffs):
                f = f + r.monomial([int(v) for v in e], int(c))
            if not f.is_zero():
                return f

    return _random


@pytest.fixture
def gb_self_check():
    """Assert the Buchberger certificate after every basis computed in the test."""
    saved = CONFIG.GB_SELF_CHECK
    CONFIG.GB_SELF_CHECK = True
    yield
    CONFIG.GB_SELF_CHECK = saved


@pytest.fixture
def config_override():
    """
    Temporarily override CONFIG fields.

    Usage:
        def test_something(config_override):
            config_override(GB_STEP_BUDGET=10)
    """
    saved = {}

    def _override(**values):
        for key, value in values.items():
            saved.setdefault(key, getattr(CONFIG, key))
            setattr(CONFIG, key, value)

    yield _override
    for key, value in saved.items():
        setattr(CONFIG, key, value)


# ============================================================================
# Reporting Hooks
# ============================================================================

@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """
    Hook to capture test results for custom reporting.

    This allows us to add custom metadata to test results.
    """
    outcome = yield
    report = outcome.get_result()

    if report.when == "call":
        markers = [mark.name for mark in item.iter_markers()]
        report.user_properties.append(("markers", ", ".join(markers)))
        report.user_properties.append(("duration", f"{report.duration:.3f}s"))
