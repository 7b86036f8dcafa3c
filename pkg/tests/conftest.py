"""Shared fixtures: converged solves are expensive, so they are session-scoped.

Acceptance tests are tagged with the `criterion` marker; a terminal
summary prints one pass/fail line per criterion at the end of the run.
Long-running paper-scale reproductions are skipped unless --run-longrun
is given.
"""

from __future__ import annotations

import numpy as np
import pytest

from fkplump import (
    SolverConfig,
    SpectralGrid,
    SymbolParams,
    solve,
)

_CRITERION_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption(
        "--run-longrun",
        action="store_true",
        default=False,
        help="run paper-scale reproduction tests (minutes to hours)",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(n, description): acceptance criterion test"
    )
    config.addinivalue_line(
        "markers", "longrun: paper-scale reproduction, skipped by default"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-longrun"):
        return
    skip = pytest.mark.skip(reason="needs --run-longrun")
    for item in items:
        if "longrun" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    description = marker.args[1] if len(marker.args) > 1 else item.name
    outcome = "FAIL" if call.excinfo is not None else "pass"
    _CRITERION_RESULTS[number] = (outcome, description)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_RESULTS):
        outcome, description = _CRITERION_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} [{outcome}] {description}")


def _desk_solve(alpha: float, nx: int = 1024, lx: float = 256.0, c: float = 1.0):
    import time

    grid = SpectralGrid(nx=nx, ny=nx, lx=lx, ly=lx)
    config = SolverConfig(params=SymbolParams(alpha=alpha, c=c), grid=grid)
    start = time.perf_counter()
    field, report = solve(config)
    elapsed = time.perf_counter() - start
    assert report.converged(), f"desk solve alpha={alpha} did not converge"
    return field, report, config, elapsed


@pytest.fixture(scope="session")
def desk_alpha2():
    """alpha=2 at 2^10 nodes on [-256, 256]^2 (the oracle tier)."""
    return _desk_solve(2.0)


@pytest.fixture(scope="session")
def desk_alpha17():
    return _desk_solve(1.7)


@pytest.fixture(scope="session")
def desk_alpha15():
    return _desk_solve(1.5)


@pytest.fixture(scope="session")
def desk_alpha135():
    """alpha=1.35 needs the finer 2^11 tier for its broader spectrum."""
    return _desk_solve(1.35, nx=2048)


@pytest.fixture(scope="session")
def scaling_pair():
    """Resolution-matched alpha=1.5 solves at c=1 and c=2.

    The c=1 field is resolved to its spectral tail (dx = 0.125); the c=2
    field's effective resolution matches after the coordinate stretch.
    """
    src_field, src_report, src_config, _ = _desk_solve(1.5, nx=2048, lx=128.0)
    tgt_grid = SpectralGrid(nx=1024, ny=1024, lx=64.0, ly=56.0)
    tgt_config = SolverConfig(
        params=SymbolParams(alpha=1.5, c=2.0), grid=tgt_grid
    )
    tgt_field, tgt_report = solve(tgt_config)
    assert tgt_report.converged()
    return (src_field, src_config), (tgt_field, tgt_config)


@pytest.fixture()
def small_grid():
    return SpectralGrid(nx=64, ny=64, lx=16.0, ly=16.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
