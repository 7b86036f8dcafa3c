"""Closed-form lump, seeds and the speed-rescaling map."""

import numpy as np
import pytest

from fkplump.grid import SpectralGrid
from fkplump.reference import (
    DomainRangeError,
    ExactLumpParams,
    exact_kp1_lump,
    gaussian_seed,
    rescale_solution,
)


@pytest.fixture()
def lump_grid():
    return SpectralGrid(nx=256, ny=256, lx=64.0, ly=64.0)


class TestExactLump:
    def test_peak_value(self, lump_grid):
        f = exact_kp1_lump(lump_grid, ExactLumpParams(c=1.0))
        i0, j0 = lump_grid.nx // 2, lump_grid.ny // 2
        assert f.values[i0, j0] == pytest.approx(8.0, rel=1e-14)

    def test_peak_scales_with_speed(self, lump_grid):
        f = exact_kp1_lump(lump_grid, ExactLumpParams(c=2.5))
        assert np.max(f.values) == pytest.approx(8.0 * 2.5, rel=1e-12)

    def test_zero_crossing_at_sqrt3(self):
        # the formula vanishes on 1 - x^2/3 = 0 along y = 0
        x = np.sqrt(3.0)
        value = 8.0 * (1.0 - x**2 / 3.0) / (1.0 + x**2 / 3.0) ** 2
        assert value == pytest.approx(0.0, abs=1e-15)
        # on the lattice the section changes sign across sqrt(3)
        grid = SpectralGrid(nx=256, ny=256, lx=64.0, ly=64.0)
        f = exact_kp1_lump(grid, ExactLumpParams(c=1.0))
        j0 = grid.ny // 2
        section = f.values[:, j0]
        before = section[np.searchsorted(grid.x, x) - 1]
        after = section[np.searchsorted(grid.x, x)]
        assert before > 0 > after

    def test_positive_along_y_axis(self, lump_grid):
        f = exact_kp1_lump(lump_grid, ExactLumpParams(c=1.0))
        assert np.all(f.values[lump_grid.nx // 2, :] > 0.0)

    def test_traveling_frame_shift(self, lump_grid):
        # at t != 0 the peak sits at x = c t
        f = exact_kp1_lump(lump_grid, ExactLumpParams(c=1.0, t=10.0))
        i_peak = np.unravel_index(np.argmax(f.values), f.values.shape)[0]
        assert lump_grid.x[i_peak] == pytest.approx(10.0, abs=lump_grid.dx)

    def test_rejects_nonpositive_speed(self):
        with pytest.raises(ValueError):
            ExactLumpParams(c=0.0)


class TestGaussianSeed:
    def test_center_and_width_values(self, lump_grid):
        f = gaussian_seed(lump_grid, amplitude=3.0, width=2.0)
        i0, j0 = lump_grid.nx // 2, lump_grid.ny // 2
        assert f.values[i0, j0] == pytest.approx(3.0, rel=1e-14)
        # at r = w the value is A/e; node (w, 0) lies on the lattice
        iw = i0 + int(round(2.0 / lump_grid.dx))
        assert f.values[iw, j0] == pytest.approx(3.0 / np.e, rel=1e-12)

    def test_even_in_both(self, lump_grid):
        f = gaussian_seed(lump_grid, amplitude=1.0, width=3.0)
        v = f.values
        assert np.array_equal(v, np.roll(v[::-1, :], 1, axis=0))
        assert np.array_equal(v, np.roll(v[:, ::-1], 1, axis=1))

    def test_rejects_bad_parameters(self, lump_grid):
        with pytest.raises(ValueError):
            gaussian_seed(lump_grid, amplitude=1.0, width=0.0)
        with pytest.raises(ValueError):
            gaussian_seed(lump_grid, amplitude=0.0, width=1.0)


class TestRescale:
    def test_identity_at_c1(self):
        grid = SpectralGrid(nx=256, ny=256, lx=64.0, ly=64.0)
        psi = exact_kp1_lump(grid, ExactLumpParams(c=1.0))
        out = rescale_solution(psi, alpha=2.0, c=1.0, target_grid=grid)
        assert np.max(np.abs(out.values - psi.values)) <= 1e-10

    def test_matches_closed_form(self):
        # alpha=2: the rescaled c=1 lump must equal the exact lump at speed c
        src = SpectralGrid(nx=1024, ny=1024, lx=128.0, ly=128.0)
        psi = exact_kp1_lump(src, ExactLumpParams(c=1.0))
        tgt = SpectralGrid(nx=512, ny=512, lx=64.0, ly=48.0)
        out = rescale_solution(psi, alpha=2.0, c=1.3, target_grid=tgt)
        expected = exact_kp1_lump(tgt, ExactLumpParams(c=1.3))
        assert np.max(np.abs(out.values - expected.values)) <= 1e-6

    def test_round_trip_composition(self):
        # rescaling to speed c and then to speed 1/c is the identity
        src = SpectralGrid(nx=512, ny=512, lx=64.0, ly=64.0)
        psi = exact_kp1_lump(src, ExactLumpParams(c=1.0))
        mid_grid = SpectralGrid(nx=512, ny=512, lx=32.0, ly=24.0)
        up = rescale_solution(psi, alpha=2.0, c=1.5, target_grid=mid_grid)
        back_grid = SpectralGrid(nx=256, ny=256, lx=16.0, ly=8.0)
        back = rescale_solution(up, alpha=2.0, c=1.0 / 1.5, target_grid=back_grid)
        expected = exact_kp1_lump(back_grid, ExactLumpParams(c=1.0))
        # tolerance: twice the single-interpolation error budget
        assert np.max(np.abs(back.values - expected.values)) <= 2e-6

    def test_out_of_domain_raises(self):
        src = SpectralGrid(nx=64, ny=64, lx=8.0, ly=8.0)
        psi = exact_kp1_lump(src, ExactLumpParams(c=1.0))
        tgt = SpectralGrid(nx=64, ny=64, lx=8.0, ly=8.0)
        with pytest.raises(DomainRangeError):
            rescale_solution(psi, alpha=2.0, c=4.0, target_grid=tgt)
