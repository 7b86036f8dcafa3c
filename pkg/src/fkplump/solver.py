"""Petviashvili fixed-point iteration for lump solutions.

One step maps the iterate phi_n to

    fft(phi_{n+1}) = M_n^nu * fft(phi_n^2) / D,
    D = 2 (c + xi2^2/(xi1 + i*lambda)^2 + |xi1|^alpha),

where the stabilizing factor

    M_n = <D * fft(phi_n), fft(phi_n)> / <fft(phi_n^2), fft(phi_n)>

(conjugate pairing over the lattice) equals 1 exactly at a solution and
prevents the collapse/blow-up of the unstabilized map.  The run is
monitored by three errors per iteration: the sup-norm step difference,
|1 - M_n|, and the sup norm of the steady-equation residual; convergence
means all three fall below the configured tolerance simultaneously.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .grid import RealField, SpectralGrid, fft2, ifft2
from .reference import ExactLumpParams, exact_kp1_lump, gaussian_seed
from .symbols import (
    ALPHA_ENERGY_CRITICAL,
    SymbolParams,
    dispersion_symbol,
    petviashvili_denominator,
)

#: Relative ceiling for the imaginary part of the stabilizing-factor sums.
FACTOR_IMAG_RTOL = 1e-8

#: Sup-norm blow-up guard, in units of the wave speed.
DIVERGENCE_AMPLITUDE = 1e6


class DegenerateIterateError(ArithmeticError):
    """The cubic pairing in the stabilizing factor vanished (dead iterate)."""


class DivergenceError(ArithmeticError):
    """The iteration produced non-finite values."""


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max-iter"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class SeedSpec:
    """Initial-guess descriptor.

    kind is one of "gaussian" (default A = 3c, w = 2), "exact-kp1" (the
    closed-form alpha = 2 lump at the configured speed), or "file" with a
    path to a saved field.  amplitude = None resolves to 3c at solve time.
    """

    kind: str = "gaussian"
    amplitude: float | None = None
    width: float = 2.0
    path: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gaussian", "exact-kp1", "file"):
            raise ValueError(f"unknown seed kind {self.kind!r}")
        if self.amplitude is not None and self.amplitude == 0:
            raise ValueError("seed amplitude must be nonzero")
        if self.width <= 0:
            raise ValueError(f"seed width must be positive, got {self.width!r}")
        if self.kind == "file" and not self.path:
            raise ValueError("seed kind 'file' requires a path")


@dataclass(frozen=True)
class SolverConfig:
    """All parameters of one Petviashvili run.

    dealias turns on 3/2-rule zero padding for the quadratic term.  The
    plain scheme keeps aliasing below the solver tolerance for resolved
    runs (the profiles decay fast in wavenumber), so padding is off by
    default and exists to verify exactly that.
    """

    params: SymbolParams
    grid: SpectralGrid
    nu: float = 2.0
    tol: float = 1e-5
    max_iter: int = 200
    seed: SeedSpec = field(default_factory=SeedSpec)
    allow_supercritical: bool = False
    dealias: bool = False

    def __post_init__(self) -> None:
        if not np.isfinite(self.tol) or self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if not np.isfinite(self.nu):
            raise ValueError(f"nu must be finite, got {self.nu!r}")
        if not self.allow_supercritical and self.params.alpha <= ALPHA_ENERGY_CRITICAL:
            raise ValueError(
                f"alpha = {self.params.alpha} is at or below the existence threshold "
                f"{ALPHA_ENERGY_CRITICAL}; no lump solutions exist there "
                "(pass allow_supercritical to explore anyway)"
            )


@dataclass(frozen=True)
class IterationRecord:
    """Monitors of one iteration: the step that produced iterate n."""

    iteration: int
    iter_error: float
    m_factor: float
    factor_error: float
    residual: float


@dataclass(frozen=True)
class IterationReport:
    """Per-iteration monitor records plus the final status."""

    records: tuple[IterationRecord, ...]
    status: SolveStatus
    tol: float

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def final(self) -> IterationRecord:
        if not self.records:
            raise ValueError("empty report has no final record")
        return self.records[-1]

    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED


def _pairing_sums(
    denom: np.ndarray, phi_hat: np.ndarray, sq_hat: np.ndarray
) -> tuple[complex, complex, float]:
    """Lattice pairings of the stabilizing factor, with their scale.

    The sums run over the zero-x-mass subspace: the constrained modes
    (xi1 = 0, xi2 != 0) are excluded.  They carry no mass in the continuum
    integrals, and on the lattice their regularized denominator
    (~ -xi2^2/lambda^2) would amplify the transform roundoff of any
    realized field into an order-one error of the factor.
    """
    conj_hat = np.conj(phi_hat)
    num_terms = denom * phi_hat * conj_hat
    den_terms = sq_hat * conj_hat
    num = complex(np.sum(num_terms[1:, :]) + num_terms[0, 0])
    den = complex(np.sum(den_terms[1:, :]) + den_terms[0, 0])
    scale = float(np.sum(np.abs(den_terms[1:, :])) + abs(den_terms[0, 0]))
    return num, den, scale


def _factor_from_sums(num: complex, den: complex, scale: float) -> float:
    if abs(den) <= 1e-14 * scale:
        raise DegenerateIterateError(
            "cubic pairing vanished; the iterate has collapsed (or has odd parity)"
        )
    m = num / den
    if abs(m.imag) > FACTOR_IMAG_RTOL * abs(m):
        raise ArithmeticError(
            f"stabilizing factor has non-negligible imaginary part: {m!r}"
        )
    return float(m.real)


def stabilizing_factor(phi: RealField, p: SymbolParams) -> float:
    """Stabilizing factor M of an iterate.

    Ratio of the denominator-weighted quadratic pairing of fft(phi) with
    itself to the cubic pairing of fft(phi^2) with fft(phi).  Equals 1 at a
    true solution; scales as 1/s when phi is replaced by s*phi.

    Raises
    ------
    DegenerateIterateError
        If the cubic pairing is below 1e-14 of its natural scale, as for
        a zero or odd-in-x iterate.
    """
    denom = petviashvili_denominator(phi.grid, p).values
    phi_hat = fft2(phi.values)
    sq_hat = fft2(phi.values**2)
    num, den, scale = _pairing_sums(denom, phi_hat, sq_hat)
    return _factor_from_sums(num, den, scale)


def _step_raw(
    phi: np.ndarray, denom: np.ndarray, nu: float
) -> tuple[np.ndarray, np.ndarray, float]:
    """One raw update: returns (next values, next fft, M used)."""
    phi_hat = fft2(phi)
    sq_hat = fft2(phi * phi)
    num, den, scale = _pairing_sums(denom, phi_hat, sq_hat)
    m = _factor_from_sums(num, den, scale)
    next_hat = (m**nu) * sq_hat / denom
    next_phi = ifft2(next_hat).real
    return next_phi, next_hat, m


def petviashvili_step(
    phi: RealField, p: SymbolParams, nu: float = 2.0
) -> tuple[RealField, float]:
    """Apply one Petviashvili update; returns the next iterate and M used.

    Raises
    ------
    DivergenceError
        If the update produces non-finite values.
    DegenerateIterateError
        If the stabilizing factor is undefined for this iterate.
    """
    denom = petviashvili_denominator(phi.grid, p).values
    next_phi, _, m = _step_raw(phi.values, denom, nu)
    if not np.all(np.isfinite(next_phi)):
        raise DivergenceError("iteration produced non-finite values")
    return RealField(phi.grid, next_phi), m


def _padded_square_hat(phi_hat: np.ndarray) -> np.ndarray:
    """Transform of phi^2 with the square evaluated on a 3/2 zero-padded grid.

    Removes the aliasing of quadratic products back onto the resolved
    modes; exact for band-limited inputs whose square still fits the
    padded band.
    """
    nx, ny = phi_hat.shape
    mx, my = 3 * nx // 2, 3 * ny // 2
    padded = np.zeros((mx, my), dtype=complex)
    lo_x, lo_y = nx // 2, ny // 2
    padded[:lo_x, :lo_y] = phi_hat[:lo_x, :lo_y]
    padded[:lo_x, my - lo_y:] = phi_hat[:lo_x, lo_y:]
    padded[mx - lo_x:, :lo_y] = phi_hat[lo_x:, :lo_y]
    padded[mx - lo_x:, my - lo_y:] = phi_hat[lo_x:, lo_y:]
    fine = ifft2(padded).real * (mx * my / (nx * ny))
    fine_sq_hat = fft2(fine * fine)
    out = np.empty((nx, ny), dtype=complex)
    out[:lo_x, :lo_y] = fine_sq_hat[:lo_x, :lo_y]
    out[:lo_x, lo_y:] = fine_sq_hat[:lo_x, my - lo_y:]
    out[lo_x:, :lo_y] = fine_sq_hat[mx - lo_x:, :lo_y]
    out[lo_x:, lo_y:] = fine_sq_hat[mx - lo_x:, my - lo_y:]
    return out * (nx * ny / (mx * my))


def _residual_raw(
    phi_hat: np.ndarray,
    sq_hat: np.ndarray,
    xi1sq: np.ndarray,
    xi2sq: np.ndarray,
    disp: np.ndarray,
    c: float,
) -> float:
    """Sup norm of S phi = (-c phi + phi^2/2 - Dx^alpha phi)_xx - phi_yy."""
    s_hat = -xi1sq * (-c * phi_hat + 0.5 * sq_hat - disp * phi_hat) + xi2sq * phi_hat
    return float(np.max(np.abs(ifft2(s_hat).real)))


def project_zero_mass(phi: RealField) -> RealField:
    """Remove the x-mean of the field at every transverse wavenumber.

    Zeroes the modes (xi1 = 0, xi2 != 0), the discrete zero-mass
    constraint in x.  Solutions live in this space; a seed outside it
    would feed the regularized transverse term (~ -xi2^2/lambda^2) into
    the stabilizing-factor sums and blow up the very first step.  The
    iteration itself keeps the constraint: the huge denominator on that
    row annihilates whatever the nonlinearity reinjects.
    """
    phi_hat = fft2(phi.values)
    phi_hat[0, 1:] = 0.0
    return RealField(phi.grid, ifft2(phi_hat).real)


def build_seed(config: SolverConfig) -> RealField:
    """Materialize the configured initial guess, projected to zero x-mass."""
    spec = config.seed
    c = config.params.c
    if spec.kind == "gaussian":
        amplitude = 3.0 * c if spec.amplitude is None else spec.amplitude
        seed = gaussian_seed(config.grid, amplitude, spec.width)
    elif spec.kind == "exact-kp1":
        seed = exact_kp1_lump(config.grid, ExactLumpParams(c=c))
    else:
        from .fieldio import load_field

        loaded = load_field(spec.path)
        if loaded.field.grid != config.grid:
            raise ValueError(
                f"seed file grid {loaded.field.grid} does not match run grid {config.grid}"
            )
        seed = loaded.field
    return project_zero_mass(seed)


def solve(config: SolverConfig) -> tuple[RealField, IterationReport]:
    """Run the Petviashvili iteration to convergence.

    Iterates until all three monitors (step difference, |1 - M|, residual)
    are at or below config.tol, or max_iter is reached, or the iterate
    blows up.  Divergence and exhausted iterations are reported as
    statuses, not exceptions; a degenerate iterate raises.

    Returns
    -------
    (RealField, IterationReport)
        The final iterate and the full monitor history.
    """
    p = config.params
    grid = config.grid
    denom = petviashvili_denominator(grid, p).values
    xi1sq = (grid.xi1**2)[:, None]
    xi2sq = (grid.xi2**2)[None, :]
    disp = dispersion_symbol(grid, p.alpha)

    def square_hat(values: np.ndarray, values_hat: np.ndarray) -> np.ndarray:
        if config.dealias:
            return _padded_square_hat(values_hat)
        return fft2(values * values)

    phi = build_seed(config).values
    phi_hat = fft2(phi)
    sq_hat = square_hat(phi, phi_hat)
    records: list[IterationRecord] = []
    status = SolveStatus.MAX_ITER

    for n in range(1, config.max_iter + 1):
        num, den, scale = _pairing_sums(denom, phi_hat, sq_hat)
        m = _factor_from_sums(num, den, scale)
        next_hat = (m**config.nu) * sq_hat / denom
        next_phi = ifft2(next_hat).real

        if not np.all(np.isfinite(next_phi)):
            records.append(IterationRecord(n, math.inf, m, abs(1.0 - m), math.inf))
            status = SolveStatus.DIVERGED
            break

        iter_error = float(np.max(np.abs(next_phi - phi)))
        factor_error = abs(1.0 - m)
        next_sq_hat = square_hat(next_phi, next_hat)
        residual = _residual_raw(next_hat, next_sq_hat, xi1sq, xi2sq, disp, p.c)
        records.append(IterationRecord(n, iter_error, m, factor_error, residual))
        phi, phi_hat, sq_hat = next_phi, next_hat, next_sq_hat

        if float(np.max(np.abs(phi))) > DIVERGENCE_AMPLITUDE * p.c:
            status = SolveStatus.DIVERGED
            break
        if max(iter_error, factor_error, residual) <= config.tol:
            status = SolveStatus.CONVERGED
            break

    report = IterationReport(records=tuple(records), status=status, tol=config.tol)
    return RealField(grid, phi), report
