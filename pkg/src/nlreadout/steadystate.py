"""Nonlinear steady-state response of the driven cavity.

The state-dependent cavity pull is

    chi(n) = sum_{j,i} g_i lambda_i sigma_z_i / sqrt(1 + 4 lambda_i^2 N_i),

with N_i = n + <Pi_i> evaluated per logical state, and the steady-state
photon number solves the transcendental equation

    n = F(n) = epsilon^2 / [ (delta_c + chi(n))^2 + kappa^2 / 4 ].

Sign convention: the dressed cavity sits at omega_c + chi(n), so with
delta_c = omega_c - omega_d the drive is resonant when delta_c = -chi.
For the devices of interest (qubits below the cavity) chi > 0 in the
ground state, the pulled resonance lies above omega_c, and bistability
windows live at negative delta_c.

F is iterated with damping, n <- (1-d) n + d F(n); which attractor is
reached depends on the seed, which is exactly the experimental hysteresis
protocol (ramp the drive up or down and follow the branch).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .device import DriveSpec, LogicalState, ValidationError, logical_sigma_z
from .spectrum import SpectralParams

__all__ = [
    "SolverError",
    "SolveOptions",
    "SteadyStateResult",
    "SweepResult",
    "chi_shift",
    "bare_chi",
    "high_branch_seed",
    "solve_branch",
    "sweep_drive",
    "contrast",
]

JUMP_RATIO = 10.0  # neighbor photon-number ratio that counts as a branch jump


class SolverError(RuntimeError):
    """Fixed-point iteration failed to converge; carries diagnostics."""

    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


@dataclass(frozen=True)
class SolveOptions:
    tol: float = 1e-10          # relative fixed-point residual
    damping: float = 0.5
    max_iterations: int = 10_000
    raise_on_failure: bool = True


@dataclass(frozen=True)
class SteadyStateResult:
    """Converged branch of the steady-state equation."""

    n: float
    branch: str                    # "low" | "high"
    chi: float                     # GHz, evaluated at n
    effective_cavity_frequency: float  # GHz, omega_c + chi(n)
    residual: float                # |n - F(n)| / (1 + n)
    iterations: int
    converged: bool


@dataclass(frozen=True)
class SweepResult:
    """Drive sweep with hysteresis seeding."""

    epsilon: np.ndarray            # MHz, in sweep order
    results: tuple                 # SteadyStateResult per grid point
    direction: str                 # "up" | "down"
    jump_epsilon: float | None     # MHz, first >10x neighbor jump, None if smooth

    @property
    def n(self) -> np.ndarray:
        return np.array([r.n for r in self.results])


def _weights(state: LogicalState, params: SpectralParams):
    """Per-term (g*lambda*sigma_z, 4 lambda^2, Pi) arrays for chi sums.

    Terms with sigma_z = 0 are dropped: only transitions adjacent to the
    occupied level contribute, which keeps the sum (and its floating-point
    grouping) independent of how many levels are carried along.
    """
    if state.n_qubits != params.n_qubits:
        raise ValidationError(
            f"state has {state.n_qubits} qubits, device has {params.n_qubits}"
        )
    sz, occ = logical_sigma_z(state, params.levels)
    keep = sz != 0.0
    c = (params.g * params.lam * sz)[keep]
    b = (4.0 * params.lam**2)[keep]
    pi_upper = occ[:, 1:][keep]    # <Pi_i> of the upper level of transition i
    return c, b, pi_upper


def chi_shift(n: float, state: LogicalState, params: SpectralParams) -> float:
    """State-dependent cavity frequency pull chi(n) in GHz.

    chi = sum_{j,i} g_i lambda_i sigma_z_i / sqrt(1 + 4 lambda_i^2 N_i)
    with N_i = n + <Pi_i>.  At n = 0 in the ground state this is the
    familiar dispersive shift sum g_i^2/Delta_i sigma_z_i; every term
    decays like 1/sqrt(n), so chi -> 0 and the cavity returns to its bare
    frequency deep in the bright regime.
    """
    if n < 0:
        raise ValidationError(f"photon number must be >= 0, got {n}")
    c, b, pi = _weights(state, params)
    return float(np.sum(c / np.sqrt(1.0 + b * (n + pi))))


def bare_chi(state: LogicalState, params: SpectralParams) -> float:
    """The n -> 0 linear dispersive shift sum g_i lambda_i sigma_z_i (GHz).

    This is the leading-order pull without the occupation correction in the
    square roots; it is what the instability borders track.
    """
    c, _, _ = _weights(state, params)
    return float(np.sum(c))


def high_branch_seed(drive: DriveSpec, kappa: float) -> float:
    """chi -> 0 asymptote epsilon^2 / (delta_c^2 + kappa^2/4), the natural
    seed for the high-amplitude attractor."""
    return drive.epsilon**2 / (drive.delta_c**2 + kappa**2 / 4.0)


def solve_branch(
    drive: DriveSpec,
    state: LogicalState,
    params: SpectralParams,
    kappa: float,
    seed: float,
    opts: SolveOptions = SolveOptions(),
) -> SteadyStateResult:
    """Damped fixed-point solve of n = F(n) from a given seed.

    The branch label records the attractor family the seed selects:
    "low" for seeds at or below the low-amplitude response, "high" for
    seeds from :func:`high_branch_seed`.  Re-seeding with a converged n
    reproduces it.

    Steep response regions have |dF/dn| > 1 where no fixed relaxation
    factor contracts; when the iteration starts to ping-pong around such a
    root, the bracketed sign change of F(n) - n is resolved by bisection
    between the iteration's own bounds, which keeps the seeded branch
    selection intact.

    Raises :class:`SolverError` after ``opts.max_iterations`` without
    convergence (or returns the diagnostic result if
    ``opts.raise_on_failure`` is false).
    """
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")
    if kappa <= 0:
        raise ValidationError(f"kappa must be positive, got {kappa}")
    c, b, pi = _weights(state, params)
    eps, dc = drive.epsilon, drive.delta_c

    def f(n):
        chi_mhz = 1e3 * np.sum(c / np.sqrt(1.0 + b * (n + pi)))
        return eps**2 / ((dc + chi_mhz) ** 2 + kappa**2 / 4.0)

    n = float(seed)
    d = opts.damping
    prev_n = None
    prev_g = 0.0
    best = np.inf
    stalled = 0
    its = 0
    converged = False
    residual = np.inf
    for its in range(1, opts.max_iterations + 1):
        fn = f(n)
        g = fn - n
        residual = abs(g) / (1.0 + abs(n))
        if residual <= opts.tol:
            converged = True
            break
        if residual < 0.5 * best:
            best = residual
            stalled = 0
        if prev_n is not None and g * prev_g < 0.0:
            stalled += 1
            if stalled >= 8:
                # the iteration is bouncing around a root with |dF/dn| > 1;
                # the last two iterates bracket a sign change of F(n) - n, so
                # pin it down by bisection and let the outer loop verify
                lo, hi = sorted((prev_n, n))
                glo = f(lo) - lo
                for _ in range(200):
                    mid = 0.5 * (lo + hi)
                    gmid = f(mid) - mid
                    if abs(gmid) / (1.0 + mid) <= opts.tol or hi - lo <= 1e-16 * (
                        1.0 + mid
                    ):
                        break
                    if glo * gmid <= 0.0:
                        hi = mid
                    else:
                        lo, glo = mid, gmid
                prev_n, prev_g = n, g
                n = 0.5 * (lo + hi)
                best = np.inf
                stalled = 0
                continue
        prev_n, prev_g = n, g
        n += d * g
    if not converged:
        residual = abs(f(n) - n) / (1.0 + abs(n))
    chi_ghz = float(np.sum(c / np.sqrt(1.0 + b * (n + pi))))
    hbs = high_branch_seed(drive, kappa)
    label = "high" if (seed > 0.0 and seed >= hbs * (1.0 - 1e-9)) else "low"
    result = SteadyStateResult(
        n=n,
        branch=label,
        chi=chi_ghz,
        effective_cavity_frequency=params.omega_c + chi_ghz,
        residual=residual,
        iterations=its,
        converged=converged,
    )
    if not converged and opts.raise_on_failure:
        raise SolverError(
            f"no convergence after {its} iterations (eps={eps} MHz, "
            f"delta_c={dc} MHz, residual={residual:.3e})",
            result=result,
        )
    return result


def sweep_drive(
    grid,
    direction: str,
    state: LogicalState,
    params: SpectralParams,
    kappa: float,
    delta_c: float = 0.0,
    opts: SolveOptions = SolveOptions(),
) -> SweepResult:
    """Hysteresis sweep over a drive-strength grid (MHz).

    Each point is seeded with the previous point's photon number; the
    first point is seeded at 0 for an up-sweep and from
    :func:`high_branch_seed` for a down-sweep.  ``jump_epsilon`` records
    the first grid point whose photon number differs from its neighbor by
    more than a factor 10 (None when the response stays smooth, e.g. when
    no bifurcation exists for this state and detuning).

    Solver failures are re-raised with the offending grid index.
    """
    eps = np.asarray(grid, dtype=float)
    if eps.ndim != 1 or eps.size < 2:
        raise ValidationError("grid must be a 1-d sequence of at least 2 points")
    steps = np.diff(eps)
    if direction == "up":
        if not np.all(steps > 0):
            raise ValidationError("up-sweep grid must be strictly increasing")
    elif direction == "down":
        if not np.all(steps < 0):
            raise ValidationError("down-sweep grid must be strictly decreasing")
    else:
        raise ValidationError(f"direction must be 'up' or 'down', got {direction!r}")

    results = []
    seed = 0.0 if direction == "up" else high_branch_seed(DriveSpec(eps[0], delta_c), kappa)
    label = "low" if direction == "up" else "high"
    for k, e in enumerate(eps):
        try:
            r = solve_branch(DriveSpec(e, delta_c), state, params, kappa, seed, opts)
        except SolverError as exc:
            raise SolverError(f"grid index {k} (epsilon={e} MHz): {exc}", exc.result) from exc
        r = replace(r, branch=label)
        results.append(r)
        seed = r.n

    jump = None
    ns = np.array([r.n for r in results])
    tiny = np.finfo(float).tiny
    for k in range(1, len(ns)):
        lo, hi = sorted((ns[k - 1], ns[k]))
        if hi > JUMP_RATIO * max(lo, tiny):
            jump = float(eps[k])
            break
    if jump is not None:
        # past the jump the starting branch label no longer applies
        idx = int(np.where(eps == jump)[0][0])
        other = "high" if direction == "up" else "low"
        results = [
            replace(r, branch=other) if k >= idx else r for k, r in enumerate(results)
        ]
    return SweepResult(
        epsilon=eps, results=tuple(results), direction=direction, jump_epsilon=jump
    )


def contrast(
    state_bright: LogicalState,
    state_dark: LogicalState,
    drive: DriveSpec,
    params: SpectralParams,
    kappa: float,
    opts: SolveOptions = SolveOptions(),
) -> float:
    """Bright/dark photon-number ratio n_high(bright) / n_low(dark).

    The bright state is solved on the high branch (seeded from the chi->0
    asymptote), the dark state on the low branch (seeded from vacuum).
    A zero drive is a degenerate 0/0 input and raises ValidationError.
    """
    if drive.epsilon == 0:
        raise ValidationError("contrast is undefined at zero drive (0/0)")
    bright = solve_branch(
        drive, state_bright, params, kappa, high_branch_seed(drive, kappa), opts
    )
    dark = solve_branch(drive, state_dark, params, kappa, 0.0, opts)
    return bright.n / dark.n
