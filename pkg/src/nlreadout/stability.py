"""Stability analysis of the driven-cavity steady state.

Expanding the dressed cavity pull to quartic order in lambda gives an
affine effective detuning

    h(n) = delta_c + sum_{j,i} Delta_i (lambda_i^2 - 2 lambda_i^4 N_i) sigma_z_i
         = delta_omega + chi_nl * n,

with the Kerr-like parameters

    delta_omega = delta_c + sum Delta_i (lambda_i^2 - 2 lambda_i^4 <Pi_i>) sigma_z_i
    chi_nl      = -sum 2 Delta_i lambda_i^4 sigma_z_i

(the photon number enters h but not delta_omega).  The steady state obeys
epsilon^2 = n (kappa^2/4 + h(n)^2); linearizing around it gives the 2x2
fluctuation matrix A with Tr A = kappa and

    Det A = kappa^2/4 + h^2 + 2 n h h' = 3 chi_nl^2 n^2
            + 4 delta_omega chi_nl n + delta_omega^2 + kappa^2/4.

Det A = 0 marks the fold points:

    n_{1,2} = [-2 delta_omega +- sqrt(delta_omega^2 - 3 kappa^2/4)] / (3 chi_nl)

which are real and positive exactly when delta_omega^2 > 3 kappa^2/4 and
chi_nl * delta_omega < 0.  n_1 < n_2; the low-amplitude branch ends at n_1
(drive epsilon_2, the up-sweep jump) and the high-amplitude branch extends
down to n_2 (drive epsilon_1, the down-sweep jump), with
epsilon_k = sqrt(n_k (kappa^2/4 + h(n_k)^2)) evaluated at its own fold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import LogicalState, ValidationError, logical_sigma_z
from .spectrum import SpectralParams

__all__ = [
    "BifurcationReport",
    "h_function",
    "stability_params",
    "bifurcation",
    "fluctuation_matrix",
]


@dataclass(frozen=True)
class BifurcationReport:
    """Existence and location of the bistable window for one state.

    When ``exists`` is false the fold fields are None.  Otherwise
    0 < n1 <= n2 and epsilon1 <= epsilon2: epsilon2 is the critical drive
    at which the low branch (terminating at photon number n1) disappears
    on an up-sweep, epsilon1 the drive at which the high branch (reaching
    down to n2) disappears on a down-sweep.
    """

    exists: bool
    delta_omega: float             # MHz
    chi_nl: float                  # MHz per photon
    n1: float | None = None
    n2: float | None = None
    epsilon1: float | None = None  # MHz
    epsilon2: float | None = None  # MHz


def _quartic_weights(state: LogicalState, params: SpectralParams):
    sz, occ = logical_sigma_z(state, params.levels)
    d_l2 = params.delta * params.lam**2 * sz          # GHz
    d_l4 = params.delta * params.lam**4 * sz          # GHz
    return d_l2, d_l4, occ[:, 1:]


def h_function(
    n: float, state: LogicalState, params: SpectralParams, delta_c: float
) -> float:
    """Quartic-order effective detuning h(n) in MHz, with N_i = n + <Pi_i>."""
    if n < 0:
        raise ValidationError(f"photon number must be >= 0, got {n}")
    d_l2, d_l4, pi = _quartic_weights(state, params)
    return float(delta_c + 1e3 * np.sum(d_l2 - 2.0 * d_l4 * (n + pi)))


def stability_params(
    state: LogicalState, params: SpectralParams, delta_c: float
) -> tuple[float, float]:
    """(delta_omega, chi_nl) in MHz; h(n) = delta_omega + chi_nl * n.

    delta_omega keeps only the qubit-occupation part of N_i (the photon
    number is excluded by definition); chi_nl is the slope of h in n.
    """
    d_l2, d_l4, pi = _quartic_weights(state, params)
    delta_omega = float(delta_c + 1e3 * np.sum(d_l2 - 2.0 * d_l4 * pi))
    chi_nl = float(-1e3 * np.sum(2.0 * d_l4))
    return delta_omega, chi_nl


def bifurcation(
    state: LogicalState, params: SpectralParams, kappa: float, delta_c: float
) -> BifurcationReport:
    """Locate the bistable window of a logical state.

    Existence requires delta_omega^2 > 3 kappa^2/4 (strictly: too lossy a
    cavity never bifurcates) together with chi_nl * delta_omega < 0; the
    boundary case is excluded.  Non-existence is a value, not an error.
    """
    if kappa <= 0:
        raise ValidationError(f"kappa must be positive, got {kappa}")
    dw, cnl = stability_params(state, params, delta_c)
    disc = dw**2 - 0.75 * kappa**2
    if disc <= 0.0 or cnl * dw >= 0.0 or cnl == 0.0:
        return BifurcationReport(exists=False, delta_omega=dw, chi_nl=cnl)
    root = np.sqrt(disc)
    na = (-2.0 * dw + root) / (3.0 * cnl)
    nb = (-2.0 * dw - root) / (3.0 * cnl)
    n1, n2 = sorted((na, nb))

    def eps_at(n):
        h = dw + cnl * n
        return float(np.sqrt(n * (kappa**2 / 4.0 + h**2)))

    # the low branch always terminates at the smaller fold photon number
    eps2, eps1 = eps_at(n1), eps_at(n2)
    return BifurcationReport(
        exists=True,
        delta_omega=dw,
        chi_nl=cnl,
        n1=float(n1),
        n2=float(n2),
        epsilon1=eps1,
        epsilon2=eps2,
    )


def fluctuation_matrix(
    n: float,
    state: LogicalState,
    params: SpectralParams,
    kappa: float,
    delta_c: float,
) -> np.ndarray:
    """2x2 linearized fluctuation matrix A around a steady state at photon
    number n (units MHz).

    Built from h and h' = chi_nl with the steady-state field phase
    alpha_0 = -i eps / (kappa/2 + i h(n)); Tr A = kappa always, and
    Det A = kappa^2/4 + h^2 + 2 n h h' vanishes at the fold points.
    """
    dw, cnl = stability_params(state, params, delta_c)
    h = dw + cnl * n
    eps = np.sqrt(n * (kappa**2 / 4.0 + h**2))
    alpha0 = -1j * eps / (kappa / 2.0 + 1j * h)
    return np.array(
        [
            [1j * (n * cnl + h) + kappa / 2.0, 1j * alpha0**2 * cnl],
            [-1j * np.conj(alpha0) ** 2 * cnl, -1j * (n * cnl + h) + kappa / 2.0],
        ]
    )
