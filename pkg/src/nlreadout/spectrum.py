"""Frequency-basis transformation and dispersive parameters.

The bare ladder Hamiltonian sum_i omega_i |i><i| is rewritten on
sigma_z-type operators of the two-dimensional transition subspaces,
sum_i wtilde_i sigma_z_i / 2.  The transition frequencies and the
transformed frequencies are related by the tridiagonal Toeplitz system
A wtilde = 2 omega with A = tridiag(-1, 2, -1), inverted in closed form.

Everything downstream consumes the per-transition detunings
Delta_i = omega_{i,i-1} - omega_c and dispersive ratios
lambda_i = g_i / Delta_i collected in :class:`SpectralParams`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import (
    DeviceSpec,
    QubitSpec,
    ValidationError,
    coupling_ladder,
    transition_frequencies,
)

__all__ = [
    "DispersiveError",
    "SpectralParams",
    "toeplitz_inverse",
    "toeplitz_matrix",
    "transformed_frequencies",
    "detunings_and_lambdas",
    "case_formula_detunings",
]


class DispersiveError(ValueError):
    """The device is outside the dispersive regime (|lambda| >= 1 or
    zero detuning)."""


@dataclass(frozen=True)
class SpectralParams:
    """Per-qubit, per-transition spectral data of a device.

    All arrays have shape (N, M-1), indexed by (qubit, transition-1):

    ``g``            couplings g_i (GHz)
    ``tilde_omega``  transformed frequencies wtilde_i (GHz)
    ``delta``        detunings Delta_i = omega_{i,i-1} - omega_c (GHz)
    ``lam``          dispersive ratios lambda_i = g_i / Delta_i
    """

    omega_c: float
    g: np.ndarray
    tilde_omega: np.ndarray
    delta: np.ndarray
    lam: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.g.shape[0]

    @property
    def levels(self) -> int:
        return self.g.shape[1] + 1


def toeplitz_matrix(levels: int) -> np.ndarray:
    """The (M-1)x(M-1) tridiagonal matrix A = tridiag(-1, 2, -1)."""
    if levels < 2:
        raise ValidationError(f"need at least two levels, got {levels}")
    n = levels - 1
    return 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)


def toeplitz_inverse(levels: int) -> np.ndarray:
    """Closed-form inverse of tridiag(-1, 2, -1) of size (M-1)x(M-1).

    With n = M-1 the entries are, for 1-based indices,
    P_ij = -i (j - n - 1) / (n + 1) on and above the diagonal and the
    transpose below.  For M = 3 this is [[2/3, 1/3], [1/3, 2/3]].
    """
    if levels < 2:
        raise ValidationError(f"need at least two levels, got {levels}")
    n = levels - 1
    i = np.arange(1, n + 1)[:, None]
    j = np.arange(1, n + 1)[None, :]
    upper = -i * (j - n - 1) / (n + 1)
    lower = -j * (i - n - 1) / (n + 1)
    return np.where(i <= j, upper, lower)


def transformed_frequencies(transitions) -> np.ndarray:
    """Transformed frequencies wtilde_i = sum_k 2 A^-1_{ik} omega_{k,k-1}.

    For M = 3 this reduces to wtilde_1 = (4 w10 + 2 w21)/3 and
    wtilde_2 = (2 w10 + 4 w21)/3.  The map is linear and invertible; the
    level-energy differences reconstructed from the sigma_z-form
    Hamiltonian reproduce the input transitions exactly.
    """
    w = np.asarray(transitions, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise ValidationError("transitions must be a non-empty 1-d sequence")
    return 2.0 * toeplitz_inverse(w.size + 1) @ w


def level_energies_from_tilde(tilde_omega) -> np.ndarray:
    """Level energies E_0..E_{M-1} implied by the sigma_z-form Hamiltonian.

    E_k = (wtilde_k - wtilde_{k+1}) / 2 with wtilde_0 = wtilde_M = 0; the
    differences E_i - E_{i-1} equal the original transition frequencies.
    """
    wt = np.concatenate(([0.0], np.asarray(tilde_omega, dtype=float), [0.0]))
    return (wt[:-1] - wt[1:]) / 2.0


def case_formula_detunings(q: QubitSpec, omega_c: float, levels: int) -> np.ndarray:
    """Per-transition detunings via the transformed-frequency route.

    Evaluates, with Delta_i taken relative to the transformed frequencies
    (wtilde_i - omega_c),

    * i = 1:       wtilde_1 - omega_c - wtilde_2 / 2
    * i = M-1:     wtilde_{M-1} - omega_c - wtilde_{M-2} / 2
    * otherwise:   wtilde_i - omega_c - (wtilde_{i-1} + wtilde_{i+1}) / 2

    Because A wtilde = 2 omega ties wtilde_i - (wtilde_{i-1}+wtilde_{i+1})/2
    to omega_{i,i-1}, this equals omega_{i,i-1} - omega_c identically; it is
    computed independently here so the identity can be asserted numerically.
    """
    wt = transformed_frequencies(transition_frequencies(q, levels))
    padded = np.concatenate(([0.0], wt, [0.0]))
    return wt - omega_c - (padded[:-2] + padded[2:]) / 2.0


def detunings_and_lambdas(device: DeviceSpec, check_tol: float = 1e-10) -> SpectralParams:
    """Assemble :class:`SpectralParams` for a device.

    Raises :class:`DispersiveError` on zero detuning or |lambda_i| >= 1,
    and asserts the detuning-convention identity: the transformed-frequency
    route of :func:`case_formula_detunings` must reproduce
    Delta_i = omega_{i,i-1} - omega_c to ``check_tol`` relative.
    """
    n, m = device.n_qubits, device.levels
    g = np.empty((n, m - 1))
    wt = np.empty((n, m - 1))
    delta = np.empty((n, m - 1))
    for j, q in enumerate(device.qubits):
        g[j] = coupling_ladder(q.g1, m)
        trans = transition_frequencies(q, m)
        wt[j] = transformed_frequencies(trans)
        delta[j] = trans - device.cavity.omega_c
        if np.any(delta[j] == 0.0):
            raise DispersiveError(f"qubit {j}: zero detuning")
        alt = case_formula_detunings(q, device.cavity.omega_c, m)
        err = np.max(np.abs(alt - delta[j]) / np.abs(delta[j]))
        if err > check_tol:
            raise AssertionError(
                f"detuning-convention identity violated on qubit {j}: "
                f"relative error {err:.3e}"
            )
    lam = g / delta
    if np.any(np.abs(lam) >= 1.0):
        jj, ii = np.unravel_index(np.argmax(np.abs(lam)), lam.shape)
        raise DispersiveError(
            f"dispersive regime violated: |lambda_{ii + 1}| = "
            f"{abs(lam[jj, ii]):.3f} >= 1 on qubit {jj}"
        )
    return SpectralParams(
        omega_c=device.cavity.omega_c, g=g, tilde_omega=wt, delta=delta, lam=lam
    )
