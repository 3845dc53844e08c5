"""Measurement back-action: transformed decoherence channels and
photon-leakage dephasing.

Two ingredients decide whether the bright/dark readout is quantum
non-demolition:

1. the intrinsic relaxation/dephasing operators, moved into the dressed
   frame, acquire extra terms whose photon-number-dependent coefficients
   must stay at or below the bare rates
   (:func:`relaxation_coefficients`, :func:`dephasing_coefficients`);

2. photons leaking from the cavity carry which-state information and
   dephase superpositions of equal-parity states.  In the low-amplitude
   (linear) regime the cavity parts of the density matrix close on
   coherent states; the positive-P representation reduces the master
   equation to three complex ODEs for the field amplitudes alpha_1(t),
   alpha_0(t) and the coherence weight a_10(t)
   (:func:`leakage_trajectories`), from which the induced dephasing rate
   follows (:func:`leakage_dephasing_rate`).

Units: rates and frequencies in MHz (so times are in microseconds),
except where noted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .device import QubitSpec, ValidationError, transition_frequencies
from .spectrum import transformed_frequencies

__all__ = [
    "ChannelCoefficients",
    "DephasingReport",
    "LeakageRate",
    "relaxation_coefficients",
    "dephasing_coefficients",
    "leakage_chis",
    "leakage_trajectories",
    "leakage_dephasing_rate",
]


@dataclass(frozen=True)
class ChannelCoefficients:
    """Coefficients (MHz) of one transformed Lindblad operator.

    ``base`` is the untransformed rate; ``extra`` maps the names of the
    additional operator terms to their coefficients at the given photon
    number.
    """

    base: float
    extra: dict
    n: float

    def max_extra(self) -> float:
        return max(abs(v) for v in self.extra.values())


def relaxation_coefficients(
    n: float, lambda1: float, lambda2: float, gamma1: float
) -> ChannelCoefficients:
    """Dressed-frame relaxation operator coefficients at photon number n.

    Beyond the bare gamma1 term six operator terms appear; all their
    coefficients vanish at n = 0 and stay bounded by gamma1 for any n
    (the sz1 term saturates at gamma1/2 as n -> infinity).  Names refer
    to the operator each coefficient multiplies:

    ``sx1``, ``sx2``   mixing within the 0-1 / 1-2 subspaces
    ``sz1``, ``sz2``   dephasing of the 0-1 / 1-2 subspaces
    ``s1s2``           two-level lowering product |2> -> |0>
    ``s2``             lowering on the 1-2 subspace
    """
    if n < 0:
        raise ValidationError(f"photon number must be >= 0, got {n}")
    rn = np.sqrt(n)
    extra = {
        "sx1": (gamma1 / 2) * np.arctan(2 * lambda1 * rn) ** 2
        / np.sqrt(1 + 4 * lambda1**2 * n),
        "sx2": (gamma1 / 8) * np.arctan(2 * lambda2 * rn) ** 4
        / np.sqrt(1 + 4 * lambda2**2 * n),
        "sz1": gamma1 * lambda1 * rn / np.sqrt(1 + 4 * lambda1**2 * n),
        "sz2": (gamma1 / 4) * rn * lambda2 * np.arctan(2 * lambda2 * n) ** 2
        / np.sqrt(1 + 4 * lambda1**2 * n),
        "s1s2": (gamma1 / 2) * np.arctan(2 * lambda2 * n),
        "s2": (gamma1 / 8) * np.arctan(2 * lambda2 * n) ** 2,
    }
    return ChannelCoefficients(base=gamma1, extra=extra, n=n)


def dephasing_coefficients(
    n: float, lambda1: float, lambda2: float, gamma_phi: float
) -> ChannelCoefficients:
    """Dressed-frame pure-dephasing operator coefficients at photon number n.

    Four additional terms: ``z1``/``z2`` (dephasing of the 0-1 and 1-2
    subspaces, negligible at large n) and ``x1``/``x2`` (mixing terms;
    x1 decays as 1/sqrt(n), x2 saturates at gamma_phi/2).
    """
    if n < 0:
        raise ValidationError(f"photon number must be >= 0, got {n}")
    rn = np.sqrt(n)
    extra = {
        "z1": gamma_phi * np.arctan(2 * lambda1 * rn) ** 2
        / np.sqrt(1 + 4 * lambda1**2 * n),
        "z2": (gamma_phi / 2) * np.arctan(2 * lambda2 * rn) ** 2
        / np.sqrt(1 + 4 * lambda2**2 * n),
        "x1": gamma_phi * 2 * lambda1 * rn / (1 + 4 * lambda1**2 * n),
        "x2": gamma_phi * lambda2 * rn / np.sqrt(1 + 4 * lambda2**2 * n),
    }
    return ChannelCoefficients(base=gamma_phi, extra=extra, n=n)


def leakage_chis(q: QubitSpec, omega_c: float) -> tuple[float, float]:
    """Per-transition shift parameters (chi_1, chi_2) of the leakage model, MHz.

    chi_i = g_i^2 / (Delta_i - wtilde_neighbor / 2), the transition
    detunings offset by half the neighboring sigma_z-frame frequencies.
    These are the parameters the closed-form leakage rate is calibrated
    against; note they are a few MHz, much smaller than the raw
    dispersive shifts g_i^2/Delta_i.
    """
    w10, w21 = transition_frequencies(q, 3)
    wt = transformed_frequencies([w10, w21])
    d1 = (w10 - omega_c) - wt[1] / 2.0
    d2 = (w21 - omega_c) - wt[0] / 2.0
    g1, g2 = q.g1, np.sqrt(2) * q.g1
    return 1e3 * g1**2 / d1, 1e3 * g2**2 / d2


@dataclass(frozen=True)
class DephasingReport:
    """Leakage-dephasing trajectories for a |0>/|1> parity-state superposition.

    ``t`` is in microseconds.  ``alpha1``/``alpha0`` are the closed-form
    coherent amplitudes, ``alpha1_ode``/``alpha0_ode`` the independently
    integrated ones.  ``coherence`` is |c_10(t)| with
    c_10 = a_10 / <alpha_1|alpha_0>.
    """

    t: np.ndarray
    alpha1: np.ndarray
    alpha0: np.ndarray
    a10: np.ndarray
    coherence: np.ndarray
    alpha1_ode: np.ndarray
    alpha0_ode: np.ndarray
    a10_ode: np.ndarray
    coherence_ode: np.ndarray
    alpha1_steady: complex
    alpha0_steady: complex
    gamma_phi_leak_khz: float      # |rate| in kHz, from the steady amplitudes

    def max_closed_vs_ode(self) -> float:
        """Max relative deviation of the closed-form alpha_1 from the ODE."""
        scale = np.max(np.abs(self.alpha1)) or 1.0
        return float(np.max(np.abs(self.alpha1 - self.alpha1_ode)) / scale)


def _rates(delta_c, kappa, chi1, chi2):
    r1 = kappa / 2.0 + 1j * (2.0 * (chi1 - chi2) + delta_c)   # alpha_1 decay
    r0 = kappa / 2.0 + 1j * (delta_c - 2.0 * chi1)            # alpha_0 decay
    return r1, r0


def steady_amplitudes(epsilon, delta_c, kappa, chi1, chi2) -> tuple[complex, complex]:
    """Steady coherent amplitudes of the cavity given |1> / |0> qubit states:
    alpha_1 = -i eps / (kappa/2 + i 2(chi1-chi2) + i delta_c),
    alpha_0 = -i eps / (kappa/2 - i 2 chi1 + i delta_c)."""
    r1, r0 = _rates(delta_c, kappa, chi1, chi2)
    return -1j * epsilon / r1, -1j * epsilon / r0


def leakage_trajectories(
    t_grid,
    epsilon: float,
    delta_c: float,
    kappa: float,
    chi1: float,
    chi2: float,
    tilde_omega: float = 0.0,
    gamma2: float = 0.0,
    alpha1_0: complex = 0.0,
    alpha0_0: complex = 0.0,
    a10_0: complex = 1.0,
    rtol: float = 1e-9,
) -> DephasingReport:
    """Field amplitudes and qubit coherence of a parity-state superposition.

    Integrates the positive-P amplitude equations

        d alpha_1 / dt = -i eps - [kappa/2 + i 2(chi1 - chi2) + i delta_c] alpha_1
        d alpha_0 / dt = -i eps - [kappa/2 - i 2 chi1 + i delta_c] alpha_0
        d a_10   / dt = -(2 gamma2 + i wtilde) a_10
                        - i 4 (chi1 - chi2/2) alpha_1 alpha_0^* a_10

    with an adaptive RK integrator, and independently evaluates the
    closed forms: exponential relaxation onto the steady amplitudes, and
    for a_10 the phase integral int alpha_1 alpha_0^* dt', which is a sum
    of exponentials and is integrated in closed form as well.  Both paths
    are stored so they can be cross-checked.  wtilde only rotates the
    phase of a_10 and cancels in |c_10|; gamma2 = gamma1 + gamma_phi/2 is
    the intrinsic coherence decay entering as exp(-2 gamma2 t).
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ValidationError("t_grid must increase from 0")
    if kappa <= 0:
        raise ValidationError(f"kappa must be positive, got {kappa}")
    r1, r0 = _rates(delta_c, kappa, chi1, chi2)
    a1s, a0s = steady_amplitudes(epsilon, delta_c, kappa, chi1, chi2)
    pref = 4.0 * (chi1 - chi2 / 2.0)

    # closed forms
    da1 = alpha1_0 - a1s
    da0 = alpha0_0 - a0s
    alpha1 = a1s + np.exp(-r1 * t) * da1
    alpha0 = a0s + np.exp(-r0 * t) * da0

    # int_0^t alpha_1 alpha_0^* dt' term by term (sums of exponentials)
    def expint(r):
        # int_0^t e^{-r t'} dt', stable at r -> 0
        if abs(r) < 1e-300:
            return t.astype(complex)
        return (1.0 - np.exp(-r * t)) / r

    phase = (
        a1s * np.conj(a0s) * t
        + a1s * np.conj(da0) * expint(np.conj(r0))
        + da1 * np.conj(a0s) * expint(r1)
        + da1 * np.conj(da0) * expint(r1 + np.conj(r0))
    )
    a10 = a10_0 * np.exp(-(2.0 * gamma2 + 1j * tilde_omega) * t) * np.exp(
        -1j * pref * phase
    )

    def rhs(_t, y):
        al1, al0, c = y[0] + 1j * y[1], y[2] + 1j * y[3], y[4] + 1j * y[5]
        d1 = -1j * epsilon - r1 * al1
        d0 = -1j * epsilon - r0 * al0
        dc = (
            -(2.0 * gamma2 + 1j * tilde_omega) * c
            - 1j * pref * al1 * np.conj(al0) * c
        )
        return [d1.real, d1.imag, d0.real, d0.imag, dc.real, dc.imag]

    y0 = [
        np.real(alpha1_0), np.imag(alpha1_0),
        np.real(alpha0_0), np.imag(alpha0_0),
        np.real(a10_0), np.imag(a10_0),
    ]
    sol = solve_ivp(
        rhs, (t[0], t[-1]), y0, t_eval=t, rtol=rtol, atol=1e-12, method="DOP853"
    )
    if not sol.success:
        raise RuntimeError(f"trajectory integration failed: {sol.message}")
    alpha1_ode = sol.y[0] + 1j * sol.y[1]
    alpha0_ode = sol.y[2] + 1j * sol.y[3]
    a10_ode = sol.y[4] + 1j * sol.y[5]

    def coherence(al1, al0, c):
        # coherent-state overlap <alpha_1|alpha_0>
        ovl = np.exp(
            -np.abs(al1) ** 2 / 2 - np.abs(al0) ** 2 / 2 + np.conj(al1) * al0
        )
        return np.abs(c / ovl)

    rate = -pref * np.imag(a1s * np.conj(a0s))
    return DephasingReport(
        t=t,
        alpha1=alpha1,
        alpha0=alpha0,
        a10=a10,
        coherence=coherence(alpha1, alpha0, a10),
        alpha1_ode=alpha1_ode,
        alpha0_ode=alpha0_ode,
        a10_ode=a10_ode,
        coherence_ode=coherence(alpha1_ode, alpha0_ode, a10_ode),
        alpha1_steady=a1s,
        alpha0_steady=a0s,
        gamma_phi_leak_khz=1e3 * abs(rate),
    )


@dataclass(frozen=True)
class LeakageRate:
    """Photon-leakage dephasing rate, both evaluation routes (MHz, signed).

    ``closed_form`` is the algebraic expression
    4 kappa eps^2 chi2 / [(kappa^2/4 + delta_c^2 + 2 delta_c chi2
    + 4 chi1^2 - 4 chi1 chi2)^2 + kappa^2 chi2^2]; ``definitional`` is
    -4 (chi1 - chi2/2) Im{alpha_1^s alpha_0^s*} evaluated from the steady
    amplitudes, which is what the trajectory coherence actually decays
    with.  The two expressions are NOT algebraically equivalent (the
    closed form is not even dimensionally consistent with the
    definitional one); they are both reported so the discrepancy stays
    visible, and the trajectory-facing code uses the definitional value.
    """

    closed_form: float
    definitional: float

    @property
    def khz(self) -> float:
        """Magnitude of the closed-form rate in kHz (the quoted figure)."""
        return 1e3 * abs(self.closed_form)


def leakage_dephasing_rate(
    epsilon: float, delta_c: float, kappa: float, chi1: float, chi2: float
) -> LeakageRate:
    """Dephasing rate of an equal-parity superposition due to cavity leakage.

    Inputs in MHz; see :class:`LeakageRate` for the two evaluation routes.
    """
    if kappa <= 0:
        raise ValidationError(f"kappa must be positive, got {kappa}")
    den = (
        kappa**2 / 4.0
        + delta_c**2
        + 2.0 * delta_c * chi2
        + 4.0 * chi1**2
        - 4.0 * chi1 * chi2
    ) ** 2 + kappa**2 * chi2**2
    closed = 4.0 * kappa * epsilon**2 * chi2 / den
    a1s, a0s = steady_amplitudes(epsilon, delta_c, kappa, chi1, chi2)
    definitional = -4.0 * (chi1 - chi2 / 2.0) * np.imag(a1s * np.conj(a0s))
    return LeakageRate(closed_form=float(closed), definitional=float(definitional))
