"""Parity-readout planning.

The bistability border of a logical state, as a function of the drive
detuning delta_c, tracks its linear dispersive shift: bifurcation exists
(approximately) for delta_c > -chi_state.  Ordering the states by their
bare shifts therefore lets one place drive tones so that, with a common
drive strength, every odd-excitation state rings up to the high-amplitude
attractor while every even-excitation state stays dim:

* group the 2^N basis states into excitation classes (for identical
  qubits all states of a class respond identically);
* for each adjacent (odd m, even m+1) class pair put one drive tone
  halfway between their borders, omega_d = omega_c + (chi_odd + chi_even)/2,
  i.e. delta_c = -(chi_odd + chi_even)/2;
* operate at a drive strength above every odd class's critical drive at
  its own tone but below every even class's critical drive everywhere.

An even qubit count needs N/2 tones.  An odd count needs (N+1)/2: the
all-excited class has no even class above it and gets its own tone just
inside its border.  A cavity photon detector (bright/dark threshold) then
reads parity as "bright at any tone".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .device import DeviceSpec, LogicalState, ValidationError
from .spectrum import SpectralParams, detunings_and_lambdas
from .stability import bifurcation, stability_params

__all__ = [
    "PlanningError",
    "BorderResult",
    "TwoQubitParityPoint",
    "DriveTone",
    "ParityPlan",
    "all_states",
    "bare_chi_table",
    "stability_border",
    "two_qubit_parity_point",
    "parity_plan",
    "classify",
]


class PlanningError(ValueError):
    """No sound parity plan exists for this device (empty drive window,
    overlapping class borders, ...)."""


@dataclass(frozen=True)
class BorderResult:
    """Detuning at which bifurcation existence flips for one state."""

    delta_c: float       # MHz, numeric root of the existence condition
    proxy: float         # MHz, the bare-shift rule -chi_state
    state: LogicalState


@dataclass(frozen=True)
class TwoQubitParityPoint:
    """Optimal two-qubit parity operating point."""

    delta_c_opt: float                 # MHz
    omega_d_opt: float                 # GHz
    epsilon_window: tuple[float, float]  # MHz, (low, high)
    border_width: float                # MHz, numeric border-to-border window


@dataclass(frozen=True)
class DriveTone:
    omega_d: float                     # GHz
    delta_c: float                     # MHz
    epsilon_window: tuple[float, float]  # MHz, for this tone alone
    bright_class: int                  # excitation count this tone lights up


@dataclass(frozen=True)
class ParityPlan:
    drives: tuple[DriveTone, ...]
    epsilon_window: tuple[float, float]   # MHz, intersected over tones
    predicted: dict                        # state -> per-tone ("bright"|"dark")
    overall: dict                          # state -> "odd" | "even"


def all_states(n_qubits: int):
    """All 2^N computational-basis labels, lexicographic."""
    return [LogicalState(bits) for bits in product((0, 1), repeat=n_qubits)]


def bare_chi_table(device: DeviceSpec, params: SpectralParams | None = None) -> dict:
    """Bare (n -> 0, linear) dispersive shift of every logical state, MHz.

    chi_state = sum_{j,i} g_i lambda_i sigma_z_i; for identical qubits the
    table is degenerate in the excitation count.
    """
    from .steadystate import bare_chi

    params = params or detunings_and_lambdas(device)
    return {s: 1e3 * bare_chi(s, params) for s in all_states(device.n_qubits)}


def _exists(state, params, kappa, delta_c) -> bool:
    dw, cnl = stability_params(state, params, delta_c)
    return dw**2 > 0.75 * kappa**2 and cnl * dw < 0.0


def stability_border(
    state: LogicalState,
    device: DeviceSpec,
    params: SpectralParams | None = None,
    scan: tuple[float, float] = (-500.0, 500.0),
    tol: float = 1e-9,
) -> BorderResult:
    """Detuning at which the bistability of ``state`` switches off.

    Found by bisection on the existence condition over delta_c; among
    multiple flips the one nearest the bare-shift proxy -chi_state is
    returned, with the proxy attached as a diagnostic.
    """
    from .steadystate import bare_chi

    params = params or detunings_and_lambdas(device)
    kappa = device.cavity.kappa
    proxy = -1e3 * bare_chi(state, params)
    grid = np.linspace(scan[0], scan[1], 4001)
    flags = np.array([_exists(state, params, kappa, d) for d in grid])
    flips = np.nonzero(flags[1:] != flags[:-1])[0]
    if flips.size == 0:
        raise PlanningError(
            f"state {state}: no bifurcation border in delta_c range {scan}"
        )
    mids = (grid[flips] + grid[flips + 1]) / 2.0
    k = int(flips[np.argmin(np.abs(mids - proxy))])
    lo, hi = grid[k], grid[k + 1]
    flo = flags[k]
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if _exists(state, params, kappa, mid) == flo:
            lo = mid
        else:
            hi = mid
    return BorderResult(delta_c=(lo + hi) / 2.0, proxy=proxy, state=state)


def _window_at(delta_c, states_odd, states_even, params, kappa):
    """(low, high) epsilon window at one detuning: above every odd state's
    critical drive, below every even state's (where one exists)."""
    lows, highs = [], []
    for s in states_odd:
        rep = bifurcation(s, params, kappa, delta_c)
        if not rep.exists:
            raise PlanningError(
                f"odd state {s} has no bifurcation at delta_c={delta_c:.3f} MHz"
            )
        lows.append(rep.epsilon2)
    for s in states_even:
        rep = bifurcation(s, params, kappa, delta_c)
        if rep.exists:
            highs.append(rep.epsilon2)
    low = max(lows)
    high = min(highs) if highs else np.inf
    if not low < high:
        raise PlanningError(
            f"empty drive window at delta_c={delta_c:.3f} MHz: "
            f"need epsilon in ({low:.3f}, {high:.3f})"
        )
    return low, high


def two_qubit_parity_point(
    device: DeviceSpec, params: SpectralParams | None = None
) -> TwoQubitParityPoint:
    """Optimal drive point for a two-qubit parity measurement.

    The tone sits halfway between the instability borders of the
    all-excited state and the nearest odd state:
    omega_d = omega_c + (chi_odd_min + chi_11)/2.  The drive-strength
    window runs from the larger odd critical drive up to the critical
    drive of |00> (the even state that still bifurcates there).
    """
    if device.n_qubits != 2:
        raise ValidationError("two_qubit_parity_point needs exactly 2 qubits")
    params = params or detunings_and_lambdas(device)
    kappa = device.cavity.kappa
    table = bare_chi_table(device, params)
    odd = [s for s in all_states(2) if s.parity == "odd"]
    even = [s for s in all_states(2) if s.parity == "even"]
    chi_odd_min = min(table[s] for s in odd)
    chi_11 = table[LogicalState((1, 1))]
    if not chi_11 < chi_odd_min:
        raise PlanningError(
            "qubit parameters too dissimilar: |11> border does not sit "
            "below the odd-state borders"
        )
    delta_opt = -(chi_odd_min + chi_11) / 2.0
    window = _window_at(delta_opt, odd, even, params, kappa)
    borders = [stability_border(s, device, params) for s in odd]
    b11 = stability_border(LogicalState((1, 1)), device, params)
    # usable detunings sit above every odd border and below the |11> border
    width = max(b.delta_c for b in borders) - b11.delta_c
    return TwoQubitParityPoint(
        delta_c_opt=delta_opt,
        omega_d_opt=device.cavity.omega_c - 1e-3 * delta_opt,
        epsilon_window=window,
        border_width=abs(width),
    )


def parity_plan(device: DeviceSpec, params: SpectralParams | None = None) -> ParityPlan:
    """Multi-tone parity-readout plan for an N-qubit device (N >= 2).

    One tone per adjacent (odd, even) excitation-class pair, descending:
    (N-1, N), (N-3, N-2), ... For odd N the all-excited class gets its own
    tone half a class gap inside its border.  The returned epsilon window
    is the intersection over tones, so a single drive strength serves all
    of them whether the tones are applied together or sequentially.
    """
    if device.n_qubits < 2:
        raise ValidationError("parity planning needs at least 2 qubits")
    params = params or detunings_and_lambdas(device)
    kappa = device.cavity.kappa
    n = device.n_qubits
    table = bare_chi_table(device, params)

    classes: dict[int, list[LogicalState]] = {m: [] for m in range(n + 1)}
    for s in all_states(n):
        classes[s.excitations].append(s)
    # class-border summaries: every odd state of the class must bifurcate at
    # the tone (min chi), every even state must not (max chi)
    chi_min = {m: min(table[s] for s in classes[m]) for m in classes}
    chi_max = {m: max(table[s] for s in classes[m]) for m in classes}
    for m in range(n):
        if not chi_max[m + 1] < chi_min[m]:
            raise PlanningError(
                f"excitation classes {m} and {m + 1} overlap in bare shift: "
                "qubit parameters too dissimilar for class-based planning"
            )

    pairs: list[tuple[int, int | None]] = []
    top = n
    if n % 2 == 1:
        pairs.append((n, None))  # all-excited odd class, no even class above it
        top = n - 1
    pairs += [(m, m + 1) for m in range(top - 1, 0, -2)]

    tones = []
    for odd_m, even_m in pairs:
        if even_m is not None:
            delta_c = -(chi_min[odd_m] + chi_max[even_m]) / 2.0
        else:
            # sit half a class gap inside the all-excited class's border
            gap = chi_min[odd_m - 1] - chi_max[odd_m]
            delta_c = -chi_min[odd_m] + gap / 2.0
        tones.append((delta_c, odd_m))

    odd_states = [s for s in all_states(n) if s.parity == "odd"]
    even_states = [s for s in all_states(n) if s.parity == "even"]

    drives = []
    lows, highs = [], []
    for delta_c, bright in tones:
        own = classes[bright]
        win = _window_at(delta_c, own, even_states, params, kappa)
        drives.append(
            DriveTone(
                omega_d=device.cavity.omega_c - 1e-3 * delta_c,
                delta_c=delta_c,
                epsilon_window=win,
                bright_class=bright,
            )
        )
        lows.append(win[0])
        highs.append(win[1])
    low, high = max(lows), min(highs)
    if not low < high:
        raise PlanningError(
            f"tone windows do not intersect: need epsilon in ({low:.3f}, {high:.3f})"
        )

    predicted = {}
    overall = {}
    for s in all_states(n):
        flags = []
        for d in drives:
            rep = bifurcation(s, params, kappa, d.delta_c)
            if rep.exists and low < rep.epsilon2 < high * (1.0 - 1e-12):
                raise PlanningError(
                    f"ambiguous outcome for state {s} at tone "
                    f"delta_c={d.delta_c:.3f} MHz: critical drive "
                    f"{rep.epsilon2:.3f} MHz falls inside the operating window"
                )
            flags.append("bright" if rep.exists and rep.epsilon2 <= low else "dark")
        predicted[s] = tuple(flags)
        overall[s] = classify([f == "bright" for f in flags])
    for s in odd_states:
        if overall[s] != "odd":
            raise PlanningError(f"plan does not light up odd state {s}")
    for s in even_states:
        if overall[s] != "even":
            raise PlanningError(f"plan lights up even state {s}")
    return ParityPlan(
        drives=tuple(drives),
        epsilon_window=(low, high),
        predicted=predicted,
        overall=overall,
    )


def classify(bright_flags) -> str:
    """Parity outcome from per-tone bright flags: odd iff any tone is bright."""
    flags = list(bright_flags)
    if not flags:
        raise ValidationError("need at least one per-tone flag")
    return "odd" if any(flags) else "even"
