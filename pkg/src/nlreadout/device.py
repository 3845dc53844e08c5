"""Device description and logical-state bookkeeping.

Conventions used throughout the package:

* every frequency is a *linear* frequency (the quantity usually quoted as
  omega/2pi), qubit and cavity frequencies in GHz, rates and drive
  strengths in MHz;
* all formulas implemented here are homogeneous in frequency, so no 2*pi
  factors appear anywhere;
* detunings are Delta_i = omega_{i,i-1} - omega_c and the drive detuning is
  delta_c = omega_c - omega_d.
"""

from __future__ import annotations

import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "ValidationError",
    "ConfigError",
    "QubitSpec",
    "CavitySpec",
    "DeviceSpec",
    "LogicalState",
    "DriveSpec",
    "HierarchyWarning",
    "load_device",
    "loads_device",
    "dump_device",
    "coupling_ladder",
    "transition_frequencies",
    "logical_sigma_z",
]


class ValidationError(ValueError):
    """A field of a device/drive description violates an invariant."""


class ConfigError(ValueError):
    """Config text is malformed or contains unknown keys."""


class HierarchyWarning(UserWarning):
    """The dispersive/bad-cavity rate hierarchy is not comfortably satisfied."""


@dataclass(frozen=True)
class QubitSpec:
    """Weakly anharmonic (transmon-like) qubit.

    Parameters
    ----------
    omega10, omega21 : float
        The two lowest transition frequencies in GHz.  Higher transitions
        are extrapolated with constant anharmonicity, see
        :func:`transition_frequencies`.
    g1 : float
        Coupling of the 0-1 transition to the cavity, GHz.  Couplings of
        higher transitions follow the sqrt(i) ladder, see
        :func:`coupling_ladder`.
    gamma1, gamma_phi : float
        Intrinsic relaxation and pure-dephasing rates, MHz.
    """

    omega10: float
    omega21: float
    g1: float
    gamma1: float = 0.0
    gamma_phi: float = 0.0

    def __post_init__(self):
        if self.omega10 <= 0 or self.omega21 <= 0:
            raise ValidationError(
                f"transition frequencies must be positive, got "
                f"omega10={self.omega10}, omega21={self.omega21}"
            )
        if self.g1 <= 0:
            raise ValidationError(f"g1 must be positive, got g1={self.g1}")
        if self.omega21 == self.omega10:
            raise ValidationError(
                "zero anharmonicity (omega21 == omega10): a perfectly "
                "harmonic qubit is rejected"
            )
        if self.gamma1 < 0 or self.gamma_phi < 0:
            raise ValidationError(
                f"rates must be non-negative, got gamma1={self.gamma1}, "
                f"gamma_phi={self.gamma_phi}"
            )

    @property
    def anharmonicity(self) -> float:
        """omega21 - omega10, GHz (negative for a transmon)."""
        return self.omega21 - self.omega10


@dataclass(frozen=True)
class CavitySpec:
    """Readout cavity: frequency omega_c (GHz) and decay rate kappa (MHz).

    kappa must be strictly positive; the pseudo-steady-state picture
    (settled cavity, still-coherent qubits) needs a finite cavity decay.
    """

    omega_c: float
    kappa: float

    def __post_init__(self):
        if self.omega_c <= 0:
            raise ValidationError(f"omega_c must be positive, got {self.omega_c}")
        if self.kappa <= 0:
            raise ValidationError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class DeviceSpec:
    """Cavity plus an ordered list of qubits, with M levels kept per qubit."""

    cavity: CavitySpec
    qubits: tuple[QubitSpec, ...]
    levels: int = 3

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) < 1:
            raise ValidationError("a device needs at least one qubit")
        if self.levels < 3:
            raise ValidationError(f"levels must be >= 3, got {self.levels}")
        for j, q in enumerate(self.qubits):
            for i, w in enumerate(transition_frequencies(q, self.levels), start=1):
                if w == self.cavity.omega_c:
                    raise ValidationError(
                        f"qubit {j}: transition {i} is exactly resonant with "
                        f"the cavity (zero detuning)"
                    )
        check_hierarchy(self)

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)


@dataclass(frozen=True)
class LogicalState:
    """Computational-basis label of the N-qubit register.

    Per qubit only the two lowest levels carry logical information; the
    per-transition sigma_z expectation values follow from
    sigma_z_i = Pi_i - Pi_{i-1}:

    * bit 0: sigma_z = (-1, 0, 0, ...), level 0 occupied;
    * bit 1: sigma_z = (+1, -1, 0, ...), level 1 occupied.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if not self.bits:
            raise ValidationError("empty logical state")
        if any(b not in (0, 1) for b in self.bits):
            raise ValidationError(f"bits must be 0 or 1, got {self.bits}")

    @classmethod
    def from_string(cls, s: str) -> "LogicalState":
        """Parse a bit string such as ``"01"`` (leftmost bit = qubit 1)."""
        if not s or any(c not in "01" for c in s):
            raise ValidationError(f"not a bit string: {s!r}")
        return cls(tuple(int(c) for c in s))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @property
    def n_qubits(self) -> int:
        return len(self.bits)

    @property
    def excitations(self) -> int:
        return sum(self.bits)

    @property
    def parity(self) -> str:
        return "odd" if self.excitations % 2 else "even"


@dataclass(frozen=True)
class DriveSpec:
    """Classical cavity drive: strength epsilon (MHz) and detuning
    delta_c = omega_c - omega_d (MHz)."""

    epsilon: float
    delta_c: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be >= 0, got {self.epsilon}")


def coupling_ladder(g1: float, levels: int) -> np.ndarray:
    """Coupling strengths g_i = sqrt(i) * g1 of the i-1 <-> i transitions.

    Returns the array [g_1, ..., g_{M-1}] for ``levels`` = M kept levels.
    """
    if g1 <= 0:
        raise ValidationError(f"g1 must be positive, got {g1}")
    if levels < 2:
        raise ValidationError(f"need at least two levels, got {levels}")
    return g1 * np.sqrt(np.arange(1, levels))


def transition_frequencies(q: QubitSpec, levels: int) -> np.ndarray:
    """Transition frequencies omega_{i,i-1}, i = 1..M-1, in GHz.

    The first two are the measured omega10 and omega21; above that the
    spectrum is extrapolated with constant anharmonicity
    omega_{i,i-1} = omega10 + (i-1) * (omega21 - omega10), the transmon
    (Duffing-like) pattern.
    """
    if levels < 2:
        raise ValidationError(f"need at least two levels, got {levels}")
    i = np.arange(1, levels)
    return q.omega10 + (i - 1) * (q.omega21 - q.omega10)


def logical_sigma_z(state: LogicalState, levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-qubit sigma_z and occupation vectors of a logical state.

    Returns ``(sigma_z, occupation)`` with shapes (N, M-1) and (N, M):
    ``sigma_z[j, i-1]`` is <sigma_z_i> of transition i on qubit j and
    ``occupation[j, k]`` is <Pi_k>.  Exactly one level is occupied per
    qubit and sigma_z_i = Pi_i - Pi_{i-1} holds entry-wise.
    """
    if levels < 3:
        raise ValidationError(f"levels must be >= 3, got {levels}")
    n = state.n_qubits
    occ = np.zeros((n, levels))
    occ[np.arange(n), list(state.bits)] = 1.0
    sz = occ[:, 1:] - occ[:, :-1]
    return sz, occ


def check_hierarchy(device: DeviceSpec, factor: float = 5.0) -> list[str]:
    """Check gamma, gamma_phi << kappa << g^2/|Delta| << g << omega_c.

    "<<" means smaller by at least ``factor``.  Violations produce
    :class:`HierarchyWarning` warnings (never errors: published parameter
    sets themselves sit close to some of these boundaries) and are also
    returned as strings for reporting.
    """
    msgs = []
    kappa_ghz = device.cavity.kappa * 1e-3
    for j, q in enumerate(device.qubits):
        gs = coupling_ladder(q.g1, device.levels)
        ws = transition_frequencies(q, device.levels)
        deltas = ws - device.cavity.omega_c
        disp = np.min(gs**2 / np.abs(deltas))
        gmin = np.min(gs)
        for g1_rate in (q.gamma1, q.gamma_phi):
            if g1_rate > 0 and factor * g1_rate * 1e-3 > kappa_ghz:
                msgs.append(
                    f"qubit {j}: qubit rate {g1_rate} MHz not << kappa "
                    f"{device.cavity.kappa} MHz"
                )
                break
        if factor * kappa_ghz > disp:
            msgs.append(
                f"qubit {j}: kappa {device.cavity.kappa} MHz not << "
                f"min g^2/|Delta| = {disp * 1e3:.3f} MHz"
            )
        if factor * disp > gmin:
            msgs.append(
                f"qubit {j}: g^2/|Delta| = {disp * 1e3:.3f} MHz not << "
                f"g = {gmin * 1e3:.1f} MHz"
            )
        if factor * np.max(gs) > device.cavity.omega_c:
            msgs.append(f"qubit {j}: g not << omega_c")
    for m in msgs:
        warnings.warn(m, HierarchyWarning, stacklevel=3)
    return msgs


# --- config ingestion -------------------------------------------------------
#
# Schema (TOML):
#
#   levels = 3
#   [cavity]
#   omega_c_ghz = 5.005
#   kappa_mhz   = 1.0
#   [[qubit]]
#   omega10_ghz   = 4.297
#   omega21_ghz   = 4.071
#   g1_ghz        = 0.12
#   gamma1_mhz    = 0.0
#   gamma_phi_mhz = 0.0
#
# Unknown keys anywhere are errors.

_CAVITY_KEYS = {"omega_c_ghz", "kappa_mhz"}
_QUBIT_KEYS = {"omega10_ghz", "omega21_ghz", "g1_ghz", "gamma1_mhz", "gamma_phi_mhz"}
_TOP_KEYS = {"levels", "cavity", "qubit"}


def _reject_unknown(mapping: dict, allowed: set, where: str):
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def loads_device(text: str) -> DeviceSpec:
    """Parse and validate a device config from TOML text."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    _reject_unknown(data, _TOP_KEYS, "top level")
    if "cavity" not in data:
        raise ConfigError("missing [cavity] section")
    if "qubit" not in data or not data["qubit"]:
        raise ConfigError("missing [[qubit]] sections")
    _reject_unknown(data["cavity"], _CAVITY_KEYS, "[cavity]")
    for k in _CAVITY_KEYS:
        if k not in data["cavity"]:
            raise ConfigError(f"[cavity] missing key {k}")
    qubits = []
    for idx, qd in enumerate(data["qubit"]):
        _reject_unknown(qd, _QUBIT_KEYS, f"[[qubit]] #{idx + 1}")
        for k in ("omega10_ghz", "omega21_ghz", "g1_ghz"):
            if k not in qd:
                raise ConfigError(f"[[qubit]] #{idx + 1} missing key {k}")
        qubits.append(
            QubitSpec(
                omega10=float(qd["omega10_ghz"]),
                omega21=float(qd["omega21_ghz"]),
                g1=float(qd["g1_ghz"]),
                gamma1=float(qd.get("gamma1_mhz", 0.0)),
                gamma_phi=float(qd.get("gamma_phi_mhz", 0.0)),
            )
        )
    cavity = CavitySpec(
        omega_c=float(data["cavity"]["omega_c_ghz"]),
        kappa=float(data["cavity"]["kappa_mhz"]),
    )
    return DeviceSpec(cavity=cavity, qubits=tuple(qubits), levels=int(data.get("levels", 3)))


def load_device(path) -> DeviceSpec:
    """Load a device config from a TOML file."""
    with open(path, "rb") as f:
        text = f.read().decode("utf-8")
    return loads_device(text)


def dump_device(device: DeviceSpec) -> str:
    """Serialize a device back to config text (round-trips exactly)."""
    lines = [f"levels = {device.levels}", "", "[cavity]"]
    lines.append(f"omega_c_ghz = {device.cavity.omega_c!r}")
    lines.append(f"kappa_mhz = {device.cavity.kappa!r}")
    for q in device.qubits:
        lines += [
            "",
            "[[qubit]]",
            f"omega10_ghz = {q.omega10!r}",
            f"omega21_ghz = {q.omega21!r}",
            f"g1_ghz = {q.g1!r}",
            f"gamma1_mhz = {q.gamma1!r}",
            f"gamma_phi_mhz = {q.gamma_phi!r}",
        ]
    return "\n".join(lines) + "\n"
