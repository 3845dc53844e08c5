"""Built-in reference devices used by the report pipelines and tests."""

from __future__ import annotations

from .device import CavitySpec, DeviceSpec, QubitSpec

__all__ = ["two_qubit_device", "four_qubit_device", "TWO_QUBIT_TOML"]

TWO_QUBIT_TOML = """\
levels = 3

[cavity]
omega_c_ghz = 5.005
kappa_mhz = 1.0

[[qubit]]
omega10_ghz = 4.297
omega21_ghz = 4.071
g1_ghz = 0.12

[[qubit]]
omega10_ghz = 4.094
omega21_ghz = 3.868
g1_ghz = 0.12
"""


def two_qubit_device(kappa: float = 1.0, levels: int = 3) -> DeviceSpec:
    """Two-transmon reference device (the published two-qubit parameter set)."""
    return DeviceSpec(
        cavity=CavitySpec(omega_c=5.005, kappa=kappa),
        qubits=(
            QubitSpec(omega10=4.297, omega21=4.071, g1=0.12),
            QubitSpec(omega10=4.094, omega21=3.868, g1=0.12),
        ),
        levels=levels,
    )


def four_qubit_device(kappa: float = 1.0, levels: int = 10) -> DeviceSpec:
    """Four identical transmons (the published four-qubit parameter set,
    ten levels kept)."""
    q = QubitSpec(omega10=4.297, omega21=4.071, g1=0.12)
    return DeviceSpec(
        cavity=CavitySpec(omega_c=5.005, kappa=kappa),
        qubits=(q, q, q, q),
        levels=levels,
    )
