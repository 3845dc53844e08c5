import numpy as np
import pytest

from nlreadout import detunings_and_lambdas
from nlreadout.presets import four_qubit_device, two_qubit_device


@pytest.fixture(scope="session")
def fig2():
    return two_qubit_device(kappa=1.0)


@pytest.fixture(scope="session")
def fig2_params(fig2):
    return detunings_and_lambdas(fig2)


@pytest.fixture(scope="session")
def fig4():
    return four_qubit_device(kappa=1.0)


@pytest.fixture(scope="session")
def fig4_params(fig4):
    return detunings_and_lambdas(fig4)


@pytest.fixture(scope="session")
def reference_chi_bare():
    """Independent evaluation of the linear shifts of the two-qubit device.

    Computed directly from sum_i g_i^2/Delta_i sigma_z_i with the quoted
    device numbers, bypassing the package code paths.
    """
    wc = 5.005
    table = {}
    for bits, label in (((0, 0), "00"), ((0, 1), "01"), ((1, 0), "10"), ((1, 1), "11")):
        total = 0.0
        for (w10, w21), bit in zip(((4.297, 4.071), (4.094, 3.868)), bits):
            g1, g2 = 0.12, 0.12 * np.sqrt(2.0)
            c1, c2 = g1**2 / (w10 - wc), g2**2 / (w21 - wc)
            total += -c1 if bit == 0 else c1 - c2
        table[label] = 1e3 * total
    return table
