import numpy as np

from nlreadout import SpectralParams


def decoupled_params(n_qubits=1, levels=3):
    """Spectral parameters with all couplings zero (bare Lorentzian limit)."""
    shape = (n_qubits, levels - 1)
    return SpectralParams(
        omega_c=5.0,
        g=np.zeros(shape),
        tilde_omega=np.full(shape, 8.0),
        delta=np.full(shape, -1.0),
        lam=np.zeros(shape),
    )
