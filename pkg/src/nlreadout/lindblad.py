"""Brute-force truncated-Fock Lindblad solver.

Validator for the semiclassical formulas on small systems: builds the
rotating-frame ladder Hamiltonian

    H = delta_c adag a + sum_j sum_k Pi_k (sum_{i<=k} (Delta_i + delta_c))
        + sum_{j,i} g_i (adag sigma_i + a sigma_i_dag) + eps (a + adag)

on cavity x qubit levels, solves L(rho) = 0 directly as a linear system,
and checks the commutator conventions on which the dispersive
transformation rests.  Dimensions are kept small deliberately; this
module validates the low-photon linear regime only.

Units: the Hamiltonian is assembled in GHz, so drive strengths (MHz) and
rates (MHz) are converted on entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .device import (
    DeviceSpec,
    DriveSpec,
    LogicalState,
    ValidationError,
    coupling_ladder,
    transition_frequencies,
)

__all__ = [
    "TruncatedSystem",
    "build_system",
    "liouvillian",
    "steady_state",
    "photon_number",
    "commutator_check",
    "CommutatorRow",
]

MAX_DIMENSION = 400  # Hilbert-space cap: vectorized solves stay ~1.6e5^... dense fallback safe


@dataclass(frozen=True)
class TruncatedSystem:
    """Dense rotating-frame ladder model on cavity (x) qubit levels."""

    fock_cutoff: int
    levels: tuple[int, ...]
    hamiltonian: np.ndarray           # GHz, complex
    collapse: tuple[np.ndarray, ...]  # sqrt(GHz) scaled operators
    state: LogicalState

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]

    def hermiticity_defect(self) -> float:
        h = self.hamiltonian
        return float(np.max(np.abs(h - h.conj().T)))


def _destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def _lower(level_from: int, dim: int) -> np.ndarray:
    """|level_from - 1><level_from| on a dim-level ladder."""
    m = np.zeros((dim, dim), dtype=complex)
    m[level_from - 1, level_from] = 1.0
    return m


def _embed(ops: list[np.ndarray]) -> np.ndarray:
    out = ops[0]
    for o in ops[1:]:
        out = np.kron(out, o)
    return out


def build_system(
    device: DeviceSpec,
    state: LogicalState,
    drive: DriveSpec,
    fock_cutoff: int,
    include_qubit_decay: bool = False,
) -> TruncatedSystem:
    """Assemble the truncated system for a device in the drive frame.

    ``state`` records the qubit configuration the comparison refers to
    (it does not restrict the Hilbert space).  Size limits: N <= 2 qubits,
    M <= 3 levels, and the total dimension is capped.
    """
    if fock_cutoff < 4:
        raise ValidationError(f"fock_cutoff must be >= 4, got {fock_cutoff}")
    if device.n_qubits > 2 or device.levels > 3:
        raise ValidationError(
            "truncated solver is limited to N <= 2 qubits with M <= 3 levels"
        )
    if state.n_qubits != device.n_qubits:
        raise ValidationError("state/device qubit count mismatch")
    dims = [fock_cutoff] + [device.levels] * device.n_qubits
    dim = int(np.prod(dims))
    if dim > MAX_DIMENSION:
        raise ValidationError(
            f"dimension {dim} exceeds the {MAX_DIMENSION} cap of this validator"
        )

    eye = [np.eye(d, dtype=complex) for d in dims]
    a = _embed([_destroy(fock_cutoff)] + eye[1:])
    delta_c_ghz = 1e-3 * drive.delta_c
    eps_ghz = 1e-3 * drive.epsilon
    h = delta_c_ghz * (a.conj().T @ a) + eps_ghz * (a + a.conj().T)

    for j, q in enumerate(device.qubits):
        trans = transition_frequencies(q, device.levels)
        deltas = trans - device.cavity.omega_c
        gs = coupling_ladder(q.g1, device.levels)
        # rotating-frame level energies: level k sits at sum_{i<=k} (Delta_i + delta_c)
        level_e = np.concatenate(([0.0], np.cumsum(deltas + delta_c_ghz)))
        ops = eye.copy()
        ops[1 + j] = np.diag(level_e).astype(complex)
        h = h + _embed(ops)
        for i in range(1, device.levels):
            ops = eye.copy()
            ops[1 + j] = _lower(i, device.levels)
            sig = _embed(ops)
            h = h + gs[i - 1] * (a.conj().T @ sig + a @ sig.conj().T)

    collapse = [np.sqrt(1e-3 * device.cavity.kappa) * a]
    if include_qubit_decay:
        for j, q in enumerate(device.qubits):
            for i in range(1, device.levels):
                if q.gamma1 > 0:
                    ops = eye.copy()
                    ops[1 + j] = _lower(i, device.levels)
                    collapse.append(np.sqrt(1e-3 * q.gamma1 * i) * _embed(ops))
            if q.gamma_phi > 0:
                ops = eye.copy()
                ops[1 + j] = np.diag(
                    np.arange(device.levels).astype(complex)
                )
                collapse.append(np.sqrt(1e-3 * q.gamma_phi) * _embed(ops))

    return TruncatedSystem(
        fock_cutoff=fock_cutoff,
        levels=tuple([device.levels] * device.n_qubits),
        hamiltonian=h,
        collapse=tuple(collapse),
        state=state,
    )


def liouvillian(sys: TruncatedSystem) -> sp.csr_matrix:
    """Sparse vectorized generator L with drho/dt = L vec(rho)
    (column-stacking convention), units GHz."""
    h = sp.csr_matrix(sys.hamiltonian)
    d = sys.dimension
    eye = sp.identity(d, format="csr", dtype=complex)
    lv = -1j * (sp.kron(eye, h) - sp.kron(h.T, eye))
    for c in sys.collapse:
        cs = sp.csr_matrix(c)
        cd = cs.conj().T @ cs
        lv = lv + (
            sp.kron(cs.conj(), cs)
            - 0.5 * sp.kron(eye, cd)
            - 0.5 * sp.kron(cd.T, eye)
        )
    return lv.tocsr()


def steady_state(sys: TruncatedSystem, check_tol: float = 1e-8) -> np.ndarray:
    """Density matrix with L(rho) = 0, trace 1.

    Solves the vectorized linear system with the trace constraint
    replacing one row; verifies trace, hermiticity and positive
    semidefiniteness to ``check_tol``.
    """
    if not sys.collapse or all(np.allclose(c, 0) for c in sys.collapse):
        raise ValidationError("need at least one collapse operator with positive rate")
    d = sys.dimension
    lv = liouvillian(sys).tolil()
    # trace row: indices of vec(rho) diagonal entries
    diag_idx = np.arange(d) * d + np.arange(d)
    lv[0, :] = 0.0
    lv[0, diag_idx] = 1.0
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0
    try:
        vec = spla.spsolve(lv.tocsc(), rhs)
    except RuntimeError as exc:
        raise RuntimeError(f"singular or ill-conditioned steady-state system: {exc}")
    rho = vec.reshape((d, d), order="F")
    rho = (rho + rho.conj().T) / 2.0
    tr = np.trace(rho).real
    if abs(tr - 1.0) > check_tol:
        raise RuntimeError(f"steady state trace {tr} deviates from 1")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -check_tol:
        raise RuntimeError(f"steady state not positive semidefinite: {evals.min()}")
    return rho


def photon_number(sys: TruncatedSystem, rho: np.ndarray) -> float:
    """<a'a> in the steady state."""
    dims = [sys.fock_cutoff] + list(sys.levels)
    eye = [np.eye(d, dtype=complex) for d in dims]
    a = _embed([_destroy(sys.fock_cutoff)] + eye[1:])
    return float(np.real(np.trace(a.conj().T @ a @ rho)))


def uniqueness_ratio(sys: TruncatedSystem) -> float:
    """Ratio of the two smallest singular values of the Liouvillian.

    The steady state contributes a (near-)zero singular value; a large
    ratio to the next one certifies it is unique and well separated.
    Dense SVD: use only on small systems.
    """
    sv = np.linalg.svd(liouvillian(sys).toarray(), compute_uv=False)
    sv = np.sort(sv)
    return float(sv[1] / max(sv[0], np.finfo(float).tiny))


@dataclass(frozen=True)
class CommutatorRow:
    qubit: int
    transition: int
    coefficient: float        # GHz
    expected: float           # omega_{i,i-1} - omega_c
    residual: float           # non-proportional remainder, relative


def commutator_check(
    device: DeviceSpec, fock_cutoff: int = 8, tol: float = 1e-8
) -> list[CommutatorRow]:
    """Numeric check of [I_-,i , H_0] = (omega_{i,i-1} - omega_c) I_+,i.

    H_0 is the lab-frame bare Hamiltonian (no coupling, no drive); the
    commutator is projected onto I_+,i and the scalar coefficient is
    compared with the transition detuning.  A projection residual above
    ``tol`` signals a non-proportional commutator, i.e. a modeling bug.
    """
    rows = []
    dims = [fock_cutoff] + [device.levels] * device.n_qubits
    eye = [np.eye(d, dtype=complex) for d in dims]
    a = _embed([_destroy(fock_cutoff)] + eye[1:])
    h0 = device.cavity.omega_c * (a.conj().T @ a)
    for j, q in enumerate(device.qubits):
        trans = transition_frequencies(q, device.levels)
        level_e = np.concatenate(([0.0], np.cumsum(trans)))
        ops = eye.copy()
        ops[1 + j] = np.diag(level_e).astype(complex)
        h0 = h0 + _embed(ops)
    for j, q in enumerate(device.qubits):
        trans = transition_frequencies(q, device.levels)
        for i in range(1, device.levels):
            ops = eye.copy()
            ops[1 + j] = _lower(i, device.levels)
            sig = _embed(ops)
            i_minus = a.conj().T @ sig - a @ sig.conj().T
            i_plus = a.conj().T @ sig + a @ sig.conj().T
            comm = i_minus @ h0 - h0 @ i_minus
            norm = np.vdot(i_plus, i_plus)
            coeff = np.vdot(i_plus, comm) / norm
            resid = np.linalg.norm(comm - coeff * i_plus) / np.linalg.norm(comm)
            if resid > tol:
                raise RuntimeError(
                    f"qubit {j} transition {i}: commutator not proportional to "
                    f"I_+ (residual {resid:.3e})"
                )
            rows.append(
                CommutatorRow(
                    qubit=j,
                    transition=i,
                    coefficient=float(coeff.real),
                    expected=float(trans[i - 1] - device.cavity.omega_c),
                    residual=float(resid),
                )
            )
    return rows
