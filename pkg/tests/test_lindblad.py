import numpy as np
import pytest

from nlreadout import (
    DeviceSpec,
    DriveSpec,
    LogicalState,
    ValidationError,
    detunings_and_lambdas,
    solve_branch,
)
from nlreadout.lindblad import (
    build_system,
    commutator_check,
    liouvillian,
    photon_number,
    steady_state,
    uniqueness_ratio,
)

GROUND = LogicalState((0,))


@pytest.fixture(scope="module")
def single(fig2):
    return DeviceSpec(cavity=fig2.cavity, qubits=fig2.qubits[:1], levels=3)


class TestBuildSystem:
    def test_dimension(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(5.0, 0.0), fock_cutoff=40)
        assert sys_.dimension == 120

    def test_hermitian(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(7.0, -3.0), fock_cutoff=30)
        assert sys_.hermiticity_defect() < 1e-12

    def test_diagonal_when_undriven_uncoupled(self, single):
        # zero drive: only the ladder terms; couplings live off-diagonal
        sys_ = build_system(single, GROUND, DriveSpec(0.0, 0.0), fock_cutoff=6)
        h = sys_.hamiltonian.copy()
        np.fill_diagonal(h, 0.0)
        offdiag = np.max(np.abs(h))
        assert offdiag > 0  # JC coupling present
        params = detunings_and_lambdas(single)
        g_max = 1.0 * np.max(params.g)
        assert offdiag == pytest.approx(g_max * np.sqrt(5), rel=1e-9)

    def test_size_limits(self, single, fig2):
        with pytest.raises(ValidationError):
            build_system(single, GROUND, DriveSpec(1.0, 0.0), fock_cutoff=3)
        with pytest.raises(ValidationError):
            build_system(single, GROUND, DriveSpec(1.0, 0.0), fock_cutoff=200)
        with pytest.raises(ValidationError):
            build_system(fig2, LogicalState((0, 0)), DriveSpec(1.0, 0.0), fock_cutoff=60)


class TestSteadyState:
    def test_trace_conservation_of_generator(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(4.0, 0.0), fock_cutoff=10)
        lv = liouvillian(sys_)
        d = sys_.dimension
        trace_vec = np.zeros(d * d)
        trace_vec[np.arange(d) * d + np.arange(d)] = 1.0
        assert np.max(np.abs(trace_vec @ lv)) < 1e-10

    @pytest.mark.filterwarnings("ignore::nlreadout.device.HierarchyWarning")
    def test_undriven_uncoupled_settles_to_vacuum_ground(self, fig2):
        # g -> 0 limit realized with a tiny coupling: vacuum x ground
        dev = DeviceSpec(
            cavity=fig2.cavity,
            qubits=(type(fig2.qubits[0])(4.297, 4.071, 1e-6),),
            levels=3,
        )
        sys_ = build_system(dev, GROUND, DriveSpec(0.0, 0.0), fock_cutoff=6)
        rho = steady_state(sys_)
        assert rho[0, 0] == pytest.approx(1.0, abs=1e-8)
        assert photon_number(sys_, rho) == pytest.approx(0.0, abs=1e-8)

    def test_rho_properties(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(8.0, 0.0), fock_cutoff=20)
        rho = steady_state(sys_)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-10

    def test_uniqueness(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(2.0, 0.0), fock_cutoff=6)
        assert uniqueness_ratio(sys_) > 1e6

    def test_no_collapse_rejected(self, single):
        sys_ = build_system(single, GROUND, DriveSpec(2.0, 0.0), fock_cutoff=6)
        bare = type(sys_)(
            fock_cutoff=sys_.fock_cutoff,
            levels=sys_.levels,
            hamiltonian=sys_.hamiltonian,
            collapse=(),
            state=sys_.state,
        )
        with pytest.raises(ValidationError):
            steady_state(bare)


class TestOracleComparison:
    @pytest.mark.slow
    def test_low_branch_matches_lindblad(self, single):
        """Semiclassical low branch vs brute-force steady state, five drive
        strengths spanning photon numbers up to ~0.5."""
        params = detunings_and_lambdas(single)
        for eps in np.linspace(2.0, 14.0, 5):
            drive = DriveSpec(float(eps), 0.0)
            semi = solve_branch(drive, GROUND, params, single.cavity.kappa, 0.0)
            sys_ = build_system(single, GROUND, drive, fock_cutoff=24)
            n_quantum = photon_number(sys_, steady_state(sys_))
            assert n_quantum <= 0.6
            assert abs(semi.n - n_quantum) / n_quantum < 0.10

    @pytest.mark.slow
    def test_cutoff_robustness(self, single):
        drive = DriveSpec(14.0, 0.0)  # n ~ 0.5 at the top of the scan
        n_small = photon_number(
            build_system(single, GROUND, drive, 24),
            steady_state(build_system(single, GROUND, drive, 24)),
        )
        n_large = photon_number(
            build_system(single, GROUND, drive, 48),
            steady_state(build_system(single, GROUND, drive, 48)),
        )
        assert abs(n_large - n_small) / n_large < 1e-3


class TestCommutator:
    def test_coefficients_are_transition_detunings(self, fig2):
        rows = commutator_check(fig2, fock_cutoff=8)
        assert len(rows) == 4
        by_key = {(r.qubit, r.transition): r for r in rows}
        assert by_key[(0, 1)].coefficient == pytest.approx(-0.708, abs=1e-9)
        assert by_key[(0, 2)].coefficient == pytest.approx(-0.934, abs=1e-9)
        assert by_key[(1, 1)].coefficient == pytest.approx(-0.911, abs=1e-9)
        assert by_key[(1, 2)].coefficient == pytest.approx(-1.137, abs=1e-9)
        for r in rows:
            assert abs(r.coefficient - r.expected) / abs(r.expected) < 1e-12
            assert r.residual < 1e-12

    def test_second_transition_uses_omega21_not_omega20(self, fig2):
        """The i = 2 coefficient equals omega_21 - omega_c; the two-photon
        detuning omega_20 - omega_c would be -5.234 GHz for this device."""
        rows = commutator_check(fig2, fock_cutoff=8)
        r = next(r for r in rows if (r.qubit, r.transition) == (0, 2))
        omega20_detuning = 4.297 + 4.071 - 2 * 5.005
        assert r.coefficient != pytest.approx(omega20_detuning, abs=0.1)
        assert r.coefficient == pytest.approx(4.071 - 5.005, abs=1e-9)

    @pytest.mark.filterwarnings("ignore::nlreadout.device.HierarchyWarning")
    def test_independent_of_coupling(self, fig2):
        stronger = DeviceSpec(
            cavity=fig2.cavity,
            qubits=tuple(
                type(q)(q.omega10, q.omega21, q.g1 * 3.0) for q in fig2.qubits
            ),
            levels=3,
        )
        a = commutator_check(fig2, fock_cutoff=6)
        b = commutator_check(stronger, fock_cutoff=6)
        for ra, rb in zip(a, b):
            assert ra.coefficient == pytest.approx(rb.coefficient, rel=1e-12)
