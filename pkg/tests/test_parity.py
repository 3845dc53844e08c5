import numpy as np
import pytest

from nlreadout import (
    DriveSpec,
    LogicalState,
    PlanningError,
    ValidationError,
    bare_chi_table,
    classify,
    parity_plan,
    solve_branch,
    stability_border,
    two_qubit_parity_point,
)
from nlreadout.parity import all_states
from nlreadout.presets import four_qubit_device, two_qubit_device
from helpers import decoupled_params

S11 = LogicalState((1, 1))
S10 = LogicalState((1, 0))


class TestBareChiTable:
    def test_reference_values(self, fig2, reference_chi_bare):
        table = bare_chi_table(fig2)
        for s, v in table.items():
            assert v == pytest.approx(reference_chi_bare[str(s)], abs=1e-9)
        rounded = {str(s): round(v, 2) for s, v in table.items()}
        assert rounded == {"00": 36.15, "01": 29.86, "10": 26.3, "11": 20.02}

    def test_identical_qubits_degenerate_by_excitation_count(self, fig4):
        table = bare_chi_table(fig4)
        by_class = {}
        for s, v in table.items():
            by_class.setdefault(s.excitations, set()).add(round(v, 9))
        assert all(len(vals) == 1 for vals in by_class.values())
        # shifts decrease with the excitation count
        chis = [by_class[m].pop() for m in sorted(by_class)]
        assert all(a > b for a, b in zip(chis, chis[1:]))


class TestStabilityBorder:
    def test_two_qubit_borders_near_bare_shifts(self, fig2, fig2_params):
        b11 = stability_border(S11, fig2, fig2_params)
        assert b11.delta_c == pytest.approx(-20.87, abs=0.05)
        assert b11.proxy == pytest.approx(-20.019, abs=1e-3)
        assert abs(b11.delta_c - b11.proxy) < 2.0
        b10 = stability_border(S10, fig2, fig2_params)
        assert b10.delta_c == pytest.approx(-26.6, abs=0.1)
        assert abs(b10.delta_c - b10.proxy) < 2.0

    def test_proxy_accuracy_two_qubit_device(self, fig2, fig2_params):
        for s in all_states(2):
            b = stability_border(s, fig2, fig2_params)
            assert abs(b.delta_c - b.proxy) <= 2.0

    @pytest.mark.xfail(
        reason="the bare-shift proxy drifts by ~1.2 MHz per excited qubit "
        "(occupation correction in the quartic pull); for the four-qubit "
        "device the 3- and 4-excitation classes miss the 2 MHz bound",
        strict=True,
    )
    def test_proxy_accuracy_four_qubit_device(self, fig4, fig4_params):
        for s in all_states(4):
            b = stability_border(s, fig4, fig4_params)
            assert abs(b.delta_c - b.proxy) <= 2.0

    def test_decoupled_device_has_no_border(self):
        params = decoupled_params(n_qubits=1)
        dev = two_qubit_device()
        with pytest.raises(PlanningError, match="no bifurcation border"):
            stability_border(LogicalState((0,)), dev, params)


class TestTwoQubitParityPoint:
    def test_reference_operating_point(self, fig2):
        pt = two_qubit_parity_point(fig2)
        assert pt.delta_c_opt == pytest.approx(-23.161, abs=2e-3)
        assert pt.omega_d_opt == pytest.approx(5.005 + 23.161e-3, abs=1e-5)
        lo, hi = pt.epsilon_window
        assert 0 < lo < hi
        assert lo == pytest.approx(5.71, abs=0.05)
        assert hi == pytest.approx(13.77, abs=0.05)
        assert 5.0 < pt.border_width < 8.0

    def test_drive_between_pulled_resonances(self, fig2):
        """omega_c + chi_11 < omega_d < omega_c + chi_10."""
        pt = two_qubit_parity_point(fig2)
        table = bare_chi_table(fig2)
        lo = 5.005 + 1e-3 * table[S11]
        hi = 5.005 + 1e-3 * table[S10]
        assert lo < pt.omega_d_opt < hi

    def test_identical_qubits_still_plan(self):
        dev = two_qubit_device()
        q = dev.qubits[0]
        twin = type(dev)(cavity=dev.cavity, qubits=(q, q), levels=3)
        pt = two_qubit_parity_point(twin)
        lo, hi = pt.epsilon_window
        assert lo < hi

    @pytest.mark.filterwarnings("ignore::nlreadout.device.HierarchyWarning")
    def test_dissimilar_qubits_rejected(self):
        """One qubit below and one above the cavity scrambles the border
        ordering: no sound window exists."""
        from nlreadout import CavitySpec, DeviceSpec, QubitSpec

        dev = DeviceSpec(
            cavity=CavitySpec(5.005, 1.0),
            qubits=(
                QubitSpec(4.297, 4.071, 0.12),
                QubitSpec(5.7, 5.474, 0.12),
            ),
        )
        with pytest.raises(PlanningError):
            two_qubit_parity_point(dev)


class TestParityPlan:
    def test_two_qubit_plan_reduces_to_parity_point(self, fig2):
        plan = parity_plan(fig2)
        pt = two_qubit_parity_point(fig2)
        assert len(plan.drives) == 1
        assert plan.drives[0].delta_c == pytest.approx(pt.delta_c_opt, abs=1e-9)
        assert plan.epsilon_window == pytest.approx(pt.epsilon_window)

    def test_four_qubit_plan_two_tones(self, fig4):
        plan = parity_plan(fig4)
        assert len(plan.drives) == 2
        table = bare_chi_table(fig4)
        by_class = {}
        for s, v in table.items():
            by_class.setdefault(s.excitations, v)
        # tone 1 between the borders of the 3- and 4-excitation classes,
        # tone 2 between the 1- and 2-excitation classes
        d1, d2 = plan.drives
        assert -by_class[3] < d1.delta_c < -by_class[4]
        assert -by_class[1] < d2.delta_c < -by_class[2]
        assert d1.bright_class == 3 and d2.bright_class == 1

    def test_all_outcomes_correct(self, fig2, fig4):
        for dev in (fig2, fig4):
            plan = parity_plan(dev)
            for s, outcome in plan.overall.items():
                assert outcome == s.parity

    def test_three_qubit_plan_covers_all_excited(self):
        """Odd qubit counts need one extra tone: the all-excited state has
        no even class above it, yet must ring up somewhere."""
        dev = four_qubit_device()
        three = type(dev)(cavity=dev.cavity, qubits=dev.qubits[:3], levels=dev.levels)
        plan = parity_plan(three)
        assert len(plan.drives) == 2
        assert plan.overall[LogicalState((1, 1, 1))] == "odd"
        for s, outcome in plan.overall.items():
            assert outcome == s.parity

    def test_simulated_outcomes_match_plan(self, fig2, fig2_params):
        """End-to-end soundness at the planned operating point: every odd
        state rings up past every even state."""
        plan = parity_plan(fig2)
        lo, hi = plan.epsilon_window
        eps = float(np.sqrt(lo * hi))
        photon = {}
        for s in all_states(2):
            grid = np.linspace(min(1.0, eps / 10), eps, 120)
            seed = 0.0
            for e in grid:
                seed = solve_branch(
                    DriveSpec(float(e), plan.drives[0].delta_c),
                    s,
                    fig2_params,
                    fig2.cavity.kappa,
                    seed,
                ).n
            photon[s] = seed
        odd_min = min(v for s, v in photon.items() if s.parity == "odd")
        even_max = max(v for s, v in photon.items() if s.parity == "even")
        assert odd_min > even_max


class TestClassify:
    def test_truth_table(self):
        assert classify([False, False]) == "even"
        assert classify([True, False]) == "odd"
        assert classify([False, True]) == "odd"
        assert classify([True, True]) == "odd"
        assert classify([False]) == "even"

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            classify([])
