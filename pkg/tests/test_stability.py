import numpy as np
import pytest

from nlreadout import (
    LogicalState,
    bare_chi,
    bifurcation,
    fluctuation_matrix,
    h_function,
    stability_params,
)
from nlreadout.stability import BifurcationReport
from helpers import decoupled_params

S00 = LogicalState((0, 0))
S01 = LogicalState((0, 1))
S10 = LogicalState((1, 0))
S11 = LogicalState((1, 1))
ALL = (S00, S01, S10, S11)


class TestHFunction:
    def test_decoupled_is_delta_c(self):
        params = decoupled_params()
        for n in (0.0, 1.0, 100.0):
            assert h_function(n, LogicalState((0,)), params, -7.5) == -7.5

    def test_ground_state_zero_photons_equals_quartic_pull(self, fig2_params):
        """At n = 0 in |00> all occupation corrections vanish, so h(0) is
        the bare shift itself (the lambda^4 terms carry N_i = 0)."""
        h0 = h_function(0.0, S00, fig2_params, 0.0)
        assert h0 == pytest.approx(1e3 * bare_chi(S00, fig2_params), rel=1e-12)

    def test_affine_in_n_with_slope_chi_nl(self, fig2_params):
        for s in ALL:
            dw, cnl = stability_params(s, fig2_params, -5.0)
            h_at = lambda n: h_function(n, s, fig2_params, -5.0)
            assert h_at(0.0) == pytest.approx(dw, rel=1e-12)
            slope = (h_at(7.0) - h_at(3.0)) / 4.0
            assert slope == pytest.approx(cnl, rel=1e-10)
            # quadratic residual vanishes: h is exactly affine
            assert h_at(5.0) == pytest.approx((h_at(3.0) + h_at(7.0)) / 2, rel=1e-12)


class TestStabilityParams:
    def test_decoupled(self):
        params = decoupled_params()
        assert stability_params(LogicalState((0,)), params, 3.25) == (3.25, 0.0)

    def test_ground_state_pull_positive_tens_of_mhz(self, fig2_params):
        dw, cnl = stability_params(S00, fig2_params, 0.0)
        assert dw == pytest.approx(36.146, abs=1e-3)
        assert cnl == pytest.approx(-1.7171, abs=1e-4)

    def test_bifurcation_sign_condition_all_states(self, fig2_params):
        """chi_nl * delta_omega < 0 for every logical state at delta_c = 0:
        all four states jump on resonance sweeps."""
        for s in ALL:
            dw, cnl = stability_params(s, fig2_params, 0.0)
            assert dw > 0 and cnl < 0


class TestBifurcation:
    def test_existence_and_window(self, fig2_params):
        for s in ALL:
            rep = bifurcation(s, fig2_params, 1.0, 0.0)
            assert rep.exists
            assert 0 < rep.n1 <= rep.n2
            assert 0 < rep.epsilon1 <= rep.epsilon2

    def test_boundary_excluded(self, fig2_params):
        dw, _ = stability_params(S00, fig2_params, 0.0)
        kappa_boundary = dw * 2.0 / np.sqrt(3.0)
        rep = bifurcation(S00, fig2_params, kappa_boundary, 0.0)
        assert not rep.exists
        assert rep.n1 is None and rep.epsilon2 is None

    def test_lossy_cavity_never_bifurcates(self, fig2_params):
        rep = bifurcation(S00, fig2_params, 60.0, 0.0)
        assert not rep.exists

    def test_wrong_sign_region_never_bifurcates(self, fig2_params):
        # far negative detuning flips delta_omega: no instability
        rep = bifurcation(S11, fig2_params, 1.0, -60.0)
        assert not rep.exists

    def test_folds_are_roots_of_the_determinant(self, fig2_params):
        """Both critical photon numbers satisfy Det A = 0 when substituted
        into a direct evaluation of the fluctuation matrix."""
        for s in ALL:
            for dc in (0.0, -10.0, -20.0):
                rep = bifurcation(s, fig2_params, 1.0, dc)
                if not rep.exists:
                    continue
                scale = rep.delta_omega**2 + 0.25
                for nc in (rep.n1, rep.n2):
                    det = np.linalg.det(fluctuation_matrix(nc, s, fig2_params, 1.0, dc))
                    assert abs(det) / scale < 1e-8

    def test_trace_is_kappa(self, fig2_params):
        for n in (0.5, 5.0, 50.0):
            a = fluctuation_matrix(n, S00, fig2_params, 1.3, 0.0)
            assert np.trace(a) == pytest.approx(1.3, rel=1e-12)

    def test_epsilon2_continuous_up_to_border(self, fig2_params):
        """epsilon_2(delta_c) has no jumps while the bifurcation exists."""
        grid = np.linspace(-23.0, 5.0, 400)
        eps = []
        for dc in grid:
            rep = bifurcation(S11, fig2_params, 1.0, dc)
            eps.append(rep.epsilon2 if rep.exists else np.nan)
        eps = np.array(eps)
        live = np.isfinite(eps)
        assert live.any() and (~live).any()
        rel_steps = np.abs(np.diff(eps[live])) / eps[live][:-1]
        assert rel_steps.max() < 0.08

    def test_low_branch_ends_at_smaller_fold(self, fig2_params):
        """epsilon_2 (the up-sweep critical drive) belongs to the smaller
        fold photon number: check against a direct scan of
        eps(n) = sqrt(n (kappa^2/4 + h^2)) around the folds."""
        rep = bifurcation(S00, fig2_params, 1.0, 0.0)
        dw, cnl = stability_params(S00, fig2_params, 0.0)
        ns = np.linspace(1e-3, 2 * rep.n2, 40000)
        eps = np.sqrt(ns * (0.25 + (dw + cnl * ns) ** 2))
        k1 = np.argmin(np.abs(ns - rep.n1))
        k2 = np.argmin(np.abs(ns - rep.n2))
        # local max at n1, local min at n2
        assert eps[k1] >= eps[max(k1 - 50, 0)] and eps[k1] >= eps[k1 + 50]
        assert eps[k2] <= eps[k2 - 50] and eps[k2] <= eps[k2 + 50]
        assert rep.epsilon2 == pytest.approx(eps[k1], rel=1e-6)
        assert rep.epsilon1 == pytest.approx(eps[k2], rel=1e-4)


class TestReport:
    def test_report_is_value_not_error(self, fig2_params):
        rep = bifurcation(S00, fig2_params, 100.0, 0.0)
        assert isinstance(rep, BifurcationReport)
        assert rep.exists is False
