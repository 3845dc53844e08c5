import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlreadout import (
    ConfigError,
    HierarchyWarning,
    LogicalState,
    QubitSpec,
    ValidationError,
    coupling_ladder,
    dump_device,
    loads_device,
    logical_sigma_z,
    transition_frequencies,
)
from nlreadout.presets import TWO_QUBIT_TOML


class TestLoadDevice:
    def test_reference_config(self):
        dev = loads_device(TWO_QUBIT_TOML)
        assert dev.n_qubits == 2
        assert dev.levels == 3
        assert dev.cavity.omega_c == 5.005
        assert dev.qubits[0].omega10 == 4.297
        assert dev.qubits[0].omega21 == 4.071
        assert dev.qubits[0].g1 == 0.12
        assert dev.qubits[1].omega10 == 4.094

    def test_zero_coupling_rejected(self):
        bad = TWO_QUBIT_TOML.replace("g1_ghz = 0.12", "g1_ghz = 0.0", 1)
        with pytest.raises(ValidationError, match="g1"):
            loads_device(bad)

    def test_zero_anharmonicity_rejected(self):
        bad = TWO_QUBIT_TOML.replace("omega21_ghz = 4.071", "omega21_ghz = 4.297", 1)
        with pytest.raises(ValidationError, match="anharm"):
            loads_device(bad)

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            loads_device(TWO_QUBIT_TOML + "\nflux_bias = 3\n")
        with pytest.raises(ConfigError, match="unknown"):
            loads_device(TWO_QUBIT_TOML.replace("kappa_mhz", "kapa_mhz"))

    def test_malformed_text(self):
        with pytest.raises(ConfigError, match="malformed"):
            loads_device("[cavity\nomega")

    def test_missing_sections(self):
        with pytest.raises(ConfigError):
            loads_device("levels = 3\n")

    def test_round_trip(self):
        dev = loads_device(TWO_QUBIT_TOML)
        assert loads_device(dump_device(dev)) == dev

    @pytest.mark.filterwarnings("ignore::nlreadout.device.HierarchyWarning")
    @given(
        kappa=st.floats(0.1, 20.0),
        g1=st.floats(0.01, 0.2),
        gamma1=st.floats(0.0, 0.5),
    )
    @settings(max_examples=25)
    def test_round_trip_random(self, kappa, g1, gamma1):
        text = f"""
levels = 4
[cavity]
omega_c_ghz = 5.005
kappa_mhz = {kappa!r}
[[qubit]]
omega10_ghz = 4.297
omega21_ghz = 4.071
g1_ghz = {g1!r}
gamma1_mhz = {gamma1!r}
"""
        dev = loads_device(text)
        assert loads_device(dump_device(dev)) == dev


class TestInvariants:
    def test_resonant_transition_rejected(self):
        with pytest.raises(ValidationError, match="resonant"):
            loads_device(TWO_QUBIT_TOML.replace("omega10_ghz = 4.297", "omega10_ghz = 5.005"))

    def test_kappa_positive(self):
        with pytest.raises(ValidationError, match="kappa"):
            loads_device(TWO_QUBIT_TOML.replace("kappa_mhz = 1.0", "kappa_mhz = 0.0"))

    def test_hierarchy_violation_warns_not_raises(self):
        text = TWO_QUBIT_TOML.replace("kappa_mhz = 1.0", "kappa_mhz = 30.0")
        with pytest.warns(HierarchyWarning):
            dev = loads_device(text)
        assert dev.cavity.kappa == 30.0

    def test_reference_device_clean(self, recwarn):
        loads_device(TWO_QUBIT_TOML)
        assert not [w for w in recwarn if issubclass(w.category, HierarchyWarning)]


class TestCouplingLadder:
    def test_reference_values(self):
        np.testing.assert_allclose(
            coupling_ladder(0.12, 3), [0.12, 0.16970562748477142], rtol=1e-12
        )

    def test_two_levels(self):
        np.testing.assert_array_equal(coupling_ladder(0.07, 2), [0.07])

    def test_four_levels_third_element(self):
        assert coupling_ladder(0.12, 4)[2] == pytest.approx(0.12 * np.sqrt(3.0), rel=1e-12)
        assert coupling_ladder(0.12, 4)[2] == pytest.approx(0.2078460969, rel=1e-9)

    @given(g1=st.floats(1e-3, 1.0), m=st.integers(2, 12))
    @settings(max_examples=40)
    def test_strictly_increasing(self, g1, m):
        gs = coupling_ladder(g1, m)
        assert np.all(np.diff(gs) > 0)


class TestTransitionFrequencies:
    def test_reference_values(self):
        q = QubitSpec(4.297, 4.071, 0.12)
        np.testing.assert_allclose(transition_frequencies(q, 3), [4.297, 4.071])

    def test_constant_anharmonicity_extrapolation(self):
        q = QubitSpec(4.297, 4.071, 0.12)
        ws = transition_frequencies(q, 4)
        assert ws[2] == pytest.approx(3.845, abs=1e-12)
        steps = np.diff(transition_frequencies(q, 8))
        np.testing.assert_allclose(steps, -0.226, rtol=1e-9)

    def test_generic_anharmonicity(self):
        q = QubitSpec(6.0, 6.0 - 0.226, 0.1)
        np.testing.assert_allclose(np.diff(transition_frequencies(q, 6)), -0.226)


class TestLogicalSigmaZ:
    def test_bit0(self):
        sz, occ = logical_sigma_z(LogicalState((0,)), 3)
        np.testing.assert_array_equal(sz[0], [-1.0, 0.0])
        np.testing.assert_array_equal(occ[0], [1.0, 0.0, 0.0])

    def test_bit1(self):
        sz, occ = logical_sigma_z(LogicalState((1,)), 3)
        np.testing.assert_array_equal(sz[0], [1.0, -1.0])
        np.testing.assert_array_equal(occ[0], [0.0, 1.0, 0.0])

    def test_bit1_ten_levels(self):
        sz, _ = logical_sigma_z(LogicalState((1,)), 10)
        np.testing.assert_array_equal(sz[0], [1, -1, 0, 0, 0, 0, 0, 0, 0])

    @given(
        bits=st.lists(st.integers(0, 1), min_size=1, max_size=5),
        m=st.integers(3, 12),
    )
    @settings(max_examples=50)
    def test_sigma_z_is_occupation_difference(self, bits, m):
        state = LogicalState(tuple(bits))
        sz, occ = logical_sigma_z(state, m)
        np.testing.assert_array_equal(sz, occ[:, 1:] - occ[:, :-1])
        np.testing.assert_array_equal(occ.sum(axis=1), 1.0)

    def test_state_helpers(self):
        s = LogicalState.from_string("0110")
        assert str(s) == "0110"
        assert s.excitations == 2
        assert s.parity == "even"
        assert LogicalState.from_string("111").parity == "odd"
        with pytest.raises(ValidationError):
            LogicalState.from_string("01x")
