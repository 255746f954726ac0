import math

import numpy as np
import pytest

from sparseq import (
    Circuit,
    GateOp,
    OneQubitGate,
    StateVector,
    apply_controlled,
    apply_single_qubit,
    probabilities,
    run_circuit,
)
from sparseq.engine import probabilities_csv
from sparseq.gate_matrix import dense_gate
from sparseq.verify import dense_apply_oracle, random_gate

X = OneQubitGate(np.array([[0, 1], [1, 0]]))
H = OneQubitGate(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
EYE = OneQubitGate(np.eye(2))


def random_state(rng, n):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


class TestStateVector:
    def test_default_is_all_zero_basis_state(self):
        s = StateVector.zero(3)
        assert s.amps[0] == 1.0 and np.count_nonzero(s.amps) == 1

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            StateVector(2, np.array([1.0, 0.0]))

    def test_json_round_trip(self, rng):
        s = random_state(rng, 3)
        back = StateVector.from_json(s.to_json())
        assert back.n == 3
        np.testing.assert_allclose(back.amps, s.amps, atol=0)

    def test_from_json_rejects_bad_length(self):
        with pytest.raises(ValueError):
            StateVector.from_json("[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]")


class TestApplySingleQubit:
    def test_first_column_lands_on_zero_state(self, generic_gate):
        s = apply_single_qubit(StateVector.zero(1), 1, generic_gate)
        assert s.amps[0] == generic_gate.u11
        assert s.amps[1] == generic_gate.u21

    def test_identity_leaves_state_bitwise_unchanged(self, rng):
        s = random_state(rng, 4)
        before = s.amps.copy()
        apply_single_qubit(s, 2, EYE)
        assert np.array_equal(s.amps, before)

    def test_matches_dense_oracle(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 8))
            j = int(rng.integers(1, n + 1))
            u = random_gate(rng)
            s = random_state(rng, n)
            want = dense_gate(n, j, u) @ s.amps
            apply_single_qubit(s, j, u)
            assert np.max(np.abs(s.amps - want)) <= 1e-13

    def test_position_out_of_range(self):
        with pytest.raises(ValueError):
            apply_single_qubit(StateVector.zero(2), 3, X)


class TestApplyControlled:
    def test_cnot_flips_target_when_control_set(self):
        s = StateVector.basis(2, 2)  # |10>
        apply_controlled(s, 1, 2, X)
        assert np.array_equal(s.amps, StateVector.basis(2, 3).amps)

    def test_adjacent_pair_coefficients_exact(self, rng, generic_gate):
        # control 2, target 3 of 5: index 8 mixes with 12 through rows of u
        u = generic_gate
        s = random_state(rng, 5)
        before = s.amps.copy()
        apply_controlled(s, 2, 3, u)
        np.testing.assert_array_equal(
            s.amps[8:12], u.u11 * before[8:12] + u.u12 * before[12:16]
        )
        np.testing.assert_array_equal(
            s.amps[12:16], u.u21 * before[8:12] + u.u22 * before[12:16]
        )

    def test_gap_pair_coefficients_exact(self, rng, generic_gate):
        # control 2, target 4 of 5: index 10 pairs with 8 at offset 2
        u = generic_gate
        s = random_state(rng, 5)
        before = s.amps.copy()
        apply_controlled(s, 2, 4, u)
        assert s.amps[10] == (u.u21 * before[[8]] + u.u22 * before[[10]])[0]
        assert s.amps[8] == (u.u11 * before[[8]] + u.u12 * before[[10]])[0]

    def test_control_zero_amplitudes_untouched_bitwise(self, rng):
        for i, j in [(2, 5), (5, 2), (1, 3), (4, 1)]:
            s = random_state(rng, 5)
            before = s.amps.copy()
            apply_controlled(s, i, j, random_gate(rng))
            idle = [k for k in range(32) if not (k >> (5 - i)) & 1]
            assert np.array_equal(s.amps[idle], before[idle])

    def test_matches_dense_oracle_both_orderings(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 8))
            i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
            u = random_gate(rng)
            s = random_state(rng, n)
            want = dense_gate(n, int(j), u, int(i)) @ s.amps
            apply_controlled(s, int(i), int(j), u)
            assert np.max(np.abs(s.amps - want)) <= 1e-13

    def test_equal_positions_rejected(self):
        with pytest.raises(ValueError):
            apply_controlled(StateVector.zero(2), 1, 1, X)


class TestRunCircuit:
    def test_empty_circuit_is_identity(self, rng):
        s = random_state(rng, 3)
        before = s.amps.copy()
        run_circuit(Circuit(3, ()), s)
        assert np.array_equal(s.amps, before)

    def test_cnot_entangles_superposition(self):
        s = StateVector(2, np.array([1, 0, 1, 0]) / math.sqrt(2))
        run_circuit(Circuit(2, (GateOp(2, X, i=1),)), s)
        want = np.array([1, 0, 0, 1]) / math.sqrt(2)
        np.testing.assert_allclose(s.amps, want, atol=1e-15)

    def test_bell_pair_from_scratch(self):
        out = run_circuit(Circuit(2, (GateOp(1, H), GateOp(2, X, i=1))))
        np.testing.assert_allclose(
            out.probabilities(), [0.5, 0, 0, 0.5], atol=1e-15
        )

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            run_circuit(Circuit(2, ()), StateVector.zero(3))

    def test_matches_dense_chain(self, rng):
        from sparseq.verify import engine_equivalence_deviations

        deviations = engine_equivalence_deviations(50, max_qubits=8, seed=7)
        assert max(deviations) <= 1e-11

    def test_norm_drift_over_long_circuit(self, rng):
        s = random_state(rng, 5)
        for _ in range(100):
            i, j = rng.choice(np.arange(1, 6), size=2, replace=False)
            apply_controlled(s, int(i), int(j), random_gate(rng))
            apply_single_qubit(s, int(rng.integers(1, 6)), random_gate(rng))
            assert abs(s.norm() - 1.0) <= 1e-12  # per-gate drift stays tiny
        assert abs(s.norm() - 1.0) <= 1e-10


class TestCircuitValidation:
    def test_target_out_of_range(self):
        with pytest.raises(ValueError):
            Circuit(2, (GateOp(3, X),))

    def test_control_out_of_range(self):
        with pytest.raises(ValueError):
            Circuit(2, (GateOp(1, X, i=5),))

    def test_control_equals_target(self):
        with pytest.raises(ValueError):
            Circuit(2, (GateOp(2, X, i=2),))


class TestProbabilities:
    def test_basis_state(self):
        p = probabilities(StateVector.zero(3))
        assert p[0] == 1.0 and p.sum() == 1.0

    def test_uniform_superposition(self):
        n = 3
        s = StateVector(n, np.full(1 << n, 1 / math.sqrt(1 << n), dtype=complex))
        np.testing.assert_allclose(probabilities(s), np.full(1 << n, 1 / (1 << n)))

    def test_sums_to_one(self, rng):
        s = random_state(rng, 6)
        assert abs(probabilities(s).sum() - 1.0) <= 1e-10

    def test_csv_format(self):
        text = probabilities_csv(StateVector.zero(1))
        assert text == "index,probability\n0,1.0\n1,0.0\n"


class TestDenseApplyOracle:
    def test_identity(self, rng):
        s = random_state(rng, 3)
        out = dense_apply_oracle(np.eye(8), s)
        np.testing.assert_allclose(out.amps, s.amps, atol=0)

    def test_cnot_dense(self):
        out = dense_apply_oracle(dense_gate(2, 2, X, 1), StateVector.basis(2, 2))
        assert np.array_equal(out.amps, StateVector.basis(2, 3).amps)

    def test_shape_mismatch_rejected(self, rng):
        with pytest.raises(ValueError):
            dense_apply_oracle(np.eye(4), random_state(rng, 3))
