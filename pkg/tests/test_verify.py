import math

import numpy as np
import pytest

from sparseq import (
    ErrorSweep,
    exp_minus_ih,
    exp_oracle,
    frobenius_error,
    gate_hamiltonian_sweep,
    string_hamiltonian_sweep,
)
from sparseq.hamiltonian import controlled_gate_hamiltonian
from sparseq.verify import engine_equivalence_deviations, random_gate, theta_grid


class TestFrobeniusError:
    def test_identical_matrices(self):
        assert frobenius_error(np.eye(3), np.eye(3)) == 0.0

    def test_zero_versus_identity(self):
        assert frobenius_error(np.zeros((2, 2)), np.eye(2)) == math.sqrt(2)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            frobenius_error(np.eye(2), np.eye(3))


class TestGateHamiltonianSweep:
    def test_control_before_target(self):
        sweep = gate_hamiltonian_sweep(4, 1, 2, "X")
        assert len(sweep.errors) == 100
        assert sweep.max_error <= 1e-12

    def test_control_after_target(self):
        assert gate_hamiltonian_sweep(4, 3, 2, "X").max_error <= 1e-12

    def test_zero_angle_grid_reconstructs_identity(self):
        sweep = gate_hamiltonian_sweep(4, 2, 3, "X", thetas=np.zeros(5))
        assert sweep.max_error <= 1e-14

    def test_other_axes(self):
        assert gate_hamiltonian_sweep(3, 1, 3, "Y").max_error <= 1e-12
        assert gate_hamiltonian_sweep(3, 3, 1, "Z").max_error <= 1e-12

    def test_all_axes_all_pairs_stay_below_ceiling(self):
        for axis in ("X", "Y", "Z"):
            for i in range(1, 5):
                for j in range(1, 5):
                    if i == j:
                        continue
                    assert gate_hamiltonian_sweep(4, i, j, axis).max_error <= 1e-12

    def test_invalid_positions_rejected(self):
        with pytest.raises(ValueError):
            gate_hamiltonian_sweep(3, 2, 2, "X")


class TestStringHamiltonianSweep:
    def test_x_strings(self):
        sweep = string_hamiltonian_sweep(4, "X")
        assert len(sweep.errors) == 100
        assert sweep.max_error <= 1e-12

    def test_single_qubit_diagonal(self):
        assert string_hamiltonian_sweep(1, "Z").max_error <= 1e-14

    def test_y_strings(self):
        assert string_hamiltonian_sweep(4, "Y").max_error <= 1e-12


class TestExpOracle:
    def test_zero_hamiltonian(self):
        assert np.array_equal(exp_oracle(np.zeros((4, 4))), np.eye(4))

    def test_projector_flips_sign(self):
        h = math.pi * np.diag([1.0, 0, 0, 0])
        np.testing.assert_allclose(exp_oracle(h), np.diag([-1, 1, 1, 1]), atol=1e-14)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            exp_oracle(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_output_is_unitary(self, rng):
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = a + a.conj().T
        u = exp_oracle(h)
        assert np.max(np.abs(u.conj().T @ u - np.eye(8))) <= 1e-11

    def test_agrees_with_rank_one_exponential(self, rng):
        # two independent exponentiation routes on 100 random gate Hamiltonians
        for _ in range(100):
            n = int(rng.integers(2, 7))
            i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
            h = controlled_gate_hamiltonian(n, int(i), int(j), random_gate(rng))
            direct = exp_minus_ih(h)
            spectral = exp_oracle(h.to_dense())
            assert frobenius_error(direct, spectral) <= 1e-11


class TestErrorSweep:
    def test_csv_layout(self):
        sweep = ErrorSweep("demo", (0.0, 0.5), (1e-16, 2e-16))
        assert sweep.to_csv() == "theta,error\n0.0,1e-16\n0.5,2e-16\n"

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ErrorSweep("demo", (0.0,), (1e-16, 2e-16))

    def test_negative_error_rejected(self):
        with pytest.raises(ValueError):
            ErrorSweep("demo", (0.0,), (-1.0,))

    def test_default_grid(self):
        grid = theta_grid()
        assert len(grid) == 100
        assert grid[0] == -math.pi and grid[-1] == math.pi


class TestEngineEquivalence:
    def test_deterministic_under_seed(self):
        a = engine_equivalence_deviations(10, max_qubits=5, seed=11)
        b = engine_equivalence_deviations(10, max_qubits=5, seed=11)
        assert a == b

    def test_deviations_are_tiny(self):
        assert max(engine_equivalence_deviations(25, max_qubits=6, seed=3)) <= 1e-11
