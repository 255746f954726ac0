"""Dense oracles and error-sweep harness.

Everything here recomputes results along an independent route: Kronecker
products instead of sparse assembly, full Hermitian eigendecomposition
instead of the rank-1 exponential, dense matrix-vector chains instead of the
pair-update kernels. Sweeps record Frobenius-norm errors over a theta grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import OneQubitGate, eigenpairs_2x2, rotation_gate
from .engine import Circuit, GateOp, StateVector, run_circuit
from .gate_matrix import (
    ControlledGateSpec,
    controlled_sparse,
    dense_gate,
    kron_chain,
)
from .hamiltonian import (
    controlled_gate_hamiltonian,
    embedded_gate_hamiltonian,
    exp_minus_ih,
)

#: Default verification tolerance; observed errors sit near 1e-15.
DEFAULT_TOLERANCE = 1e-12

#: Default number of theta samples per sweep.
GRID_POINTS = 100


def frobenius_error(a: np.ndarray, b: np.ndarray) -> float:
    """sqrt(sum |a - b|^2) over all entries."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def theta_grid(points: int = GRID_POINTS) -> np.ndarray:
    return np.linspace(-math.pi, math.pi, points)


@dataclass(frozen=True)
class ErrorSweep:
    """Frobenius errors of one gate family over a theta grid."""

    label: str
    thetas: tuple[float, ...]
    errors: tuple[float, ...]

    def __post_init__(self):
        if len(self.thetas) != len(self.errors):
            raise ValueError("theta and error lists differ in length")
        if any(e < 0 for e in self.errors):
            raise ValueError("errors must be nonnegative")

    @property
    def max_error(self) -> float:
        return max(self.errors)

    def to_csv(self) -> str:
        lines = ["theta,error"]
        lines += [f"{t!r},{e!r}" for t, e in zip(self.thetas, self.errors)]
        return "\n".join(lines) + "\n"


def gate_hamiltonian_sweep(
    n: int, i: int, j: int, axis: str = "X", thetas: np.ndarray | None = None
) -> ErrorSweep:
    """Per theta: build the controlled rotation, extract H, exponentiate,
    and record ||C - e^{-iH}||_F."""
    thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
    errors = []
    for theta in thetas:
        u = rotation_gate(axis, float(theta))
        dense = controlled_sparse(ControlledGateSpec(n, i, j, u)).to_dense()
        h = controlled_gate_hamiltonian(n, i, j, u)
        errors.append(frobenius_error(dense, exp_minus_ih(h)))
    return ErrorSweep(
        f"cr{axis.lower()}_n{n}_i{i}_j{j}", tuple(float(t) for t in thetas), tuple(errors)
    )


def string_hamiltonian_sweep(
    n: int, axis: str = "X", thetas: np.ndarray | None = None
) -> ErrorSweep:
    """Per theta: the n-fold tensor power of R_axis(theta) against the
    product of the per-qubit Hamiltonian exponentials."""
    thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
    errors = []
    for theta in thetas:
        u = rotation_gate(axis, float(theta))
        target = kron_chain([np.asarray(u.matrix)] * n)
        pairs = eigenpairs_2x2(u)
        product = np.eye(1 << n, dtype=complex)
        for j in range(1, n + 1):
            product = product @ exp_minus_ih(embedded_gate_hamiltonian(n, j, pairs))
        errors.append(frobenius_error(target, product))
    return ErrorSweep(
        f"strings_{axis.lower()}_n{n}", tuple(float(t) for t in thetas), tuple(errors)
    )


def dense_apply_oracle(m: np.ndarray, state: StateVector) -> StateVector:
    """Exact dense matrix-vector application; returns a fresh state."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (len(state.amps), len(state.amps)):
        raise ValueError(f"matrix shape {m.shape} does not match state dim")
    return StateVector(state.n, m @ state.amps)


def exp_oracle(h_dense: np.ndarray, herm_tol: float = 1e-10) -> np.ndarray:
    """e^{-iH} through a full Hermitian eigendecomposition."""
    h_dense = np.asarray(h_dense, dtype=complex)
    if float(np.max(np.abs(h_dense - h_dense.conj().T))) > herm_tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    eigvals, eigvecs = np.linalg.eigh(h_dense)
    return (eigvecs * np.exp(-1j * eigvals)) @ eigvecs.conj().T


def dense_circuit_unitary(circuit: Circuit, max_qubits: int = 12) -> np.ndarray:
    """Dense product of per-gate Kronecker oracles, rightmost op first."""
    out = np.eye(1 << circuit.n, dtype=complex)
    for op in circuit.ops:
        out = dense_gate(circuit.n, op.j, op.u, op.i, max_qubits) @ out
    return out


def random_gate(rng: np.random.Generator) -> OneQubitGate:
    """Z-Y-Z Euler product with uniform angles and a uniform global phase."""
    a, b, c, d = rng.uniform(-math.pi, math.pi, size=4)
    m = (
        rotation_gate("Z", a).matrix
        @ rotation_gate("Y", b).matrix
        @ rotation_gate("Z", c).matrix
    )
    return OneQubitGate(np.exp(1j * d) * m)


def random_circuit(
    rng: np.random.Generator, n: int, gates: int, controlled_fraction: float = 0.5
) -> Circuit:
    """Random mix of single-qubit and controlled gates on random positions."""
    ops = []
    for _ in range(gates):
        u = random_gate(rng)
        if n >= 2 and rng.random() < controlled_fraction:
            i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
            ops.append(GateOp(int(j), u, i=int(i)))
        else:
            ops.append(GateOp(int(rng.integers(1, n + 1)), u))
    return Circuit(n, tuple(ops))


def engine_equivalence_deviations(
    circuits: int, max_qubits: int = 8, max_gates: int = 20, seed: int = 42
) -> list[float]:
    """Max amplitude deviation between the pair-update engine and the dense
    matrix-vector chain, per random circuit."""
    rng = np.random.default_rng(seed)
    deviations = []
    for _ in range(circuits):
        n = int(rng.integers(2, max_qubits + 1))
        k = int(rng.integers(1, max_gates + 1))
        circuit = random_circuit(rng, n, k)
        state = StateVector.zero(n)
        reference = state.copy()
        for op in circuit.ops:
            reference = dense_apply_oracle(dense_gate(n, op.j, op.u, op.i), reference)
        result = run_circuit(circuit, state)
        deviations.append(float(np.max(np.abs(result.amps - reference.amps))))
    return deviations
