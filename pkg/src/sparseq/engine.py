"""O(2^n)-per-gate state-vector kernels and circuit execution.

Gates update amplitude pairs (k, k +- 2^(n-j)) in place: both new values of a
pair depend only on the pair's old values, so reading both slices before
writing them back is safe and avoids a second buffer. Controlled gates touch
only the half of the register whose control bit is 1.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass

import numpy as np

from .core import OneQubitGate

#: Construction-time and post-gate norm tolerance.
NORM_TOL = 1e-10

#: Max elements mixed per scratch buffer. Keeps the working set inside the
#: cache and avoids re-faulting large fresh temporaries on every gate.
_CHUNK = 1 << 14

_tls = threading.local()


def _scratch() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    bufs = getattr(_tls, "bufs", None)
    if bufs is None:
        bufs = tuple(np.empty(_CHUNK, dtype=complex) for _ in range(3))
        _tls.bufs = bufs
    return bufs


def _mix_pairs(a0: np.ndarray, a1: np.ndarray, u: OneQubitGate):
    """(a0, a1) <- (u11 a0 + u12 a1, u21 a0 + u22 a1), elementwise in place.

    Both new values depend only on the old pair, so each chunk is computed
    into bounded scratch before writing back. Oversized views are split
    along their largest axis.
    """
    size = a0.size
    if size > _CHUNK:
        ax = int(np.argmax(a0.shape))
        mid = a0.shape[ax] // 2
        lo = tuple(slice(None) if d != ax else slice(0, mid) for d in range(a0.ndim))
        hi = tuple(slice(None) if d != ax else slice(mid, None) for d in range(a0.ndim))
        _mix_pairs(a0[lo], a1[lo], u)
        _mix_pairs(a0[hi], a1[hi], u)
        return
    s0, s1, s2 = _scratch()
    n0 = s0[:size].reshape(a0.shape)
    n1 = s1[:size].reshape(a0.shape)
    t = s2[:size].reshape(a0.shape)
    np.multiply(u.u11, a0, out=n0)
    np.multiply(u.u12, a1, out=t)
    np.add(n0, t, out=n0)
    np.multiply(u.u21, a0, out=n1)
    np.multiply(u.u22, a1, out=t)
    np.add(n1, t, out=n1)
    a0[...] = n0
    a1[...] = n1


class StateVector:
    """2^n complex amplitudes, unit norm; qubit 1 is the most significant bit."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray | None = None):
        if n < 1:
            raise ValueError("need at least one qubit")
        dim = 1 << n
        if amps is None:
            amps = np.zeros(dim, dtype=complex)
            amps[0] = 1.0
        else:
            amps = np.array(amps, dtype=complex).reshape(-1)
            if amps.shape != (dim,):
                raise ValueError(f"expected {dim} amplitudes, got {amps.shape[0]}")
            if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
                raise ValueError("amplitudes are not normalized")
        self.n = n
        self.amps = amps

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        return cls(n)

    @classmethod
    def basis(cls, n: int, k: int) -> "StateVector":
        if not 0 <= k < (1 << n):
            raise ValueError(f"basis index {k} out of range for {n} qubits")
        amps = np.zeros(1 << n, dtype=complex)
        amps[k] = 1.0
        return cls(n, amps)

    def copy(self) -> "StateVector":
        out = StateVector.__new__(StateVector)
        out.n = self.n
        out.amps = self.amps.copy()
        return out

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def to_json(self) -> str:
        return json.dumps([[float(a.real), float(a.imag)] for a in self.amps])

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        pairs = json.loads(text)
        n = (len(pairs) - 1).bit_length()
        if len(pairs) != 1 << n:
            raise ValueError(f"amplitude count {len(pairs)} is not a power of 2")
        return cls(n, np.array([complex(re, im) for re, im in pairs]))


@dataclass(frozen=True)
class GateOp:
    """One gate: single-qubit when i is None, controlled otherwise.

    name/theta record where the matrix came from (rx/ry/rz keep their angle);
    they never affect how the gate is applied.
    """

    j: int
    u: OneQubitGate
    i: int | None = None
    name: str = "u"
    theta: float | None = None

    @property
    def is_controlled(self) -> bool:
        return self.i is not None


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence over an n-qubit register, fully bound."""

    n: int
    ops: tuple[GateOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if not 1 <= op.j <= self.n:
                raise ValueError(f"target q{op.j} out of range 1..{self.n}")
            if op.i is not None:
                if not 1 <= op.i <= self.n:
                    raise ValueError(f"control q{op.i} out of range 1..{self.n}")
                if op.i == op.j:
                    raise ValueError("control equals target")


def apply_single_qubit(state: StateVector, j: int, u: OneQubitGate) -> StateVector:
    """Apply u to qubit j in place: one pass of paired multiply-adds."""
    n = state.n
    if not 1 <= j <= n:
        raise ValueError(f"target position {j} out of range 1..{n}")
    t = state.amps.reshape(1 << (j - 1), 2, -1)
    _mix_pairs(t[:, 0, :], t[:, 1, :], u)
    assert abs(state.norm() - 1.0) <= NORM_TOL, "gate application broke normalization"
    return state


def apply_controlled(state: StateVector, i: int, j: int, u: OneQubitGate) -> StateVector:
    """Apply a controlled-u gate (control i, target j) in place.

    Amplitudes with control bit 0 are untouched; within the control-selected
    half, pairs at offset 2^(n-j) mix through u. Both qubit orderings run
    through the same slicing schedule.
    """
    n = state.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"positions ({i}, {j}) out of range 1..{n}")
    if i == j:
        raise ValueError("control equals target")
    a, b = (i, j) if i < j else (j, i)
    t = state.amps.reshape(1 << (a - 1), 2, 1 << (b - a - 1), 2, -1)
    if i < j:  # axis 1 = control, axis 3 = target
        _mix_pairs(t[:, 1, :, 0, :], t[:, 1, :, 1, :], u)
    else:  # axis 1 = target, axis 3 = control
        _mix_pairs(t[:, 0, :, 1, :], t[:, 1, :, 1, :], u)
    assert abs(state.norm() - 1.0) <= NORM_TOL, "gate application broke normalization"
    return state


def apply_op(state: StateVector, op: GateOp) -> StateVector:
    if op.i is None:
        return apply_single_qubit(state, op.j, op.u)
    return apply_controlled(state, op.i, op.j, op.u)


def run_circuit(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Apply all ops left to right, in place; fresh |0...0> when no input."""
    if state is None:
        state = StateVector.zero(circuit.n)
    if state.n != circuit.n:
        raise ValueError(f"state has {state.n} qubits, circuit {circuit.n}")
    for op in circuit.ops:
        apply_op(state, op)
    return state


def probabilities(state: StateVector) -> np.ndarray:
    return state.probabilities()


def probabilities_csv(state: StateVector) -> str:
    lines = ["index,probability"]
    lines += [f"{k},{float(p)!r}" for k, p in enumerate(state.probabilities())]
    return "\n".join(lines) + "\n"
