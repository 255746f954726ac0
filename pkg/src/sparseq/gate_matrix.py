"""Explicit 2-sparse unitaries of order 2^n for controlled and embedded
single-qubit gates, plus dense Kronecker-product reference builders.

A controlled gate on control i / target j acts as the identity on every basis
state whose qubit i is 0 and couples each remaining index k only with its
target partner k +- 2^(n-j), so every row and column carries at most two
nonzeros. The sparse builders write that rule down directly; the dense
builders assemble the same operators from Kronecker products and exist to
cross-check the sparse path.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import OneQubitGate

#: Dense constructions are O(4^n); refuse beyond this register size.
DENSE_MAX_QUBITS = 12

_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


@dataclass(frozen=True)
class ControlledGateSpec:
    """Controlled one-qubit gate: control qubit i, target qubit j, 1-based."""

    n: int
    i: int
    j: int
    u: OneQubitGate

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("controlled gates need at least 2 qubits")
        if not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise ValueError(f"positions ({self.i}, {self.j}) out of range 1..{self.n}")
        if self.i == self.j:
            raise ValueError("control equals target")


class SparseUnitary:
    """Row-major 2-sparse matrix with fixed two-slot rows.

    cols[k] holds the (strictly increasing) column indices of row k, -1
    marking an absent slot; vals[k] the matching entries. Structural zeros
    stay stored, so the pattern depends only on the gate placement, never on
    the particular unitary.
    """

    __slots__ = ("dim", "cols", "vals")

    def __init__(self, dim: int, cols: np.ndarray, vals: np.ndarray):
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=complex)
        if cols.shape != (dim, 2) or vals.shape != (dim, 2):
            raise ValueError(f"expected ({dim}, 2) col/val arrays")
        present = cols >= 0
        if np.any(cols >= dim):
            raise ValueError("column index out of range")
        if np.any(~present[:, 0]):
            raise ValueError("every row needs at least one entry")
        both = present[:, 1]
        if np.any(cols[both, 0] >= cols[both, 1]):
            raise ValueError("columns within a row must be strictly increasing")
        if np.any(vals[~present] != 0):
            raise ValueError("absent slots must carry value 0")
        counts = np.bincount(cols[present].ravel(), minlength=dim)
        if np.any(counts > 2):
            raise ValueError("a column carries more than 2 entries")
        self.dim = dim
        self.cols = cols
        self.vals = vals
        cols.setflags(write=False)
        vals.setflags(write=False)

    @classmethod
    def identity(cls, dim: int) -> "SparseUnitary":
        cols = np.full((dim, 2), -1, dtype=np.int64)
        cols[:, 0] = np.arange(dim)
        vals = np.zeros((dim, 2), dtype=complex)
        vals[:, 0] = 1.0
        return cls(dim, cols, vals)

    def row(self, k: int) -> list[tuple[int, complex]]:
        """Stored (column, value) pairs of row k, structural zeros included."""
        return [
            (int(c), complex(v))
            for c, v in zip(self.cols[k], self.vals[k])
            if c >= 0
        ]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Sparse matrix-vector product, O(dim)."""
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim,):
            raise ValueError(f"vector length {x.shape} does not match dim {self.dim}")
        # Absent slots hold col -1 / value 0, so the wrapped index is harmless.
        return self.vals[:, 0] * x[self.cols[:, 0]] + self.vals[:, 1] * x[self.cols[:, 1]]

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=complex)
        rows = np.arange(self.dim)
        m[rows, self.cols[:, 0]] = self.vals[:, 0]
        second = self.cols[:, 1] >= 0
        m[rows[second], self.cols[second, 1]] = self.vals[second, 1]
        return m

    def unitarity_defect(self) -> float:
        """max |U†U - I| entry, computed densely (small dims only)."""
        if self.dim > (1 << DENSE_MAX_QUBITS):
            raise ValueError("unitarity check is dense-only; dimension too large")
        m = self.to_dense()
        return float(np.max(np.abs(m.conj().T @ m - np.eye(self.dim))))

    def nonzeros_per_row(self) -> np.ndarray:
        return np.sum(self.cols >= 0, axis=1)

    def nonzeros_per_column(self) -> np.ndarray:
        present = self.cols >= 0
        return np.bincount(self.cols[present].ravel(), minlength=self.dim)

    def to_json_dict(self) -> dict:
        rows = [
            [[int(c), float(v.real), float(v.imag)] for c, v in self.row(k)]
            for k in range(self.dim)
        ]
        return {"schema": 1, "dim": self.dim, "rows": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "SparseUnitary":
        dim = data["dim"]
        cols = np.full((dim, 2), -1, dtype=np.int64)
        vals = np.zeros((dim, 2), dtype=complex)
        for k, row in enumerate(data["rows"]):
            for slot, (c, re, im) in enumerate(row):
                cols[k, slot] = c
                vals[k, slot] = complex(re, im)
        return cls(dim, cols, vals)

    @classmethod
    def from_json(cls, text: str) -> "SparseUnitary":
        return cls.from_json_dict(json.loads(text))


def target_pair_block(n: int, i: int, j: int, u: OneQubitGate) -> np.ndarray:
    """Dense repeating block of order 2^(n-j+1) for control before target.

    u11/u22 sit on the first/second half-diagonal, u12/u21 on the +-2^(n-j)
    off-diagonals; the controlled gate restricted to one target pair span.
    """
    if not i < j:
        raise ValueError(f"requires control before target, got i={i}, j={j}")
    if not (1 <= i and j <= n):
        raise ValueError(f"positions ({i}, {j}) out of range 1..{n}")
    half = 1 << (n - j)
    block = np.zeros((2 * half, 2 * half), dtype=complex)
    r = np.arange(half)
    block[r, r] = u.u11
    block[r, r + half] = u.u12
    block[r + half, r] = u.u21
    block[r + half, r + half] = u.u22
    return block


def straddled_pair_block(n: int, i: int, j: int, u: OneQubitGate) -> np.ndarray:
    """Dense nontrivial block of order 2^(n-j+1) - 2^(n-i) for control after
    target.

    With the control below the target the partner offset 2^(n-j) exceeds the
    control-block length 2^(n-i), so paired entries straddle interleaved
    control blocks on which the gate acts as the identity. Row-blocks of
    height 2^(n-i) alternate: odd blocks carry (u11, u12) rows (and their
    (u21, u22) mirrors 2^(n-j) rows further down), even blocks are identity.
    """
    if not i > j:
        raise ValueError(f"requires control after target, got i={i}, j={j}")
    if not (1 <= j and i <= n):
        raise ValueError(f"positions ({i}, {j}) out of range 1..{n}")
    blk = 1 << (n - i)
    stride = 1 << (n - j)
    dim = 2 * stride - blk
    m = np.zeros((dim, dim), dtype=complex)
    cross = 1 << (i - j)
    for l in range(1, cross + 1):  # upper row group
        rows = np.arange(blk) + (l - 1) * blk
        if l % 2 == 1:
            m[rows, rows] = u.u11
            m[rows, rows + stride] = u.u12
        else:
            m[rows, rows] = 1.0
    for l in range(1, cross):  # lower row group
        rows = np.arange(blk) + (l - 1) * blk + stride
        if l % 2 == 1:
            m[rows, rows - stride] = u.u21
            m[rows, rows] = u.u22
        else:
            m[rows, rows] = 1.0
    return m


def controlled_sparse(spec: ControlledGateSpec) -> SparseUnitary:
    """2-sparse matrix of the controlled gate, either qubit ordering.

    Rows with control bit 0 are identity rows. A row with control bit 1 and
    target bit b couples index k with its partner k -+ 2^(n-j) through row b
    of u; both slots are stored even when an entry of u is zero.
    """
    n, i, j, u = spec.n, spec.i, spec.j, spec.u
    dim = 1 << n
    k = np.arange(dim)
    ibit = (k >> (n - i)) & 1
    jbit = (k >> (n - j)) & 1
    stride = 1 << (n - j)
    cols = np.full((dim, 2), -1, dtype=np.int64)
    vals = np.zeros((dim, 2), dtype=complex)
    cols[:, 0] = k
    vals[:, 0] = 1.0
    low = (ibit == 1) & (jbit == 0)
    high = (ibit == 1) & (jbit == 1)
    vals[low, 0] = u.u11
    cols[low, 1] = k[low] + stride
    vals[low, 1] = u.u12
    cols[high, 0] = k[high] - stride
    vals[high, 0] = u.u21
    cols[high, 1] = k[high]
    vals[high, 1] = u.u22
    return SparseUnitary(dim, cols, vals)


def embedded_sparse(n: int, j: int, u: OneQubitGate) -> SparseUnitary:
    """2-sparse matrix of a single-qubit gate at position j of an n-qubit
    register; equals the Kronecker product I ⊗ u ⊗ I."""
    if not 1 <= j <= n:
        raise ValueError(f"target position {j} out of range 1..{n}")
    dim = 1 << n
    k = np.arange(dim)
    jbit = (k >> (n - j)) & 1
    stride = 1 << (n - j)
    cols = np.empty((dim, 2), dtype=np.int64)
    vals = np.empty((dim, 2), dtype=complex)
    low = jbit == 0
    high = ~low
    cols[low, 0] = k[low]
    vals[low, 0] = u.u11
    cols[low, 1] = k[low] + stride
    vals[low, 1] = u.u12
    cols[high, 0] = k[high] - stride
    vals[high, 0] = u.u21
    cols[high, 1] = k[high]
    vals[high, 1] = u.u22
    return SparseUnitary(dim, cols, vals)


def _check_dense_cap(n: int, max_qubits: int):
    if n > max_qubits:
        raise ValueError(f"dense construction capped at {max_qubits} qubits, got n={n}")


def kron_chain(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def kron_embedded_dense(
    n: int, j: int, u: OneQubitGate, max_qubits: int = DENSE_MAX_QUBITS
) -> np.ndarray:
    """Reference dense matrix I_{2^(j-1)} ⊗ u ⊗ I_{2^(n-j)}."""
    if not 1 <= j <= n:
        raise ValueError(f"target position {j} out of range 1..{n}")
    _check_dense_cap(n, max_qubits)
    return kron_chain([np.eye(1 << (j - 1)), np.asarray(u.matrix), np.eye(1 << (n - j))])


def kron_controlled_dense(
    n: int, i: int, j: int, u: OneQubitGate, max_qubits: int = DENSE_MAX_QUBITS
) -> np.ndarray:
    """Reference dense controlled gate as a projector sum: |0><0| branch at
    the control carries the identity, the |1><1| branch carries u at the
    target."""
    spec = ControlledGateSpec(n, i, j, u)  # reuse validation
    _check_dense_cap(n, max_qubits)
    eye2 = np.eye(2)
    idle = [_P0 if q == spec.i else eye2 for q in range(1, n + 1)]
    active = [
        _P1 if q == spec.i else (np.asarray(u.matrix) if q == spec.j else eye2)
        for q in range(1, n + 1)
    ]
    return kron_chain(idle) + kron_chain(active)


def dense_gate(
    n: int,
    j: int,
    u: OneQubitGate,
    i: int | None = None,
    max_qubits: int = DENSE_MAX_QUBITS,
) -> np.ndarray:
    """Dense Kronecker oracle for one gate description (i=None: single-qubit)."""
    if i is None:
        return kron_embedded_dense(n, j, u, max_qubits)
    return kron_controlled_dense(n, i, j, u, max_qubits)
