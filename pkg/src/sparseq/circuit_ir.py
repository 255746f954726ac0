"""Line-oriented circuit description format, parameter binding, templates.

Grammar (one statement per line, `#` starts a comment, blank lines ignored):

    qubits N                        header, required once before any gate
    rx|ry|rz q<j> <expr>            rotation on qubit j
    u q<j> <name>                   named gate: x y z h i s t
    u q<j> <c> <c> <c> <c>          explicit 2x2 unitary, entries row-major
    cx|cy|cz|ch q<i> q<j>           controlled named gate, control first
    crx|cry|crz q<i> q<j> <expr>    controlled rotation
    cu q<i> q<j> <c> <c> <c> <c>    controlled explicit unitary

<expr> is a float literal or `$name`; <c> is `re` or `re,im`. Qubit
positions are 1-based with qubit 1 the most significant bit.
"""
from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .core import OneQubitGate, PAULI, eigenpairs_2x2, rotation_gate
from .engine import Circuit, GateOp
from .hamiltonian import (
    LocalHamiltonian,
    PauliStringTerm,
    controlled_gate_hamiltonian,
    embedded_gate_hamiltonian,
    exp_minus_ih,
)

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
NAMED_GATES = {
    "x": OneQubitGate(PAULI["X"]),
    "y": OneQubitGate(PAULI["Y"]),
    "z": OneQubitGate(PAULI["Z"]),
    "h": OneQubitGate(_H),
    "i": OneQubitGate(np.eye(2)),
    "s": OneQubitGate(np.diag([1, 1j])),
    "t": OneQubitGate(np.diag([1, np.exp(1j * math.pi / 4)])),
}
_ROT_AXES = {"rx": "X", "ry": "Y", "rz": "Z"}
_NAME_RE = _re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class CircuitParseError(Exception):
    """Syntax or placement error with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CircuitBindError(Exception):
    """Raised when binding leaves parameters unresolved."""


@dataclass(frozen=True)
class ParamRef:
    name: str


@dataclass(frozen=True)
class GateStmt:
    """One parsed gate statement; `line` is ignored for equality."""

    line: int = field(compare=False)
    name: str = "u"
    j: int = 1
    i: int | None = None
    angle: float | ParamRef | None = None
    entries: tuple[complex, complex, complex, complex] | None = None


@dataclass(frozen=True)
class CircuitTemplate:
    """Parsed circuit with possibly unbound parameters."""

    n: int
    stmts: tuple[GateStmt, ...]

    def param_names(self) -> list[str]:
        """Referenced parameter names, in first-use order."""
        seen: dict[str, None] = {}
        for s in self.stmts:
            if isinstance(s.angle, ParamRef):
                seen.setdefault(s.angle.name)
        return list(seen)


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.tokens = [(m.start() + 1, m.group()) for m in _re.finditer(r"\S+", text)]

    def words(self) -> list[str]:
        return [w for _, w in self.tokens]

    def col(self, idx: int) -> int:
        return self.tokens[idx][0] if idx < len(self.tokens) else (
            self.tokens[-1][0] + len(self.tokens[-1][1]) if self.tokens else 1
        )


def _parse_qubit(line: _Line, idx: int, n: int) -> int:
    word = line.words()[idx]
    m = _re.fullmatch(r"q(\d+)", word)
    if not m:
        raise CircuitParseError(
            f"expected a qubit like q1, got {word!r}", line.number, line.col(idx)
        )
    q = int(m.group(1))
    if not 1 <= q <= n:
        raise CircuitParseError(f"qubit out of range: q{q} of {n}", line.number, line.col(idx))
    return q


def _parse_expr(line: _Line, idx: int) -> float | ParamRef:
    word = line.words()[idx]
    if word.startswith("$"):
        if not _NAME_RE.match(word[1:]):
            raise CircuitParseError(
                f"bad parameter name {word!r}", line.number, line.col(idx)
            )
        return ParamRef(word[1:])
    try:
        value = float(word)
    except ValueError:
        raise CircuitParseError(
            f"expected an angle or $name, got {word!r}", line.number, line.col(idx)
        ) from None
    if not math.isfinite(value):
        raise CircuitParseError("angle must be finite", line.number, line.col(idx))
    return value


def _parse_complex(line: _Line, idx: int) -> complex:
    word = line.words()[idx]
    parts = word.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise CircuitParseError(
        f"expected a complex entry like 0.5 or 0.5,-0.5, got {word!r}",
        line.number,
        line.col(idx),
    )


def _expect_arity(line: _Line, count: int):
    words = line.words()
    if len(words) != count:
        raise CircuitParseError(
            f"{words[0]} takes {count - 1} argument(s), got {len(words) - 1}",
            line.number,
            line.col(min(len(words), count)),
        )


def _gate_from_entries(line: _Line, entries) -> None:
    try:
        OneQubitGate(np.array(entries, dtype=complex).reshape(2, 2))
    except ValueError as exc:
        raise CircuitParseError(str(exc), line.number, line.col(2)) from None


def parse_circuit(text: str) -> CircuitTemplate:
    """Parse source text into a template; raises CircuitParseError."""
    n: int | None = None
    stmts: list[GateStmt] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _Line(number, raw.split("#", 1)[0])
        words = line.words()
        if not words:
            continue
        head = words[0]
        if head == "qubits":
            if n is not None:
                raise CircuitParseError("duplicate qubits header", number, line.col(0))
            _expect_arity(line, 2)
            if not words[1].isdigit() or int(words[1]) < 1:
                raise CircuitParseError(
                    f"qubits needs a positive count, got {words[1]!r}", number, line.col(1)
                )
            n = int(words[1])
            continue
        if n is None:
            raise CircuitParseError(
                "qubits header must come before gate statements", number, line.col(0)
            )
        if head in _ROT_AXES:
            _expect_arity(line, 3)
            stmts.append(
                GateStmt(number, head, _parse_qubit(line, 1, n), angle=_parse_expr(line, 2))
            )
        elif head == "u":
            if len(words) == 3 and words[2] in NAMED_GATES:
                stmts.append(GateStmt(number, words[2], _parse_qubit(line, 1, n)))
            elif len(words) == 6:
                j = _parse_qubit(line, 1, n)
                entries = tuple(_parse_complex(line, idx) for idx in range(2, 6))
                _gate_from_entries(line, entries)
                stmts.append(GateStmt(number, "u", j, entries=entries))
            else:
                raise CircuitParseError(
                    "u takes a named gate or 4 complex entries", number, line.col(2)
                )
        elif head.startswith("c") and head[1:] in ("x", "y", "z", "h"):
            _expect_arity(line, 3)
            i = _parse_qubit(line, 1, n)
            j = _parse_qubit(line, 2, n)
            stmts.append(GateStmt(number, head, j, i=i))
        elif head in ("crx", "cry", "crz"):
            _expect_arity(line, 4)
            i = _parse_qubit(line, 1, n)
            j = _parse_qubit(line, 2, n)
            stmts.append(GateStmt(number, head, j, i=i, angle=_parse_expr(line, 3)))
        elif head == "cu":
            _expect_arity(line, 7)
            i = _parse_qubit(line, 1, n)
            j = _parse_qubit(line, 2, n)
            entries = tuple(_parse_complex(line, idx) for idx in range(3, 7))
            _gate_from_entries(line, entries)
            stmts.append(GateStmt(number, "cu", j, i=i, entries=entries))
        else:
            raise CircuitParseError(f"unknown statement {head!r}", number, line.col(0))
        last = stmts[-1]
        if last.i is not None and last.i == last.j:
            raise CircuitParseError("control equals target", number, line.col(1))
    if n is None:
        raise CircuitParseError("missing qubits header", max(1, text.count("\n") + 1))
    return CircuitTemplate(n, tuple(stmts))


def _expr_text(expr: float | ParamRef) -> str:
    return f"${expr.name}" if isinstance(expr, ParamRef) else repr(expr)


def _complex_text(c: complex) -> str:
    return f"{c.real!r},{c.imag!r}"


def serialize(template: CircuitTemplate) -> str:
    """Canonical source text; reparsing yields an equal template."""
    lines = [f"qubits {template.n}"]
    for s in template.stmts:
        if s.name in _ROT_AXES:
            lines.append(f"{s.name} q{s.j} {_expr_text(s.angle)}")
        elif s.name in NAMED_GATES:
            lines.append(f"u q{s.j} {s.name}")
        elif s.name == "u":
            lines.append(f"u q{s.j} " + " ".join(_complex_text(c) for c in s.entries))
        elif s.name in ("crx", "cry", "crz"):
            lines.append(f"{s.name} q{s.i} q{s.j} {_expr_text(s.angle)}")
        elif s.name == "cu":
            lines.append(
                f"cu q{s.i} q{s.j} " + " ".join(_complex_text(c) for c in s.entries)
            )
        else:  # cx, cy, cz, ch
            lines.append(f"{s.name} q{s.i} q{s.j}")
    return "\n".join(lines) + "\n"


def _resolve(expr: float | ParamRef, params: dict[str, float]) -> float:
    if isinstance(expr, ParamRef):
        return float(params[expr.name])
    return expr


def bind(template: CircuitTemplate, params: dict[str, float] | None = None) -> Circuit:
    """Resolve all parameters and produce an executable circuit."""
    params = params or {}
    missing = [name for name in template.param_names() if name not in params]
    if missing:
        raise CircuitBindError(
            "unbound parameter(s): " + ", ".join(f"${m}" for m in missing)
        )
    ops = []
    for s in template.stmts:
        if s.name in _ROT_AXES:
            theta = _resolve(s.angle, params)
            u = rotation_gate(_ROT_AXES[s.name], theta)
            ops.append(GateOp(s.j, u, name=s.name, theta=theta))
        elif s.name in NAMED_GATES:
            ops.append(GateOp(s.j, NAMED_GATES[s.name], name=s.name))
        elif s.name == "u":
            u = OneQubitGate(np.array(s.entries, dtype=complex).reshape(2, 2))
            ops.append(GateOp(s.j, u, name="u"))
        elif s.name in ("crx", "cry", "crz"):
            theta = _resolve(s.angle, params)
            u = rotation_gate(_ROT_AXES[s.name[1:]], theta)
            ops.append(GateOp(s.j, u, i=s.i, name=s.name, theta=theta))
        elif s.name == "cu":
            u = OneQubitGate(np.array(s.entries, dtype=complex).reshape(2, 2))
            ops.append(GateOp(s.j, u, i=s.i, name="cu"))
        else:
            ops.append(GateOp(s.j, NAMED_GATES[s.name[1:]], i=s.i, name=s.name))
    return Circuit(template.n, tuple(ops))


def hea_source(n: int, layers: int, four_columns: bool = False) -> str:
    """Source text of the hardware-efficient ansatz.

    Per layer: rotation columns of per-qubit rx gates (3 by default)
    followed by a nearest-neighbour entangling chain of parametrized
    controlled rotations. four_columns switches to 4 rotation columns with
    fixed cx entanglers, putting all 4n parameters on the rotations (16 for
    a 4-qubit layer).
    """
    if n < 2:
        raise ValueError("ansatz needs at least 2 qubits")
    if layers < 1:
        raise ValueError("need at least one layer")
    columns = 4 if four_columns else 3
    lines = [f"qubits {n}"]
    for layer in range(1, layers + 1):
        for col in range(1, columns + 1):
            lines += [f"rx q{q} $q{q}_c{col}_l{layer}" for q in range(1, n + 1)]
        for q in range(1, n):
            if four_columns:
                lines.append(f"cx q{q} q{q + 1}")
            else:
                lines.append(f"crx q{q} q{q + 1} $ent{q}_l{layer}")
    return "\n".join(lines) + "\n"


def hea_template(n: int, layers: int, four_columns: bool = False) -> CircuitTemplate:
    return parse_circuit(hea_source(n, layers, four_columns))


@dataclass(frozen=True)
class HamiltonianGroup:
    """Generators of one circuit factor: a string of single-qubit gates
    (one Hamiltonian per gate, commuting) or a single controlled gate."""

    kind: str  # "string" | "controlled"
    hamiltonians: tuple[LocalHamiltonian, ...]
    pauli_terms: tuple[PauliStringTerm, ...] = ()

    def unitary(self) -> np.ndarray:
        """Dense product of the factor's exponentials."""
        mats = [exp_minus_ih(h) for h in reversed(self.hamiltonians)]
        return reduce(np.matmul, mats)


def circuit_hamiltonians(circuit: Circuit) -> list[HamiltonianGroup]:
    """Local Hamiltonian decomposition of a bound circuit.

    Consecutive single-qubit gates on distinct qubits merge into one string
    factor; every controlled gate is its own factor. Groups come back in
    circuit order, so the circuit unitary is the reversed product of the
    group unitaries. Strings made purely of rotations also report their
    Pauli-string generators.
    """
    groups: list[HamiltonianGroup] = []
    run: list[GateOp] = []

    def flush():
        if not run:
            return
        hams = tuple(
            embedded_gate_hamiltonian(circuit.n, op.j, eigenpairs_2x2(op.u))
            for op in run
        )
        paulis: tuple[PauliStringTerm, ...] = ()
        if all(op.name in _ROT_AXES for op in run):
            paulis = tuple(
                PauliStringTerm(op.theta / 2.0, _ROT_AXES[op.name], op.j, circuit.n)
                for op in run
            )
        groups.append(HamiltonianGroup("string", hams, paulis))
        run.clear()

    for op in circuit.ops:
        if op.is_controlled:
            flush()
            h = controlled_gate_hamiltonian(circuit.n, op.i, op.j, op.u)
            groups.append(HamiltonianGroup("controlled", (h,)))
        else:
            if any(prev.j == op.j for prev in run):
                flush()
            run.append(op)
    flush()
    return groups


def groups_unitary(groups: list[HamiltonianGroup], dim: int) -> np.ndarray:
    """Dense circuit unitary reconstructed from the Hamiltonian groups."""
    out = np.eye(dim, dtype=complex)
    for g in reversed(groups):
        out = out @ g.unitary()
    return out


def circuit_to_json_dict(circuit: Circuit) -> dict:
    ops = []
    for op in circuit.ops:
        entry = {
            "kind": "controlled" if op.is_controlled else "single",
            "j": op.j,
            "name": op.name,
            "u": [
                [[float(c.real), float(c.imag)] for c in row] for row in op.u.matrix
            ],
        }
        if op.is_controlled:
            entry["i"] = op.i
        if op.theta is not None:
            entry["theta"] = op.theta
        ops.append(entry)
    return {"schema": 1, "n": circuit.n, "ops": ops}
