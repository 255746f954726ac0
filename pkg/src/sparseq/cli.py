"""Command-line interface: gate builders, Hamiltonian extraction, circuit
execution, and verification sweeps with stable file outputs.

Exit codes: 0 success, 1 verification exceedance, 2 usage or parse error,
3 validation error. The QSIM_TOL environment variable overrides the default
tolerance of 1e-12; an explicit --tol beats both.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .circuit_ir import (
    CircuitBindError,
    CircuitParseError,
    NAMED_GATES,
    bind,
    circuit_hamiltonians,
    groups_unitary,
    parse_circuit,
)
from .core import OneQubitGate, rotation_gate
from .engine import StateVector, probabilities_csv, run_circuit
from .gate_matrix import ControlledGateSpec, controlled_sparse, embedded_sparse
from .hamiltonian import controlled_gate_hamiltonian, embedded_gate_hamiltonian, exp_minus_ih
from .verify import (
    dense_circuit_unitary,
    engine_equivalence_deviations,
    frobenius_error,
    gate_hamiltonian_sweep,
    string_hamiltonian_sweep,
)

DEFAULT_TOL = 1e-12


def _tolerance(args) -> float:
    if args.tol is not None:
        return args.tol
    return float(os.environ.get("QSIM_TOL", DEFAULT_TOL))


def parse_gate_spec(spec: str) -> OneQubitGate:
    """Gate specs: a named gate (x, y, z, h, i, s, t) or rx:0.5 / ry:… / rz:…"""
    if spec in NAMED_GATES:
        return NAMED_GATES[spec]
    if ":" in spec:
        name, _, angle = spec.partition(":")
        if name in ("rx", "ry", "rz"):
            try:
                theta = float(angle)
            except ValueError:
                raise ValueError(f"bad rotation angle in gate spec {spec!r}") from None
            return rotation_gate(name[1].upper(), theta)
    raise ValueError(f"unknown gate spec {spec!r}")


def _dense_json(m: np.ndarray) -> list:
    return [[[float(c.real), float(c.imag)] for c in row] for row in m]


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _build_sparse(args):
    u = parse_gate_spec(args.gate)
    if args.i is None:
        return embedded_sparse(args.n, args.j, u), u
    return controlled_sparse(ControlledGateSpec(args.n, args.i, args.j, u)), u


def cmd_build_gate(args) -> int:
    sparse, _ = _build_sparse(args)
    payload = sparse.to_json_dict()
    if args.dense:
        payload["dense"] = _dense_json(sparse.to_dense())
    _write(json.dumps(payload) + "\n", args.output)
    return 0


def cmd_hamiltonian(args) -> int:
    tol = _tolerance(args)
    if args.circuit is None:
        if args.gate is None or args.n is None or args.j is None:
            print("hamiltonian: need --gate with -n/-j, or --circuit", file=sys.stderr)
            return 2
        u = parse_gate_spec(args.gate)
        if args.i is None:
            h = embedded_gate_hamiltonian(args.n, args.j, u.eigenpairs())
            reference = embedded_sparse(args.n, args.j, u).to_dense()
        else:
            h = controlled_gate_hamiltonian(args.n, args.i, args.j, u)
            reference = controlled_sparse(
                ControlledGateSpec(args.n, args.i, args.j, u)
            ).to_dense()
        _write(h.to_json() + "\n", args.output)
        if args.check:
            error = frobenius_error(reference, exp_minus_ih(h))
            print(f"reconstruction_error={error!r}")
            return 0 if error <= tol else 1
        return 0
    template = parse_circuit(Path(args.circuit).read_text(encoding="utf-8"))
    params = _load_params(args.params)
    circuit = bind(template, params)
    groups = circuit_hamiltonians(circuit)
    payload = {
        "schema": 1,
        "n": circuit.n,
        "groups": [
            {"kind": g.kind, "hamiltonians": [h.to_json_dict() for h in g.hamiltonians]}
            for g in groups
        ],
    }
    _write(json.dumps(payload) + "\n", args.output)
    if args.check:
        error = frobenius_error(
            dense_circuit_unitary(circuit), groups_unitary(groups, 1 << circuit.n)
        )
        print(f"reconstruction_error={error!r}")
        # Products accumulate; scale the per-factor tolerance by 10*K.
        return 0 if error <= 10 * max(1, len(circuit.ops)) * tol else 1
    return 0


def _load_params(path: str | None) -> dict[str, float]:
    if path is None:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("params file must hold a JSON object of name -> value")
    return {str(k): float(v) for k, v in data.items()}


def cmd_run(args) -> int:
    tol = _tolerance(args)
    template = parse_circuit(Path(args.circuit).read_text(encoding="utf-8"))
    circuit = bind(template, _load_params(args.params))
    if args.input is not None:
        state = StateVector.from_json(Path(args.input).read_text(encoding="utf-8"))
        if state.n != circuit.n:
            raise ValueError(
                f"input state has {state.n} qubits, circuit {circuit.n}"
            )
    else:
        state = StateVector.zero(circuit.n)
    initial = state.copy()
    result = run_circuit(circuit, state)
    if args.amplitudes:
        lines = ["index,re,im"]
        lines += [
            f"{k},{float(a.real)!r},{float(a.imag)!r}" for k, a in enumerate(result.amps)
        ]
        _write("\n".join(lines) + "\n", args.output)
    else:
        _write(probabilities_csv(result), args.output)
    if args.oracle:
        reference = dense_circuit_unitary(circuit) @ initial.amps
        deviation = float(np.max(np.abs(result.amps - reference)))
        print(f"oracle_deviation={deviation!r}")
        return 0 if deviation <= tol else 1
    return 0


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = []

    def record(label: str, csv_text: str, worst: float, threshold: float):
        (out_dir / f"{label}.csv").write_text(csv_text, encoding="utf-8")
        status = "PASS" if worst <= threshold else "FAIL"
        print(f"{status} {label} max_error={worst!r}")
        if worst > threshold:
            failures.append(label)

    if args.suite == "crx":
        for i in range(1, args.n + 1):
            for j in range(1, args.n + 1):
                if i == j:
                    continue
                sweep = gate_hamiltonian_sweep(args.n, i, j, "X")
                record(sweep.label, sweep.to_csv(), sweep.max_error, tol)
    elif args.suite == "strings":
        for axis in ("X", "Y", "Z"):
            sweep = string_hamiltonian_sweep(args.n, axis)
            record(sweep.label, sweep.to_csv(), sweep.max_error, tol)
    else:  # engine
        deviations = engine_equivalence_deviations(
            args.circuits, max_qubits=args.n, seed=args.seed
        )
        lines = ["circuit,deviation"]
        lines += [f"{k},{d!r}" for k, d in enumerate(deviations)]
        # Chains of up to 20 gates accumulate; allow 10x the per-gate tol.
        record(f"engine_n{args.n}", "\n".join(lines) + "\n", max(deviations), 10 * tol)
    if failures:
        print("exceeded tolerance: " + ", ".join(failures))
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparseq",
        description="2-sparse gate builder, Hamiltonian extractor and state-vector simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build-gate", help="write the 2-sparse gate matrix as JSON")
    build.add_argument("-n", type=int, required=True, help="register size")
    build.add_argument("-i", type=int, default=None, help="control qubit (omit for single-qubit)")
    build.add_argument("-j", type=int, required=True, help="target qubit")
    build.add_argument("--gate", required=True, help="gate spec, e.g. x or rx:0.5")
    build.add_argument("--dense", action="store_true", help="also embed the dense matrix")
    build.add_argument("-o", "--output", default=None)
    build.add_argument("--tol", type=float, default=None)
    build.set_defaults(func=cmd_build_gate)

    ham = sub.add_parser("hamiltonian", help="extract the local Hamiltonian as JSON")
    ham.add_argument("-n", type=int, default=None)
    ham.add_argument("-i", type=int, default=None)
    ham.add_argument("-j", type=int, default=None)
    ham.add_argument("--gate", default=None)
    ham.add_argument("--circuit", default=None, help="circuit file instead of a single gate")
    ham.add_argument("--params", default=None, help="JSON file of parameter values")
    ham.add_argument("--check", action="store_true", help="print the reconstruction error")
    ham.add_argument("-o", "--output", default=None)
    ham.add_argument("--tol", type=float, default=None)
    ham.set_defaults(func=cmd_hamiltonian)

    run = sub.add_parser("run", help="simulate a circuit file")
    run.add_argument("circuit")
    run.add_argument("--params", default=None)
    run.add_argument("--input", default=None, help="JSON state file (default |0...0>)")
    run.add_argument("--amplitudes", action="store_true", help="print amplitudes, not probabilities")
    run.add_argument("--oracle", action="store_true", help="cross-check against the dense chain")
    run.add_argument("-o", "--output", default=None)
    run.add_argument("--tol", type=float, default=None)
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="run an error-sweep suite, write CSVs")
    ver.add_argument("--suite", choices=("crx", "strings", "engine"), required=True)
    ver.add_argument("-n", type=int, default=4)
    ver.add_argument("--circuits", type=int, default=50)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--out-dir", default=".")
    ver.add_argument("--tol", type=float, default=None)
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CircuitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except CircuitBindError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
