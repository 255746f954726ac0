"""sparseq: state-vector simulation of parametrized quantum circuits through
explicit 2-sparse gate unitaries and their local Hamiltonians."""

from .core import (
    EigenPair2,
    OneQubitGate,
    eigenpairs_2x2,
    phase_of,
    rotation_gate,
    validate_unitary,
)
from .qindex import BlockLayout, bit_at, control_blocks, partner_index
from .gate_matrix import (
    ControlledGateSpec,
    SparseUnitary,
    controlled_sparse,
    embedded_sparse,
    kron_controlled_dense,
    kron_embedded_dense,
    straddled_pair_block,
    target_pair_block,
)
from .hamiltonian import (
    LocalHamiltonian,
    PauliStringTerm,
    ProjectorTerm,
    controlled_gate_hamiltonian,
    embedded_gate_hamiltonian,
    exp_minus_ih,
    hamiltonian_control_above,
    hamiltonian_control_below,
    rotation_string_hamiltonians,
    straddled_pair_eigenpairs,
    target_pair_eigenpairs,
)
from .engine import (
    Circuit,
    GateOp,
    StateVector,
    apply_controlled,
    apply_single_qubit,
    probabilities,
    run_circuit,
)
from .circuit_ir import (
    CircuitBindError,
    CircuitParseError,
    CircuitTemplate,
    HamiltonianGroup,
    bind,
    circuit_hamiltonians,
    hea_template,
    parse_circuit,
    serialize,
)
from .verify import (
    ErrorSweep,
    dense_apply_oracle,
    exp_oracle,
    frobenius_error,
    gate_hamiltonian_sweep,
    string_hamiltonian_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BlockLayout",
    "Circuit",
    "CircuitBindError",
    "CircuitParseError",
    "CircuitTemplate",
    "ControlledGateSpec",
    "EigenPair2",
    "ErrorSweep",
    "GateOp",
    "HamiltonianGroup",
    "LocalHamiltonian",
    "OneQubitGate",
    "PauliStringTerm",
    "ProjectorTerm",
    "SparseUnitary",
    "StateVector",
    "apply_controlled",
    "apply_single_qubit",
    "bind",
    "bit_at",
    "circuit_hamiltonians",
    "control_blocks",
    "controlled_gate_hamiltonian",
    "controlled_sparse",
    "dense_apply_oracle",
    "eigenpairs_2x2",
    "embedded_gate_hamiltonian",
    "embedded_sparse",
    "exp_minus_ih",
    "exp_oracle",
    "frobenius_error",
    "gate_hamiltonian_sweep",
    "hamiltonian_control_above",
    "hamiltonian_control_below",
    "hea_template",
    "kron_controlled_dense",
    "kron_embedded_dense",
    "parse_circuit",
    "partner_index",
    "phase_of",
    "probabilities",
    "rotation_gate",
    "rotation_string_hamiltonians",
    "run_circuit",
    "serialize",
    "straddled_pair_block",
    "straddled_pair_eigenpairs",
    "string_hamiltonian_sweep",
    "target_pair_block",
    "target_pair_eigenpairs",
    "validate_unitary",
]
