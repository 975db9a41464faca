"""Exact simulator, verifier and experiment harness for the fault-tolerant
one-query constant-vs-balanced algorithm on the four-qubit error-detecting
code."""

__version__ = "0.1.0"

from .simcore import (
    Circuit,
    GateKind,
    GateOp,
    OutcomeCounts,
    StateVector,
    apply_circuit,
    basis_state,
    circuit_unitary,
    gate_matrix,
    outcome_distribution,
    phase_equivalent,
    sample_shots,
    zero_state,
)
from .code422 import (
    LogicalDictionary,
    LogicalOutcome,
    Relabeling,
    accept,
    decode,
    logical_basis,
    transversal_circuit,
    verify_dictionary,
    verify_dictionary_entry,
)
from .circuitlib import (
    ENTANGLED_IDS,
    ORACLES,
    bare_dj,
    catalog,
    encoded_dj,
    entangled_circuit,
    get_entry,
    native_encoded_dj,
)
from .noisefault import (
    CALIBRATED_NOISE,
    NoiseModel,
    PauliFault,
    FaultLocation,
    ZERO_NOISE,
    enumerate_single_faults,
    expected_fault_count,
    fault_locations,
    sample_fault_set,
)
from .ftverify import classify_fault, verify_catalog_circuit, verify_fault_tolerance
from .experiment import (
    compare_all,
    compare_entangled,
    logical_marginals,
    noise_reduction,
    run_circuit,
    standard_errors,
    statistical_distance,
    sweep,
)
