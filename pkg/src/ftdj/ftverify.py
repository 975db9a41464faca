"""Exhaustive single-fault classification of a circuit + decoder pair.

For every possible single fault the exact outcome distribution is computed
and the fault is classified as

* detected      - no accepted outcome remains (the run is always discarded),
* harmless      - accepted outcomes exist and all of them decode to the
                  fault-free answer, or
* logical error - some accepted outcome decodes wrongly.

A circuit is fault-tolerant exactly when no single fault is a logical error:
a user who post-selects can then never be handed a silently wrong answer by
one fault.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuitlib import CatalogEntry, Decoder, get_entry
from .noisefault import PauliFault, enumerate_single_faults
from .simcore import PROB_EPS, Circuit, apply_circuit, outcome_distribution

DETECTED = "detected"
HARMLESS = "harmless"
LOGICAL_ERROR = "logical_error"

#: accepted conditional distributions may differ from the reference by at
#: most this much (total variation) before a fault counts as a logical error
DISTRIBUTION_TOL = 1e-10


@dataclass(frozen=True)
class FaultVerdict:
    fault: PauliFault
    accept_probability: float
    classification: str
    wrong_probability: float = 0.0


@dataclass(frozen=True)
class FaultToleranceReport:
    circuit_name: str
    total_faults: int
    n_detected: int
    n_harmless: int
    n_logical_error: int
    worst: FaultVerdict | None

    @property
    def fault_tolerant(self) -> bool:
        return self.n_logical_error == 0

    def counts(self) -> dict[str, int]:
        return {
            DETECTED: self.n_detected,
            HARMLESS: self.n_harmless,
            LOGICAL_ERROR: self.n_logical_error,
        }


def ideal_answer(circuit: Circuit, decoder: Decoder) -> dict[str, float]:
    """Fault-free accepted outcome distribution over the decoder's labels."""
    dist = _decoded_distribution(circuit, decoder, fault=None)
    if dist is None:
        raise ValueError(f"{circuit.name}: the fault-free circuit accepts nothing")
    return dist[1]


def _decoded_distribution(circuit: Circuit, decoder: Decoder, fault):
    state = apply_circuit(circuit, fault=fault)
    raw = outcome_distribution(state)
    accepted = 0.0
    decoded = {label: 0.0 for label in decoder.labels()}
    for bits, p in raw.items():
        if decoder.accepts(bits):
            decoded[decoder.label(bits)] += p
            accepted += p
    if accepted <= PROB_EPS:
        return None
    return accepted, {k: v / accepted for k, v in decoded.items()}


def classify_fault(
    circuit: Circuit,
    fault: PauliFault,
    decoder: Decoder,
    ideal: dict[str, float] | None = None,
) -> FaultVerdict:
    """Classify one fault against the fault-free answer.

    With a deterministic fault-free answer any accepted probability on a
    different label is an error; for genuinely distributional answers the
    accepted conditional distribution must stay within DISTRIBUTION_TOL
    total variation of the reference.
    """
    if ideal is None:
        ideal = ideal_answer(circuit, decoder)
    result = _decoded_distribution(circuit, decoder, fault)
    if result is None:
        return FaultVerdict(fault, 0.0, DETECTED)
    accepted, observed = result
    deterministic = any(abs(p - 1.0) <= 1e-9 for p in ideal.values())
    if deterministic:
        wrong = sum(p for label, p in observed.items() if ideal.get(label, 0.0) < 0.5 and p > PROB_EPS)
        if wrong > PROB_EPS:
            return FaultVerdict(fault, accepted, LOGICAL_ERROR, wrong)
    else:
        tv = 0.5 * sum(abs(observed[k] - ideal[k]) for k in ideal)
        if tv > DISTRIBUTION_TOL:
            return FaultVerdict(fault, accepted, LOGICAL_ERROR, tv)
    return FaultVerdict(fault, accepted, HARMLESS)


def verify_fault_tolerance(
    circuit: Circuit,
    decoder: Decoder,
    *,
    include_prep: bool = False,
) -> FaultToleranceReport:
    """Run classify_fault over every enumerated single fault."""
    ideal = ideal_answer(circuit, decoder)
    n_det = n_harm = n_log = 0
    worst: FaultVerdict | None = None
    for fault in enumerate_single_faults(circuit, include_prep=include_prep):
        verdict = classify_fault(circuit, fault, decoder, ideal)
        if verdict.classification == DETECTED:
            n_det += 1
        elif verdict.classification == HARMLESS:
            n_harm += 1
        else:
            n_log += 1
            if worst is None or verdict.wrong_probability > worst.wrong_probability:
                worst = verdict
    return FaultToleranceReport(circuit.name, n_det + n_harm + n_log, n_det, n_harm, n_log, worst)


def verify_catalog_circuit(name: str, *, include_prep: bool = False) -> FaultToleranceReport:
    entry = get_entry(name)
    return verify_fault_tolerance(entry.circuit, entry.decoder, include_prep=include_prep)
