"""Depolarizing noise model, fault locations, sampling, and exhaustive enumeration.

A fault is a Pauli applied immediately after one circuit location: after a
gate op, at a per-qubit preparation pseudo-location, or as a classical bit
flip on one measured qubit.  Depolarizing sampling picks a uniform
non-identity Pauli on the location's support whenever the location fires.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .simcore import Circuit, GateKind, GateOp, ONE_QUBIT_KINDS, TWO_QUBIT_KINDS


@dataclass(frozen=True)
class NoiseModel:
    """Per-location fault probabilities of the circuit-level depolarizing model.

    p1 / p2 apply after every single-/two-qubit gate, p_meas flips each
    measured bit independently, p_prep flips each qubit's initial state.
    Idle locations (a qubit untouched within a barrier-delimited section)
    are only counted when include_idle is set.
    """

    p1: float
    p2: float
    p_meas: float
    p_prep: float = 0.0
    include_idle: bool = False

    def __post_init__(self):
        for name in ("p1", "p2", "p_meas", "p_prep"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name}={p} is not a probability")


ZERO_NOISE = NoiseModel(0.0, 0.0, 0.0)

#: defaults derived from the averaged calibration of the modelled trapped-ion
#: machine as p = 1 - fidelity (single-qubit 99.05%, two-qubit 98.75%,
#: readout 99.32%)
CALIBRATED_NOISE = NoiseModel(p1=0.0095, p2=0.0125, p_meas=0.0068)


@dataclass(frozen=True)
class FaultLocation:
    """A place a fault can strike: a gate op, qubit preparation, an idle
    window, or one measured bit."""

    kind: str                  # "gate" | "prep" | "premeasure" | "idle"
    qubits: tuple[int, ...]
    after_op: int | None = None  # op index the fault follows (None: before the first op)

    def __post_init__(self):
        if self.kind not in ("gate", "prep", "premeasure", "idle"):
            raise ValueError(f"unknown location kind {self.kind!r}")
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def arity(self) -> int:
        return len(self.qubits)


@dataclass(frozen=True)
class PauliFault:
    """A Pauli word on a location's support ("X" also encodes prep/readout flips)."""

    location: FaultLocation
    pauli: str

    def __post_init__(self):
        if len(self.pauli) != self.location.arity:
            raise ValueError("Pauli word length must match the location support")
        alphabet = "XYZ" if self.location.kind in ("gate", "idle") else "X"
        if self.location.kind == "gate" and self.location.arity == 2:
            if self.pauli == "II" or any(c not in "IXYZ" for c in self.pauli):
                raise ValueError(f"bad two-qubit Pauli {self.pauli!r}")
        elif any(c not in alphabet for c in self.pauli):
            raise ValueError(f"bad Pauli {self.pauli!r} for {self.location.kind} location")


_ONE_QUBIT_PAULIS = ("X", "Y", "Z")
_TWO_QUBIT_PAULIS = tuple(
    a + b for a, b in itertools.product("IXYZ", repeat=2) if a + b != "II"
)


def fault_locations(circuit: Circuit, model: NoiseModel | None = None) -> list[FaultLocation]:
    """All fault locations of a circuit, in deterministic circuit order.

    Preparation locations appear only when the model assigns p_prep > 0, and
    idle locations only when include_idle is set; gate and measured-bit
    locations are always present.
    """
    locs: list[FaultLocation] = []
    if model is not None and model.p_prep > 0.0:
        for q in range(circuit.n_qubits):
            locs.append(FaultLocation("prep", (q,), None))
    for i, op in circuit.gate_ops():
        locs.append(FaultLocation("gate", op.qubits, i))
    if model is not None and model.include_idle:
        locs.extend(_idle_locations(circuit))
    if circuit.measures:
        for q in range(circuit.n_qubits):
            locs.append(FaultLocation("premeasure", (q,), None))
    return locs


def _idle_locations(circuit: Circuit) -> list[FaultLocation]:
    """One idle location per qubit untouched within a gate-carrying section."""
    locs = []
    section: list[tuple[int, GateOp]] = []

    def flush():
        if not section:
            return
        touched = {q for _, op in section for q in op.qubits}
        last = section[-1][0]
        for q in range(circuit.n_qubits):
            if q not in touched:
                locs.append(FaultLocation("idle", (q,), last))
        section.clear()

    for i, op in enumerate(circuit.ops):
        if op.kind is GateKind.BARRIER or op.kind is GateKind.MEASURE_ALL:
            flush()
        elif op.is_gate:
            section.append((i, op))
    flush()
    return locs


def location_probability(loc: FaultLocation, model: NoiseModel) -> float:
    if loc.kind == "prep":
        return model.p_prep
    if loc.kind == "premeasure":
        return model.p_meas
    if loc.kind == "idle":
        return model.p1
    return model.p1 if loc.arity == 1 else model.p2


def expected_fault_count(circuit: Circuit, model: NoiseModel) -> float:
    """First-order estimate: the mean number of faults per shot."""
    return sum(location_probability(l, model) for l in fault_locations(circuit, model))


def enumerate_single_faults(circuit: Circuit, include_prep: bool = False) -> list[PauliFault]:
    """Every possible single fault: 3 Paulis per 1-qubit gate, 15 per 2-qubit
    gate, one flip per measured bit (plus one flip per qubit preparation when
    include_prep is set).  Order: circuit order, then Pauli lexicographic."""
    model = NoiseModel(1.0, 1.0, 1.0, p_prep=1.0 if include_prep else 0.0)
    faults: list[PauliFault] = []
    for loc in fault_locations(circuit, model):
        if loc.kind in ("prep", "premeasure"):
            faults.append(PauliFault(loc, "X"))
        elif loc.arity == 1:
            faults.extend(PauliFault(loc, p) for p in _ONE_QUBIT_PAULIS)
        else:
            faults.extend(PauliFault(loc, p) for p in _TWO_QUBIT_PAULIS)
    return faults


def sample_fault_set(
    circuit: Circuit,
    model: NoiseModel,
    rng: np.random.Generator,
    locations: list[FaultLocation] | None = None,
) -> list[PauliFault]:
    """Draw one shot's fault set: each location fires independently with its
    model probability; firing gate locations get a uniform non-identity Pauli.
    Multiple simultaneous faults are allowed."""
    if locations is None:
        locations = fault_locations(circuit, model)
    if not locations:
        return []
    u = rng.random(len(locations))
    faults: list[PauliFault] = []
    for j, loc in enumerate(locations):
        if u[j] >= location_probability(loc, model):
            continue
        if loc.kind in ("prep", "premeasure"):
            faults.append(PauliFault(loc, "X"))
        elif loc.arity == 1:
            faults.append(PauliFault(loc, _ONE_QUBIT_PAULIS[rng.integers(3)]))
        else:
            faults.append(PauliFault(loc, _TWO_QUBIT_PAULIS[rng.integers(15)]))
    return faults
