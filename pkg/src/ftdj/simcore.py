"""Dense statevector simulation of the few-qubit circuits used in this package.

Conventions, fixed once and used everywhere:

* Qubit 0 is the leftmost (most significant) bit of a basis label, so the
  4-qubit string "0110" names basis index 6.  Printed bitstrings therefore
  read the same way as the ket labels |q1 q2 q3 q4> with 1-based wire
  numbering shifted down by one.
* Rotation angles of the trapped-ion native gates GPI / GPI2 are given in
  turns (fractions of a full revolution).  They are stored as exact
  `Fraction`s on the ops and converted to floats only when a matrix is
  materialised, so circuit-equality and equivalence checks never see
  angle drift.
* A circuit is a flat ordered op list.  Barriers separate independently
  prepared sections and nothing here ever rewrites, merges or reorders
  gates across (or within) them.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

#: probabilities at or below this are treated as exact zeros
PROB_EPS = 1e-12
NORM_TOL = 1e-12
#: seed used by the CLI when none is given, so bare invocations reproduce
DEFAULT_SEED = 1234

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class GateKind(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    SDG = "SDG"          # ZS = diag(1, -i), the inverse phase gate
    CNOT = "CNOT"        # first listed qubit is the control
    CZ = "CZ"
    SWAP = "SWAP"
    GPI = "GPI"          # [[0, e^{-2 pi i a}], [e^{2 pi i a}, 0]]
    GPI2 = "GPI2"        # (1/sqrt2) [[1, -i e^{-2 pi i a}], [-i e^{2 pi i a}, 1]]
    MS = "MS"            # fully entangling Molmer-Sorensen gate
    BARRIER = "BARRIER"
    MEASURE_ALL = "MEASURE_ALL"


ONE_QUBIT_KINDS = frozenset(
    {GateKind.X, GateKind.Y, GateKind.Z, GateKind.H, GateKind.S, GateKind.SDG,
     GateKind.GPI, GateKind.GPI2}
)
TWO_QUBIT_KINDS = frozenset({GateKind.CNOT, GateKind.CZ, GateKind.SWAP, GateKind.MS})
TURN_KINDS = frozenset({GateKind.GPI, GateKind.GPI2})

SEGMENTS = ("prep", "logic", "oracle", "readout")


@dataclass(frozen=True)
class GateOp:
    """One gate in a circuit: kind, target qubits, optional turn angle, segment tag."""

    kind: GateKind
    qubits: tuple[int, ...] = ()
    turns: Optional[Fraction] = None
    segment: str = "logic"

    def __post_init__(self):
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.turns is not None and not isinstance(self.turns, Fraction):
            object.__setattr__(self, "turns", Fraction(self.turns))
        if (self.turns is not None) != (self.kind in TURN_KINDS):
            raise ValueError(f"turn angle present iff kind is GPI/GPI2, got {self.kind} turns={self.turns}")
        if self.kind in ONE_QUBIT_KINDS and len(self.qubits) != 1:
            raise ValueError(f"{self.kind.value} acts on exactly one qubit")
        if self.kind in TWO_QUBIT_KINDS:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{self.kind.value} acts on exactly two distinct qubits")
        if self.kind in (GateKind.BARRIER, GateKind.MEASURE_ALL) and self.qubits:
            raise ValueError(f"{self.kind.value} carries no qubit arguments")
        if self.segment not in SEGMENTS:
            raise ValueError(f"unknown segment tag {self.segment!r}")

    @property
    def is_gate(self) -> bool:
        return self.kind not in (GateKind.BARRIER, GateKind.MEASURE_ALL)


@dataclass(frozen=True)
class Circuit:
    """Named ordered op list on a fixed number of qubits."""

    name: str
    n_qubits: int
    ops: tuple[GateOp, ...]

    def __post_init__(self):
        if not isinstance(self.ops, tuple):
            object.__setattr__(self, "ops", tuple(self.ops))
        if self.n_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        for i, op in enumerate(self.ops):
            if any(q < 0 or q >= self.n_qubits for q in op.qubits):
                raise ValueError(f"op {i} ({op.kind.value}) addresses a qubit outside 0..{self.n_qubits - 1}")
            if op.kind is GateKind.MEASURE_ALL and i != len(self.ops) - 1:
                raise ValueError("MEASURE_ALL is only allowed as the final op")

    @property
    def measures(self) -> bool:
        return bool(self.ops) and self.ops[-1].kind is GateKind.MEASURE_ALL

    def gate_ops(self) -> list[tuple[int, GateOp]]:
        """(index, op) pairs for real gates, skipping barriers and measurement."""
        return [(i, op) for i, op in enumerate(self.ops) if op.is_gate]

    def without_measure(self) -> "Circuit":
        if self.measures:
            return Circuit(self.name, self.n_qubits, self.ops[:-1])
        return self


@dataclass
class StateVector:
    """Complex amplitudes over computational basis states, qubit 0 leftmost."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2 ** self.n_qubits,):
            raise ValueError(f"expected {2 ** self.n_qubits} amplitudes, got {self.amplitudes.shape}")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state is not normalised (squared norm {norm})")

    def probabilities(self) -> np.ndarray:
        p = np.abs(self.amplitudes) ** 2
        p[p < PROB_EPS] = 0.0
        return p


def zero_state(n_qubits: int) -> StateVector:
    amps = np.zeros(2 ** n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def basis_state(bits: str) -> StateVector:
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return StateVector(len(bits), amps)


def bitstring(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


# ---------------------------------------------------------------------------
# gate matrices

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_FIXED_MATRICES = {
    GateKind.X: _PAULI["X"],
    GateKind.Y: _PAULI["Y"],
    GateKind.Z: _PAULI["Z"],
    GateKind.H: _SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
    GateKind.MS: _SQRT_HALF * np.array(
        [[1, 0, 0, -1j], [0, 1, -1j, 0], [0, -1j, 1, 0], [-1j, 0, 0, 1]], dtype=complex
    ),
}


def gate_matrix(kind: GateKind, turns: Fraction | float | None = None) -> np.ndarray:
    """Exact unitary for a gate kind; `turns` required exactly for GPI/GPI2."""
    if kind in (GateKind.BARRIER, GateKind.MEASURE_ALL):
        raise ValueError(f"{kind.value} has no matrix")
    if (turns is not None) != (kind in TURN_KINDS):
        raise ValueError(f"turn angle present iff kind is GPI/GPI2, got {kind.value}")
    if kind in TURN_KINDS:
        phase = cmath.exp(2j * math.pi * float(turns))
        if kind is GateKind.GPI:
            return np.array([[0, phase.conjugate()], [phase, 0]], dtype=complex)
        return _SQRT_HALF * np.array(
            [[1, -1j * phase.conjugate()], [-1j * phase, 1]], dtype=complex
        )
    return _FIXED_MATRICES[kind].copy()


def pauli_matrix(word: str) -> np.ndarray:
    """Kronecker product of single-qubit Paulis, e.g. "XIXI" on 4 qubits."""
    m = _PAULI[word[0]]
    for ch in word[1:]:
        m = np.kron(m, _PAULI[ch])
    return m


# ---------------------------------------------------------------------------
# applying gates and circuits

def _apply_matrix(amps: np.ndarray, u: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    k = len(qubits)
    psi = amps.reshape((2,) * n)
    psi = np.tensordot(u.reshape((2,) * (2 * k)), psi, axes=(tuple(range(k, 2 * k)), tuple(qubits)))
    psi = np.moveaxis(psi, tuple(range(k)), tuple(qubits))
    return np.ascontiguousarray(psi).reshape(-1)


def _apply_pauli_word(amps: np.ndarray, word: str, qubits: Sequence[int], n: int) -> np.ndarray:
    for ch, q in zip(word, qubits):
        if ch != "I":
            amps = _apply_matrix(amps, _PAULI[ch], (q,), n)
    return amps


def apply_circuit(circuit: Circuit, initial: StateVector | None = None, fault=None) -> StateVector:
    """Run the circuit's gates in order on `initial` (default all-zeros state).

    `fault`, when given, is a PauliFault whose Pauli is applied immediately
    after the op it is attached to; preparation faults apply before the first
    op and pre-measurement flips after the last.  Measurement itself is not
    performed here.
    """
    if initial is None:
        initial = zero_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise ValueError("initial state size does not match the circuit")
    prep_faults, op_faults, end_faults = _index_fault(circuit, fault)
    amps = initial.amplitudes.copy()
    n = circuit.n_qubits
    for word, qubits in prep_faults:
        amps = _apply_pauli_word(amps, word, qubits, n)
    for i, op in enumerate(circuit.ops):
        if op.is_gate:
            amps = _apply_matrix(amps, gate_matrix(op.kind, op.turns), op.qubits, n)
        for word, qubits in op_faults.get(i, ()):
            amps = _apply_pauli_word(amps, word, qubits, n)
    for word, qubits in end_faults:
        amps = _apply_pauli_word(amps, word, qubits, n)
    norm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    amps /= norm
    return StateVector(n, amps)


def _index_fault(circuit: Circuit, fault):
    """Sort a fault (or fault list) into prep / per-op / end insertion points."""
    prep, at_op, end = [], {}, []
    if fault is None:
        return prep, at_op, end
    faults = fault if isinstance(fault, (list, tuple)) else (fault,)
    for f in faults:
        loc = f.location
        if any(q < 0 or q >= circuit.n_qubits for q in loc.qubits):
            raise ValueError(f"fault addresses a qubit outside the circuit: {loc}")
        entry = (f.pauli, loc.qubits)
        if loc.kind == "prep":
            prep.append(entry)
        elif loc.kind == "premeasure":
            end.append(entry)
        else:
            if loc.after_op is None or not (0 <= loc.after_op < len(circuit.ops)):
                raise ValueError(f"fault location {loc} does not name a valid op")
            at_op.setdefault(loc.after_op, []).append(entry)
    return prep, at_op, end


def outcome_distribution(state: StateVector, qubits: Sequence[int] | None = None) -> dict[str, float]:
    """Exact marginal probabilities of measuring `qubits` (default: all) in order.

    Probabilities at or below 1e-12 are clamped to zero and omitted.
    """
    if qubits is None:
        qubits = tuple(range(state.n_qubits))
    qubits = tuple(qubits)
    if not qubits:
        raise ValueError("need at least one qubit to measure")
    if len(set(qubits)) != len(qubits) or any(q < 0 or q >= state.n_qubits for q in qubits):
        raise ValueError(f"bad qubit subset {qubits}")
    n = state.n_qubits
    p = (np.abs(state.amplitudes) ** 2).reshape((2,) * n)
    rest = tuple(q for q in range(n) if q not in qubits)
    p = p.transpose(qubits + rest).reshape(2 ** len(qubits), -1).sum(axis=1)
    p[p < PROB_EPS] = 0.0
    total = float(p.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"marginal probabilities sum to {total}")
    k = len(qubits)
    return {bitstring(i, k): float(p[i]) for i in range(2 ** k) if p[i] > 0.0}


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Ordered product of the circuit's gate matrices embedded on all qubits."""
    if circuit.measures:
        raise ValueError("circuit_unitary needs a measurement-free circuit")
    if circuit.n_qubits > 5:
        raise ValueError("circuit_unitary supports at most 5 qubits")
    dim = 2 ** circuit.n_qubits
    u = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        amps = np.zeros(dim, dtype=complex)
        amps[j] = 1.0
        for op in circuit.ops:
            if op.is_gate:
                amps = _apply_matrix(amps, gate_matrix(op.kind, op.turns), op.qubits, circuit.n_qubits)
        u[:, j] = amps
    return u


def phase_equivalent(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff u = e^{i phi} v for some phase, at max-entry tolerance `tol`.

    The phase is fitted from the largest-magnitude entry of v^dagger u.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("inputs must be square matrices")
    if u.shape != v.shape:
        raise ValueError("shape mismatch")
    dim = u.shape[0]
    for m in (u, v):
        if np.max(np.abs(m @ m.conj().T - np.eye(dim))) > max(tol, 1e-9):
            raise ValueError("inputs must be unitary at the requested tolerance")
    w = v.conj().T @ u
    flat = np.argmax(np.abs(w))
    pivot = w.flat[flat]
    if abs(pivot) < tol:
        return False
    phase = pivot / abs(pivot)
    return bool(np.max(np.abs(u - phase * v)) <= tol)


# ---------------------------------------------------------------------------
# shot sampling

@dataclass(frozen=True)
class OutcomeCounts:
    """Counts per measured bitstring; values sum to `shots`."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to the shot total")

    def items(self):
        return self.counts.items()


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Independent counter-based substream for one shot of one run.

    Keyed Philox streams make results identical for any evaluation order or
    chunking of the shot range.
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    key = np.array([seed % 2 ** 64, shot], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_shots(
    circuit: Circuit,
    shots: int,
    noise=None,
    seed: int = DEFAULT_SEED,
    *,
    workers: int = 1,
) -> OutcomeCounts:
    """Sample measurement outcomes, optionally under a noise model.

    Each shot draws its own fault set from an independent substream derived
    from (seed, shot index), so counts are byte-identical across reruns and
    across any `workers` setting.  Measurement bit flips are applied to the
    ideally sampled outcome.
    """
    if not circuit.measures:
        raise ValueError("sample_shots needs a circuit ending in MEASURE_ALL")
    if shots < 1:
        raise ValueError("shots must be >= 1")

    from . import noisefault  # deferred: noisefault depends on circuit types above

    n = circuit.n_qubits
    locations = noisefault.fault_locations(circuit, noise) if noise is not None else []
    if locations and max(noisefault.location_probability(l, noise) for l in locations) == 0.0:
        locations = []  # an all-zero model consumes no randomness, like no model
    ideal_cdf = _outcome_cdf(circuit, None)
    cdf_cache: dict[tuple, np.ndarray] = {(): ideal_cdf}

    def run_range(lo: int, hi: int) -> dict[int, int]:
        local: dict[int, int] = {}
        for shot in range(lo, hi):
            rng = shot_rng(seed, shot)
            flip_mask = 0
            key = ()
            if locations:
                sampled = noisefault.sample_fault_set(circuit, noise, rng, locations=locations)
                gate_faults = []
                for f in sampled:
                    if f.location.kind == "premeasure":
                        flip_mask ^= 1 << (n - 1 - f.location.qubits[0])
                    else:
                        gate_faults.append(f)
                key = tuple(gate_faults)
            cdf = cdf_cache.get(key)
            if cdf is None:
                cdf = _outcome_cdf(circuit, key)
                cdf_cache[key] = cdf
            idx = int(np.searchsorted(cdf, rng.random(), side="right"))
            idx ^= flip_mask
            local[idx] = local.get(idx, 0) + 1
        return local

    if workers <= 1:
        merged = run_range(0, shots)
    else:
        bounds = np.linspace(0, shots, workers + 1, dtype=int)
        merged = {}
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(lambda ab: run_range(*ab), zip(bounds[:-1], bounds[1:])):
                for idx, c in part.items():
                    merged[idx] = merged.get(idx, 0) + c

    counts = {bitstring(idx, n): merged[idx] for idx in sorted(merged)}
    return OutcomeCounts(counts, shots)


def _outcome_cdf(circuit: Circuit, faults) -> np.ndarray:
    state = apply_circuit(circuit, fault=list(faults) if faults else None)
    p = state.probabilities()
    total = p.sum()
    cdf = np.cumsum(p / total)
    cdf[-1] = 1.0
    return cdf
