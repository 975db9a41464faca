"""The four-qubit, two-logical-qubit, distance-two error-detecting code.

Stabilizers are XXXX and ZZZZ; the codespace is their joint +1 eigenspace.
Two logical-gate dictionaries are built in:

* "paper"        - logical X1 = ZZII, Z1 = XIXI, X2 = XXII, Z2 = ZIZI.  This
                   choice admits an ancilla-free transversal CNOT between the
                   logical qubits, which is what makes a fully fault-tolerant
                   one-query algorithm run possible.
* "conventional" - the choice standard in earlier error-detection
                   experiments: X1 = XIXI, Z1 = ZZII, X2 = XXII, Z2 = ZIZI,
                   with the two-qubit logical gates realised as physical
                   qubit relabelings.

Measuring all four qubits in the computational basis reads out the two
diagonal operators ZZII and ZIZI at once: an even-weight string decodes to
(b1 xor b2, b1 xor b3); odd-weight strings signal a detected error and the
run is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .simcore import (
    Circuit,
    GateKind,
    GateOp,
    pauli_matrix,
    phase_equivalent,
)

STABILIZER_X = "XXXX"
STABILIZER_Z = "ZZZZ"

DICTIONARY_NAMES = ("paper", "conventional")

_GATE_NAME_TO_KIND = {
    "X": GateKind.X,
    "Y": GateKind.Y,
    "Z": GateKind.Z,
    "H": GateKind.H,
    "S": GateKind.S,
    "SDG": GateKind.SDG,
}

# single-qubit matrices reused for logical unitaries
_I2 = np.eye(2, dtype=complex)
_X2 = pauli_matrix("X")
_Z2 = pauli_matrix("Z")
_H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_CNOT_12 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_CNOT_21 = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)


@dataclass(frozen=True)
class Relabeling:
    """A logical gate realised by renaming physical wires instead of gates.

    wire_map[i] is the physical wire that carries what wire i held before,
    so decoding (and any later transversal gate) must read wire i's role
    from wire_map[i].  No physical operation happens, hence no fault
    location either.
    """

    wire_map: tuple[int, int, int, int]

    def unitary(self) -> np.ndarray:
        dim = 16
        u = np.zeros((dim, dim), dtype=complex)
        for idx in range(dim):
            bits = [(idx >> (3 - q)) & 1 for q in range(4)]
            out = 0
            for q in range(4):
                out |= bits[self.wire_map[q]] << (3 - q)
            u[out, idx] = 1.0
        return u


@dataclass(frozen=True)
class DictionaryEntry:
    label: str
    logical: np.ndarray              # 4x4 unitary in the logical computational basis
    physical: tuple[str, ...] | Relabeling
    alt_physical: tuple[str, ...] | None = None

    def realisations(self):
        yield self.physical
        if self.alt_physical is not None:
            yield self.alt_physical


@dataclass(frozen=True)
class LogicalDictionary:
    name: str
    logical_x: tuple[str, str]       # physical words for X on logical qubits 1, 2
    logical_z: tuple[str, str]
    entries: tuple[DictionaryEntry, ...]
    first_bit_label: str             # what the decoded bit b1^b2 measures
    second_bit_label: str            # what b1^b3 measures

    def entry(self, label: str) -> DictionaryEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(f"no entry {label!r} in the {self.name} dictionary")


def _paper_dictionary() -> LogicalDictionary:
    entries = (
        DictionaryEntry("II", np.eye(4, dtype=complex), ("X", "X", "X", "X"),
                        alt_physical=("Z", "Z", "Z", "Z")),
        DictionaryEntry("XI", np.kron(_X2, _I2), ("Z", "Z", "I", "I")),
        DictionaryEntry("ZI", np.kron(_Z2, _I2), ("X", "I", "X", "I")),
        DictionaryEntry("IX", np.kron(_I2, _X2), ("X", "X", "I", "I")),
        DictionaryEntry("IZ", np.kron(_I2, _Z2), ("Z", "I", "Z", "I")),
        DictionaryEntry("CNOT21", _CNOT_21, ("S", "SDG", "SDG", "S")),
        DictionaryEntry("SWAP12", _SWAP, ("H", "H", "H", "H")),
    )
    return LogicalDictionary(
        name="paper",
        logical_x=("ZZII", "XXII"),
        logical_z=("XIXI", "ZIZI"),
        entries=entries,
        first_bit_label="X1",
        second_bit_label="Z2",
    )


def _conventional_dictionary() -> LogicalDictionary:
    entries = (
        DictionaryEntry("II", np.eye(4, dtype=complex), ("X", "X", "X", "X"),
                        alt_physical=("Z", "Z", "Z", "Z")),
        DictionaryEntry("XI", np.kron(_X2, _I2), ("X", "I", "X", "I")),
        DictionaryEntry("IX", np.kron(_I2, _X2), ("X", "X", "I", "I")),
        DictionaryEntry("ZI", np.kron(_Z2, _I2), ("Z", "Z", "I", "I")),
        DictionaryEntry("IZ", np.kron(_I2, _Z2), ("Z", "I", "Z", "I")),
        DictionaryEntry("SWAP12*HH", _SWAP @ np.kron(_H2, _H2), ("H", "H", "H", "H")),
        DictionaryEntry("CZ", _CZ, ("S", "SDG", "SDG", "S")),
        DictionaryEntry("CNOT12", _CNOT_12, Relabeling((1, 0, 2, 3))),
        DictionaryEntry("CNOT21", _CNOT_21, Relabeling((2, 1, 0, 3))),
        DictionaryEntry("SWAP12", _SWAP, Relabeling((0, 2, 1, 3))),
    )
    return LogicalDictionary(
        name="conventional",
        logical_x=("XIXI", "XXII"),
        logical_z=("ZZII", "ZIZI"),
        entries=entries,
        first_bit_label="Z1",
        second_bit_label="Z2",
    )


_DICTIONARIES = {"paper": _paper_dictionary(), "conventional": _conventional_dictionary()}


def get_dictionary(name: str | LogicalDictionary) -> LogicalDictionary:
    if isinstance(name, LogicalDictionary):
        return name
    try:
        return _DICTIONARIES[name]
    except KeyError:
        raise KeyError(f"unknown dictionary {name!r}; choose from {DICTIONARY_NAMES}") from None


# ---------------------------------------------------------------------------
# logical basis, built by brute force from the operator definitions

@lru_cache(maxsize=None)
def computational_logical_basis(name: str) -> np.ndarray:
    """16x4 matrix whose columns are |00>, |01>, |10>, |11> in logical terms.

    Constructed by projecting onto the codespace and the +1 eigenspaces of
    the dictionary's logical Z operators, then generating the other basis
    states with the logical X operators so that all logical Paulis act
    canonically by construction.
    """
    d = get_dictionary(name)
    proj = (np.eye(16) + pauli_matrix(STABILIZER_X)) @ (np.eye(16) + pauli_matrix(STABILIZER_Z)) / 4
    for z_word in d.logical_z:
        proj = proj @ (np.eye(16) + pauli_matrix(z_word)) / 2
    col = next(j for j in range(16) if np.linalg.norm(proj[:, j]) > 1e-9)
    v = proj[:, col]
    v = v / np.linalg.norm(v)
    pivot = v[np.argmax(np.abs(v) > 1e-9)]
    v = v * (abs(pivot) / pivot)
    x1 = pauli_matrix(d.logical_x[0])
    x2 = pauli_matrix(d.logical_x[1])
    return np.column_stack([v, x2 @ v, x1 @ v, x1 @ x2 @ v])


def logical_basis(dictionary: str | LogicalDictionary = "paper") -> dict[str, np.ndarray]:
    """The four labelled logical basis states as 16-component vectors.

    The "paper" dictionary labels the first logical qubit in the X basis
    (states "+0", "+1", "-0", "-1"), matching how that dictionary's
    measurement reads X on logical qubit 1; "conventional" returns the
    computational labels "00".."11".
    """
    d = get_dictionary(dictionary)
    b = computational_logical_basis(d.name)
    if d.name == "paper":
        s = 1 / np.sqrt(2)
        return {
            "+0": s * (b[:, 0] + b[:, 2]),
            "+1": s * (b[:, 1] + b[:, 3]),
            "-0": s * (b[:, 0] - b[:, 2]),
            "-1": s * (b[:, 1] - b[:, 3]),
        }
    return {"00": b[:, 0], "01": b[:, 1], "10": b[:, 2], "11": b[:, 3]}


# ---------------------------------------------------------------------------
# outcome post-selection and decoding

def accept(bits: str) -> bool:
    """True iff the measured 4-bit string has even weight (inside the codespace)."""
    if len(bits) != 4 or any(c not in "01" for c in bits):
        raise ValueError(f"expected a 4-bit string, got {bits!r}")
    return bits.count("1") % 2 == 0


class RejectedOutcomeError(ValueError):
    """Raised when decoding is attempted on an odd-parity (detected) string."""


@dataclass(frozen=True)
class LogicalOutcome:
    first: int
    second: int
    first_label: str
    second_label: str

    @property
    def bits(self) -> str:
        return f"{self.first}{self.second}"


def decode(bits: str, dictionary: str | LogicalDictionary = "paper") -> LogicalOutcome:
    """Decode an accepted 4-bit string into the two logical measurement bits.

    Both dictionaries share the physical formula (b1^b2, b1^b3) - the
    eigenvalue bits of ZZII and ZIZI - and differ only in which logical
    operator each bit is labelled as.
    """
    d = get_dictionary(dictionary)
    if not accept(bits):
        raise RejectedOutcomeError(f"{bits} has odd parity; post-select before decoding")
    b = [int(c) for c in bits]
    return LogicalOutcome(b[0] ^ b[1], b[0] ^ b[2], d.first_bit_label, d.second_bit_label)


# ---------------------------------------------------------------------------
# transversal circuits and their brute-force verification

def transversal_circuit(label: str, dictionary: str | LogicalDictionary = "paper",
                        segment: str = "logic") -> Circuit | Relabeling:
    """Physical realisation of a dictionary entry: a 4-qubit gate string, or
    a Relabeling marker for the entries implemented by renaming wires."""
    d = get_dictionary(dictionary)
    entry = d.entry(label)
    if isinstance(entry.physical, Relabeling):
        return entry.physical
    ops = tuple(
        GateOp(_GATE_NAME_TO_KIND[g], (q,), segment=segment)
        for q, g in enumerate(entry.physical)
        if g != "I"
    )
    return Circuit(f"transversal:{d.name}:{label}", 4, ops)


def _physical_unitary(realisation: tuple[str, ...] | Relabeling) -> np.ndarray:
    if isinstance(realisation, Relabeling):
        return realisation.unitary()
    from .simcore import gate_matrix

    u = np.eye(16, dtype=complex)
    for q, g in enumerate(realisation):
        if g == "I":
            continue
        m = [np.eye(2, dtype=complex)] * 4
        m[q] = gate_matrix(_GATE_NAME_TO_KIND[g])
        full = m[0]
        for part in m[1:]:
            full = np.kron(full, part)
        u = full @ u
    return u


@dataclass(frozen=True)
class EntryCheck:
    label: str
    physical: str
    passed: bool
    residual: float


def verify_dictionary_entry(label: str, dictionary: str | LogicalDictionary = "paper",
                            tol: float = 1e-10) -> bool:
    """True iff every physical realisation of the entry preserves the
    codespace and restricts on it to the entry's logical unitary up to a
    global phase, at tolerance `tol`."""
    return check_dictionary_entry(label, dictionary, tol).passed


def check_dictionary_entry(label: str, dictionary: str | LogicalDictionary = "paper",
                           tol: float = 1e-10) -> EntryCheck:
    d = get_dictionary(dictionary)
    entry = d.entry(label)
    basis = computational_logical_basis(d.name)
    worst = 0.0
    ok = True
    for realisation in entry.realisations():
        u = _physical_unitary(realisation)
        image = u @ basis
        restricted = basis.conj().T @ image
        leak = float(np.max(np.abs(image - basis @ restricted)))
        worst = max(worst, leak)
        if leak > tol:
            ok = False
            continue
        try:
            same = phase_equivalent(restricted, entry.logical, tol)
        except ValueError:
            same = False
        if not same:
            ok = False
            worst = max(worst, float(np.max(np.abs(restricted - entry.logical))))
    return EntryCheck(label, _describe(entry.physical), ok, worst)


def verify_dictionary(dictionary: str | LogicalDictionary = "paper",
                      tol: float = 1e-10) -> list[EntryCheck]:
    d = get_dictionary(dictionary)
    return [check_dictionary_entry(e.label, d, tol) for e in d.entries]


def _describe(realisation) -> str:
    if isinstance(realisation, Relabeling):
        return "relabel" + str(tuple(w + 1 for w in realisation.wire_map))
    return "(" + ", ".join(realisation) + ")"
