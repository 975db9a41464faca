"""Builders for every concrete circuit the package studies.

* the bare two-qubit one-query constant-vs-balanced circuit, for all four
  single-bit oracles,
* its encoded four-qubit counterpart on the error-detecting code (standard
  gates and the trapped-ion native-gate version), and
* eight two-qubit entangled-state preparations, bare and encoded.

Each catalog entry pairs a circuit with the decoder that turns measured
bitstrings into the quantity the experiment compares (an answer bit, or a
two-bit outcome distribution) and with the exact noiseless reference
distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from . import code422
from .simcore import (
    Circuit,
    GateKind,
    GateOp,
    apply_circuit,
    outcome_distribution,
)

ORACLES = ("f0", "fx", "f1x", "f1")
CONSTANT_ORACLES = frozenset({"f0", "f1"})
ENTANGLED_IDS = ("A", "B", "C", "D", "E", "F", "G", "H")

_F = Fraction


def _op(kind: GateKind, *qubits: int, seg: str = "logic", turns=None) -> GateOp:
    return GateOp(kind, tuple(qubits), turns=turns, segment=seg)


def _barrier(seg: str) -> GateOp:
    return GateOp(GateKind.BARRIER, (), segment=seg)


def _measure() -> GateOp:
    return GateOp(GateKind.MEASURE_ALL, (), segment="readout")


def _check_oracle(oracle: str) -> None:
    if oracle not in ORACLES:
        raise KeyError(f"unknown oracle {oracle!r}; choose from {ORACLES}")


# ---------------------------------------------------------------------------
# bare and encoded one-query circuits

def bare_dj(oracle: str) -> Circuit:
    """Two-qubit bare circuit: qubit 1 answers constant-vs-balanced.

    Prep X,H on both qubits; the oracle owns its barrier-delimited section;
    the final H rotates the answer qubit back to the computational basis.
    """
    _check_oracle(oracle)
    ops = [
        _op(GateKind.X, 0, seg="prep"),
        _op(GateKind.X, 1, seg="prep"),
        _op(GateKind.H, 0, seg="prep"),
        _op(GateKind.H, 1, seg="prep"),
        _barrier("oracle"),
    ]
    if oracle == "fx":
        ops.append(_op(GateKind.CNOT, 1, 0, seg="oracle"))
    elif oracle == "f1x":
        ops.append(_op(GateKind.X, 0, seg="oracle"))
        ops.append(_op(GateKind.CNOT, 1, 0, seg="oracle"))
    elif oracle == "f1":
        ops.append(_op(GateKind.X, 0, seg="oracle"))
    ops.append(_barrier("readout"))
    ops.append(_op(GateKind.H, 1, seg="readout"))
    ops.append(_measure())
    return Circuit(f"bare-dj:{oracle}", 2, tuple(ops))


def _bell_pair_prep() -> list[GateOp]:
    """Ancilla-free preparation of two Bell pairs on (q1,q2) and (q3,q4)."""
    return [
        _op(GateKind.H, 1, seg="prep"),
        _op(GateKind.H, 3, seg="prep"),
        _op(GateKind.CNOT, 1, 0, seg="prep"),
        _op(GateKind.CNOT, 3, 2, seg="prep"),
    ]


_ENCODED_ORACLE_GATES = {
    # one composite gate per qubit; SDG is the ZS factor
    "f0": (),
    "fx": ((GateKind.S, 0), (GateKind.SDG, 1), (GateKind.SDG, 2), (GateKind.S, 3)),
    "f1x": ((GateKind.SDG, 0), (GateKind.S, 1), (GateKind.SDG, 2), (GateKind.S, 3)),
    "f1": ((GateKind.Z, 0), (GateKind.Z, 1)),
}


def encoded_dj(oracle: str) -> Circuit:
    """Encoded four-qubit circuit: Bell-pair prep, Y on the pair controls,
    the transversal oracle, then transversal H (a logical swap) and readout.
    """
    _check_oracle(oracle)
    ops = _bell_pair_prep()
    ops.append(_barrier("prep"))
    ops.append(_op(GateKind.Y, 1, seg="prep"))
    ops.append(_op(GateKind.Y, 3, seg="prep"))
    ops.append(_barrier("oracle"))
    ops.extend(_op(kind, q, seg="oracle") for kind, q in _ENCODED_ORACLE_GATES[oracle])
    ops.append(_barrier("readout"))
    ops.extend(_op(GateKind.H, q, seg="readout") for q in range(4))
    ops.append(_measure())
    return Circuit(f"encoded-dj:{oracle}", 4, tuple(ops))


_NATIVE_ORACLE_TURNS = {
    # per qubit: GPI(0) then GPI(second) realises the transversal phase gates
    "f0": None,
    "fx": (_F(1, 8), _F(3, 8), _F(3, 8), _F(1, 8)),
    "f1x": (_F(3, 8), _F(1, 8), _F(3, 8), _F(1, 8)),
    "f1": "z-pair",
}


def native_encoded_dj(oracle: str) -> Circuit:
    """The encoded circuit transcribed to the trapped-ion native gate set.

    The Y layer of the standard form is folded into the GPI2(1/4) prep
    column, and GPI2(1/4)+GPI(0) per qubit realises the readout H exactly.
    """
    _check_oracle(oracle)
    ops = [
        _op(GateKind.GPI, 1, seg="prep", turns=_F(0)),
        _op(GateKind.GPI, 3, seg="prep", turns=_F(0)),
        _op(GateKind.MS, 0, 1, seg="prep"),
        _op(GateKind.MS, 2, 3, seg="prep"),
    ]
    ops.extend(_op(GateKind.GPI2, q, seg="prep", turns=_F(1, 2)) for q in range(4))
    ops.append(_op(GateKind.GPI2, 1, seg="prep", turns=_F(1, 4)))
    ops.append(_op(GateKind.GPI2, 3, seg="prep", turns=_F(1, 4)))
    ops.append(_barrier("oracle"))
    spec = _NATIVE_ORACLE_TURNS[oracle]
    if spec == "z-pair":
        for q in (0, 1):
            ops.append(_op(GateKind.GPI, q, seg="oracle", turns=_F(1, 2)))
        for q in (0, 1):
            ops.append(_op(GateKind.GPI, q, seg="oracle", turns=_F(1, 4)))
    elif spec is not None:
        for q in range(4):
            ops.append(_op(GateKind.GPI, q, seg="oracle", turns=_F(0)))
        for q, t in enumerate(spec):
            ops.append(_op(GateKind.GPI, q, seg="oracle", turns=t))
    ops.append(_barrier("readout"))
    ops.extend(_op(GateKind.GPI2, q, seg="readout", turns=_F(1, 4)) for q in range(4))
    ops.extend(_op(GateKind.GPI, q, seg="readout", turns=_F(0)) for q in range(4))
    ops.append(_barrier("readout"))
    ops.append(_measure())
    return Circuit(f"encoded-dj-native:{oracle}", 4, tuple(ops))


def encoded_oracle_fragment(oracle: str) -> Circuit:
    """Just the transversal oracle gates, as a 4-qubit fragment."""
    _check_oracle(oracle)
    ops = tuple(_op(kind, q, seg="oracle") for kind, q in _ENCODED_ORACLE_GATES[oracle])
    return Circuit(f"oracle:{oracle}", 4, ops)


def native_oracle_fragment(oracle: str) -> Circuit:
    """The native-gate oracle column pair, as a 4-qubit fragment."""
    _check_oracle(oracle)
    native = native_encoded_dj(oracle)
    ops = tuple(op for op in native.ops if op.is_gate and op.segment == "oracle")
    return Circuit(f"oracle-native:{oracle}", 4, ops)


# ---------------------------------------------------------------------------
# entangled-state circuits
#
# Each unitary word is a list of steps applied left to right; "q1"/"q2"
# address the two (logical) qubits.  In the printed two-factor form the
# first factor belongs to qubit 2 - the reading under which every final
# state below reproduces its distribution.

_ENTANGLED_WORDS: dict[str, tuple] = {
    "A": ("bell", ()),
    "B": ("bell", (("Z", 1),)),
    "C": ("bell", (("X", 2),)),
    "D": ("bell", (("X", 1), ("Z", 1))),
    "E": ("zero", (("HH", None),)),
    "F": ("zero", (("HH", None), ("Z", 2))),
    "G": ("zero", (("HH", None), ("Z", 1))),
    "H": ("zero", (("X", 2), ("HH", None), ("CZ", None), ("X", 2))),
}
# E-G share the trailing controlled-Z:
_ENTANGLED_WORDS["E"] = ("zero", (("HH", None), ("CZ", None)))
_ENTANGLED_WORDS["F"] = ("zero", (("HH", None), ("Z", 2), ("CZ", None)))
_ENTANGLED_WORDS["G"] = ("zero", (("HH", None), ("Z", 1), ("CZ", None)))

#: exact final two-qubit states (basis 00,01,10,11), up to global phase
ENTANGLED_FINAL_STATES = {
    "A": (1, 0, 0, 1),
    "B": (1, 0, 0, -1),
    "C": (0, 1, 1, 0),
    "D": (0, -1, 1, 0),
    "E": (1, 1, 1, -1),
    "F": (1, -1, 1, 1),
    "G": (1, 1, -1, 1),
    "H": (1, -1, -1, -1),
}

_PAULI_KIND = {"X": GateKind.X, "Z": GateKind.Z}


def _check_entangled(circuit_id: str) -> None:
    if circuit_id not in ENTANGLED_IDS:
        raise KeyError(f"unknown entangled circuit {circuit_id!r}; choose from A..H")


def bare_entangled(circuit_id: str) -> Circuit:
    """Two-qubit preparation of one of the eight reference entangled states."""
    _check_entangled(circuit_id)
    init, word = _ENTANGLED_WORDS[circuit_id]
    ops: list[GateOp] = []
    if init == "bell":
        ops.append(_op(GateKind.H, 0, seg="prep"))
        ops.append(_op(GateKind.CNOT, 0, 1, seg="prep"))
    ops.append(_barrier("logic"))
    for step, logical_qubit in word:
        if step == "HH":
            ops.append(_op(GateKind.H, 0))
            ops.append(_op(GateKind.H, 1))
        elif step == "CZ":
            ops.append(_op(GateKind.CZ, 0, 1))
        else:
            ops.append(_op(_PAULI_KIND[step], logical_qubit - 1))
    ops.append(_barrier("readout"))
    ops.append(_measure())
    return Circuit(f"entangled:{circuit_id}:bare", 2, tuple(ops))


def _flagged_logical_zero_prep() -> list[GateOp]:
    """Fault-tolerant preparation of the logical |00> on qubits 1-4 plus a
    parity-flag ancilla on qubit 5.

    The spreader chain can turn one mid-chain fault into a weight-two X
    error inside the codespace; the two flag couplings read the ZZII
    logical parity, which any such error flips, so post-selecting on a
    clear flag restores fault tolerance without touching the data.
    """
    ops = [_op(GateKind.H, 0, seg="prep")]
    ops.extend(_op(GateKind.CNOT, 0, t, seg="prep") for t in (1, 2, 3))
    ops.append(_op(GateKind.CNOT, 0, 4, seg="prep"))
    ops.append(_op(GateKind.CNOT, 1, 4, seg="prep"))
    return ops


def encoded_entangled(circuit_id: str) -> Circuit:
    """Encoded counterpart of a bare entangled circuit, under the
    "conventional" dictionary.

    A-D start from the Bell-pair product and reach the logical Bell state
    through a wire relabeling; their Pauli words compile to transversal
    Paulis on the relabelled wires.  E-H need the logical |00> start, which
    is prepared fault-tolerantly with one flag ancilla; their H(x)H word
    step is realised by transversal H, whose built-in logical swap is
    commuted to the end and folded into the decoder.
    """
    _check_entangled(circuit_id)
    d = code422.get_dictionary("conventional")
    init, word = _ENTANGLED_WORDS[circuit_id]
    ops: list[GateOp] = []
    if init == "bell":
        ops.extend(_bell_pair_prep())
        wire_map = d.entry("CNOT21").physical.wire_map
        n_qubits = 4
    else:
        ops.extend(_flagged_logical_zero_prep())
        wire_map = (0, 1, 2, 3)
        n_qubits = 5
    ops.append(_barrier("logic"))
    swapped = False
    for step, logical_qubit in word:
        if step == "HH":
            ops.extend(_op(GateKind.H, wire_map[q]) for q in range(4))
            swapped = not swapped
        elif step == "CZ":
            frag = code422.transversal_circuit("CZ", d)
            ops.extend(replace(op, qubits=(wire_map[op.qubits[0]],)) for op in frag.ops)
        else:
            target = logical_qubit
            if swapped:
                target = 3 - target
            word4 = (d.logical_x if step == "X" else d.logical_z)[target - 1]
            for q, ch in enumerate(word4):
                if ch != "I":
                    ops.append(_op(_PAULI_KIND[ch], wire_map[q]))
    ops.append(_barrier("readout"))
    ops.append(_measure())
    circuit = Circuit(f"entangled:{circuit_id}:encoded", n_qubits, tuple(ops))
    return circuit


def entangled_circuit(circuit_id: str, encoded: bool) -> Circuit:
    return encoded_entangled(circuit_id) if encoded else bare_entangled(circuit_id)


# ---------------------------------------------------------------------------
# decoders and the circuit catalog

@dataclass(frozen=True)
class Decoder:
    """Turns a measured bitstring into an outcome label, with post-selection.

    mode "bit"  : the label is a single answer bit.
    mode "pair" : the label is the two-bit (logical) outcome.
    Encoded decoders accept only even-parity data strings (and a clear flag
    bit, when present); wire_roles redirects the decode formula through any
    wire relabeling, and swap_logical folds a trailing logical swap into the
    reported bit order.
    """

    mode: str
    encoded: bool
    answer_qubit: int | None = None
    wire_roles: tuple[int, int, int, int] = (0, 1, 2, 3)
    swap_logical: bool = False
    flag_qubit: int | None = None
    dictionary: str = "paper"

    def labels(self) -> tuple[str, ...]:
        return ("0", "1") if self.mode == "bit" else ("00", "01", "10", "11")

    def accepts(self, bits: str) -> bool:
        if not self.encoded:
            return True
        if self.flag_qubit is not None and bits[self.flag_qubit] != "0":
            return False
        data = [bits[w] for w in self.wire_roles]
        return data.count("1") % 2 == 0

    def label(self, bits: str) -> str:
        if not self.encoded:
            if self.mode == "bit":
                return bits[self.answer_qubit]
            return bits
        b = [int(bits[w]) for w in self.wire_roles]
        first, second = b[0] ^ b[1], b[0] ^ b[2]
        if self.swap_logical:
            first, second = second, first
        if self.mode == "bit":
            return str(first)
        return f"{first}{second}"


@dataclass(frozen=True)
class CatalogEntry:
    """A named circuit plus its decoder and exact noiseless reference."""

    name: str
    kind: str  # "dj-bare" | "dj-encoded" | "dj-native" | "ent-bare" | "ent-encoded"
    circuit: Circuit
    decoder: Decoder

    @property
    def ideal(self) -> dict[str, float]:
        return ideal_distribution(self.name)


_BARE_BIT = Decoder(mode="bit", encoded=False, answer_qubit=1)
_ENC_BIT = Decoder(mode="bit", encoded=True, dictionary="paper")
_BARE_PAIR = Decoder(mode="pair", encoded=False)


def _entangled_decoder(circuit_id: str) -> Decoder:
    d = code422.get_dictionary("conventional")
    init, word = _ENTANGLED_WORDS[circuit_id]
    if init == "bell":
        wire_map = d.entry("CNOT21").physical.wire_map
        return Decoder(mode="pair", encoded=True, wire_roles=wire_map,
                       dictionary="conventional")
    swaps = sum(1 for step, _ in word if step == "HH")
    return Decoder(mode="pair", encoded=True, swap_logical=swaps % 2 == 1,
                   flag_qubit=4, dictionary="conventional")


@lru_cache(maxsize=1)
def catalog() -> dict[str, CatalogEntry]:
    """Every runnable circuit, keyed by its external name."""
    entries: list[CatalogEntry] = []
    for oracle in ORACLES:
        entries.append(CatalogEntry(f"bare-dj:{oracle}", "dj-bare", bare_dj(oracle), _BARE_BIT))
        entries.append(CatalogEntry(f"encoded-dj:{oracle}", "dj-encoded", encoded_dj(oracle), _ENC_BIT))
        entries.append(
            CatalogEntry(f"encoded-dj-native:{oracle}", "dj-native", native_encoded_dj(oracle), _ENC_BIT)
        )
    for cid in ENTANGLED_IDS:
        entries.append(
            CatalogEntry(f"entangled:{cid}:bare", "ent-bare", bare_entangled(cid), _BARE_PAIR)
        )
        entries.append(
            CatalogEntry(f"entangled:{cid}:encoded", "ent-encoded", encoded_entangled(cid),
                         _entangled_decoder(cid))
        )
    return {e.name: e for e in entries}


def get_entry(name: str) -> CatalogEntry:
    entry = catalog().get(name)
    if entry is None:
        raise KeyError(f"unknown circuit {name!r}; see `list` for the catalog")
    return entry


@lru_cache(maxsize=None)
def ideal_distribution(name: str) -> dict[str, float]:
    """Exact noiseless outcome distribution over the entry's decoder labels."""
    entry = get_entry(name)
    state = apply_circuit(entry.circuit)
    raw = outcome_distribution(state)
    dist = {label: 0.0 for label in entry.decoder.labels()}
    accepted = 0.0
    for bits, p in raw.items():
        if entry.decoder.accepts(bits):
            dist[entry.decoder.label(bits)] += p
            accepted += p
    if accepted <= 0.0:
        raise ValueError(f"{name}: no accepted outcomes in the noiseless run")
    return {k: v / accepted for k, v in dist.items()}
