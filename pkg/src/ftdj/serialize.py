"""Circuit export/import.

JSON schema (exact rationals survive the round trip; barriers and segment
tags are kept so the independently-prepared sections stay visible):

    {"name": str, "n_qubits": int,
     "ops": [{"kind": str, "qubits": [int, ...],
              "param_turns": "p/q" | null, "segment": str}, ...]}

A plain-text form (one op per line) is also provided for human diffing.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .simcore import Circuit, GateKind, GateOp


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "name": circuit.name,
        "n_qubits": circuit.n_qubits,
        "ops": [
            {
                "kind": op.kind.value,
                "qubits": list(op.qubits),
                "param_turns": None if op.turns is None else f"{op.turns.numerator}/{op.turns.denominator}",
                "segment": op.segment,
            }
            for op in circuit.ops
        ],
    }


def circuit_from_dict(data: dict) -> Circuit:
    ops = []
    for item in data["ops"]:
        turns = item.get("param_turns")
        ops.append(
            GateOp(
                kind=GateKind(item["kind"]),
                qubits=tuple(item["qubits"]),
                turns=None if turns is None else Fraction(turns),
                segment=item.get("segment", "logic"),
            )
        )
    return Circuit(data["name"], data["n_qubits"], tuple(ops))


def circuit_to_json(circuit: Circuit, indent: int | None = 2) -> str:
    return json.dumps(circuit_to_dict(circuit), indent=indent)


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


def circuit_to_text(circuit: Circuit) -> str:
    """One op per line: kind(turns) qubits, e.g. "GPI(1/8) q1" or "CNOT q1,q0"."""
    lines = [f"# {circuit.name}  ({circuit.n_qubits} qubits)"]
    for op in circuit.ops:
        if op.kind is GateKind.BARRIER:
            lines.append("BARRIER")
            continue
        if op.kind is GateKind.MEASURE_ALL:
            lines.append("MEASURE_ALL")
            continue
        name = op.kind.value
        if op.turns is not None:
            name += f"({op.turns.numerator}/{op.turns.denominator})" if op.turns.denominator != 1 \
                else f"({op.turns.numerator})"
        lines.append(f"{name} " + ",".join(f"q{q}" for q in op.qubits))
    return "\n".join(lines) + "\n"
