"""Command-line entry point.

Subcommands:
    list               enumerate the circuit catalog
    export             write one circuit as JSON or a plain gate list
    verify-transversal check every logical-gate dictionary entry
    verify-ft          exhaustive single-fault audit of one circuit
    run                sample one circuit under the noise model
    compare            paired bare-vs-encoded comparison table (CSV/JSON)
    sweep              compare over a grid of noise parameters

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .circuitlib import ENTANGLED_IDS, ORACLES, catalog, get_entry
from .code422 import DICTIONARY_NAMES, verify_dictionary
from .experiment import (
    comparison_to_csv,
    comparison_to_json_obj,
    compare_all,
    compare_entangled,
    run_circuit,
    sweep,
    sweep_to_csv,
)
from .ftverify import verify_catalog_circuit
from .noisefault import CALIBRATED_NOISE, NoiseModel, expected_fault_count
from .serialize import circuit_to_json, circuit_to_text
from .simcore import DEFAULT_SEED

USAGE_ERROR = 2
CHECK_FAILED = 1


def _add_noise_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p1", type=float, default=CALIBRATED_NOISE.p1,
                   help="fault probability after each single-qubit gate")
    p.add_argument("--p2", type=float, default=CALIBRATED_NOISE.p2,
                   help="fault probability after each two-qubit gate")
    p.add_argument("--pm", type=float, default=CALIBRATED_NOISE.p_meas,
                   help="readout bit-flip probability per measured qubit")
    p.add_argument("--pprep", type=float, default=0.0,
                   help="preparation flip probability per qubit")
    p.add_argument("--include-idle", action="store_true",
                   help="also count idle windows as fault locations")


def _noise_from(args) -> NoiseModel:
    return NoiseModel(p1=args.p1, p2=args.p2, p_meas=args.pm,
                      p_prep=args.pprep, include_idle=args.include_idle)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftdj", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"ftdj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the circuit catalog")

    p = sub.add_parser("export", help="export one circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("verify-transversal", help="check the logical-gate dictionaries")
    p.add_argument("--dictionary", choices=DICTIONARY_NAMES + ("both",), default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")

    p = sub.add_parser("verify-ft", help="exhaustive single-fault audit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("run", help="sample one circuit under noise")
    p.add_argument("--circuit", required=True)
    p.add_argument("--shots", type=int, default=4096)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    _add_noise_args(p)

    p = sub.add_parser("compare", help="paired bare-vs-encoded comparison")
    p.add_argument("--set", dest="which", choices=("dj", "entangled"), default="dj")
    p.add_argument("--encoded-form", choices=("clifford", "native"), default="clifford")
    p.add_argument("--shots", type=int, default=4096)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--include-average", action="store_true",
                   help="append the cross-circuit average row to the CSV")
    p.add_argument("--out")
    _add_noise_args(p)

    p = sub.add_parser("sweep", help="comparison over a noise-parameter grid")
    p.add_argument("--p1-values", default=str(CALIBRATED_NOISE.p1))
    p.add_argument("--p2-values", default=str(CALIBRATED_NOISE.p2))
    p.add_argument("--pm-values", default=str(CALIBRATED_NOISE.p_meas))
    p.add_argument("--oracles", default=",".join(ORACLES))
    p.add_argument("--encoded-form", choices=("clifford", "native"), default="clifford")
    p.add_argument("--shots", type=int, default=4096)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    return parser


def _cmd_list(args) -> int:
    for name, entry in catalog().items():
        print(f"{name:28s} {entry.kind:12s} {entry.circuit.n_qubits} qubits")
    return 0


def _cmd_export(args) -> int:
    entry = get_entry(args.circuit)
    text = circuit_to_json(entry.circuit) + "\n" if args.format == "json" \
        else circuit_to_text(entry.circuit)
    _write(text, args.out)
    return 0


def _cmd_verify_transversal(args) -> int:
    names = DICTIONARY_NAMES if args.dictionary == "both" else (args.dictionary,)
    all_ok = True
    payload = {}
    lines = []
    for name in names:
        checks = verify_dictionary(name, tol=args.tol)
        payload[name] = [
            {"label": c.label, "physical": c.physical, "passed": c.passed, "residual": c.residual}
            for c in checks
        ]
        lines.append(f"dictionary: {name}")
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  {status}  {c.label:12s} {c.physical:22s} residual {c.residual:.2e}")
            all_ok &= c.passed
    if args.format == "json":
        _write(json.dumps({"dictionaries": payload, "all_passed": all_ok}, indent=2) + "\n", args.out)
    else:
        lines.append("all entries pass" if all_ok else "FAILURES present")
        _write("\n".join(lines) + "\n", args.out)
    return 0 if all_ok else CHECK_FAILED


def _cmd_verify_ft(args) -> int:
    base = verify_catalog_circuit(args.circuit)
    with_prep = verify_catalog_circuit(args.circuit, include_prep=True)
    def block(r):
        return {
            "total_faults": r.total_faults,
            "counts": r.counts(),
            "fault_tolerant": r.fault_tolerant,
            "worst_offender": None if r.worst is None else {
                "location": {
                    "kind": r.worst.fault.location.kind,
                    "qubits": list(r.worst.fault.location.qubits),
                    "after_op": r.worst.fault.location.after_op,
                },
                "pauli": r.worst.fault.pauli,
                "accept_probability": r.worst.accept_probability,
                "wrong_probability": r.worst.wrong_probability,
            },
        }
    payload = {"circuit": args.circuit, "base": block(base), "with_prep_flips": block(with_prep)}
    if args.format == "json":
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"circuit: {args.circuit}"]
        for title, r in (("gate+measurement faults", base), ("incl. preparation flips", with_prep)):
            verdict = "FAULT-TOLERANT" if r.fault_tolerant else "NOT fault-tolerant"
            lines.append(
                f"  {title}: {r.total_faults} faults | detected {r.n_detected}, "
                f"harmless {r.n_harmless}, logical errors {r.n_logical_error} -> {verdict}"
            )
        _write("\n".join(lines) + "\n", args.out)
    return 0 if base.fault_tolerant and with_prep.fault_tolerant else CHECK_FAILED


def _cmd_run(args) -> int:
    model = _noise_from(args)
    result = run_circuit(args.circuit, args.shots, model, args.seed, workers=args.workers)
    payload = {
        "circuit": result.name,
        "shots": result.shots,
        "accepted": result.accepted,
        "post_selection_ratio": result.post_selection_ratio,
        "observed": result.observed,
        "ideal": result.ideal,
        "statistical_distance": result.distance,
        "sigma": result.sigma,
        "expected_faults_per_shot": expected_fault_count(get_entry(args.circuit).circuit, model),
        "counts": dict(result.counts.counts),
    }
    if args.format == "json":
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"circuit: {result.name}",
            f"shots {result.shots}, accepted {result.accepted} "
            f"(ratio {result.post_selection_ratio:.5f})",
            f"observed: " + ", ".join(f"{k}: {v:.5f}" for k, v in result.observed.items()),
            f"distance to ideal: {result.distance:.5f} +- {result.sigma:.5f}",
        ]
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_compare(args) -> int:
    model = _noise_from(args)
    if args.which == "dj":
        report = compare_all(ORACLES, args.shots, model, args.seed,
                             encoded_form=args.encoded_form, workers=args.workers)
    else:
        report = compare_entangled(ENTANGLED_IDS, args.shots, model, args.seed,
                                   workers=args.workers)
    if args.format == "json":
        _write(json.dumps(comparison_to_json_obj(report), indent=2) + "\n", args.out)
    else:
        _write(comparison_to_csv(report, include_average=args.include_average), args.out)
    return 0


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise ValueError(f"bad value list {text!r}; expected comma-separated floats") from None


def _cmd_sweep(args) -> int:
    oracles = tuple(o.strip() for o in args.oracles.split(",") if o.strip())
    for o in oracles:
        if o not in ORACLES:
            raise KeyError(f"unknown oracle {o!r}")
    results = sweep(
        _parse_values(args.p1_values),
        _parse_values(args.p2_values),
        _parse_values(args.pm_values),
        oracles,
        args.shots,
        args.seed,
        encoded_form=args.encoded_form,
        workers=args.workers,
    )
    _write(sweep_to_csv(results), args.out)
    return 0


_COMMANDS = {
    "list": _cmd_list,
    "export": _cmd_export,
    "verify-transversal": _cmd_verify_transversal,
    "verify-ft": _cmd_verify_ft,
    "run": _cmd_run,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
