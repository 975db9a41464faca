#!/usr/bin/env python3
"""Exhaustive single-fault audit of every circuit in the catalog."""

from ftdj.circuitlib import catalog
from ftdj.ftverify import verify_catalog_circuit


def main() -> None:
    print(f"{'circuit':28s} {'faults':>6s} {'detected':>8s} {'harmless':>8s} "
          f"{'logical':>7s}  verdict")
    for name in catalog():
        r = verify_catalog_circuit(name)
        verdict = "fault-tolerant" if r.fault_tolerant else "NOT fault-tolerant"
        print(f"{name:28s} {r.total_faults:6d} {r.n_detected:8d} {r.n_harmless:8d} "
              f"{r.n_logical_error:7d}  {verdict}")


if __name__ == "__main__":
    main()
