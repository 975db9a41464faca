#!/usr/bin/env python3
"""Run the seeded bare-vs-encoded comparison at the calibrated noise defaults
and drop CSV + JSON artifacts into results/."""

import argparse
import json
import pathlib

from ftdj.experiment import compare_all, comparison_to_csv, comparison_to_json_obj
from ftdj.noisefault import CALIBRATED_NOISE
from ftdj.simcore import DEFAULT_SEED


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=40960)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--encoded-form", choices=("clifford", "native"), default="clifford")
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    report = compare_all(shots=args.shots, model=CALIBRATED_NOISE, seed=args.seed,
                         encoded_form=args.encoded_form)
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = f"comparison_{args.encoded_form}_s{args.shots}_seed{args.seed}"
    (outdir / f"{stem}.csv").write_text(comparison_to_csv(report))
    (outdir / f"{stem}.json").write_text(json.dumps(comparison_to_json_obj(report), indent=2))

    print(comparison_to_csv(report, include_average=True))
    red = report.average_reduction
    print(f"average noise reduction: {100 * red:+.2f}%" if red is not None else "average: n/a")
    print(f"wrote {outdir / stem}.csv and .json")


if __name__ == "__main__":
    main()
