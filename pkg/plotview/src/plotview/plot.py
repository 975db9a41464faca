"""Render the percentage-noise-reduction bar chart from a comparison CSV.

Input is the comparison tool's documented CSV (columns circuit, shots,
accepted, post_selection_ratio, D_bare, sigma_bare, D_enc, sigma_enc, diff,
sigma_diff, reduction_pct).  One bar per row at y = reduction_pct with a
symmetric one-sigma error bar, sigma propagated first-order as
sigma_diff / D_bare (the bare distance's own error treated as subdominant).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = ("circuit", "D_bare", "sigma_diff", "reduction_pct")


@dataclass(frozen=True)
class SeriesRow:
    label: str
    reduction_pct: float
    sigma_pct: float


def parse_series(input_csv: str | Path) -> list[SeriesRow]:
    """Read the documented comparison CSV into plottable rows.

    Missing required columns, unparsable numbers, or an empty table are hard
    errors; rows with no defined reduction ("na") are skipped.
    """
    path = Path(input_csv)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"{path}: missing required column(s) {', '.join(missing)}")
        rows: list[SeriesRow] = []
        for lineno, record in enumerate(reader, start=2):
            if record["reduction_pct"] == "na":
                continue
            try:
                reduction = float(record["reduction_pct"])
                d_bare = float(record["D_bare"])
                sigma_diff = float(record["sigma_diff"])
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed row ({exc})") from None
            sigma_pct = 100.0 * sigma_diff / d_bare if d_bare > 0 else 0.0
            rows.append(SeriesRow(record["circuit"], reduction, sigma_pct))
    if not rows:
        raise ValueError(f"{path}: no plottable rows")
    return rows


def render(input_csv: str | Path, output_image: str | Path) -> list[SeriesRow]:
    """Draw the bar chart and save it; format follows the output extension.

    Returns the plotted series so callers can check exactly what was drawn.
    """
    rows = parse_series(input_csv)
    fig, ax = plt.subplots(figsize=(1.6 + 1.1 * len(rows), 4.2))
    positions = range(len(rows))
    ax.bar(
        positions,
        [r.reduction_pct for r in rows],
        yerr=[r.sigma_pct for r in rows],
        capsize=4,
        color="#4878cf",
        edgecolor="black",
        linewidth=0.6,
    )
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xticks(list(positions))
    ax.set_xticklabels([r.label for r in rows])
    ax.set_ylabel("noise reduction (%)")
    ax.set_xlabel("circuit")
    fig.tight_layout()
    fig.savefig(output_image)
    plt.close(fig)
    return rows


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plotview", description=__doc__)
    parser.add_argument("--input", required=True, help="comparison CSV to plot")
    parser.add_argument("--output", required=True,
                        help="image file; extension picks the format (png/pdf/svg)")
    args = parser.parse_args(argv)
    try:
        rows = render(args.input, args.output)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output} ({len(rows)} bars)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
