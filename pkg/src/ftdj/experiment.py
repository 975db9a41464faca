"""Monte-Carlo runs and the comparison statistics between bare and encoded
circuits: post-selection, logical marginals, statistical distance, binomial
standard errors, and percentage noise reduction.

All shot sampling is routed through per-shot substreams, so every report is
byte-identical across reruns with the same seed and across any parallelism
setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import code422
from .circuitlib import ENTANGLED_IDS, ORACLES, CatalogEntry, get_entry
from .noisefault import CALIBRATED_NOISE, NoiseModel
from .simcore import DEFAULT_SEED, OutcomeCounts, sample_shots

#: normal quantile for two-sided 99% confidence
Z_99 = 2.576


class AllShotsRejectedError(RuntimeError):
    """Raised when post-selection discards every measured shot."""


# ---------------------------------------------------------------------------
# statistics on distributions

def statistical_distance(ideal: Mapping[str, float], observed: Mapping[str, float]) -> float:
    """Total variation distance (1/2) sum_i |P_i - O_i| over a shared outcome set."""
    if set(ideal) != set(observed):
        raise ValueError(f"outcome sets differ: {sorted(ideal)} vs {sorted(observed)}")
    for name, dist in (("ideal", ideal), ("observed", observed)):
        total = sum(dist.values())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"{name} distribution sums to {total}")
    return 0.5 * sum(abs(ideal[k] - observed[k]) for k in ideal)


def standard_errors(observed: Mapping[str, float] | Iterable[float], accepted: int) -> float:
    """Binomial standard error of the statistical distance.

    Per outcome sigma_p = sqrt(p(1-p)/N); the distance inherits
    sigma_D = (1/2) sqrt(sum sigma_p^2), conditioning on the accepted count.
    """
    if accepted < 1:
        raise ValueError("need at least one accepted shot")
    probs = list(observed.values()) if isinstance(observed, Mapping) else list(observed)
    return 0.5 * math.sqrt(sum(p * (1.0 - p) for p in probs) / accepted)


def sigma_difference(sigma_a: float, sigma_b: float) -> float:
    return math.hypot(sigma_a, sigma_b)


def noise_reduction(d_enc: float, d_bare: float) -> float:
    """Signed fractional change (D_enc - D_bare) / D_bare; negative improves."""
    if d_bare <= 0.0:
        raise ValueError("noise reduction is undefined at zero bare distance")
    return (d_enc - d_bare) / d_bare


def average_noise_reduction(d_bare: Sequence[float], d_enc: Sequence[float]) -> float:
    """Cross-circuit average: reduction of the mean distances."""
    if len(d_bare) != len(d_enc) or not d_bare:
        raise ValueError("need matching non-empty distance lists")
    mean_bare = sum(d_bare) / len(d_bare)
    mean_enc = sum(d_enc) / len(d_enc)
    return noise_reduction(mean_enc, mean_bare)


# ---------------------------------------------------------------------------
# post-selection and logical marginals for 4-bit outcome counts

@dataclass(frozen=True)
class LogicalMarginals:
    accepted: int
    post_selection_ratio: float
    buckets: dict[str, float]      # renormalised probabilities of 00,01,10,11
    r0: float                      # buckets[00] + buckets[01]
    r1: float


def logical_marginals(counts: OutcomeCounts, dictionary: str = "paper") -> LogicalMarginals:
    """Discard odd-parity strings, renormalise, and bucket by logical outcome."""
    buckets = {"00": 0.0, "01": 0.0, "10": 0.0, "11": 0.0}
    accepted = 0
    for bits, c in counts.items():
        if code422.accept(bits):
            outcome = code422.decode(bits, dictionary)
            buckets[outcome.bits] += c
            accepted += c
    if accepted == 0:
        raise AllShotsRejectedError("post-selection discarded every shot")
    buckets = {k: v / accepted for k, v in buckets.items()}
    return LogicalMarginals(
        accepted=accepted,
        post_selection_ratio=accepted / counts.shots,
        buckets=buckets,
        r0=buckets["00"] + buckets["01"],
        r1=buckets["10"] + buckets["11"],
    )


# ---------------------------------------------------------------------------
# catalog-driven runs

@dataclass(frozen=True)
class CircuitRun:
    """One circuit sampled under one noise model, reduced to its decoder labels."""

    name: str
    shots: int
    accepted: int
    post_selection_ratio: float
    observed: dict[str, float]
    ideal: dict[str, float]
    distance: float
    sigma: float
    counts: OutcomeCounts


def run_circuit(
    entry: CatalogEntry | str,
    shots: int,
    model: NoiseModel | None = None,
    seed: int = DEFAULT_SEED,
    *,
    workers: int = 1,
) -> CircuitRun:
    if isinstance(entry, str):
        entry = get_entry(entry)
    counts = sample_shots(entry.circuit, shots, noise=model, seed=seed, workers=workers)
    decoder = entry.decoder
    observed = {label: 0.0 for label in decoder.labels()}
    accepted = 0
    for bits, c in counts.items():
        if decoder.accepts(bits):
            observed[decoder.label(bits)] += c
            accepted += c
    if accepted == 0:
        raise AllShotsRejectedError(f"{entry.name}: post-selection discarded every shot")
    observed = {k: v / accepted for k, v in observed.items()}
    ideal = entry.ideal
    return CircuitRun(
        name=entry.name,
        shots=shots,
        accepted=accepted,
        post_selection_ratio=accepted / shots,
        observed=observed,
        ideal=ideal,
        distance=statistical_distance(ideal, observed),
        sigma=standard_errors(observed, accepted),
        counts=counts,
    )


# ---------------------------------------------------------------------------
# paired comparisons

@dataclass(frozen=True)
class PairedRow:
    """One comparison row: a bare circuit against its encoded counterpart."""

    label: str
    shots: int
    accepted: int
    post_selection_ratio: float
    d_bare: float
    sigma_bare: float
    d_enc: float
    sigma_enc: float

    @property
    def diff(self) -> float:
        return self.d_enc - self.d_bare

    @property
    def sigma_diff(self) -> float:
        return sigma_difference(self.sigma_bare, self.sigma_enc)

    @property
    def reduction(self) -> float | None:
        try:
            return noise_reduction(self.d_enc, self.d_bare)
        except ValueError:
            return None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[PairedRow, ...]
    average: PairedRow

    @property
    def average_reduction(self) -> float | None:
        return self.average.reduction


def _average_row(rows: Sequence[PairedRow]) -> PairedRow:
    n = len(rows)
    return PairedRow(
        label="average",
        shots=sum(r.shots for r in rows),
        accepted=sum(r.accepted for r in rows),
        post_selection_ratio=sum(r.accepted for r in rows) / sum(r.shots for r in rows),
        d_bare=sum(r.d_bare for r in rows) / n,
        sigma_bare=math.sqrt(sum(r.sigma_bare ** 2 for r in rows)) / n,
        d_enc=sum(r.d_enc for r in rows) / n,
        sigma_enc=math.sqrt(sum(r.sigma_enc ** 2 for r in rows)) / n,
    )


def paired_rows_from_distances(
    labels: Sequence[str],
    d_bare: Sequence[float],
    sigma_bare: Sequence[float],
    d_enc: Sequence[float],
    sigma_enc: Sequence[float],
    shots: int = 4096,
    ratios: Sequence[float] | None = None,
) -> ComparisonReport:
    """Assemble a comparison report from externally given distances, to push
    already-published numbers through the same reduction/averaging pipeline."""
    rows = []
    for i, label in enumerate(labels):
        ratio = ratios[i] if ratios is not None else 1.0
        rows.append(
            PairedRow(
                label=label,
                shots=shots,
                accepted=round(shots * ratio),
                post_selection_ratio=ratio,
                d_bare=d_bare[i],
                sigma_bare=sigma_bare[i],
                d_enc=d_enc[i],
                sigma_enc=sigma_enc[i],
            )
        )
    return ComparisonReport(tuple(rows), _average_row(rows))


def compare_all(
    oracles: Sequence[str] = ORACLES,
    shots: int = 4096,
    model: NoiseModel = CALIBRATED_NOISE,
    seed: int = DEFAULT_SEED,
    *,
    encoded_form: str = "clifford",
    workers: int = 1,
) -> ComparisonReport:
    """Run bare and encoded circuits for each oracle and tabulate the paired
    statistics plus the cross-oracle average."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    prefix = {"clifford": "encoded-dj", "native": "encoded-dj-native"}.get(encoded_form)
    if prefix is None:
        raise ValueError(f"unknown encoded form {encoded_form!r}")
    rows = []
    for oracle in oracles:
        bare = run_circuit(f"bare-dj:{oracle}", shots, model, seed, workers=workers)
        enc = run_circuit(f"{prefix}:{oracle}", shots, model, seed, workers=workers)
        rows.append(
            PairedRow(
                label=oracle,
                shots=shots,
                accepted=enc.accepted,
                post_selection_ratio=enc.post_selection_ratio,
                d_bare=bare.distance,
                sigma_bare=bare.sigma,
                d_enc=enc.distance,
                sigma_enc=enc.sigma,
            )
        )
    return ComparisonReport(tuple(rows), _average_row(rows))


def compare_entangled(
    ids: Sequence[str] = ENTANGLED_IDS,
    shots: int = 4096,
    model: NoiseModel = CALIBRATED_NOISE,
    seed: int = DEFAULT_SEED,
    *,
    workers: int = 1,
) -> ComparisonReport:
    """Same paired comparison for the entangled-state preparations."""
    rows = []
    for cid in ids:
        bare = run_circuit(f"entangled:{cid}:bare", shots, model, seed, workers=workers)
        enc = run_circuit(f"entangled:{cid}:encoded", shots, model, seed, workers=workers)
        rows.append(
            PairedRow(
                label=cid,
                shots=shots,
                accepted=enc.accepted,
                post_selection_ratio=enc.post_selection_ratio,
                d_bare=bare.distance,
                sigma_bare=bare.sigma,
                d_enc=enc.distance,
                sigma_enc=enc.sigma,
            )
        )
    return ComparisonReport(tuple(rows), _average_row(rows))


# ---------------------------------------------------------------------------
# parameter sweeps

def sweep(
    p1_values: Sequence[float],
    p2_values: Sequence[float],
    pm_values: Sequence[float],
    oracles: Sequence[str] = ORACLES,
    shots: int = 4096,
    seed: int = DEFAULT_SEED,
    *,
    encoded_form: str = "clifford",
    workers: int = 1,
) -> list[tuple[NoiseModel, ComparisonReport]]:
    """Grid of compare_all runs over the three noise probabilities, with a
    common seed so series are comparable point to point."""
    if not (p1_values and p2_values and pm_values):
        raise ValueError("sweep needs a non-empty grid")
    results = []
    for p1 in p1_values:
        for p2 in p2_values:
            for pm in pm_values:
                model = NoiseModel(p1=p1, p2=p2, p_meas=pm)
                report = compare_all(
                    oracles, shots, model, seed, encoded_form=encoded_form, workers=workers
                )
                results.append((model, report))
    return results


# ---------------------------------------------------------------------------
# serialisation of reports

CSV_COLUMNS = (
    "circuit", "shots", "accepted", "post_selection_ratio",
    "D_bare", "sigma_bare", "D_enc", "sigma_enc",
    "diff", "sigma_diff", "reduction_pct",
)


def _fmt5(x: float | None) -> str:
    if x is None:
        return "na"
    if abs(x) < 5e-6:
        x = 0.0  # keep "-0.00000" out of the fixed-point output
    return f"{x:.5f}"


def _row_record(row: PairedRow) -> dict[str, object]:
    red = row.reduction
    return {
        "circuit": row.label,
        "shots": row.shots,
        "accepted": row.accepted,
        "post_selection_ratio": row.post_selection_ratio,
        "D_bare": row.d_bare,
        "sigma_bare": row.sigma_bare,
        "D_enc": row.d_enc,
        "sigma_enc": row.sigma_enc,
        "diff": row.diff,
        "sigma_diff": row.sigma_diff,
        "reduction_pct": None if red is None else 100.0 * red,
    }


def _csv_line(record: Mapping[str, object]) -> str:
    cells = []
    for col in CSV_COLUMNS:
        value = record[col]
        if isinstance(value, (str, int)):
            cells.append(str(value))
        else:
            cells.append(_fmt5(value))
    return ",".join(cells)


def comparison_to_csv(report: ComparisonReport, include_average: bool = False) -> str:
    """The documented CSV: one row per compared circuit, 5-decimal fixed point."""
    lines = [",".join(CSV_COLUMNS)]
    rows = list(report.rows) + ([report.average] if include_average else [])
    lines.extend(_csv_line(_row_record(r)) for r in rows)
    return "\n".join(lines) + "\n"


def comparison_to_json_obj(report: ComparisonReport) -> dict:
    return {
        "rows": [_row_record(r) for r in report.rows],
        "average": _row_record(report.average),
    }


def sweep_to_csv(results: Sequence[tuple[NoiseModel, ComparisonReport]]) -> str:
    header = ("p1", "p2", "p_meas") + CSV_COLUMNS
    lines = [",".join(header)]
    for model, report in results:
        for row in report.rows:
            record = _row_record(row)
            prefix = [_fmt5(model.p1), _fmt5(model.p2), _fmt5(model.p_meas)]
            lines.append(",".join(prefix) + "," + _csv_line(record))
    return "\n".join(lines) + "\n"
