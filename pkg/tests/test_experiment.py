import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftdj.experiment import (
    AllShotsRejectedError,
    CSV_COLUMNS,
    Z_99,
    average_noise_reduction,
    compare_all,
    compare_entangled,
    comparison_to_csv,
    comparison_to_json_obj,
    logical_marginals,
    noise_reduction,
    paired_rows_from_distances,
    run_circuit,
    standard_errors,
    statistical_distance,
    sweep,
    sweep_to_csv,
)
from ftdj.noisefault import CALIBRATED_NOISE, NoiseModel, ZERO_NOISE
from ftdj.simcore import OutcomeCounts

# published machine results the analysis pipeline must reproduce
PUBLISHED_D_BARE = (0.01929, 0.00317, 0.00513, 0.01782)
PUBLISHED_D_ENC = (0.00178, 0.00128, 0.00076, 0.00129)
PUBLISHED_SIGMA_BARE = (0.00152, 0.00062, 0.00078, 0.00146)
PUBLISHED_SIGMA_ENC = (0.00048, 0.00040, 0.00031, 0.00040)


# ---------------------------------------------------------------------------
# statistical distance

def test_distance_published_bare_row():
    p = {"0": 0.0, "1": 1.0}
    q = {"0": 0.01929, "1": 0.98071}
    assert statistical_distance(p, q) == pytest.approx(0.01929, abs=1e-12)


def test_distance_identical_is_zero():
    p = {"a": 0.25, "b": 0.75}
    assert statistical_distance(p, p) == 0.0


def test_distance_half():
    assert statistical_distance({"0": 1.0, "1": 0.0}, {"0": 0.5, "1": 0.5}) == pytest.approx(0.5)


def test_distance_rejects_mismatched_sets():
    with pytest.raises(ValueError):
        statistical_distance({"0": 1.0}, {"0": 0.5, "1": 0.5})


@st.composite
def _distribution(draw, keys=("00", "01", "10", "11")):
    weights = [draw(st.floats(0.001, 1.0)) for _ in keys]
    total = sum(weights)
    return {k: w / total for k, w in zip(keys, weights)}


@settings(max_examples=80, deadline=None)
@given(_distribution(), _distribution(), _distribution())
def test_distance_is_a_metric(p, q, r):
    dpq = statistical_distance(p, q)
    assert 0.0 <= dpq <= 1.0
    assert dpq == pytest.approx(statistical_distance(q, p))
    assert dpq <= statistical_distance(p, r) + statistical_distance(r, q) + 1e-12
    assert statistical_distance(p, p) == 0.0


@settings(max_examples=40, deadline=None)
@given(_distribution(), _distribution())
def test_distance_zero_iff_equal(p, q):
    d = statistical_distance(p, q)
    if d < 1e-15:
        for k in p:
            assert p[k] == pytest.approx(q[k], abs=1e-12)


# ---------------------------------------------------------------------------
# logical marginals

def _counts(mapping):
    return OutcomeCounts(mapping, sum(mapping.values()))


def test_marginals_simple():
    m = logical_marginals(_counts({"0000": 50, "1111": 50}))
    assert m.post_selection_ratio == 1.0
    assert m.buckets["00"] == pytest.approx(1.0)
    assert m.r0 == pytest.approx(1.0)


def test_marginals_all_rejected():
    with pytest.raises(AllShotsRejectedError):
        logical_marginals(_counts({"0111": 100}))


def test_marginals_mixed_acceptance():
    m = logical_marginals(_counts({"1100": 30, "0011": 30, "0001": 40}))
    assert m.post_selection_ratio == pytest.approx(0.6)
    assert m.buckets["01"] == pytest.approx(1.0)
    assert m.r0 == pytest.approx(1.0)
    assert m.accepted == 60


# ---------------------------------------------------------------------------
# standard errors

def test_sigma_matches_published_f0_row():
    sigma = standard_errors({"0": 0.01929, "1": 0.98071}, 4096)
    assert sigma == pytest.approx(0.00152, abs=0.00001)


def test_sigma_matches_published_fx_row():
    sigma = standard_errors({"0": 0.00317, "1": 0.99683}, 4096)
    assert sigma == pytest.approx(0.00062, abs=0.00001)


def test_sigma_zero_at_deterministic():
    assert standard_errors({"0": 0.0, "1": 1.0}, 4096) == 0.0


def test_sigma_needs_accepted_shots():
    with pytest.raises(ValueError):
        standard_errors({"0": 0.5, "1": 0.5}, 0)


# ---------------------------------------------------------------------------
# noise reduction

def test_reduction_f0_row():
    assert noise_reduction(0.00178, 0.01929) == pytest.approx(-0.9077, abs=5e-5)


def test_reduction_fx_row():
    assert noise_reduction(0.00128, 0.00317) == pytest.approx(-0.596, abs=5e-4)


def test_reduction_equal_inputs():
    assert noise_reduction(0.3, 0.3) == 0.0


def test_reduction_undefined_at_zero_bare():
    with pytest.raises(ValueError):
        noise_reduction(0.1, 0.0)


def test_average_reduction_published_rows():
    avg = average_noise_reduction(PUBLISHED_D_BARE, PUBLISHED_D_ENC)
    assert avg == pytest.approx(-0.8875, abs=5e-4)


def test_paired_rows_from_distances_pipeline():
    report = paired_rows_from_distances(
        ("f0", "fx", "f1x", "f1"),
        PUBLISHED_D_BARE, PUBLISHED_SIGMA_BARE,
        PUBLISHED_D_ENC, PUBLISHED_SIGMA_ENC,
        ratios=(0.958, 0.954, 0.958, 0.950),
    )
    assert report.rows[0].reduction == pytest.approx(-0.90772, abs=1e-5)
    assert report.average_reduction == pytest.approx(-0.88747, abs=1e-5)
    assert report.rows[0].sigma_diff == pytest.approx(0.00159, abs=1e-5)


# ---------------------------------------------------------------------------
# catalog runs and comparisons

def test_zero_noise_run_has_unit_ratio():
    # deterministic answers have exactly zero distance, distributional ones
    # only shot noise; post-selection never rejects without noise
    for name in ("encoded-dj:f0", "encoded-dj-native:fx"):
        run = run_circuit(name, 512, ZERO_NOISE, seed=1)
        assert run.post_selection_ratio == 1.0
        assert run.distance == 0.0
        assert run.sigma == 0.0
    run = run_circuit("entangled:E:encoded", 512, ZERO_NOISE, seed=1)
    assert run.post_selection_ratio == 1.0
    assert run.distance < 5 * run.sigma + 0.05


def test_compare_zero_noise():
    report = compare_all(shots=256, model=ZERO_NOISE, seed=3)
    for row in report.rows:
        assert row.d_bare == 0.0 and row.d_enc == 0.0
        assert row.post_selection_ratio == 1.0
        assert row.reduction is None
    assert comparison_to_csv(report).count("na") == 4


def test_compare_reports_are_deterministic():
    a = comparison_to_csv(compare_all(shots=1024, seed=11))
    b = comparison_to_csv(compare_all(shots=1024, seed=11))
    c = comparison_to_csv(compare_all(shots=1024, seed=11, workers=4))
    assert a == b == c


def test_compare_rows_and_average():
    report = compare_all(shots=2048, model=CALIBRATED_NOISE, seed=5)
    assert [r.label for r in report.rows] == ["f0", "fx", "f1x", "f1"]
    for row in report.rows:
        assert 0.0 <= row.post_selection_ratio <= 1.0
        assert row.diff == pytest.approx(row.d_enc - row.d_bare)
    avg = report.average
    assert avg.d_bare == pytest.approx(sum(r.d_bare for r in report.rows) / 4)
    assert avg.accepted == sum(r.accepted for r in report.rows)


def test_compare_entangled_smoke():
    report = compare_entangled(ids=("A", "E"), shots=512, seed=2)
    assert [r.label for r in report.rows] == ["A", "E"]
    for row in report.rows:
        assert row.post_selection_ratio > 0.5


def test_csv_format():
    report = compare_all(shots=512, seed=9)
    csv = comparison_to_csv(report)
    lines = csv.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 5
    cells = lines[1].split(",")
    assert cells[0] == "f0"
    assert cells[1] == "512"
    # fixed-point with five decimals
    assert all("." in c and len(c.split(".")[1]) == 5 for c in cells[3:])


def test_json_mirror_field_names():
    report = compare_all(shots=256, seed=4)
    obj = comparison_to_json_obj(report)
    assert set(obj["rows"][0]) == set(CSV_COLUMNS)
    assert obj["average"]["circuit"] == "average"


# ---------------------------------------------------------------------------
# sweeps

def test_sweep_single_point_equals_compare():
    model = NoiseModel(0.01, 0.02, 0.005)
    [(m, rep)] = sweep([0.01], [0.02], [0.005], shots=512, seed=8)
    direct = compare_all(shots=512, model=model, seed=8)
    assert comparison_to_csv(rep) == comparison_to_csv(direct)
    assert m == model


def test_sweep_empty_grid_rejected():
    with pytest.raises(ValueError):
        sweep([], [0.1], [0.1])


def test_sweep_bare_distance_monotone_in_p2():
    # the two-qubit rate only enters the balanced oracles' bare circuits
    results = sweep([0.0], [0.0, 0.0125, 0.05], [0.0], oracles=("fx",), shots=4096, seed=42)
    distances = [rep.rows[0].d_bare for _, rep in results]
    sigmas = [rep.rows[0].sigma_bare for _, rep in results]
    for i in range(len(distances) - 1):
        slack = 3 * math.hypot(sigmas[i], sigmas[i + 1]) + 1e-9
        assert distances[i] <= distances[i + 1] + slack


def test_sweep_zero_point_all_zero():
    [(m, rep)] = sweep([0.0], [0.0], [0.0], oracles=("f0",), shots=256, seed=1)
    assert rep.rows[0].d_bare == 0.0 and rep.rows[0].d_enc == 0.0


def test_sweep_csv_has_grid_columns():
    results = sweep([0.01], [0.01], [0.01], oracles=("f0", "f1"), shots=128, seed=6)
    csv = sweep_to_csv(results)
    header = csv.split("\n", 1)[0].split(",")
    assert header[:3] == ["p1", "p2", "p_meas"]
    assert tuple(header[3:]) == CSV_COLUMNS
