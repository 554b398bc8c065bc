"""Limit shapes, the crossing array, and convergence experiments."""

import json
import math

import numpy as np
import pytest

from sixvertex.lattice import make_coloring, make_field, sample_colored_cs6v
from sixvertex.lln import (
    ConvergenceReport,
    compute_X,
    convergence_experiment,
    hammersley_limit,
    limit_shape_g,
    sample_shell_ensembles,
    verify_ergodic_hypotheses,
    verify_prop_X_height,
    verify_superadditivity,
)

HOMOG = make_field(0.3, 0.7)


# ---------------------------------------------------------------------------
# Closed forms

def test_shape_when_first_coin_dominates():
    # b1 >= b2: lines cross freely and the shape is the trivial one
    assert limit_shape_g(1.0, 1.0, 0.5, 0.5) == 0.0
    assert limit_shape_g(1.0, 3.0, 0.7, 0.3) == 2.0
    assert limit_shape_g(3.0, 1.0, 0.7, 0.3) == 0.0


def test_shape_facets_and_bulk():
    # b1=0.2, b2=0.6: facet boundaries at x = 2y and y = 2x
    assert limit_shape_g(2.0, 1.0, 0.2, 0.6) == 0.0
    assert limit_shape_g(3.0, 1.0, 0.2, 0.6) == 0.0
    assert limit_shape_g(1.0, 2.0, 0.2, 0.6) == pytest.approx(1.0)
    assert limit_shape_g(1.0, 3.0, 0.2, 0.6) == pytest.approx(2.0)
    # golden diagonal value: 3 - 2*sqrt(2)
    assert limit_shape_g(1.0, 1.0, 0.2, 0.6) == pytest.approx(
        3 - 2 * math.sqrt(2), abs=1e-12)
    assert limit_shape_g(1.0, 1.0, 0.2, 0.6) == pytest.approx(0.171573, abs=1e-6)


def test_shape_is_continuous_at_facet_boundaries():
    b1, b2 = 0.2, 0.6
    for y in (0.5, 1.0, 2.0):
        x = y * (1 - b1) / (1 - b2)  # flat facet edge
        assert limit_shape_g(x + 1e-9, y, b1, b2) == pytest.approx(0.0, abs=1e-4)
        assert limit_shape_g(x - 1e-9, y, b1, b2) == pytest.approx(0.0, abs=1e-4)
        x = y * (1 - b2) / (1 - b1)  # sloped facet edge
        assert limit_shape_g(x, y, b1, b2) == pytest.approx(y - x, abs=1e-4)


def test_shape_homogeneity():
    # g is 1-homogeneous in (x, y)
    for c in (0.5, 2.0, 7.0):
        assert limit_shape_g(c * 1.0, c * 1.3, 0.2, 0.6) == pytest.approx(
            c * limit_shape_g(1.0, 1.3, 0.2, 0.6))


def test_hammersley_limit_values():
    assert hammersley_limit(1.0, 1.0, 0.25) == pytest.approx(2 / 3, abs=1e-12)
    assert hammersley_limit(0.0, 1.0, 0.25) == pytest.approx(0.0)


def test_hammersley_limit_identity():
    rng = np.random.default_rng(42)
    for _ in range(100):
        x, y = rng.uniform(0.05, 4.0, size=2)
        p = rng.uniform(0.05, 0.95)
        lhs = hammersley_limit(x, y, p)
        rhs = y - limit_shape_g(x, y, 0.0, 1.0 - p)
        assert abs(lhs - rhs) <= 1e-10


def test_shape_rejects_bad_parameters():
    with pytest.raises(ValueError):
        limit_shape_g(1.0, 1.0, 1.2, 0.5)
    with pytest.raises(ValueError):
        limit_shape_g(-1.0, 1.0, 0.2, 0.5)
    with pytest.raises(ValueError):
        hammersley_limit(1.0, 1.0, 1.0)


# ---------------------------------------------------------------------------
# Crossing array

def _shells(n_blocks=5, replicas=6, seed=3, direction=(1, 1), field=HOMOG):
    scheme = make_coloring(*direction, field)
    return sample_shell_ensembles(direction, field, n_blocks, replicas, seed), scheme


def test_crossing_array_basics():
    ensembles, scheme = _shells()
    e = ensembles[0]
    for m in range(6):
        assert compute_X(e, scheme, m, m) == 0
        for n in range(m, 6):
            assert compute_X(e, scheme, m, n) >= 0
    with pytest.raises(ValueError):
        compute_X(e, scheme, 3, 2)
    with pytest.raises(ValueError):
        compute_X(e, scheme, 0, 6)  # only 5 shells sampled


def test_crossing_equals_corner_height():
    ensembles, scheme = _shells()
    for e in ensembles:
        rep = verify_prop_X_height(e, scheme)
        assert rep.passed, rep.summary()


def test_superadditivity_on_samples():
    ensembles, scheme = _shells(n_blocks=5, replicas=10)
    rep = verify_superadditivity(ensembles, scheme, 5)
    assert rep.passed, rep.summary()
    assert rep.cases == 10 * 21


def test_superadditivity_rational_direction():
    field = make_field([[0.2, 0.35]], [[0.7, 0.6]])  # I=1, J=2
    scheme = make_coloring(1, 2, field)
    assert (scheme.N, scheme.bx, scheme.by) == (1, 1, 2)
    ensembles = sample_shell_ensembles((1, 2), field, 4, 5, 1)
    rep = verify_superadditivity(ensembles, scheme, 4)
    assert rep.passed, rep.summary()


def test_ergodic_hypotheses_quick():
    rep = verify_ergodic_hypotheses((1, 1), HOMOG, 2, 120, 0)
    assert rep.passed, rep.summary()
    assert "shift_ks_pvalue" in rep.details or rep.details


# ---------------------------------------------------------------------------
# Convergence experiments

def test_convergence_report_fields():
    rep = convergence_experiment((1, 1), HOMOG, [40, 80], 3, 5, model="s6v")
    assert rep.ratios.shape == (3, 2)
    assert rep.sizes == [40, 80]
    assert rep.reference == pytest.approx(limit_shape_g(1, 1, 0.3, 0.7))
    assert rep.final_mean == pytest.approx(float(rep.ratios[:, -1].mean()))
    assert rep.cauchy_gaps().shape == (3, 1)
    assert rep.abs_errors() is not None


def test_convergence_models_agree_with_duality():
    s = convergence_experiment((1, 1), HOMOG, [64], 4, 2, model="s6v")
    c = convergence_experiment((1, 1), HOMOG, [64], 4, 2, model="cs6v")
    # pathwise duality: the two ratios add to y = 1 replica by replica
    assert np.allclose(s.ratios + c.ratios, 1.0)
    assert s.reference + c.reference == pytest.approx(1.0)


def test_convergence_hammersley_reference():
    rep = convergence_experiment((1, 1), make_field(0.0, 0.75), [50], 3, 7,
                                 model="hammersley")
    assert rep.reference == pytest.approx(hammersley_limit(1, 1, 0.25))
    assert rep.ratios.shape == (3, 1)


def test_inhomogeneous_field_has_no_reference():
    field = make_field([[0.2], [0.3]], [[0.7], [0.6]])
    rep = convergence_experiment((1, 1), field, [30], 2, 0, model="cs6v")
    assert rep.reference is None
    assert rep.abs_errors() is None


def test_fractional_direction_floors_points():
    rep = convergence_experiment((1, 2), HOMOG, [25], 2, 1, model="s6v")
    assert rep.ratios.shape == (2, 1)
    rep2 = convergence_experiment((3, 2), make_field(0.5, 0.5), [10], 2, 1)
    assert rep2.reference == 0.0


def test_report_serialization_round_trip():
    rep = convergence_experiment((1, 1), HOMOG, [30, 60], 2, 9, model="cs6v")
    meta = {"command": "converge", "note": 1}
    csv = rep.to_csv(meta)
    lines = csv.strip().split("\n")
    assert lines[0].startswith("# ")
    assert json.loads(lines[0][2:]) == meta
    assert lines[1] == "size,replica,ratio,reference,abs_error"
    assert len(lines) == 2 + 2 * 2
    first = lines[2].split(",")
    assert int(first[0]) == 30 and int(first[1]) == 0
    assert float(first[2]) == rep.ratios[0, 0]

    doc = rep.to_json_dict(meta)
    assert doc["meta"] == meta
    assert doc["model"] == "cs6v"
    assert doc["sizes"] == [30, 60]
    assert np.array_equal(np.array(doc["ratios"]), rep.ratios)
    assert doc["final_mean"] == rep.final_mean


def test_convergence_input_validation():
    with pytest.raises(ValueError):
        convergence_experiment((0, 1), HOMOG, [10], 2, 0)
    with pytest.raises(ValueError):
        convergence_experiment((1, 1), HOMOG, [], 2, 0)
    with pytest.raises(ValueError):
        convergence_experiment((1, 1), HOMOG, [10], 2, 0, model="nope")
