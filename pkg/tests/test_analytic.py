import csv
from itertools import product
from math import comb

import numpy as np
import pytest

from urnelect import (
    AnalyticCurve,
    InitialAllocation,
    SimulationConfig,
    beta_cdf_int,
    central_difference_slope,
    cube_curve,
    dirichlet_multinomial_pmf,
    enumerate_multiurn,
    irwin_hall_pdf,
    seatvote_exact_n2,
    seatvote_numeric,
    write_curve_csv,
)
from urnelect.analytic import _integrate_irwin_hall


def config_for(blocks, p=0.0, k=1):
    alloc = InitialAllocation(blocks)
    return SimulationConfig(alloc.num_districts, alloc.num_colours, p, k,
                            alloc, alloc.total_balls + 100)


# ---------------------------------------------------------------------------
# integer-parameter beta CDF
# ---------------------------------------------------------------------------

def test_beta_uniform_case():
    assert beta_cdf_int(1, 1, 0.3) == pytest.approx(0.3, abs=1e-15)


def test_beta_symmetric_midpoint():
    assert beta_cdf_int(2, 2, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_beta_triangular_quarter():
    assert beta_cdf_int(2, 1, 0.5) == pytest.approx(0.25, abs=1e-15)


def test_beta_domain_and_parameters():
    with pytest.raises(ValueError):
        beta_cdf_int(2, 2, 1.5)
    with pytest.raises(ValueError):
        beta_cdf_int(0, 2, 0.5)


def test_beta_cdf_monotone_and_normalised():
    xs = np.linspace(0, 1, 101)
    for a, b in [(1, 1), (2, 2), (2, 1), (3, 2)]:
        ys = [beta_cdf_int(a, b, x) for x in xs]
        assert ys[0] == 0.0 and ys[-1] == 1.0
        assert np.all(np.diff(ys) >= -1e-15)


def test_beta_matches_quadrature_of_density():
    # independent oracle: integrate the Beta(2,2) density 6 t (1-t) numerically
    from math import fsum
    x = 0.37
    n = 200_000
    ts = (np.arange(n) + 0.5) / n * x
    integral = fsum(6 * t * (1 - t) for t in ts) * (x / n)
    assert beta_cdf_int(2, 2, x) == pytest.approx(integral, abs=1e-9)


# ---------------------------------------------------------------------------
# Dirichlet-multinomial pmf
# ---------------------------------------------------------------------------

def test_dm_single_draw_uniform():
    assert dirichlet_multinomial_pmf((1, 1), 1, (1, 0)) == pytest.approx(0.5, abs=1e-15)


def test_dm_two_draw_split():
    assert dirichlet_multinomial_pmf((1, 1), 2, (1, 1)) == pytest.approx(1 / 3, abs=1e-15)


def test_dm_asymmetric_start():
    assert dirichlet_multinomial_pmf((2, 1), 1, (0, 1)) == pytest.approx(1 / 3, abs=1e-15)


def test_dm_counts_must_sum():
    with pytest.raises(ValueError):
        dirichlet_multinomial_pmf((1, 1), 3, (1, 1))


@pytest.mark.parametrize("a", [(1, 1), (2, 1), (2, 2), (1, 1, 1), (2, 3, 1)])
@pytest.mark.parametrize("n", [1, 4, 8])
def test_dm_sums_to_one(a, n):
    m = len(a)
    total = sum(
        dirichlet_multinomial_pmf(a, n, k)
        for k in product(range(n + 1), repeat=m) if sum(k) == n
    )
    assert total == pytest.approx(1.0, abs=1e-12)


def test_dm_uniform_start_is_flat_two_colours():
    # starting at (1,1), all n+1 outcomes are equally likely
    for k in range(7):
        assert dirichlet_multinomial_pmf((1, 1), 6, (k, 6 - k)) == pytest.approx(1 / 7, abs=1e-15)


# ---------------------------------------------------------------------------
# exact enumeration of the multi-urn process
# ---------------------------------------------------------------------------

def test_enumeration_single_urn_reduces_to_dm():
    pmf = enumerate_multiurn(config_for(((1, (1, 1)),)), 2)
    for state, prob in pmf.as_dict().items():
        expect = dirichlet_multinomial_pmf((1, 1), 2, (state[0] - 1, state[1] - 1))
        assert prob == pytest.approx(expect, abs=1e-14)


def test_enumeration_forced_imitation_one_step():
    pmf = enumerate_multiurn(config_for(((2, (1, 1)),), p=1.0), 1).as_dict()
    assert pmf[(2, 1, 1, 1)] == pytest.approx(0.25, abs=1e-14)


def test_enumeration_hand_value_p03():
    pmf = enumerate_multiurn(config_for(((1, (2, 1)), (1, (1, 1))), p=0.3), 1).as_dict()
    assert pmf[(3, 1, 1, 1)] == pytest.approx(37 / 120, abs=1e-14)


def test_enumeration_probabilities_normalised():
    for p in (0.0, 0.3, 1.0):
        pmf = enumerate_multiurn(config_for(((2, (1, 1)),), p=p), 4)
        assert pmf.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert (pmf.probabilities >= 0).all()


def test_enumeration_p0_marginal_is_dm_mixture():
    # with independent districts, urn 0 sees Binomial(n, 1/2) of the n steps,
    # and its counts given s steps follow the single-urn law
    n = 4
    pmf = enumerate_multiurn(config_for(((2, (1, 1)),), p=0.0), n)
    marginal = pmf.marginal(0).as_dict()
    for state, prob in marginal.items():
        added = state[0] - 1 + state[1] - 1
        expect = (comb(n, added) * 0.5**n
                  * dirichlet_multinomial_pmf((1, 1), added, (state[0] - 1, state[1] - 1)))
        assert prob == pytest.approx(expect, abs=1e-14)


def test_enumeration_size_guard():
    with pytest.raises(ValueError, match="too large"):
        enumerate_multiurn(config_for(((4, (1, 1)),)), 2)
    with pytest.raises(ValueError, match="too large"):
        enumerate_multiurn(config_for(((2, (1, 1)),)), 9)


def test_enumeration_respects_reinforcement():
    pmf = enumerate_multiurn(config_for(((1, (1, 1)),), k=5), 1).as_dict()
    assert pmf == {(6, 1): pytest.approx(0.5), (1, 6): pytest.approx(0.5)}


def test_total_variation_of_perfect_sample():
    pmf = enumerate_multiurn(config_for(((2, (1, 1)),), p=0.0), 1)
    exact = pmf.as_dict()
    scaled = {s: int(round(p * 10_000)) for s, p in exact.items()}
    assert pmf.total_variation(scaled) < 1e-12


# ---------------------------------------------------------------------------
# ratio-law curve
# ---------------------------------------------------------------------------

def test_cube_fixed_point_at_half():
    for k in (0.5, 1.0, 3.0, 30.0):
        assert cube_curve(k, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_cube_hand_value():
    assert cube_curve(3.0, 0.6) == pytest.approx(27 / 35, abs=1e-15)


def test_cube_slope_at_half_equals_exponent():
    slope = central_difference_slope(lambda x: cube_curve(3.0, x), 0.5, h=1e-6)
    assert slope == pytest.approx(3.0, abs=1e-6)


def test_cube_symmetry():
    xs = np.linspace(0.001, 0.999, 499)
    for k in (2.0, 30.0):
        ys = np.array([cube_curve(k, x) for x in xs])
        assert np.abs(ys + ys[::-1] - 1.0).max() < 1e-12


def test_cube_logit_identity():
    # checked on x <= 1/2 where 1-y is cancellation-free; the symmetry test
    # carries the identity to the upper half.  Large k needs y > ~1e-300, so
    # the grid floor rises with k.
    for k, lo in ((2.0, 0.001), (30.0, 0.25)):
        xs = np.linspace(lo, 0.5, 250)
        ys = np.array([cube_curve(k, x) for x in xs])
        logit_gap = np.abs(np.log(ys / (1 - ys)) - k * np.log(xs / (1 - xs)))
        assert logit_gap.max() < 1e-10


def test_cube_monotone():
    for k in (3.0, 30.0):
        ys = [cube_curve(k, x) for x in np.linspace(0.001, 0.999, 999)]
        assert np.all(np.diff(ys) >= 0)


# ---------------------------------------------------------------------------
# exact two-district curve and numeric generalisation
# ---------------------------------------------------------------------------

def test_n2_branches():
    assert seatvote_exact_n2(0.2) == 0.0
    assert seatvote_exact_n2(0.5) == pytest.approx(0.5, abs=1e-15)
    assert seatvote_exact_n2(0.6) == pytest.approx(0.625, abs=1e-15)
    assert seatvote_exact_n2(0.8) == 1.0


def test_n2_symmetry_and_continuity():
    for x in np.linspace(0.0, 1.0, 101):
        assert seatvote_exact_n2(x) + seatvote_exact_n2(1 - x) == pytest.approx(1.0, abs=1e-12)
    for knot in (0.25, 0.5, 0.75):
        below = seatvote_exact_n2(knot - 1e-9)
        above = seatvote_exact_n2(knot + 1e-9)
        assert above - below < 1e-7


def test_numeric_matches_closed_form_n2():
    for x in np.linspace(0.01, 0.99, 99):
        assert seatvote_numeric(2, float(x)) == pytest.approx(
            seatvote_exact_n2(float(x)), abs=1e-8)


def test_numeric_central_slopes():
    s2 = central_difference_slope(lambda x: seatvote_numeric(2, x), 0.5)
    s3 = central_difference_slope(lambda x: seatvote_numeric(3, x), 0.5)
    assert s2 == pytest.approx(1.0, abs=1e-3)
    assert s3 == pytest.approx(2.0, abs=1e-3)


def test_numeric_curves_monotone():
    xs = np.linspace(0.001, 0.999, 999)
    for n in (2, 3, 4):
        ys = [seatvote_numeric(n, float(x)) for x in xs]
        assert np.all(np.diff(ys) >= -1e-10)


def test_numeric_domain():
    with pytest.raises(ValueError):
        seatvote_numeric(2, 0.0)
    with pytest.raises(ValueError):
        seatvote_numeric(1, 0.5)


def test_irwin_hall_density():
    assert irwin_hall_pdf(1, 0.4) == 1.0
    assert irwin_hall_pdf(2, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert irwin_hall_pdf(2, 1.5) == pytest.approx(0.5, abs=1e-15)
    assert irwin_hall_pdf(3, -0.1) == 0.0
    for n in (1, 2, 3, 5):
        assert _integrate_irwin_hall(n, 0.0, float(n), 1e-10) == pytest.approx(1.0, abs=1e-9)


# ---------------------------------------------------------------------------
# curve objects
# ---------------------------------------------------------------------------

def test_curve_dispatch():
    assert AnalyticCurve.uniform()(0.3) == 0.3
    assert AnalyticCurve.beta(2, 1)(0.5) == pytest.approx(0.25)
    assert AnalyticCurve.cube(3.0)(0.6) == pytest.approx(27 / 35)
    assert AnalyticCurve.seatvote_n2()(0.6) == pytest.approx(0.625)
    assert AnalyticCurve.seatvote(3)(0.5) == pytest.approx(0.5, abs=1e-9)


def test_curve_validation():
    with pytest.raises(ValueError):
        AnalyticCurve("nonsense")
    with pytest.raises(ValueError):
        AnalyticCurve.beta(0, 1)
    with pytest.raises(ValueError):
        AnalyticCurve.cube(-1.0)


def test_curve_csv_export(tmp_path):
    path = write_curve_csv(AnalyticCurve.cube(3.0), tmp_path / "curve.csv", n_points=32)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "y"]
    assert len(rows) == 33
    x, y = float(rows[16][0]), float(rows[16][1])
    assert y == pytest.approx(cube_curve(3.0, x), abs=1e-12)
