import math
import warnings

import numpy as np
import pytest

from phaseless import (CoefficientSequence, Grid, GridMismatch, LineFamily, SIConfig, Signal,
                       WindowSpec, build_pair, gaussian_oracle_pair, inner_product, l2_norm,
                       operator_identity_suite, periodization_diagnostic, phase_distance,
                       sample_analytic, verify_equal_on_points, verify_field, verify_pair)
from phaseless.constructions import EquivalenceWarning
from phaseless.lattice import line_points
from phaseless.verification import spectrum_gap_generator

from oracles import phase_scan

# frozen: brute-force phase scan of the H1 pair with c_{-1} = 1, c_1 = i at step 1
FIG2_RELATIVE_PHASE_DISTANCE = 1.398857008606651


@pytest.fixture(scope="module")
def small():
    return Grid.symmetric(6.0, 1 / 64)


@pytest.fixture(scope="module")
def f1(small):
    return Signal.from_function(lambda t: np.exp(-np.pi * t * t) * (1 + t + 0.5j * t * t), small)


def test_global_phase_gives_equality(f1, small):
    g = sample_analytic(WindowSpec.gaussian(), small)
    pts = np.random.default_rng(3).uniform(-2, 2, size=(40, 2))
    for phi in (0.3, 2.0, -1.1):
        rep = verify_equal_on_points(f1, complex(np.exp(1j * phi)) * f1, g, pts)
        assert rep.passed and rep.max_residual <= 1e-12


def test_equality_mismatch_and_empty(f1, small):
    g = sample_analytic(WindowSpec.gaussian(), small)
    with pytest.raises(GridMismatch):
        verify_equal_on_points(f1, f1, sample_analytic(WindowSpec.gaussian(), Grid.symmetric(4, 1 / 64)), [(0, 0)])
    assert verify_equal_on_points(f1, f1, g, []).sample_points == 0


def test_phase_distance_unit_multiple(f1):
    d, nu = phase_distance(f1, 1j * f1)
    assert d <= 1e-12 * l2_norm(f1)
    assert nu == pytest.approx(1j, abs=1e-14)


def test_phase_distance_orthogonal(small):
    h0 = sample_analytic(WindowSpec.hermite(0), small)
    h1 = sample_analytic(WindowSpec.hermite(1), small)
    d, _ = phase_distance(h0, h1)
    assert d == pytest.approx(math.sqrt(2), rel=1e-10)


def test_phase_distance_matches_scan_and_closed_form(f1, small):
    f2 = f1.conj()
    d, _ = phase_distance(f1, f2)
    scan = phase_scan(f1.values, f2.values, small.dt, 20000)
    assert d <= scan + 1e-12 and scan - d < 1e-6
    closed = math.sqrt(l2_norm(f1) ** 2 + l2_norm(f2) ** 2 - 2 * abs(inner_product(f1, f2)))
    assert d == pytest.approx(closed, rel=1e-10)
    assert phase_distance(f2, f1)[0] == pytest.approx(d, rel=1e-12)


def test_fig2_pair_phase_distance_against_frozen_scan():
    grid = Grid.symmetric(8.0, 1 / 128)
    g = sample_analytic(WindowSpec.hermite(1), grid)
    pair = build_pair(SIConfig(g, 1.0), CoefficientSequence.from_dict({-1: 1, 1: 1j}))
    d, _ = phase_distance(pair.f1, pair.f2)
    rel = d / l2_norm(pair.f1)
    scan = phase_scan(pair.f1.values, pair.f2.values, grid.dt) / l2_norm(pair.f1)
    assert rel == pytest.approx(FIG2_RELATIVE_PHASE_DISTANCE, abs=1e-9)
    assert abs(scan - rel) < 1e-6


def test_real_coefficients_give_equivalent_pair(small):
    g = sample_analytic(WindowSpec.gaussian(), small)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EquivalenceWarning)
        pair = build_pair(SIConfig(g, 1.0), CoefficientSequence(-1, (1, 0, 1)))
    rep = verify_pair(pair, g, np.linspace(-2, 2, 9), (-2, 2))
    neq = rep.find("non_equivalence")
    assert not neq.passed and "pair is equivalent" in neq.notes
    assert not rep.passed


def test_verify_pair_gaussian_oracle():
    grid = Grid.symmetric(8.0, 1 / 128)
    pair = gaussian_oracle_pair(1.0, grid)
    g = sample_analytic(WindowSpec.gaussian(), grid)
    rep = verify_pair(pair, g, np.linspace(-4, 4, 33), (-2, 2), family=LineFamily(0.0, 1.0))
    assert rep.find("spectrogram_equality").max_residual <= 1e-10
    assert rep.find("non_equivalence").passed


def test_swap_invariance(small):
    g = sample_analytic(WindowSpec.hermite(1), small)
    pair = build_pair(SIConfig(g, 1.0), CoefficientSequence(-1, (-1, 0, 1j)))
    pts = line_points(pair.refined_family, np.linspace(-2, 2, 9), (-2, 2))
    a = verify_equal_on_points(pair.f1, pair.f2, g, pts).max_residual
    b = verify_equal_on_points(pair.f2, pair.f1, g, pts).max_residual
    assert a == b


def test_verify_field_reports_lines_and_control(small):
    g = sample_analytic(WindowSpec.hermite(1), small)
    pair = build_pair(SIConfig(g, 1.0), CoefficientSequence(-1, (-1, 0, 1j)))
    rep, field = verify_field(pair, g, (-2, 2, -1.5, 1.5), nx=17, ny=13)
    assert rep.passed
    assert field.values.shape == (13, 17)


def test_operator_suite_passes():
    rep = operator_identity_suite(seed=1)
    assert rep.passed and len(rep.children) == 3


# --- periodization -----------------------------------------------------------

def _gauss_phi(t, s):
    k = np.arange(-30, 31)
    return np.sum(np.exp(-2 * np.pi * (t[:, None] + k[None, :]) ** 2 / (s * s)), axis=1) / s


@pytest.mark.parametrize("step", [1.0, 0.5, 2.0])
def test_periodization_gaussian_against_series(step):
    grid = Grid.symmetric(16.0, 1 / 32)
    h = sample_analytic(WindowSpec.gaussian(), grid)
    dg = periodization_diagnostic(h, step, resolution=512)
    t = np.arange(512) / 512
    ref = _gauss_phi(t, step)
    # the chirp-z evaluation carries ~1e-9 relative roundoff
    assert np.max(np.abs(dg.samples - ref)) < 1e-8 * ref.max()
    assert dg.bessel_ok and dg.independence_ok
    assert dg.inf_estimate == pytest.approx(ref.min(), rel=1e-9)


def test_periodization_resolution_stability():
    h = sample_analytic(WindowSpec.gaussian(), Grid.symmetric(16.0, 1 / 32))
    a = periodization_diagnostic(h, 1.0, resolution=1024)
    b = periodization_diagnostic(h, 1.0, resolution=4096)
    assert abs(a.sup_estimate - b.sup_estimate) < 1e-8 and abs(a.inf_estimate - b.inf_estimate) < 1e-6


def test_periodization_spectrum_gap():
    dg = periodization_diagnostic(spectrum_gap_generator(), 1.0)
    assert dg.bessel_ok and not dg.independence_ok
    assert dg.inf_estimate < 1e-8 < dg.sup_estimate


def test_periodization_zero_signal():
    dg = periodization_diagnostic(Signal.zeros(Grid.symmetric(4.0, 1 / 16)), 1.0, resolution=64)
    assert dg.sup_estimate == 0 and not dg.bessel_ok and not dg.independence_ok


def test_periodization_validation():
    h = Signal.zeros(Grid.symmetric(4.0, 1 / 16))
    with pytest.raises(ValueError):
        periodization_diagnostic(h, 0.0)
    with pytest.raises(ValueError):
        periodization_diagnostic(h, 1.0, resolution=1)
