import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phaseless import (FrftOrder, Signal, TruncationBudgetExceeded, WindowSpec, check_rotation_property,
                       fourier, frac_shift, frac_shift_closed_form, frft, hermite_coeffs, hermite_eval,
                       l2_norm, modulate, reflect, sample_analytic, translate)
from phaseless.hermite import hermite_series


def rel(a, b):
    return l2_norm(a - b) / max(l2_norm(b), 1e-300)


@pytest.fixture(scope="module")
def probe(grid, basis):
    # a Hermite-bandlimited test signal with mixed parity and complex coefficients
    rng = np.random.default_rng(7)
    coeffs = (rng.standard_normal(13) + 1j * rng.standard_normal(13)) / np.arange(1, 14)
    func = lambda t: hermite_series(coeffs, t)
    return Signal(grid, func(grid.points), "probe", func)


def test_gram_is_identity(basis):
    G = basis.gram()
    assert np.max(np.abs(G - np.eye(G.shape[0]))) <= 1e-8


def test_basis_parity(basis, grid):
    m = basis.matrix
    for n in (0, 1, 7, 30, 64):
        assert np.allclose(m[n][::-1], (-1) ** n * m[n], atol=1e-14)
    assert len(basis.basis_signals) == 65 and basis.basis_signals[3].label == "H3"


def test_coeffs_of_basis_function(basis, grid):
    c, tail = hermite_coeffs(hermite_eval(3, grid), basis)
    e = np.zeros(65)
    e[3] = 1
    assert np.max(np.abs(c - e)) < 1e-10 and abs(tail) < 1e-10


def test_coeffs_of_plain_gaussian(basis, grid):
    c, tail = hermite_coeffs(sample_analytic(WindowSpec.gaussian(), grid), basis)
    assert c[0] == pytest.approx(2 ** -0.25, abs=1e-12)
    assert np.max(np.abs(c[1:])) < 1e-12 and abs(tail) < 1e-12


def test_coeffs_even_signal_has_even_support(basis, grid):
    c, _ = hermite_coeffs(Signal.from_function(lambda t: np.exp(-2 * np.pi * t * t), grid), basis)
    assert np.max(np.abs(c[1::2])) < 1e-14
    assert np.min(np.abs(c[0:12:2])) > 1e-6


def test_eigenfunctions(basis, grid):
    for n in (0, 1, 2, 5):
        h = hermite_eval(n, grid)
        out = frft(h, 0.4, basis)
        assert rel(out, complex(np.exp(-0.4j * n)) * h) < 1e-10


def test_order_pi_half_matches_fourier(basis, probe):
    via_series = frft(probe, math.pi / 2, basis, exact_special=False)
    assert rel(via_series, fourier(probe)) <= 1e-6
    assert frft(probe, 0.0, basis) is probe
    assert rel(frft(probe, math.pi, basis), reflect(probe)) < 1e-15


@settings(max_examples=25)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_additivity(a, b):
    f, basis = _PROBE
    lhs = frft(frft(f, a, basis), b, basis)
    rhs = frft(f, a + b, basis)
    assert rel(lhs, rhs) <= 1e-7


@settings(max_examples=25)
@given(st.floats(-3, 3))
def test_unitarity_and_symmetries(theta):
    f, basis = _PROBE
    out = frft(f, theta, basis)
    assert abs(l2_norm(out) - l2_norm(f)) / l2_norm(f) <= 1e-7
    # conj F_theta f = F_{-theta} conj f
    assert rel(frft(f, theta, basis).conj(), frft(f.conj(), -theta, basis)) <= 1e-7
    # F_theta commutes with reflection
    assert rel(frft(reflect(f), theta, basis), reflect(frft(f, theta, basis))) <= 1e-7


def _make_probe():
    from phaseless import DEFAULT_GRID, HermiteBasis
    b = HermiteBasis(DEFAULT_GRID, 64)
    rng = np.random.default_rng(11)
    coeffs = (rng.standard_normal(10) + 1j * rng.standard_normal(10)) / np.arange(1, 11)
    return Signal(DEFAULT_GRID, coeffs @ b.matrix[:10], "p"), b


_PROBE = _make_probe()


def test_frac_shift_special_orders(basis, grid):
    g = sample_analytic(WindowSpec.hermite(1), grid)
    assert rel(frac_shift(g, 0.7, 0.0, basis), translate(g, 0.7)) < 1e-12
    assert rel(frac_shift(g, 1.0, math.pi / 2, basis), modulate(g, 1.0)) <= 1e-8
    assert frac_shift(g, 0.0, 1.0, basis) is g


def test_frac_shift_routes_agree(basis, grid, probe):
    for theta in (1.0, -1.0, 0.3, 2.5):
        for tau in (1.0, -2.0, 0.37):
            a = frac_shift(probe, tau, theta, basis)
            b = frac_shift_closed_form(probe, tau, theta)
            # large shifts push energy past the truncation order; the budget
            # bounds the dropped energy, hence the square root
            bound = 1e-12 if abs(tau) <= 1 else 10 * math.sqrt(1e-10)
            assert rel(a, b) < bound


def test_frac_shift_unknown_method(basis, probe):
    with pytest.raises(ValueError):
        frac_shift(probe, 1.0, 1.0, basis, method="bogus")


@pytest.mark.parametrize("theta, p", [(0.0, (0.5, 0.3)), (1.0, (0.5, 0.3)), (-2.2, (-1.0, 0.8))])
def test_rotation_property(basis, grid, probe, theta, p):
    g = sample_analytic(WindowSpec.hermite(2), grid)
    rep = check_rotation_property(probe, g, theta, p, basis)
    assert rep.passed and rep.max_residual <= 1e-6


def test_rotation_property_zero_signal(basis, grid):
    g = sample_analytic(WindowSpec.gaussian(), grid)
    rep = check_rotation_property(Signal.zeros(grid), g, 1.0, (0.5, 0.3), basis)
    assert rep.residuals["rotation"] == 0 and rep.passed


def test_truncation_budget(basis, grid):
    rough = sample_analytic(WindowSpec.exp_abs(), grid)
    with pytest.raises(TruncationBudgetExceeded) as info:
        frft(rough, 1.0, basis)
    assert info.value.tail_energy > 1e-10
    # special orders do not need the series
    assert frft(rough, math.pi / 2, basis).grid == grid


def test_order_tags():
    assert FrftOrder(0.0).special == "identity"
    assert FrftOrder(2 * math.pi).special == "identity"
    assert FrftOrder(math.pi / 2).special == "fourier"
    assert FrftOrder(-math.pi / 2).special == "inverse_fourier"
    assert FrftOrder(3 * math.pi / 2).special == "inverse_fourier"
    assert FrftOrder(-math.pi).special == "reflect" and FrftOrder(-math.pi).reduced == math.pi
    assert FrftOrder(1.0).special is None
    assert (-FrftOrder(1.0)).theta == -1.0
    with pytest.raises(ValueError):
        FrftOrder(float("nan"))
