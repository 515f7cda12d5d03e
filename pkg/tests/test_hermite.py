import numpy as np
import pytest
import sympy as sp
from scipy.integrate import quad

from phaseless import OrderOverflow, hermite_eval
from phaseless.hermite import check_order, hermite_function, hermite_functions, hermite_series

from oracles import hermite_oracle


def rodrigues(n, prefactor=None):
    """``2^{1/4}/sqrt(n!) a^n e^{pi t^2} d^n/dt^n e^{-2 pi t^2}`` with ``a = -1/(2 sqrt(pi))``."""
    t = sp.symbols("t", real=True)
    a = -1 / (2 * sp.sqrt(sp.pi)) if prefactor is None else prefactor
    expr = (sp.root(2, 4) / sp.sqrt(sp.factorial(n)) * a ** n
            * sp.exp(sp.pi * t ** 2) * sp.diff(sp.exp(-2 * sp.pi * t ** 2), t, n))
    return sp.lambdify(t, sp.simplify(expr), "numpy")


@pytest.mark.parametrize("n", range(6))
def test_recurrence_matches_symbolic_rodrigues(n):
    t = np.linspace(-3, 3, 61)
    assert np.allclose(hermite_function(n, t), rodrigues(n)(t) * np.ones_like(t), atol=1e-13, rtol=1e-12)


@pytest.mark.parametrize("n", range(6))
def test_symbolic_rodrigues_is_normalized(n):
    f = rodrigues(n)
    assert quad(lambda s: f(s) ** 2, -np.inf, np.inf)[0] == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rodrigues_prefactor_scaling(n):
    # with a = -1/sqrt(2 pi) the squared norm is 2^n, not 1
    f = rodrigues(n, -1 / sp.sqrt(2 * sp.pi))
    assert quad(lambda s: f(s) ** 2, -np.inf, np.inf)[0] == pytest.approx(2.0 ** n, rel=1e-10)


def test_matches_polynomial_oracle_high_order():
    t = np.linspace(-5, 5, 201)
    for n in (10, 20, 40):
        assert np.allclose(hermite_function(n, t), hermite_oracle(n, t), atol=1e-11)


def test_h0_at_zero(grid):
    assert hermite_eval(0, grid).values[grid.n // 2] == pytest.approx(2 ** 0.25, rel=1e-15)
    assert hermite_eval(1, grid).values[grid.n // 2] == 0


def test_parity():
    t = np.linspace(-3, 3, 31)
    H = hermite_functions(9, t)
    for n in range(10):
        assert np.allclose(H[n][::-1], (-1) ** n * H[n], atol=1e-15)


def test_series():
    t = np.linspace(-2, 2, 17)
    c = np.array([0.5, -1j, 0.25, 2.0])
    assert np.allclose(hermite_series(c, t), c @ hermite_functions(3, t))
    assert np.allclose(hermite_series([3.0], t), 3 * hermite_function(0, t))


def test_order_overflow(grid):
    with pytest.raises(OrderOverflow):
        hermite_eval(65, grid)
    with pytest.raises(ValueError):
        check_order(-1)
    hermite_eval(70, grid, n_max=80)
