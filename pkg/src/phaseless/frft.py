"""Hermite bases, the fractional Fourier transform and fractional shifts.

The transform of order ``theta`` multiplies the ``n``-th Hermite coefficient
by ``exp(-i theta n)``. At ``theta`` in ``{0, pi/2, -pi/2, pi}`` (mod 2 pi)
the exact operators (identity, Fourier, inverse Fourier, reflection) are
used by default so that no truncation error enters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from .errors import GridMismatch, TruncationBudgetExceeded
from .hermite import N_MAX_DEFAULT, check_order, hermite_functions, hermite_series
from .numerics import Grid, Signal, ToleranceProfile, l2_norm
from .operators import TFPoint, fourier, inverse_fourier, modulate, reflect, stft, translate
from .report import VerificationReport

__all__ = [
    "FrftOrder",
    "HermiteBasis",
    "hermite_eval",
    "hermite_coeffs",
    "frft",
    "frac_shift",
    "frac_shift_closed_form",
    "check_rotation_property",
    "rotate",
    "TRUNCATION_BUDGET",
]

TRUNCATION_BUDGET = 1e-10
_TWO_PI = 2.0 * math.pi
_SPECIAL = {0.0: "identity", 0.5 * math.pi: "fourier", -0.5 * math.pi: "inverse_fourier",
            math.pi: "reflect"}


@dataclass(frozen=True)
class FrftOrder:
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("FrFT order must be finite")
        object.__setattr__(self, "theta", float(self.theta))

    @classmethod
    def of(cls, theta) -> "FrftOrder":
        return theta if isinstance(theta, FrftOrder) else cls(float(theta))

    @property
    def reduced(self) -> float:
        """``theta`` reduced to ``(-pi, pi]``."""
        r = math.remainder(self.theta, _TWO_PI)
        return math.pi if r == -math.pi else r

    @property
    def special(self) -> Optional[str]:
        r = self.reduced
        for angle, tag in _SPECIAL.items():
            d = abs(math.remainder(r - angle, _TWO_PI))
            if d <= 1e-12:
                return tag
        return None

    def __neg__(self) -> "FrftOrder":
        return FrftOrder(-self.theta)


class HermiteBasis:
    """Hermite functions ``H_0 .. H_N`` sampled on a grid."""

    def __init__(self, grid: Grid, max_order: int = N_MAX_DEFAULT, n_max: int = N_MAX_DEFAULT):
        check_order(max_order, n_max)
        self.grid = grid
        self.max_order = int(max_order)
        m = hermite_functions(self.max_order, grid.points)
        m.setflags(write=False)
        self.matrix = m

    @cached_property
    def basis_signals(self) -> Tuple[Signal, ...]:
        return tuple(hermite_eval(n, self.grid, self.max_order) for n in range(self.max_order + 1))

    def gram(self, rule: str = "trapezoid") -> np.ndarray:
        w = self.grid.weights(rule)
        return (self.matrix * w) @ self.matrix.T

    def __repr__(self):
        return f"HermiteBasis(grid={self.grid}, max_order={self.max_order})"


def hermite_eval(n: int, grid: Grid, n_max: int = N_MAX_DEFAULT) -> Signal:
    check_order(n, n_max)
    func = lambda t: hermite_functions(n, np.asarray(t, dtype=float))[n].astype(complex)
    return Signal(grid, func(grid.points), f"H{n}", func)


def hermite_coeffs(f: Signal, basis: HermiteBasis, rule: str = "trapezoid"):
    """Return ``(coeffs, tail_energy)`` with ``coeffs[n] = <f, H_n>``.

    ``tail_energy = ||f||^2 - sum |coeffs|^2`` measures what the truncated
    basis misses.
    """
    if f.grid != basis.grid:
        raise GridMismatch(f"{f.grid} != {basis.grid}")
    w = f.grid.weights(rule)
    coeffs = basis.matrix @ (f.values * w)
    tail = l2_norm(f, rule) ** 2 - float(np.sum(np.abs(coeffs) ** 2))
    return coeffs, tail


def _series_signal(grid: Grid, coeffs: np.ndarray, label: str) -> Signal:
    coeffs = np.array(coeffs, dtype=complex)
    func = lambda t: hermite_series(coeffs, t)
    return Signal(grid, func(grid.points), label, func)


def frft(f: Signal, theta, basis: HermiteBasis, budget: float = TRUNCATION_BUDGET,
         exact_special: bool = True, rule: str = "trapezoid") -> Signal:
    """Fractional Fourier transform of order ``theta``.

    Raises :class:`TruncationBudgetExceeded` when the Hermite tail of ``f``
    exceeds ``budget * ||f||^2`` (not checked on the exact special paths).
    The result carries a closed-form evaluator, so it can be translated by
    arbitrary amounts without interpolation.
    """
    order = FrftOrder.of(theta)
    tag = order.special if exact_special else None
    if tag == "identity":
        return f
    if tag == "fourier":
        return fourier(f, rule=rule)
    if tag == "inverse_fourier":
        return inverse_fourier(f, rule=rule)
    if tag == "reflect":
        return reflect(f)
    coeffs, tail = hermite_coeffs(f, basis, rule)
    energy = l2_norm(f, rule) ** 2
    if tail > budget * energy:
        raise TruncationBudgetExceeded(tail / energy if energy > 0 else tail, budget)
    phases = np.exp(-1j * order.theta * np.arange(coeffs.size))
    return _series_signal(f.grid, phases * coeffs, f"F[{order.theta:g}]{f.label}")


def frac_shift(u: Signal, tau: float, theta, basis: HermiteBasis, method: str = "hermite",
               budget: float = TRUNCATION_BUDGET) -> Signal:
    """Fractional shift ``F_{-theta} T_tau F_theta u``.

    ``method="closed_form"`` uses the equivalent time-frequency shift
    :func:`frac_shift_closed_form`, which needs no Hermite expansion.
    """
    order = FrftOrder.of(theta)
    if tau == 0:
        return u
    if method == "closed_form":
        return frac_shift_closed_form(u, tau, order)
    if method != "hermite":
        raise ValueError(f"unknown method {method!r}")
    v = frft(u, order, basis, budget)
    return frft(translate(v, tau), -order, basis, budget)


def frac_shift_closed_form(u: Signal, tau: float, theta) -> Signal:
    """``exp(-i pi tau^2 cos sin) M_{tau sin} T_{tau cos} u``.

    The fractional shift is the time-frequency shift by ``R_theta (tau, 0)``
    with a chirp phase; this form is exact for any window with a closed-form
    evaluator.
    """
    th = FrftOrder.of(theta).theta
    c, s = math.cos(th), math.sin(th)
    out = modulate(translate(u, tau * c), tau * s)
    return complex(np.exp(-1j * math.pi * tau * tau * c * s)) * out


def rotate(theta: float, x: float, omega: float) -> Tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    return c * x - s * omega, s * x + c * omega


def check_rotation_property(f: Signal, g: Signal, theta, p, basis: HermiteBasis,
                            tol: Optional[ToleranceProfile] = None) -> VerificationReport:
    """Compare ``V_g f(R_theta p)`` with the rotated-transform expression.

    The residual is divided by ``||f|| ||g||``, the natural bound on the STFT.
    """
    tol = tol or ToleranceProfile(rel_tol=1e-6)
    order = FrftOrder.of(theta)
    p = p if isinstance(p, TFPoint) else TFPoint(*p)
    x, om = p.x, p.omega
    th = order.theta
    rx, ry = rotate(th, x, om)
    lhs = stft(f, g, (rx, ry), tol.quadrature)
    ff = frft(f, order, basis)
    fg = frft(g, order, basis)
    q = (x * math.cos(th) - om * math.sin(th)) * (x * math.sin(th) + om * math.cos(th))
    rhs = np.exp(-1j * math.pi * q) * np.exp(1j * math.pi * x * om) * stft(ff, fg, (x, om), tol.quadrature)
    scale = l2_norm(f, tol.quadrature) * l2_norm(g, tol.quadrature)
    res = abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)
    return VerificationReport.build(
        "rotation_property", {"rotation": res}, tol.rel_tol, sample_points=1,
        notes=f"theta={th:g}, point=({x:g}, {om:g})",
    )
