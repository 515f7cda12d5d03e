"""Uniform grids, sampled signals, and deterministic quadrature.

Every integral in the package is a weighted sum over a uniform grid. A
:class:`Signal` holds samples on such a grid and, optionally, a callable
that evaluates the same function anywhere on the real line. The callable
lets translations by non-grid amounts stay exact instead of falling back
to interpolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import GridMismatch, UnsupportedWindow

__all__ = [
    "Grid",
    "Signal",
    "ToleranceProfile",
    "WindowSpec",
    "DEFAULT_GRID",
    "inner_product",
    "l2_norm",
    "sample_analytic",
    "fsum_complex",
]

QUADRATURE_RULES = ("riemann", "trapezoid")


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``t0 + j * dt`` for ``0 <= j < n``."""

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive and finite, got {self.dt}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def symmetric(cls, half_width: float, dt: float) -> "Grid":
        """Grid on ``[-half_width, half_width]`` with ``t = 0`` a node.

        ``half_width`` is rounded to the nearest multiple of ``dt``.
        """
        m = int(round(half_width / dt))
        if m < 1:
            raise ValueError("half_width must be at least one step")
        return cls(t0=-m * dt, dt=dt, n=2 * m + 1)

    @property
    def index_offset(self) -> float:
        return self.t0 / self.dt

    @property
    def is_symmetric(self) -> bool:
        return abs(self.t0 + 0.5 * (self.n - 1) * self.dt) <= 1e-12 * self.dt * self.n

    @property
    def points(self) -> np.ndarray:
        off = self.index_offset
        if abs(off - round(off)) < 1e-9:
            # integer node indices keep symmetric grids exactly symmetric
            t = (np.arange(self.n) + round(off)) * self.dt
        else:
            t = self.t0 + self.dt * np.arange(self.n)
        t.setflags(write=False)
        return t

    def weights(self, rule: str = "trapezoid") -> np.ndarray:
        if rule not in QUADRATURE_RULES:
            raise ValueError(f"unknown quadrature rule {rule!r}")
        w = np.full(self.n, self.dt)
        if rule == "trapezoid":
            w[0] *= 0.5
            w[-1] *= 0.5
        return w

    def steps(self, tau: float, atol: float = 1e-9) -> Optional[int]:
        """Return ``tau / dt`` if it is an integer (within ``atol``), else None."""
        q = tau / self.dt
        k = round(q)
        if abs(q - k) <= atol:
            return int(k)
        return None


DEFAULT_GRID = Grid.symmetric(8.0, 1.0 / 128)


@dataclass(frozen=True)
class ToleranceProfile:
    abs_tol: float = 0.0
    rel_tol: float = 1e-6
    quadrature: str = "trapezoid"

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one of abs_tol, rel_tol must be positive")
        if self.quadrature not in QUADRATURE_RULES:
            raise ValueError(f"unknown quadrature rule {self.quadrature!r}")

    def threshold(self, scale: float) -> float:
        """Bound on a residual that has been divided by ``scale``."""
        if scale > 0:
            return self.rel_tol + self.abs_tol / scale
        return self.abs_tol if self.abs_tol > 0 else self.rel_tol


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples of a function on a :class:`Grid`.

    ``func``, when present, evaluates the underlying function at arbitrary
    real arguments and must agree with ``values`` on the grid nodes.
    """

    grid: Grid
    values: np.ndarray
    label: str = ""
    func: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got array of shape {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError(f"signal {self.label!r} has non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, func, grid: Grid, label: str = "") -> "Signal":
        f = lambda t: np.asarray(func(np.asarray(t, dtype=float)), dtype=complex)
        return cls(grid, f(grid.points), label, f)

    @classmethod
    def zeros(cls, grid: Grid, label: str = "0") -> "Signal":
        return cls(grid, np.zeros(grid.n), label, lambda t: np.zeros(np.shape(t), complex))

    def evaluate(self, t) -> np.ndarray:
        if self.func is None:
            raise ValueError(f"signal {self.label!r} has no off-grid representation")
        return self.func(np.asarray(t, dtype=float))

    def _check(self, other: "Signal"):
        if other.grid != self.grid:
            raise GridMismatch(f"{self.grid} != {other.grid}")

    def __add__(self, other: "Signal") -> "Signal":
        self._check(other)
        fa, fb = self.func, other.func
        func = (lambda t: fa(t) + fb(t)) if fa is not None and fb is not None else None
        return Signal(self.grid, self.values + other.values, f"({self.label}+{other.label})", func)

    def __sub__(self, other: "Signal") -> "Signal":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "Signal":
        c = complex(scalar)
        fa = self.func
        func = (lambda t: c * fa(t)) if fa is not None else None
        return Signal(self.grid, c * self.values, self.label, func)

    __rmul__ = __mul__

    def conj(self) -> "Signal":
        fa = self.func
        func = (lambda t: np.conj(fa(t))) if fa is not None else None
        return Signal(self.grid, np.conj(self.values), f"conj({self.label})", func)

    def relabel(self, label: str) -> "Signal":
        return Signal(self.grid, self.values, label, self.func)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


def fsum_complex(re: np.ndarray, im: np.ndarray) -> complex:
    """Correctly rounded sum of real and imaginary parts, in index order."""
    return complex(math.fsum(re.tolist()), math.fsum(im.tolist()))


def inner_product(a: Signal, b: Signal, rule: str = "trapezoid") -> complex:
    """Quadrature of ``a(t) * conj(b(t))`` over the shared grid.

    Real and imaginary parts are formed from real arithmetic and summed
    with :func:`math.fsum`, so ``inner_product(a, b)`` is exactly
    ``conj(inner_product(b, a))`` and repeated calls are bit-identical.
    """
    if a.grid != b.grid:
        raise GridMismatch(f"{a.grid} != {b.grid}")
    w = a.grid.weights(rule)
    ar, ai = a.values.real, a.values.imag
    br, bi = b.values.real, b.values.imag
    re = (ar * br + ai * bi) * w
    im = (ai * br - ar * bi) * w
    return fsum_complex(re, im)


def l2_norm(a: Signal, rule: str = "trapezoid") -> float:
    return math.sqrt(max(inner_product(a, a, rule).real, 0.0))


# --- analytic windows -------------------------------------------------------


def _gaussian(t):
    return np.exp(-np.pi * t * t)


def _exp_abs(t):
    return np.exp(-np.abs(t))


def _cauchy_mix(t):
    return np.exp(-np.abs(t)) + 1.0 / (1.0 + t * t)


_ANALYTIC = {
    "gaussian": (_gaussian, "exp(-pi t^2)"),
    "exp_abs": (_exp_abs, "exp(-|t|)"),
    "cauchy_mix": (_cauchy_mix, "exp(-|t|) + 1/(1+t^2)"),
}

WINDOW_KINDS = ("gaussian", "exp_abs", "cauchy_mix", "hermite", "table")


@dataclass(frozen=True)
class WindowSpec:
    """Named window: ``gaussian``, ``exp_abs``, ``cauchy_mix``,
    ``hermite`` (with ``order``) or ``table`` (with ``values``)."""

    kind: str
    order: int = 0
    values: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise UnsupportedWindow(f"unknown window kind {self.kind!r}")
        if self.kind == "hermite" and (int(self.order) != self.order or self.order < 0):
            raise UnsupportedWindow("hermite window needs a non-negative integer order")
        if self.kind == "table" and self.values is None:
            raise UnsupportedWindow("table window needs values")

    @classmethod
    def gaussian(cls):
        return cls("gaussian")

    @classmethod
    def exp_abs(cls):
        return cls("exp_abs")

    @classmethod
    def cauchy_mix(cls):
        return cls("cauchy_mix")

    @classmethod
    def hermite(cls, order: int):
        return cls("hermite", order=order)

    @classmethod
    def table(cls, values):
        return cls("table", values=tuple(complex(v) for v in values))

    @classmethod
    def from_dict(cls, d: dict) -> "WindowSpec":
        kind = d.get("kind")
        if kind == "hermite":
            return cls.hermite(int(d.get("order", 0)))
        if kind == "table":
            vals = d.get("values")
            if vals is None:
                raise UnsupportedWindow("table window needs values")
            return cls.table(complex(*v) if isinstance(v, (list, tuple)) else v for v in vals)
        return cls(kind)

    def to_dict(self) -> dict:
        if self.kind == "hermite":
            return {"kind": "hermite", "order": self.order}
        if self.kind == "table":
            return {"kind": "table", "values": [[v.real, v.imag] for v in self.values]}
        return {"kind": self.kind}

    @property
    def label(self) -> str:
        if self.kind == "hermite":
            return f"H{self.order}"
        if self.kind == "table":
            return "table"
        return _ANALYTIC[self.kind][1]

    def function(self) -> Optional[Callable]:
        if self.kind in _ANALYTIC:
            g = _ANALYTIC[self.kind][0]
            return lambda t: np.asarray(g(np.asarray(t, dtype=float)), dtype=complex)
        if self.kind == "hermite":
            from .hermite import hermite_function

            n = self.order
            return lambda t: hermite_function(n, np.asarray(t, dtype=float)).astype(complex)
        return None


def sample_analytic(window_spec: WindowSpec, grid: Grid) -> Signal:
    """Evaluate a window on ``grid``.

    Analytic windows keep their closed form as ``Signal.func``; table
    windows must match the grid length and carry no off-grid form.
    """
    if not isinstance(window_spec, WindowSpec):
        raise UnsupportedWindow(f"not a window spec: {window_spec!r}")
    if window_spec.kind == "table":
        vals = np.asarray(window_spec.values, dtype=complex)
        if vals.shape != (grid.n,):
            raise ValueError(f"table window has {vals.size} values, grid needs {grid.n}")
        return Signal(grid, vals, "table")
    func = window_spec.function()
    return Signal(grid, func(grid.points), window_spec.label, func)
