"""Translation, modulation, reflection, Fourier transform and the STFT.

Conventions::

    T_tau f(t) = f(t - tau)
    M_nu f(t)  = exp(2 pi i nu t) f(t)
    R f(t)     = f(-t)
    F u(w)     = int u(t) exp(-2 pi i w t) dt
    V_g f(x, w) = int f(t) conj(g(t - x)) exp(-2 pi i w t) dt = <f, M_w T_x g>

The STFT is evaluated by direct quadrature at arbitrary time-frequency
points; rotated line families land on arbitrary frequencies, so an FFT
grid would not help.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.signal import czt

from .errors import AsymmetricGrid, GridMismatch, GridMultipleViolation
from .numerics import Grid, Signal, ToleranceProfile, fsum_complex, l2_norm
from .report import VerificationReport

__all__ = [
    "TFPoint",
    "SpectrogramSamples",
    "as_points",
    "shifted_values",
    "translate",
    "modulate",
    "reflect",
    "fourier",
    "inverse_fourier",
    "stft",
    "stft_batch",
    "stft_values",
    "stft_grid",
    "check_lemma21",
]

# elements per temporary block in the batched kernels (complex128 -> 32 MiB)
_BLOCK = 1 << 21
INTERPOLATION_MODES = ("linear", "sinc", "none")


@dataclass(frozen=True)
class TFPoint:
    x: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.omega)):
            raise ValueError("time-frequency point must be finite")


def as_points(points) -> np.ndarray:
    """Coerce TFPoints, pairs or an ``(N, 2)`` array to a float ``(N, 2)`` array."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        if arr.size == 0:
            return np.zeros((0, 2))
        return arr.reshape(-1, 2)
    rows = [(p.x, p.omega) if isinstance(p, TFPoint) else tuple(p) for p in points]
    if not rows:
        return np.zeros((0, 2))
    return np.asarray(rows, dtype=float).reshape(-1, 2)


@dataclass(frozen=True, eq=False)
class SpectrogramSamples:
    points: np.ndarray
    values: np.ndarray
    window_label: str = ""
    signal_label: str = ""

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValueError("points and values differ in length")
        if np.any(self.values < 0):
            raise ValueError("spectrogram values must be non-negative")

    def __len__(self):
        return len(self.values)


# --- elementary operators ---------------------------------------------------


def _interpolate(f: Signal, tau: float, mode: str) -> np.ndarray:
    t = f.grid.points
    if mode == "linear":
        v = f.values
        return np.interp(t - tau, t, v.real, 0.0, 0.0) + 1j * np.interp(
            t - tau, t, v.imag, 0.0, 0.0
        )
    if mode == "sinc":
        n = f.grid.n
        k = np.fft.fftfreq(n, d=f.grid.dt)
        return np.fft.ifft(np.fft.fft(f.values) * np.exp(-2j * np.pi * k * tau))
    raise GridMultipleViolation(
        f"shift {tau} is not a multiple of dt={f.grid.dt} and signal "
        f"{f.label!r} has no off-grid representation"
    )


def shifted_values(f: Signal, tau: float, interpolation: str = "linear") -> np.ndarray:
    """Samples of ``f(t - tau)`` on ``f.grid``.

    Uses the closed form when the signal carries one, an exact index shift
    (zero fill) for grid-multiple ``tau``, and interpolation otherwise.
    """
    if interpolation not in INTERPOLATION_MODES:
        raise ValueError(f"unknown interpolation {interpolation!r}")
    if f.func is not None:
        return f.func(f.grid.points - tau)
    m = f.grid.steps(tau)
    if m is None:
        return _interpolate(f, tau, interpolation)
    n = f.grid.n
    out = np.zeros(n, dtype=complex)
    if abs(m) >= n:
        return out
    if m >= 0:
        out[m:] = f.values[: n - m]
    else:
        out[: n + m] = f.values[-m:]
    return out


def translate(f: Signal, tau: float, interpolation: str = "linear") -> Signal:
    tau = float(tau)
    if tau == 0.0:
        return f
    fa = f.func
    func = (lambda t: fa(np.asarray(t) - tau)) if fa is not None else None
    return Signal(f.grid, shifted_values(f, tau, interpolation), f"T[{tau:g}]{f.label}", func)


def modulate(f: Signal, nu: float) -> Signal:
    nu = float(nu)
    if nu == 0.0:
        return f
    fa = f.func
    func = (lambda t: np.exp(2j * np.pi * nu * np.asarray(t)) * fa(t)) if fa is not None else None
    vals = np.exp(2j * np.pi * nu * f.grid.points) * f.values
    return Signal(f.grid, vals, f"M[{nu:g}]{f.label}", func)


def reflect(f: Signal) -> Signal:
    if not f.grid.is_symmetric:
        raise AsymmetricGrid(f"grid {f.grid} is not symmetric about 0")
    fa = f.func
    func = (lambda t: fa(-np.asarray(t))) if fa is not None else None
    return Signal(f.grid, f.values[::-1].copy(), f"R{f.label}", func)


# --- Fourier transform ------------------------------------------------------


def _direct_sum(x: np.ndarray, t: np.ndarray, freqs: np.ndarray) -> np.ndarray:
    """``sum_j x_j exp(-2 pi i freqs_m t_j)`` by blocks."""
    freqs = np.asarray(freqs, dtype=float)
    flat = freqs.reshape(-1)
    out = np.empty(flat.size, dtype=complex)
    step = max(1, _BLOCK // max(t.size, 1))
    for a in range(0, flat.size, step):
        E = np.exp(-2j * np.pi * np.outer(flat[a:a + step], t))
        out[a:a + step] = E @ x
    return out.reshape(freqs.shape)


def is_dual_grid(grid: Grid, freq_grid: Grid) -> bool:
    return freq_grid.n == grid.n and abs(freq_grid.dt * grid.dt * grid.n - 1.0) <= 1e-12


def _fourier_values(x, grid: Grid, freq_grid: Grid, method: str) -> np.ndarray:
    t = grid.points
    w_pts = freq_grid.points
    if method == "auto":
        if is_dual_grid(grid, freq_grid):
            method = "fft"
        elif grid.n * freq_grid.n > 4_000_000:
            method = "czt"
        else:
            method = "direct"
    if method == "direct":
        return _direct_sum(x, t, w_pts)
    t0, dt = t[0], grid.dt
    w0, dw = w_pts[0], freq_grid.dt
    y = x * np.exp(-2j * np.pi * w0 * dt * np.arange(grid.n))
    if method == "fft":
        if not is_dual_grid(grid, freq_grid):
            raise ValueError("fft path needs the dual grid (spacing 1/(n dt))")
        core = np.fft.fft(y)
    elif method == "czt":
        core = czt(y, m=freq_grid.n, w=np.exp(-2j * np.pi * dw * dt), a=1.0)
    else:
        raise ValueError(f"unknown Fourier method {method!r}")
    return core * np.exp(-2j * np.pi * w_pts * t0)


def fourier(f: Signal, freq_grid: Optional[Grid] = None, rule: str = "trapezoid",
            method: str = "auto") -> Signal:
    """Quadrature of the Fourier integral on ``freq_grid`` (default: ``f.grid``).

    ``method`` selects direct summation, an FFT (only on the dual grid) or
    the chirp-z transform; ``auto`` picks the fastest applicable one.
    The returned signal evaluates the same quadrature at any frequency.
    """
    freq_grid = f.grid if freq_grid is None else freq_grid
    x = f.values * f.grid.weights(rule)
    t = f.grid.points
    vals = _fourier_values(x, f.grid, freq_grid, method)
    func = lambda w: _direct_sum(x, t, w)
    return Signal(freq_grid, vals, f"F{f.label}", func)


def inverse_fourier(f: Signal, time_grid: Optional[Grid] = None, rule: str = "trapezoid",
                    method: str = "auto") -> Signal:
    """``F^{-1} u(t) = F u(-t)``, computed by conjugation symmetry."""
    time_grid = f.grid if time_grid is None else time_grid
    x = np.conj(f.values * f.grid.weights(rule))
    t = f.grid.points
    vals = np.conj(_fourier_values(x, f.grid, time_grid, method))
    func = lambda s: np.conj(_direct_sum(x, t, s))
    return Signal(time_grid, vals, f"Finv{f.label}", func)


# --- STFT -------------------------------------------------------------------


def _window_rows(g: Signal, xs: np.ndarray, t: Optional[np.ndarray] = None,
                 interpolation: str = "linear") -> np.ndarray:
    """``g(t - x)`` for each ``x`` in ``xs`` (rows)."""
    if g.func is not None:
        t = g.grid.points if t is None else t
        return g.func(t[None, :] - xs[:, None])
    rows = np.stack([shifted_values(g, x, interpolation) for x in xs]) if len(xs) else \
        np.zeros((0, g.grid.n), complex)
    return rows


def stft(f: Signal, g: Signal, p, rule: str = "trapezoid", interpolation: str = "linear") -> complex:
    """``V_g f(x, omega)`` at one point, summed with :func:`math.fsum`."""
    if f.grid != g.grid:
        raise GridMismatch(f"{f.grid} != {g.grid}")
    x, om = (p.x, p.omega) if isinstance(p, TFPoint) else map(float, p)
    t = f.grid.points
    gs = shifted_values(g, x, interpolation)
    gm = np.exp(2j * np.pi * om * t) * gs
    ar, ai = f.values.real, f.values.imag
    br, bi = gm.real, gm.imag
    w = f.grid.weights(rule)
    return fsum_complex((ar * br + ai * bi) * w, (ai * br - ar * bi) * w)


def stft_values(signals: Sequence[Signal], g: Signal, points, rule: str = "trapezoid",
                interpolation: str = "linear") -> np.ndarray:
    """Complex STFT of each signal at scattered points, shape ``(S, N)``."""
    pts = as_points(points)
    for f in signals:
        if f.grid != g.grid:
            raise GridMismatch(f"{f.grid} != {g.grid}")
    grid = g.grid
    t = grid.points
    fw = np.stack([f.values for f in signals]) * grid.weights(rule)
    out = np.zeros((len(signals), len(pts)), dtype=complex)
    pb = max(1, _BLOCK // grid.n)
    for a in range(0, len(pts), pb):
        x = pts[a:a + pb, 0]
        om = pts[a:a + pb, 1]
        K = np.conj(_window_rows(g, x, interpolation=interpolation))
        K *= np.exp(-2j * np.pi * np.outer(om, t))
        out[:, a:a + pb] = fw @ K.T
    return out


def stft_batch(f: Signal, g: Signal, points, rule: str = "trapezoid",
               interpolation: str = "linear") -> SpectrogramSamples:
    pts = as_points(points)
    vals = np.abs(stft_values([f], g, pts, rule, interpolation)[0]) if len(pts) else np.zeros(0)
    return SpectrogramSamples(pts, vals, g.label, f.label)


def _grid_chunk(fw: np.ndarray, g: Signal, xs: np.ndarray, ws: np.ndarray,
                interpolation: str) -> np.ndarray:
    t = g.grid.points
    n = t.size
    out = np.zeros((fw.shape[0], xs.size, ws.size), dtype=complex)
    full_rows = None if g.func is not None else np.conj(_window_rows(g, xs, interpolation=interpolation))
    B = max(256, _BLOCK // max(xs.size, ws.size, 1))
    for a in range(0, n, B):
        tb = t[a:a + B]
        G = np.conj(g.func(tb[None, :] - xs[:, None])) if full_rows is None else full_rows[:, a:a + B]
        E = np.exp(-2j * np.pi * np.outer(tb, ws))
        for s in range(fw.shape[0]):
            out[s] += (G * fw[s, a:a + B]) @ E
    return out


def stft_grid(signals: Sequence[Signal], g: Signal, xs, omegas, rule: str = "trapezoid",
              workers: int = 1, interpolation: str = "linear") -> np.ndarray:
    """Complex STFT on the product grid ``omegas x xs``.

    Returns an array of shape ``(S, len(omegas), len(xs))``. Rows of ``xs``
    may be split across ``workers`` threads; each chunk is summed in the
    same fixed block order, so the result does not depend on ``workers``.
    """
    xs = np.asarray(xs, dtype=float)
    ws = np.asarray(omegas, dtype=float)
    for f in signals:
        if f.grid != g.grid:
            raise GridMismatch(f"{f.grid} != {g.grid}")
    fw = np.stack([f.values for f in signals]) * g.grid.weights(rule)
    chunk = 16
    pieces = [xs[a:a + chunk] for a in range(0, xs.size, chunk)]
    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda xc: _grid_chunk(fw, g, xc, ws, interpolation), pieces))
    else:
        parts = [_grid_chunk(fw, g, xc, ws, interpolation) for xc in pieces]
    out = np.concatenate(parts, axis=1) if parts else np.zeros((len(signals), 0, ws.size), complex)
    return out.transpose(0, 2, 1)


# --- operator relations -----------------------------------------------------


def _l2_relative(a: Signal, b: Signal, rule: str) -> float:
    diff = l2_norm(a - b, rule)
    scale = max(l2_norm(a, rule), l2_norm(b, rule))
    return diff / scale if scale > 0 else diff


def check_lemma21(f: Signal, g: Signal, tau: float, nu: float, p,
                  tol: Optional[ToleranceProfile] = None) -> VerificationReport:
    """Residuals of the six commutation / covariance relations.

    ``tau`` must be a multiple of the grid step so every translation is an
    exact index shift (or exact closed-form evaluation).
    """
    tol = tol or ToleranceProfile(rel_tol=1e-8)
    rule = tol.quadrature
    if f.grid.steps(tau) is None:
        raise GridMultipleViolation(f"tau={tau} is not a multiple of dt={f.grid.dt}")
    p = p if isinstance(p, TFPoint) else TFPoint(*p)
    res = {}

    lhs = translate(modulate(f, nu), tau)
    rhs = np.exp(-2j * np.pi * tau * nu) * modulate(translate(f, tau), nu)
    res["translation_modulation"] = _l2_relative(lhs, rhs, rule)

    lhs = fourier(translate(f, tau), rule=rule)
    rhs = modulate(fourier(f, rule=rule), -tau)
    res["fourier_of_translation"] = _l2_relative(lhs, rhs, rule)

    lhs = inverse_fourier(translate(f, tau), rule=rule)
    rhs = modulate(inverse_fourier(f, rule=rule), tau)
    res["inverse_fourier_of_translation"] = _l2_relative(lhs, rhs, rule)

    lhs = translate(reflect(f), tau)
    rhs = reflect(translate(f, -tau))
    res["translation_reflection"] = _l2_relative(lhs, rhs, rule)

    lhs = fourier(f, rule=rule).conj()
    rhs = reflect(fourier(f.conj(), rule=rule))
    res["fourier_conjugation"] = _l2_relative(lhs, rhs, rule)

    v_lhs = stft(translate(modulate(f, nu), tau), g, p, rule)
    v_rhs = np.exp(-2j * np.pi * tau * p.omega) * stft(f, g, (p.x - tau, p.omega - nu), rule)
    scale = l2_norm(f, rule) * l2_norm(g, rule)
    res["stft_covariance"] = abs(v_lhs - v_rhs) / scale if scale > 0 else abs(v_lhs - v_rhs)

    return VerificationReport.build(
        "tf_operator_relations", res, tol.rel_tol, sample_points=f.grid.n,
        notes=f"tau={tau:g}, nu={nu:g}, point=({p.x:g}, {p.omega:g})",
    )
