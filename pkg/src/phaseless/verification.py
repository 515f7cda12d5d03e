"""Numerical checkers for spectrogram equality, phase equivalence and the
operator identities, plus the periodization diagnostic for integer
translates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .constructions import CounterexamplePair
from .errors import GridMismatch
from .frft import HermiteBasis, check_rotation_property, frft
from .hermite import N_MAX_DEFAULT
from .io import FieldOutput, compute_field
from .lattice import LineFamily, line_points
from .numerics import DEFAULT_GRID, Grid, Signal, ToleranceProfile, inner_product, l2_norm
from .operators import _fourier_values, as_points, check_lemma21, fourier, inverse_fourier, reflect, stft_values
from .report import VerificationReport

__all__ = [
    "VerificationReport",
    "PeriodizationDiagnostic",
    "verify_equal_on_points",
    "phase_distance",
    "verify_pair",
    "verify_field",
    "family_points_in_rect",
    "operator_identity_suite",
    "periodization_diagnostic",
    "spectrum_gap_generator",
    "NON_EQUIVALENCE_THRESHOLD",
    "CONTROL_FRACTION",
]

NON_EQUIVALENCE_THRESHOLD = 1e-3
CONTROL_FRACTION = 1e-3


def verify_equal_on_points(f1: Signal, f2: Signal, g: Signal, points,
                           tol: Optional[ToleranceProfile] = None,
                           reference_peak: float = 0.0) -> VerificationReport:
    """Compare ``|V_g f1|`` and ``|V_g f2|`` at ``points``.

    Differences are divided by the largest modulus seen at the points or by
    ``reference_peak`` (a spectrogram peak over a reference region),
    whichever is larger.
    """
    tol = tol or ToleranceProfile(rel_tol=1e-6)
    if f1.grid != f2.grid or f1.grid != g.grid:
        raise GridMismatch("signals and window must share a grid")
    pts = as_points(points)
    if len(pts) == 0:
        return VerificationReport.build("spectrogram_equality", {}, tol.rel_tol, 0, "no points")
    V = np.abs(stft_values([f1, f2], g, pts, tol.quadrature))
    diff = np.abs(V[0] - V[1])
    scale = max(float(V.max()), float(reference_peak))
    res = float(diff.max()) / scale if scale > 0 else float(diff.max())
    return VerificationReport.build(
        "spectrogram_equality", {"max_normalized_difference": res}, tol.threshold(scale),
        sample_points=len(pts), notes=f"scale={scale:.6e}",
    )


def phase_distance(f1: Signal, f2: Signal, rule: str = "trapezoid") -> Tuple[float, complex]:
    """``min_{|nu|=1} ||f2 - nu f1||`` and the minimizing ``nu``.

    The minimizer is ``nu = <f2, f1> / |<f2, f1>|`` so that ``f2 ~ nu f1``;
    the distance is evaluated directly as ``||f2 - nu f1||``, which equals
    ``sqrt(||f1||^2 + ||f2||^2 - 2 |<f1, f2>|)`` without its cancellation.
    """
    if f1.grid != f2.grid:
        raise GridMismatch(f"{f1.grid} != {f2.grid}")
    ip = inner_product(f2, f1, rule)
    nu = ip / abs(ip) if abs(ip) > 0 else 1.0 + 0j
    return l2_norm(f2 - nu * f1, rule), complex(nu)


def _control_family(fam: LineFamily) -> LineFamily:
    """Lines halfway between those of ``fam``."""
    if fam.single:
        return LineFamily(fam.theta, math.inf, _offset(fam, 1.0))
    return LineFamily(fam.theta, fam.spacing, _offset(fam, 0.5 * fam.spacing))


def _offset(fam: LineFamily, d: float) -> Tuple[float, float]:
    c, s = math.cos(fam.theta), math.sin(fam.theta)
    return fam.shift[0] - s * d, fam.shift[1] + c * d


def _spectrogram_q(f1, f2, g, pts, rule):
    V = stft_values([f1, f2], g, pts, rule)
    s1, s2 = np.abs(V[0]) ** 2, np.abs(V[1]) ** 2
    return np.abs(s1 - s2), np.maximum(s1, s2)


def _non_equivalence(pair: CounterexamplePair, rule: str, threshold: float) -> VerificationReport:
    d, nu = phase_distance(pair.f1, pair.f2, rule)
    n1 = l2_norm(pair.f1, rule)
    rel = d / n1 if n1 > 0 else 0.0
    note = f"best_nu={nu.real:+.6f}{nu.imag:+.6f}j"
    if rel <= threshold:
        note += "; pair is equivalent up to a global phase"
    return VerificationReport.build("non_equivalence", {"relative_phase_distance": rel}, threshold,
                                    notes=note, bound="min")


def verify_pair(pair: CounterexamplePair, g: Signal, x_samples, n_range,
                tol: Optional[ToleranceProfile] = None, family: Optional[LineFamily] = None,
                non_equivalence: float = NON_EQUIVALENCE_THRESHOLD) -> VerificationReport:
    """Certify a pair: equal spectrograms on the lines, not phase-equivalent,
    and a visibly different spectrogram between the lines.

    ``family`` defaults to the pair's refined family.
    """
    tol = tol or ToleranceProfile(rel_tol=1e-6)
    fam = pair.refined_family if family is None else family
    pts = line_points(fam, x_samples, n_range)
    ctrl = line_points(_control_family(fam), x_samples, n_range)
    q_ctrl, peak_ctrl = _spectrogram_q(pair.f1, pair.f2, g, ctrl, tol.quadrature)
    eq = verify_equal_on_points(pair.f1, pair.f2, g, pts, tol, reference_peak=math.sqrt(peak_ctrl.max()))
    V = np.abs(stft_values([pair.f1, pair.f2], g, pts, tol.quadrature))
    peak = max(float(peak_ctrl.max()), float((V ** 2).max()))
    ctrl_ratio = float(q_ctrl.max()) / peak if peak > 0 else 0.0
    nontrivial = VerificationReport.build(
        "nontriviality", {"control_q_over_peak": ctrl_ratio}, CONTROL_FRACTION,
        sample_points=len(ctrl), bound="min", notes="Q between the lines relative to |V|^2 peak")
    neq = _non_equivalence(pair, tol.quadrature, non_equivalence)
    return VerificationReport.build(
        "pair", {}, None, sample_points=len(pts) + len(ctrl),
        notes=f"theta={fam.theta:g}, spacing={fam.spacing:g}, shift={fam.shift}",
        children=(eq, neq, nontrivial))


def family_points_in_rect(fam: LineFamily, rect, n_along: int = 257) -> np.ndarray:
    """Points of the family lying in ``rect = (x0, x1, w0, w1)``."""
    x0, x1, w0, w1 = rect
    corners = np.array([[x0, w0], [x0, w1], [x1, w0], [x1, w1]], dtype=float)
    loc = fam.local_coords(corners)
    xs = np.linspace(loc[:, 0].min(), loc[:, 0].max(), n_along)
    if fam.single:
        ns = [0]
    else:
        ns = range(math.ceil(loc[:, 1].min() / fam.spacing - 1e-9),
                   math.floor(loc[:, 1].max() / fam.spacing + 1e-9) + 1)
    pts = line_points(fam, xs, ns)
    eps = 1e-12
    keep = ((pts[:, 0] >= x0 - eps) & (pts[:, 0] <= x1 + eps)
            & (pts[:, 1] >= w0 - eps) & (pts[:, 1] <= w1 + eps))
    return pts[keep]


def verify_field(pair: CounterexamplePair, g: Signal, rect, nx: int = 129, ny: int = 97,
                 workers: int = 1, family: Optional[LineFamily] = None, n_along: int = 65,
                 line_tol: float = 1e-6) -> Tuple[VerificationReport, FieldOutput]:
    """Q field on ``rect`` plus the on-line / off-line checks against its peak."""
    field, _ = compute_field(pair.f1, pair.f2, g, rect, nx, ny, workers)
    fam = pair.refined_family if family is None else family
    peak = field.q_max
    on = family_points_in_rect(fam, rect, n_along)
    off = family_points_in_rect(_control_family(fam), rect, n_along)
    q_on = _spectrogram_q(pair.f1, pair.f2, g, on, "trapezoid")[0] if len(on) else np.zeros(0)
    q_off = _spectrogram_q(pair.f1, pair.f2, g, off, "trapezoid")[0] if len(off) else np.zeros(0)
    on_ratio = float(q_on.max()) / peak if len(on) and peak > 0 else (0.0 if len(on) else math.inf)
    off_ratio = float(q_off.max()) / peak if len(off) and peak > 0 else 0.0
    children = (
        VerificationReport.build("field_peak", {"q_max": peak}, 0.0, nx * ny, bound="min"),
        VerificationReport.build("on_line", {"q_over_peak": on_ratio}, line_tol, len(on)),
        VerificationReport.build("off_line_control", {"q_over_peak": off_ratio}, CONTROL_FRACTION,
                                 len(off), bound="min"),
    )
    rep = VerificationReport.build("field", {}, None, nx * ny + len(on) + len(off),
                                   notes=f"rect={tuple(rect)}", children=children)
    return rep, field


# --- identity suite ---------------------------------------------------------


def _random_hermite_signal(rng, grid: Grid, max_order: int, label: str) -> Signal:
    from .hermite import hermite_series

    coeffs = (rng.standard_normal(max_order + 1) + 1j * rng.standard_normal(max_order + 1))
    coeffs /= np.linalg.norm(coeffs)
    func = lambda t: hermite_series(coeffs, np.asarray(t, dtype=float))
    return Signal(grid, func(grid.points), label, func)


def _rel(a: Signal, b: Signal) -> float:
    s = max(l2_norm(a), l2_norm(b))
    d = l2_norm(a - b)
    return d / s if s > 0 else d


def operator_identity_suite(seed: int = 0, tol: Optional[ToleranceProfile] = None,
                            grid: Grid = DEFAULT_GRID, signal_order: int = 12,
                            n_rotation: int = 20, zero: bool = False) -> VerificationReport:
    """Seeded check of the time-frequency relations, the FrFT properties and
    the rotation property. ``zero=True`` runs everything on zero signals."""
    tol = tol or ToleranceProfile(rel_tol=1e-6)
    rng = np.random.default_rng(seed)
    basis = HermiteBasis(grid, N_MAX_DEFAULT)
    if zero:
        f = Signal.zeros(grid, "f")
        g = Signal.zeros(grid, "g")
    else:
        f = _random_hermite_signal(rng, grid, signal_order, "f")
        g = _random_hermite_signal(rng, grid, signal_order, "g")

    tau = int(rng.integers(-128, 129)) * grid.dt
    nu = float(rng.uniform(-1, 1))
    p = tuple(rng.uniform(-1, 1, size=2))
    lemma = check_lemma21(f, g, tau, nu, p, ToleranceProfile(rel_tol=1e-8))

    res = {}
    for name, th, exact in (("special_identity", 0.0, f), ("special_fourier", 0.5 * math.pi, fourier(f)),
                            ("special_inverse_fourier", -0.5 * math.pi, inverse_fourier(f)),
                            ("special_reflection", math.pi, reflect(f))):
        res[name] = _rel(frft(f, th, basis, exact_special=False), exact)
    a, b = rng.uniform(-math.pi, math.pi, size=2)
    res["additivity"] = _rel(frft(frft(f, a, basis), b, basis), frft(f, a + b, basis))
    th = float(rng.uniform(-math.pi, math.pi))
    res["reflection_commutation"] = _rel(frft(reflect(f), th, basis), reflect(frft(f, th, basis)))
    res["conjugation"] = _rel(frft(f, th, basis).conj(), frft(f.conj(), -th, basis))
    nf = l2_norm(f)
    unit = 0.0
    for th in rng.uniform(-math.pi, math.pi, size=10):
        n2 = l2_norm(frft(f, th, basis))
        unit = max(unit, abs(n2 - nf) / nf if nf > 0 else n2)
    res["unitarity"] = unit
    frft_rep = VerificationReport.build("frft_properties", res, tol.rel_tol, grid.n)

    rot = {"theta_zero": check_rotation_property(f, g, 0.0, (0.3, -0.4), basis, tol).residuals["rotation"]}
    worst = 0.0
    for _ in range(n_rotation):
        th = float(rng.uniform(-math.pi, math.pi))
        x, w = rng.uniform(-1.5, 1.5, size=2)
        r = check_rotation_property(f, g, th, (x, w), basis, tol).residuals["rotation"]
        worst = max(worst, r)
    rot["random_points"] = worst
    rot_rep = VerificationReport.build("rotation_property", rot, tol.rel_tol, n_rotation + 1)
    return VerificationReport.build("operator_identities", {}, None, notes=f"seed={seed}",
                                    children=(lemma, frft_rep, rot_rep))


# --- periodization ----------------------------------------------------------


@dataclass(frozen=True)
class PeriodizationDiagnostic:
    sup_estimate: float
    inf_estimate: float
    grid_resolution: int
    bessel_ok: bool
    independence_ok: bool
    w0_estimate: float
    samples: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.inf_estimate > self.sup_estimate:
            raise ValueError("inf estimate exceeds sup estimate")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("sup_estimate", "inf_estimate", "grid_resolution",
                                              "bessel_ok", "independence_ok", "w0_estimate")}


def periodization_diagnostic(h: Signal, step: float = 1.0, resolution: int = 4096,
                             bessel_bound: float = 1e8, delta: float = 1e-8,
                             n_periods: Optional[int] = None) -> PeriodizationDiagnostic:
    """Estimate ``Phi(t) = sum_k |F h_s(t + k)|^2`` on ``[0, 1)``.

    ``h_s(t) = sqrt(s) h(s t)`` turns translates by ``s k`` into integer
    translates; ``F h_s(xi) = F h(xi / s) / sqrt(s)``, so no resampling of
    ``h`` is needed. The sum runs over ``|k| <= n_periods`` (default: the
    band ``|xi| <= 1/(2 dt)`` supported by the grid).
    """
    if not step > 0:
        raise ValueError("step must be positive")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    s = float(step)
    K = n_periods if n_periods is not None else int(math.ceil(s / (2 * h.grid.dt))) + 1
    freq = Grid(-K / s, 1.0 / (s * resolution), (2 * K + 1) * resolution)
    x = h.values * h.grid.weights("trapezoid")
    Fh = _fourier_values(x, h.grid, freq, "czt")
    Phi = (np.abs(Fh) ** 2 / s).reshape(2 * K + 1, resolution).sum(axis=0)
    sup, inf = float(Phi.max()), float(Phi.min())
    # sum over unit cells of the peak of |h_s|
    t = h.grid.points / s
    cells = np.floor(t).astype(int)
    mags = np.abs(h.values) * math.sqrt(s)
    peaks = np.zeros(cells.max() - cells.min() + 1)
    np.maximum.at(peaks, cells - cells.min(), mags)
    return PeriodizationDiagnostic(
        sup_estimate=sup, inf_estimate=inf, grid_resolution=resolution,
        bessel_ok=bool(0 < sup < bessel_bound), independence_ok=bool(inf > delta),
        w0_estimate=float(peaks.sum()), samples=Phi,
    )


def spectrum_gap_generator(sigma: float = 0.03, center: float = 0.25,
                           grid: Optional[Grid] = None) -> Signal:
    """Generator whose transform is a narrow Gaussian bump at ``center``.

    ``F h(xi) = exp(-(xi - center)^2 / (2 sigma^2))``, so the periodization
    is numerically zero away from ``center + Z``.
    """
    grid = grid or Grid.symmetric(48.0, 1.0 / 16)
    c = math.sqrt(2 * math.pi) * sigma
    func = lambda t: c * np.exp(-2 * math.pi ** 2 * sigma ** 2 * np.asarray(t) ** 2
                                + 2j * math.pi * center * np.asarray(t))
    return Signal(grid, func(grid.points), "gap", func)
