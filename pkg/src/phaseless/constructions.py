"""Builders for spectrogram-equal, phase-inequivalent function pairs.

Given a window ``g``, step ``s`` and order ``theta``, a finite sequence
``c`` defines

    f   = F_{-theta} sum_k c_k T_{s k} F_theta R g
    f_x = F_{-theta} sum_k conj(c_k) T_{s k} F_theta R g

and ``|V_g f| = |V_g f_x|`` on the lines ``R_theta(R x (1/s) Z)``. If the
support of ``c`` has index differences with gcd ``d`` the equality holds on
the finer family with spacing ``1/(d s)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import (GridMultipleViolation, InvalidCoefficients, NonRealWindow,
                     TruncationBudgetExceeded)
from .frft import (TRUNCATION_BUDGET, FrftOrder, HermiteBasis, frac_shift_closed_form, frft,
                   hermite_coeffs)
from .lattice import LineFamily
from .numerics import Grid, Signal, ToleranceProfile, l2_norm, sample_analytic, WindowSpec
from .operators import fourier, modulate, reflect, translate
from .report import VerificationReport
from .sequences import CoefficientSequence, classify_ell2O, classify_hermitian

__all__ = [
    "SIConfig",
    "CounterexamplePair",
    "synthesize",
    "build_pair",
    "build_real_pair",
    "realness_lemma_check",
    "gaussian_oracle_pair",
    "sample_cone",
    "EquivalenceWarning",
]

SYNTH_METHODS = ("auto", "hermite", "closed_form", "translate")


class EquivalenceWarning(UserWarning):
    """Coefficients lie on a line; the pair may agree up to a global phase."""


@dataclass(frozen=True, eq=False)
class SIConfig:
    window: Signal
    step: float
    theta: FrftOrder = FrftOrder(0.0)
    shift: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive, got {self.step}")
        object.__setattr__(self, "theta", FrftOrder.of(self.theta))
        object.__setattr__(self, "shift", (float(self.shift[0]), float(self.shift[1])))


@dataclass(frozen=True, eq=False)
class CounterexamplePair:
    f1: Signal
    f2: Signal
    config: SIConfig
    coeffs: CoefficientSequence
    line_family: LineFamily
    refined_family: LineFamily
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.f1.grid != self.f2.grid:
            raise ValueError("pair members must share a grid")


def _resolve_method(config: SIConfig, basis: Optional[HermiteBasis], method: str) -> str:
    if method not in SYNTH_METHODS:
        raise ValueError(f"unknown synthesis method {method!r}")
    if method != "auto":
        return method
    if config.theta.special == "identity":
        return "translate"
    if basis is not None:
        r = reflect(config.window)
        _, tail = hermite_coeffs(r, basis)
        if tail <= TRUNCATION_BUDGET * l2_norm(r) ** 2:
            return "hermite"
    if config.window.func is None:
        raise TruncationBudgetExceeded(float("nan"), TRUNCATION_BUDGET)
    return "closed_form"


def synthesize(config: SIConfig, c: CoefficientSequence, basis: Optional[HermiteBasis] = None,
               method: str = "auto", interpolation: str = "none") -> Signal:
    """Sum ``sum_k c_k T^theta_{s k} R g`` for a finite sequence.

    ``hermite`` transforms ``R g`` once, shifts in the transformed domain
    and transforms back; ``closed_form`` uses the equivalent chirped
    time-frequency shifts and is exact for windows with an analytic form;
    ``translate`` is the ``theta = 0`` case. ``auto`` picks ``translate`` at
    ``theta = 0``, ``hermite`` when the window is represented within the
    truncation budget, and ``closed_form`` otherwise.
    """
    method = _resolve_method(config, basis, method)
    r = reflect(config.window)
    s = config.step
    if method == "translate" and config.theta.special != "identity":
        raise ValueError("translate synthesis only applies at theta = 0")
    if method == "hermite" and basis is None:
        raise ValueError("hermite synthesis needs a basis")
    if r.func is None:
        bad = [k for k in c.support if r.grid.steps(s * k) is None]
        if bad and interpolation == "none":
            raise GridMultipleViolation(f"shifts {[s * k for k in bad]} are not grid multiples")

    def shifted(u: Signal, tau: float) -> Signal:
        return translate(u, tau, interpolation)

    terms = [(k, ck) for k, ck in c.items() if ck != 0]
    label = f"synth[{config.window.label}]"
    if not terms:
        return Signal.zeros(r.grid, label)
    if method == "translate":
        out = sum((ck * shifted(r, s * k) for k, ck in terms[1:]), terms[0][1] * shifted(r, s * terms[0][0]))
        return out.relabel(label)
    if method == "closed_form":
        parts = [ck * frac_shift_closed_form(r, s * k, config.theta) for k, ck in terms]
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out.relabel(label)
    u = frft(r, config.theta, basis)
    acc = terms[0][1] * shifted(u, s * terms[0][0])
    for k, ck in terms[1:]:
        acc = acc + ck * shifted(u, s * k)
    return frft(acc, -config.theta, basis).relabel(label)


def _families(config: SIConfig, c: CoefficientSequence) -> Tuple[LineFamily, LineFamily]:
    base = LineFamily(config.theta.theta, 1.0 / config.step, config.shift)
    d = c.support_gcd
    return base, (base.refined(d) if d > 1 else base)


def build_pair(config: SIConfig, c: CoefficientSequence, basis: Optional[HermiteBasis] = None,
               method: str = "auto", interpolation: str = "none") -> CounterexamplePair:
    """Build ``(M_b T_a f, M_b T_a f_x)`` for ``config.shift = (a, b)``."""
    if not classify_ell2O(c):
        warnings.warn("coefficients lie on a line through the origin; the pair may be "
                      "equivalent up to a global phase", EquivalenceWarning, stacklevel=2)
    resolved = _resolve_method(config, basis, method)
    f = synthesize(config, c, basis, resolved, interpolation)
    fx = synthesize(config, c.conj(), basis, resolved, interpolation)
    a, b = config.shift
    f1 = modulate(translate(f, a), b)
    f2 = modulate(translate(fx, a), b)
    base, refined = _families(config, c)
    diag = {"method": resolved, "support_gcd": c.support_gcd}
    return CounterexamplePair(f1.relabel("f1"), f2.relabel("f2"), config, c, base, refined, diag)


def _max_imag_ratio(f: Signal) -> float:
    m = f.sup_norm
    return float(np.max(np.abs(f.values.imag))) / m if m > 0 else 0.0


def build_real_pair(g: Signal, alpha: float, beta: float, basis: Optional[HermiteBasis] = None,
                    coeffs: Optional[CoefficientSequence] = None,
                    method: str = "auto") -> CounterexamplePair:
    """Real-valued pair with equal spectrograms on ``alpha Z x R``.

    ``theta = pi/2`` and ``s = 1/alpha``; the rectangular lattice
    ``alpha Z x beta Z`` is contained in the equality set for every ``beta``.
    """
    if not (alpha > 0 and beta > 0):
        raise ValueError("alpha and beta must be positive")
    gm = g.sup_norm
    if gm == 0 or float(np.max(np.abs(g.values.imag))) > 1e-12 * gm:
        raise NonRealWindow(f"window {g.label!r} is not real-valued")
    c = CoefficientSequence.default_real_witness() if coeffs is None else coeffs
    if not classify_ell2O(c):
        raise InvalidCoefficients("coefficients lie on a line through the origin")
    if not classify_hermitian(c):
        raise InvalidCoefficients("coefficients are not Hermitian")
    cfg = SIConfig(g, 1.0 / alpha, FrftOrder(0.5 * math.pi))
    pair = build_pair(cfg, c, basis, method)
    diag = dict(pair.diagnostics, alpha=alpha, beta=beta,
                max_imag_ratio=max(_max_imag_ratio(pair.f1), _max_imag_ratio(pair.f2)))
    return CounterexamplePair(pair.f1, pair.f2, cfg, c, pair.line_family, pair.refined_family, diag)


def realness_lemma_check(u: Signal, c: CoefficientSequence, step: float,
                         tol: Optional[ToleranceProfile] = None) -> VerificationReport:
    """Check that ``F(sum_k c_k T_{step k} u)`` is real.

    Residuals are ``max|Im|/max|.|`` of the transform of ``u`` itself (the
    hypothesis) and of the synthesized sum (the conclusion).
    """
    tol = tol or ToleranceProfile(rel_tol=1e-8)

    def imag_ratio(sig: Signal) -> float:
        F = fourier(sig, rule=tol.quadrature).values
        m = float(np.max(np.abs(F)))
        return float(np.max(np.abs(F.imag))) / m if m > 0 else 0.0

    terms = [(k, ck) for k, ck in c.items() if ck != 0]
    v = Signal.zeros(u.grid)
    for k, ck in terms:
        v = v + ck * translate(u, step * k)
    res = {"input_transform_imag": imag_ratio(u), "synthesis_transform_imag": imag_ratio(v)}
    herm = classify_hermitian(c)
    return VerificationReport.build("realness", res, tol.rel_tol, sample_points=u.grid.n,
                                    notes="" if herm else "coefficients are not Hermitian")


def gaussian_closed_forms(beta: float, grid: Grid) -> Tuple[Signal, Signal]:
    def f(sign):
        def func(t):
            t = np.asarray(t, dtype=float)
            a = math.pi * t / beta
            return np.exp(-math.pi * t * t) * (np.cosh(a) + sign * 1j * np.sinh(a))
        return Signal(grid, func(grid.points), "f1" if sign > 0 else "f2", func)
    return f(1), f(-1)


def gaussian_oracle_pair(beta: float, grid: Grid, basis: Optional[HermiteBasis] = None) -> CounterexamplePair:
    """Closed-form Gaussian pair together with its coefficient representation.

    ``f1, f2`` are the closed forms; ``diagnostics["synthesis_error"]`` is the
    relative L2 distance to the synthesized members.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    amp = math.exp(math.pi / (4 * beta * beta))
    c = CoefficientSequence(-1, ((1 - 1j) / 2 * amp, 0j, (1 + 1j) / 2 * amp))
    phi = sample_analytic(WindowSpec.gaussian(), grid)
    cfg = SIConfig(phi, 1.0 / (2 * beta), FrftOrder(0.0))
    synth = build_pair(cfg, c, basis)
    f1, f2 = gaussian_closed_forms(beta, grid)
    err = max(l2_norm(synth.f1 - f1) / l2_norm(f1), l2_norm(synth.f2 - f2) / l2_norm(f2))
    diag = dict(synth.diagnostics, synthesis_error=err, beta=beta)
    return CounterexamplePair(f1, f2, cfg, c, synth.line_family, synth.refined_family, diag)


def sample_cone(config: SIConfig, support_radius: int, rng_seed: int,
                max_tries: int = 1000) -> CoefficientSequence:
    """Random finite sequence on ``[-R, R]`` that is off every line.

    Entries are standard complex normals, each kept with probability 1/2;
    draws are rejected until the sequence is in the class.
    """
    if support_radius < 1:
        raise ValueError("support_radius must be >= 1")
    rng = np.random.default_rng(rng_seed)
    n = 2 * support_radius + 1
    for _ in range(max_tries):
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vals = vals * (rng.random(n) < 0.5)
        c = CoefficientSequence(-support_radius, tuple(vals))
        if classify_ell2O(c):
            return c
    raise RuntimeError("rejection sampling did not produce a sequence off every line")
