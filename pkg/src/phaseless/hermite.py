"""Orthonormal Hermite functions ``H_n(t)`` with the ``e^{-pi t^2}`` scaling.

Evaluated with the three-term recurrence

    H_0(t)     = 2^{1/4} exp(-pi t^2)
    H_{n+1}(t) = 2 sqrt(pi/(n+1)) t H_n(t) - sqrt(n/(n+1)) H_{n-1}(t)

which is stable for all orders used here. The recurrence agrees with the
Rodrigues form ``2^{1/4}/sqrt(n!) (-1/(2 sqrt(pi)))^n e^{pi t^2} d^n/dt^n
e^{-2 pi t^2}``; ``tests/test_hermite.py`` checks this symbolically.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import OrderOverflow

N_MAX_DEFAULT = 64


def hermite_functions(max_order: int, t) -> np.ndarray:
    """Rows ``H_0(t), ..., H_max_order(t)`` as an array of shape ``(max_order+1,) + t.shape``."""
    t = np.asarray(t, dtype=float)
    out = np.empty((max_order + 1,) + t.shape)
    out[0] = 2.0 ** 0.25 * np.exp(-np.pi * t * t)
    if max_order >= 1:
        out[1] = 2.0 * math.sqrt(np.pi) * t * out[0]
    for n in range(1, max_order):
        out[n + 1] = (
            2.0 * math.sqrt(np.pi / (n + 1)) * t * out[n]
            - math.sqrt(n / (n + 1)) * out[n - 1]
        )
    return out


def hermite_function(n: int, t) -> np.ndarray:
    return hermite_functions(n, t)[n]


def hermite_series(coeffs, t) -> np.ndarray:
    """Evaluate ``sum_n coeffs[n] H_n(t)`` without materialising all rows."""
    coeffs = np.asarray(coeffs, dtype=complex)
    t = np.asarray(t, dtype=float)
    N = coeffs.size - 1
    h_prev = 2.0 ** 0.25 * np.exp(-np.pi * t * t)
    acc = coeffs[0] * h_prev
    if N == 0:
        return acc
    h = 2.0 * math.sqrt(np.pi) * t * h_prev
    acc = acc + coeffs[1] * h
    for n in range(1, N):
        h_next = 2.0 * math.sqrt(np.pi / (n + 1)) * t * h - math.sqrt(n / (n + 1)) * h_prev
        h_prev, h = h, h_next
        acc = acc + coeffs[n + 1] * h
    return acc


def check_order(n: int, n_max: int = N_MAX_DEFAULT) -> None:
    if n < 0 or int(n) != n:
        raise ValueError(f"Hermite order must be a non-negative integer, got {n}")
    if n > n_max:
        raise OrderOverflow(f"order {n} exceeds configured maximum {n_max}")
