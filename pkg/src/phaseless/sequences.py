"""Finitely supported coefficient sequences and their classifiers.

A sequence lies "on a line" when all its values sit on ``e^{i alpha} R`` for
one ``alpha``. Sequences off every line generate pairs ``f, f_x`` that are
not equal up to a global phase; Hermitian sequences ``c_k = conj(c_{-k})``
produce real Fourier syntheses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

__all__ = [
    "CoefficientSequence",
    "classify_ell2O",
    "classify_hermitian",
    "line_check",
    "conjugate_partner",
    "LINE_TOL",
]

# relative tolerance (in units of max|c|^2) for the pairwise line test
LINE_TOL = 1e-14


@dataclass(frozen=True)
class CoefficientSequence:
    """Coefficients ``c_k`` for ``k_min <= k <= k_min + len(coeffs) - 1``."""

    k_min: int
    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        if int(self.k_min) != self.k_min:
            raise ValueError("k_min must be an integer")
        vals = tuple(complex(c) for c in self.coeffs)
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in vals):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "k_min", int(self.k_min))
        object.__setattr__(self, "coeffs", vals)

    @classmethod
    def from_dict(cls, mapping: Dict[int, complex]) -> "CoefficientSequence":
        if not mapping:
            return cls(0, ())
        ks = [int(k) for k in mapping]
        lo, hi = min(ks), max(ks)
        vals = [0j] * (hi - lo + 1)
        for k, v in mapping.items():
            vals[int(k) - lo] = complex(v)
        return cls(lo, tuple(vals))

    @classmethod
    def default_real_witness(cls) -> "CoefficientSequence":
        return cls(-1, (1 - 1j, 0j, 1 + 1j))

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> complex:
        i = k - self.k_min
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0j

    def items(self) -> Iterable[Tuple[int, complex]]:
        return ((self.k_min + i, c) for i, c in enumerate(self.coeffs))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, c in self.items() if c != 0)

    @property
    def support_gcd(self) -> int:
        """gcd of pairwise index differences on the support (0 for <= 1 term)."""
        s = self.support
        g = 0
        for k in s[1:]:
            g = math.gcd(g, k - s[0])
        return g

    @property
    def values(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def conj(self) -> "CoefficientSequence":
        return CoefficientSequence(self.k_min, tuple(c.conjugate() for c in self.coeffs))

    def scaled(self, factor: complex) -> "CoefficientSequence":
        return CoefficientSequence(self.k_min, tuple(factor * c for c in self.coeffs))

    @property
    def is_c00(self) -> bool:
        return True

    @property
    def in_ell2O(self) -> bool:
        return classify_ell2O(self)

    @property
    def is_hermitian(self) -> bool:
        return classify_hermitian(self)

    def to_list(self) -> list:
        return [[k, c.real, c.imag] for k, c in self.items()]

    @classmethod
    def from_list(cls, rows) -> "CoefficientSequence":
        return cls.from_dict({int(r[0]): complex(r[1], r[2] if len(r) > 2 else 0.0) for r in rows})


def _values(c) -> np.ndarray:
    if isinstance(c, CoefficientSequence):
        return c.values
    return np.asarray(list(c), dtype=complex)


def _on_common_line(vals: np.ndarray) -> bool:
    if vals.size == 0:
        return True
    m = float(np.max(np.abs(vals)))
    if m == 0:
        return True
    cross = np.imag(np.outer(vals, np.conj(vals)))
    return bool(np.max(np.abs(cross)) <= LINE_TOL * m * m)


def classify_ell2O(c) -> bool:
    """True iff the values do not all lie on one line through the origin."""
    return not _on_common_line(_values(c))


def classify_hermitian(c: CoefficientSequence) -> bool:
    """True iff ``c_k == conj(c_{-k})`` for every ``k`` (missing entries are 0)."""
    if len(c) == 0:
        return True
    m = float(np.max(np.abs(c.values)))
    ks = range(min(c.k_min, -c.k_max), max(c.k_max, -c.k_min) + 1)
    return all(abs(c[k] - c[-k].conjugate()) <= LINE_TOL * m for k in ks)


def line_check(values) -> Optional[float]:
    """Angle ``alpha`` in ``[0, pi)`` with all values on ``e^{i alpha} R``, or None."""
    vals = _values(values)
    if not _on_common_line(vals):
        return None
    if vals.size == 0 or not np.any(vals):
        return 0.0
    ref = vals[int(np.argmax(np.abs(vals)))]
    alpha = math.atan2(ref.imag, ref.real) % math.pi
    return 0.0 if math.isclose(alpha, math.pi) else alpha


def conjugate_partner(c: CoefficientSequence) -> CoefficientSequence:
    return c.conj()
