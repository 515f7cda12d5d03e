"""Rotated line families, shifted lattices and rational superlattices.

Angles are counterclockwise: ``R_theta = [[cos, -sin], [sin, cos]]``. A
:class:`LineFamily` is the set ``z + R_theta(R x hZ)``; a :class:`Lattice`
is ``z + L Z^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateInput, NotEmbeddable

__all__ = [
    "LineFamily",
    "Lattice",
    "LatticeSample",
    "RationalDependence",
    "SuperlatticeEmbedding",
    "rotation_matrix",
    "line_points",
    "lattice_points_in_box",
    "detect_rational_dependence",
    "superlattice_embed",
    "lattice_in_line_family",
]


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class LineFamily:
    """``shift + R_theta(R x spacing*Z)``; ``spacing=inf`` means one line."""

    theta: float
    spacing: float
    shift: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "shift", (float(self.shift[0]), float(self.shift[1])))

    @property
    def single(self) -> bool:
        return math.isinf(self.spacing)

    def local_coords(self, points) -> np.ndarray:
        """``R_theta^{-1}(p - shift)`` for each point: ``(along, across)``."""
        p = np.asarray(points, dtype=float).reshape(-1, 2) - np.asarray(self.shift)
        return p @ rotation_matrix(self.theta)

    def distance(self, points) -> np.ndarray:
        """Euclidean distance from each point to the nearest line."""
        v = self.local_coords(points)[:, 1]
        if self.single:
            return np.abs(v)
        return np.abs(v - self.spacing * np.round(v / self.spacing))

    def contains(self, points, atol: float = 1e-10) -> np.ndarray:
        return self.distance(points) <= atol

    def refined(self, factor: int) -> "LineFamily":
        return LineFamily(self.theta, self.spacing / factor, self.shift)

    def to_dict(self) -> dict:
        return {"theta": self.theta, "spacing": self.spacing, "shift": list(self.shift)}


def line_points(fam: LineFamily, x_samples, n_range) -> np.ndarray:
    """Points ``z + R_theta (x, n h)``; ``n_range`` is an inclusive pair or an iterable.

    Returns an ``(len(x_samples) * len(n), 2)`` array ordered by ``n`` then ``x``.
    """
    xs = np.asarray(x_samples, dtype=float).reshape(-1)
    if isinstance(n_range, tuple) and len(n_range) == 2:
        ns = np.arange(int(n_range[0]), int(n_range[1]) + 1)
    else:
        ns = np.asarray(list(n_range), dtype=int)
    if fam.single:
        ns = ns[ns == 0] if np.any(ns == 0) else ns[:0]
        h = 0.0
    else:
        h = fam.spacing
    X, N = np.meshgrid(xs, ns * h)
    local = np.stack([X.ravel(), N.ravel()], axis=1)
    return local @ rotation_matrix(fam.theta).T + np.asarray(fam.shift)


# --- lattices ---------------------------------------------------------------


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


@dataclass(frozen=True, eq=False)
class Lattice:
    """``shift + generator @ Z^2``.

    ``exact`` optionally holds the generator as a 2x2 tuple of
    :class:`fractions.Fraction`; the float generator is derived from it.
    """

    generator: np.ndarray
    shift: Tuple[float, float] = (0.0, 0.0)
    exact: Optional[Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]] = None

    def __post_init__(self):
        if self.exact is not None:
            ex = tuple(tuple(_as_fraction(v) for v in row) for row in self.exact)
            if len(ex) != 2 or any(len(r) != 2 for r in ex):
                raise ValueError("exact generator must be 2x2")
            object.__setattr__(self, "exact", ex)
            gen = np.array([[float(v) for v in row] for row in ex])
        else:
            gen = np.array(self.generator, dtype=float)
        if gen.shape != (2, 2) or not np.all(np.isfinite(gen)):
            raise ValueError("generator must be a finite 2x2 matrix")
        gen.setflags(write=False)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "shift", (float(self.shift[0]), float(self.shift[1])))

    @classmethod
    def from_rationals(cls, entries, shift=(0.0, 0.0)) -> "Lattice":
        ex = tuple(tuple(_as_fraction(v) for v in row) for row in entries)
        return cls(np.zeros((2, 2)), shift, ex)

    @classmethod
    def rectangular(cls, alpha: float, beta: float, shift=(0.0, 0.0)) -> "Lattice":
        return cls(np.diag([alpha, beta]), shift)

    @property
    def det(self):
        if self.exact is not None:
            (a, b), (c, d) = self.exact
            return a * d - b * c
        return float(np.linalg.det(self.generator))

    @property
    def degenerate(self) -> bool:
        if self.exact is not None:
            return self.det == 0
        scale = float(np.max(np.abs(self.generator))) ** 2
        return scale == 0 or abs(self.det) <= 1e-14 * scale

    def point(self, v) -> np.ndarray:
        return self.generator @ np.asarray(v, dtype=float) + np.asarray(self.shift)

    def to_dict(self) -> dict:
        d = {"generator": self.generator.tolist(), "shift": list(self.shift)}
        if self.exact is not None:
            d["exact"] = [[str(v) for v in row] for row in self.exact]
        return d


@dataclass(frozen=True, eq=False)
class LatticeSample:
    points: np.ndarray
    degenerate: bool = False

    def __len__(self):
        return len(self.points)


def _in_box(pts: np.ndarray, box, atol: float) -> np.ndarray:
    x0, x1, y0, y1 = box
    return ((pts[:, 0] >= x0 - atol) & (pts[:, 0] <= x1 + atol)
            & (pts[:, 1] >= y0 - atol) & (pts[:, 1] <= y1 + atol))


def _rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def lattice_points_in_box(lat: Lattice, box) -> LatticeSample:
    """All points of ``lat`` inside the closed box ``(x0, x1, y0, y1)``.

    Degenerate generators are enumerated as a one-dimensional lattice on
    their common line; this needs rational column ratios.
    """
    x0, x1, y0, y1 = map(float, box)
    if not (x0 <= x1 and y0 <= y1) or not all(map(math.isfinite, (x0, x1, y0, y1))):
        raise ValueError(f"invalid box {box}")
    atol = 1e-12 * max(1.0, abs(x0), abs(x1), abs(y0), abs(y1))
    z = np.asarray(lat.shift)
    if not lat.degenerate:
        Linv = np.linalg.inv(lat.generator)
        corners = np.array([[x0, y0], [x0, y1], [x1, y0], [x1, y1]]) - z
        v = corners @ Linv.T
        lo = np.floor(v.min(axis=0)) - 1
        hi = np.ceil(v.max(axis=0)) + 1
        m, n = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1), indexing="ij")
        V = np.stack([m.ravel(), n.ravel()], axis=1)
        pts = V @ lat.generator.T + z
        return LatticeSample(pts[_in_box(pts, (x0, x1, y0, y1), atol)], False)
    # degenerate: points z + k * step * d on a single line
    c1, c2 = lat.generator[:, 0], lat.generator[:, 1]
    if not np.any(c1) and not np.any(c2):
        pts = z[None, :]
        return LatticeSample(pts[_in_box(pts, (x0, x1, y0, y1), atol)], True)
    base = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    other = c2 if base is c1 else c1
    j = int(np.argmax(np.abs(base)))
    if lat.exact is not None:
        ex = np.array(lat.exact, dtype=object)
        eb = ex[:, 0] if base is c1 else ex[:, 1]
        eo = ex[:, 1] if base is c1 else ex[:, 0]
        ratio = eo[j] / eb[j]
    else:
        dep = detect_rational_dependence(float(other[j]), float(base[j]))
        if not dep.dependent:
            raise DegenerateInput("degenerate generator with irrational column ratio is dense on its line")
        ratio = Fraction(dep.numerator, dep.denominator)
    step = _rational_gcd(Fraction(1), ratio) if ratio != 0 else Fraction(1)
    d = base * float(step)
    # project the box to a parameter interval along d
    dn = float(np.dot(d, d))
    corners = np.array([[x0, y0], [x0, y1], [x1, y0], [x1, y1]]) - z
    s = corners @ d / dn
    ks = np.arange(math.floor(s.min()) - 1, math.ceil(s.max()) + 2)
    pts = z + ks[:, None] * d[None, :]
    return LatticeSample(pts[_in_box(pts, (x0, x1, y0, y1), atol)], True)


# --- rational dependence ----------------------------------------------------


@dataclass(frozen=True)
class RationalDependence:
    """Result of testing ``a = (numerator/denominator) * b``.

    With ``swapped=True`` the roles are exchanged: ``b = (numerator/denominator) * a``
    (used when ``b = 0``). The fraction is reduced with positive denominator.
    """

    dependent: bool
    numerator: int = 0
    denominator: int = 1
    swapped: bool = False
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "continued_fraction_heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.dependent:
            if self.denominator <= 0 or math.gcd(self.numerator, self.denominator) != 1:
                raise ValueError("ratio must be reduced with positive denominator")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def _is_exact(v) -> bool:
    return isinstance(v, (int, Rational)) and not isinstance(v, bool)


def detect_rational_dependence(a, b, q_max: int = 10 ** 6, eps: float = 1e-12) -> RationalDependence:
    """Decide whether ``a`` is a rational multiple of ``b``.

    Exact inputs (ints or Fractions) are decided exactly. Float inputs go
    through the best rational approximation of ``a/b`` with denominator at
    most ``q_max``, accepted when ``|a - (p/q) b| <= eps * max(|a|, |b|)``;
    such a verdict is heuristic and labelled so.
    """
    if _is_exact(a) and _is_exact(b):
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise DegenerateInput("both entries are zero")
        if b == 0:
            return RationalDependence(True, 0, 1, swapped=True, mode="exact")
        r = a / b
        return RationalDependence(True, r.numerator, r.denominator, mode="exact")
    a, b = float(a), float(b)
    if a == 0 and b == 0:
        raise DegenerateInput("both entries are zero")
    if b == 0:
        return RationalDependence(True, 0, 1, swapped=True, mode="exact")
    if a == 0:
        return RationalDependence(True, 0, 1, mode="exact")
    r = Fraction(a / b).limit_denominator(q_max)
    err = abs(a - (r.numerator / r.denominator) * b)
    if err <= eps * max(abs(a), abs(b)):
        return RationalDependence(True, r.numerator, r.denominator, mode="continued_fraction_heuristic")
    return RationalDependence(False, mode="continued_fraction_heuristic")


# --- superlattice -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SuperlatticeEmbedding:
    """Rectangular ``lattice`` with integer ``witness`` W such that ``L v = L' W v``."""

    lattice: Lattice
    witness: Tuple[Tuple[int, int], Tuple[int, int]]
    rows: Tuple[RationalDependence, RationalDependence]

    def map(self, v) -> Tuple[int, int]:
        (w11, w12), (w21, w22) = self.witness
        return (w11 * v[0] + w12 * v[1], w21 * v[0] + w22 * v[1])


def _row_entries(lat: Lattice, i: int):
    if lat.exact is not None:
        return lat.exact[i]
    return tuple(float(v) for v in lat.generator[i])


def superlattice_embed(lat: Lattice, dep_rows: Optional[Sequence[RationalDependence]] = None,
                       allow_heuristic: bool = False) -> SuperlatticeEmbedding:
    """Embed ``L Z^2`` into a rectangular lattice ``diag(l1, l2) Z^2``.

    Row ``(a, b)`` with ``a = (p1/p2) b`` gives ``a v1 + b v2 = (b/p2)(p1 v1 + p2 v2)``,
    so ``l1 = b/p2`` and the witness row is ``(p1, p2)``; similarly for the
    second row. Heuristic (float) dependence is refused unless
    ``allow_heuristic`` is set.
    """
    rows = []
    diag = []
    witness = []
    for i in range(2):
        a, b = _row_entries(lat, i)
        if a == 0 and b == 0:
            raise DegenerateInput(f"generator row {i} is zero")
        dep = dep_rows[i] if dep_rows is not None else detect_rational_dependence(a, b)
        if not dep.dependent:
            raise NotEmbeddable(f"row {i} entries are not rationally dependent")
        if dep.mode != "exact" and not allow_heuristic:
            raise NotEmbeddable(f"row {i} dependence is only heuristic; pass exact rationals")
        num, den = dep.numerator, dep.denominator
        if dep.swapped:
            # b = (num/den) a
            diag.append(a / den if lat.exact is not None else float(a) / den)
            witness.append((den, num))
        else:
            diag.append(b / den if lat.exact is not None else float(b) / den)
            witness.append((num, den))
        rows.append(dep)
    if lat.exact is not None:
        new = Lattice.from_rationals(((diag[0], Fraction(0)), (Fraction(0), diag[1])), lat.shift)
    else:
        new = Lattice(np.diag(diag), lat.shift)
    return SuperlatticeEmbedding(new, (tuple(witness[0]), tuple(witness[1])), (rows[0], rows[1]))


def lattice_in_line_family(lat: Lattice, check_box=(-10.0, 10.0, -10.0, 10.0),
                           atol: float = 1e-10) -> LineFamily:
    """A line family through every point of ``lat``.

    The lines run along the first generator column, spaced by the component
    of the second column orthogonal to it. Containment is checked on
    ``check_box`` before returning.
    """
    c1, c2 = lat.generator[:, 0], lat.generator[:, 1]
    if not np.any(c1):
        c1, c2 = c2, c1
    if not np.any(c1):
        return LineFamily(0.0, math.inf, lat.shift)
    theta = math.atan2(c1[1], c1[0])
    u = c1 / np.linalg.norm(c1)
    h = abs(float(c2[0] * -u[1] + c2[1] * u[0]))
    scale = max(np.linalg.norm(c1), np.linalg.norm(c2))
    fam = LineFamily(theta, math.inf if h <= 1e-14 * scale else h, lat.shift)
    if fam.single:
        k = np.arange(-5, 6)
        M, N = np.meshgrid(k, k)
        pts = np.stack([M.ravel(), N.ravel()], axis=1) @ lat.generator.T + np.asarray(lat.shift)
    else:
        pts = lattice_points_in_box(lat, check_box).points
    if len(pts) and not np.all(fam.contains(pts, atol * max(1.0, scale))):
        raise RuntimeError("line family does not contain the lattice")
    return fam
