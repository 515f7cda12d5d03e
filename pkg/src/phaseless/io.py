"""Spectrogram-difference fields and file emitters (CSV, PGM, JSON).

File layouts are documented in ``docs/formats.md``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .numerics import Signal
from .operators import stft_grid
from .report import VerificationReport

__all__ = [
    "FieldOutput",
    "compute_field",
    "emit_field_csv",
    "emit_heatmap_pgm",
    "emit_report_json",
    "load_report_json",
    "write_json",
]


@dataclass(frozen=True, eq=False)
class FieldOutput:
    """``Q = ||V_g f1|^2 - |V_g f2|^2|`` on an ``ny x nx`` grid over ``rect``.

    ``values[i, j]`` belongs to ``(xs[j], omegas[i])``.
    """

    rect: Tuple[float, float, float, float]
    nx: int
    ny: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.ny, self.nx):
            raise ValueError(f"field shape {v.shape} does not match ({self.ny}, {self.nx})")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite and non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "rect", tuple(float(r) for r in self.rect))

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.rect[0], self.rect[1], self.nx)

    @property
    def omegas(self) -> np.ndarray:
        return np.linspace(self.rect[2], self.rect[3], self.ny)

    @property
    def q_max(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0


def compute_field(f1: Signal, f2: Signal, g: Signal, rect, nx: int = 129, ny: int = 97,
                  workers: int = 1) -> Tuple[FieldOutput, np.ndarray]:
    """Evaluate Q on the rectangle; also return ``max(|V f1|^2, |V f2|^2)``."""
    x0, x1, w0, w1 = map(float, rect)
    xs = np.linspace(x0, x1, nx)
    ws = np.linspace(w0, w1, ny)
    V = stft_grid([f1, f2], g, xs, ws, workers=workers)
    s1 = np.abs(V[0]) ** 2
    s2 = np.abs(V[1]) ** 2
    return FieldOutput((x0, x1, w0, w1), nx, ny, np.abs(s1 - s2)), np.maximum(s1, s2)


def _open(path, mode):
    try:
        return open(path, mode)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def emit_field_csv(field: FieldOutput, path, column: str = "Q") -> None:
    """Header ``x,omega,Q``, then one row per point, omega outer and x inner."""
    xs, ws = field.xs, field.omegas
    with _open(path, "w") as fh:
        fh.write(f"x,omega,{column}\n")
        for i, w in enumerate(ws):
            row = field.values[i]
            fh.write("".join(f"{x:.17g},{w:.17g},{q:.17g}\n" for x, q in zip(xs, row)))


def emit_heatmap_pgm(field: FieldOutput, path, gamma: float = 0.5) -> None:
    """16-bit binary PGM; the first image row is the largest omega."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    qmax = field.q_max
    if qmax > 0:
        img = np.round(65535.0 * (field.values / qmax) ** gamma)
    else:
        img = np.zeros_like(field.values)
    img = img[::-1].astype(">u2")
    header = f"P5\n# Q_max={qmax:.17g}\n{field.nx} {field.ny}\n65535\n".encode("ascii")
    with _open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.tobytes())


def read_pgm(path) -> Tuple[np.ndarray, float]:
    """Read a file written by :func:`emit_heatmap_pgm`; returns ``(image, Q_max)``."""
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n", 4)
    if lines[0] != b"P5":
        raise ValueError("not a binary PGM")
    qmax = float(lines[1].split(b"=", 1)[1])
    w, h = map(int, lines[2].split())
    img = np.frombuffer(lines[4], dtype=">u2", count=w * h).reshape(h, w)
    return img, qmax


def write_json(obj, path) -> None:
    with _open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def emit_report_json(report: VerificationReport, path) -> None:
    write_json(report.to_dict(), path)


def load_report_json(path) -> VerificationReport:
    with open(path) as fh:
        return VerificationReport.from_dict(json.load(fh))
