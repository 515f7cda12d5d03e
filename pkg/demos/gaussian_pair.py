"""A Gaussian pair with equal spectrograms on horizontal lines.

Run with ``python demos/gaussian_pair.py``. Nothing is written to disk.
"""
# %% Setup
import math

import numpy as np

from phaseless import (Grid, LineFamily, WindowSpec, gaussian_oracle_pair, l2_norm, phase_distance,
                       sample_analytic, stft, verify_pair)

grid = Grid.symmetric(8.0, 1 / 128)
g = sample_analytic(WindowSpec.gaussian(), grid)
beta = 1.0

# %% Two ways to get the same functions
# f1 and f2 have closed forms: exp(-pi t^2) (cosh(pi t / beta) +- i sinh(pi t / beta)).
# They are also the three-term combination of shifted Gaussians with
# coefficients (1 -+ i)/2 exp(pi / (4 beta^2)).
pair = gaussian_oracle_pair(beta, grid)
print("coefficients:", [complex(round(c.real, 6), round(c.imag, 6)) for c in pair.coeffs.values])
print(f"closed form vs synthesis, relative L2: {pair.diagnostics['synthesis_error']:.2e}")

# %% Spectrograms on and off the lines omega in beta Z
for w in (0.0, 1.0, 0.5, 0.3):
    a = abs(stft(pair.f1, g, (0.4, w)))
    b = abs(stft(pair.f2, g, (0.4, w)))
    print(f"omega={w:4.1f}  |V f1|={a:.12f}  |V f2|={b:.12f}  diff={abs(a - b):.1e}")

# %% Certificate
rep = verify_pair(pair, g, np.linspace(-2, 2, 33), (-2, 2), family=LineFamily(0.0, beta))
print("\n".join(rep.summary_lines()))

# %% How far apart are they, modulo a unimodular factor?
d, nu = phase_distance(pair.f1, pair.f2)
print(f"min_nu ||f2 - nu f1|| / ||f1|| = {d / l2_norm(pair.f1):.6f}"
      f"  (closed form {math.sqrt(2 * (1 - math.exp(-math.pi / 2))):.6f})")
