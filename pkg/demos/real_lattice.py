"""Real-valued functions with equal spectrograms on a lattice.

Shows the rectangular case and a skew rational lattice that is first
embedded into a rectangular one.
"""
# %% Setup
import numpy as np

from phaseless import (DEFAULT_GRID, HermiteBasis, Lattice, WindowSpec, build_real_pair,
                       l2_norm, lattice_points_in_box, phase_distance, sample_analytic, superlattice_embed,
                       verify_equal_on_points)

basis = HermiteBasis(DEFAULT_GRID, 64)
g = sample_analytic(WindowSpec.hermite(2), DEFAULT_GRID)

# %% Rectangular lattice Z x Z
pair = build_real_pair(g, 1.0, 1.0, basis)
print(f"largest |Im f| / sup|f|: {pair.diagnostics['max_imag_ratio']:.1e}")
pts = lattice_points_in_box(Lattice.rectangular(1, 1), (-2, 2, -2, 2)).points
print(verify_equal_on_points(pair.f1, pair.f2, g, pts).summary_lines()[0])
d, _ = phase_distance(pair.f1, pair.f2)
print(f"relative phase distance {d / l2_norm(pair.f1):.4f}")

# %% A skew lattice with rational rows
skew = Lattice.from_rationals([["1", "2"], ["3/2", "1/2"]])
emb = superlattice_embed(skew)
(l1, _), (_, l2) = emb.lattice.exact
print(f"embedded into diag({l1}, {l2}) with integer witness {emb.witness}")
for v in [(1, 0), (0, 1), (3, -2)]:
    print(v, "->", emb.map(v), np.allclose(skew.point(v), emb.lattice.point(emb.map(v))))

pair = build_real_pair(g, float(l1), float(l2), basis)
pts = lattice_points_in_box(skew, (-3, 3, -3, 3)).points
print(f"{len(pts)} skew lattice points:", verify_equal_on_points(pair.f1, pair.f2, g, pts).summary_lines()[0])
