"""Numerical checks of the operator algebra behind the constructions.

Covers the time-frequency commutation relations, the fractional Fourier
transform and the rotation property, and two periodization diagnostics.
"""
# %% Operator relations and fractional Fourier transform
from phaseless import Grid, WindowSpec, operator_identity_suite, periodization_diagnostic, sample_analytic
from phaseless.verification import spectrum_gap_generator

rep = operator_identity_suite(seed=0)
print("\n".join(rep.summary_lines()))

# %% Periodization of |F h|^2
# A Gaussian generator has its periodization bounded below; a generator whose
# transform is concentrated near 1/4 leaves most of [0, 1) empty.
gauss = sample_analytic(WindowSpec.gaussian(), Grid.symmetric(16.0, 1 / 32))
for name, h in (("gaussian", gauss), ("spectral gap", spectrum_gap_generator())):
    dg = periodization_diagnostic(h, 1.0)
    print(f"{name:>12}: inf {dg.inf_estimate:.3e}  sup {dg.sup_estimate:.3e}  "
          f"bessel_ok={dg.bessel_ok}  independence_ok={dg.independence_ok}")
