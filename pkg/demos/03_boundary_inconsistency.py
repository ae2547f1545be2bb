"""The stencil is second-order accurate inside the interval but inconsistent
at the two end nodes - and the scheme converges anyway.

The pointwise defect w'' - (discrete Laplacian of sampled w) splits exactly
into a boundary part, which tends to w''(end)/2 instead of zero, and dx^2
times a bounded interior part.  This script shows both facts numerically, plus
the one-step error decomposition of a full run: the boundary term scales like
dt, the Taylor remainder like dt^2.
"""

import numpy as np

from neumannheat import Grid1D, cosine_mode, epsilon_diagnostics, l_delta, trig_poly
from neumannheat.consistency import split_defect

w = cosine_mode(1, 1.0)  # sqrt(2) cos(pi x), zero slope at both ends
print("defect of the second-difference stencil applied to sqrt(2) cos(pi x):")
print("      J    boundary row      max interior row   interior/dx^2")
for J in (17, 33, 65, 129):
    g = Grid1D(J, 1.0)
    d = l_delta(w, g).values
    print(f"  {J:5d}   {d[0]:+.6f}      {np.abs(d[1:-1]).max():12.3e}"
          f"     {np.abs(d[1:-1]).max() / g.dx ** 2:10.4f}")
print(f"  boundary row tends to w''(0)/2 = {0.5 * float(w.deriv(2, 0.0)):+.6f}, not 0")

g = Grid1D(33, 1.0)
bnd, interior = split_defect(w, g)
recon = bnd.values + g.dx ** 2 * interior.values
print(f"\nexact splitting check at J=33: max |defect - (boundary + dx^2 interior)|"
      f" = {np.abs(l_delta(w, g).values - recon).max():.2e}")

datum = trig_poly()
print("\none-step defect norms along a run (J=33):")
print("      dt        ||eps1||       ||eps2||     eps1/dt    eps2/dt^2")
for k in (1, 2, 4, 8):
    dt = g.dx ** 2 / 2 / k
    e1, e2 = epsilon_diagnostics(datum, g, dt, 0)
    print(f"  {dt:9.2e}  {e1:10.3e}  {e2:12.3e}  {e1 / dt:9.4f}  {e2 / dt ** 2:9.4f}")
print("  eps1/dt stays put (boundary inconsistency), eps2/dt^2 stays put (Taylor).")
