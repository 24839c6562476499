#!/usr/bin/env python3
"""The elementary envelope K++ and its constants Z_d, Theta_d.

K+ requires a numerical maximization; K++ replaces it with an elementary
expression in n built from the small-gap and large-n asymptotic constants
plus one residual constant Z_d = sup of the residual z.  Theta_d measures
how much the envelope gives away: sup of K++/K+.

Equivalent CLI:  sobomul table2 --compare
"""

from fractions import Fraction

from sobomul import (BoundQuery, envelope_residual, envelope_residual_sup,
                     k_plus, k_plus_plus)

print("The residual z along n for d = 2 (bounded, O(sqrt(gap)) near d/2):")
for gap in (0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 6.0, 30.0, 120.0):
    q = BoundQuery(d=2, n=1.0 + gap)
    print(f"  gap = {gap:7.3f}: z = {envelope_residual(q):+.6f}")

print()
print(f"{'d':>3} {'Z_d':>10} {'Theta_d':>9}  (residual scans, cached)")
for d in range(1, 11):
    data = envelope_residual_sup(d)
    warn = "  [sup at grid edge]" if data.endpoint_warning else ""
    print(f"{d:3d} {data.big_z:10.5f} {data.theta:9.4f}{warn}")

print()
print("Envelope check at (n, d) = (7/2, 2):")
q = BoundQuery(d=2, n=3.5, n_exact=Fraction(7, 2))
big_z = envelope_residual_sup(2).big_z
print("  K+  =", k_plus(q).value)
print("  K++ =", k_plus_plus(q, big_z).value, " (elementary, always >= K+)")
