"""Plane-curve germs: classification, normal form, cuspidal curvature.

A singular analytic plane curve gamma(t) with gamma'(0) = 0 is reduced,
by a rotation and a reparametrization, to the normal form

    s  |->  ( g s^m / m! ,  sum_j beta_j s^(jm) / (jm)!  +  r s^n / n! + ... )

where m is the multiplicity, n the first admissible exponent (not a
multiple of m), r = r_{m,n} the cuspidal curvature, and the beta_j are
the biases describing how the curve hugs its tangent line.  Everything
below runs in exact rational arithmetic until a float is requested.
"""

from fractions import Fraction

from edgegeom import (Jet1, PlaneCurveGerm, bias_behavior,
                      closed_form_oracle_m3, curve_normal_form,
                      cuspidal_curvature, r_closed_form_general)

N = 14


def germ(xt, yt):
    return PlaneCurveGerm(
        Jet1.from_terms({k: Fraction(v) for k, v in xt.items()}, N,
                        exact=True),
        Jet1.from_terms({k: Fraction(v) for k, v in yt.items()}, N,
                        exact=True),
    )


print("=== the ordinary cusp (t^2, t^3) ===")
cc = cuspidal_curvature(germ({2: 1}, {3: 1}))
print(f"type: ({cc['m']}, {cc['n']}),  r_23 = {cc['r']}  "
      f"= {cc['r_float']:.12f}  (3/sqrt(2))")

print()
print("=== the (3,4)-cusp (t^3, t^4) ===")
cc = cuspidal_curvature(germ({3: 1}, {4: 1}))
print(f"type: ({cc['m']}, {cc['n']}),  r_34 = {cc['r_float']:.16f}  "
      "(24/6^(4/3))")

print()
print("=== a generic multiplicity-3 germ ===")
g0 = germ({3: 1, 4: Fraction(1, 2)}, {4: 1, 5: -1, 7: Fraction(2, 3)})
nf = curve_normal_form(g0)
print(f"multiplicity m = {nf.m}, admissible exponent n = {nf.n}")
print(f"pipeline r_{{3,4}}     = {nf.r}")
print(f"closed-form oracle  = {closed_form_oracle_m3(g0)['r34']}")
print(f"general closed form = {r_closed_form_general(g0)}")
print("all three are the same exact algebraic number:",
      nf.r.equals(closed_form_oracle_m3(g0)["r34"]))

print()
print("=== bias behavior: how the germ approaches its tangent line ===")
for xt, yt in [({3: 1}, {5: 1}),          # crosses the axis
               ({3: 1}, {6: 1, 7: 1}),    # stays on one side
               ({2: 1}, {3: 1}),          # cusp, crossing
               ({2: 1}, {4: 1, 5: 1})]:   # cusp, one-sided
    bb = bias_behavior(germ(xt, yt))
    print(f"  x-orders {sorted(xt)}, y-orders {sorted(yt)}: "
          f"{bb['label']} (first bias index k = {bb['k']})")
