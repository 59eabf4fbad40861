"""Curves through an edge singularity: predicted vs computed orders.

A regular curve gamma on the source, tangent to the null direction with
contact order l, maps to a singular space curve on the surface.  Its
geodesic curvature, normal curvature, and geodesic torsion blow up (or
vanish) with orders determined by (m, l) and the edge invariants; the
library both predicts the orders in closed form and computes them from
the jet numerators, then cross-checks numerically.
"""

from fractions import Fraction

from edgegeom import (Jet1, Jet2, PlaneCurveGerm, Vec3, adapt, contact_data,
                      kg_kn_tg, normalized_kg_kn_tg, verify_orders)

N = 16

# f = (u, v^2/2, v^5): a (2,5)-type edge
f = Vec3(Jet2.var_u(N, exact=True),
         Jet2({(0, 2): Fraction(1, 2)}, N, exact=True),
         Jet2({(0, 5): Fraction(1)}, N, exact=True))
ad = adapt(f)

# gamma = (t^4, t): null-tangent with contact order l = 4
gamma = PlaneCurveGerm(Jet1.from_terms({4: Fraction(1)}, N, exact=True),
                       Jet1.var(N, exact=True))
cd = contact_data(ad, gamma)
print(f"=== f = (u, v^2/2, v^5), gamma = (t^4, t) ===")
print(f"contact order l = {cd.l}")

out = verify_orders(ad, cd)
print(f"image curve singularity order k = {out['k']}")
for key, r in out["results"].items():
    slope = r.get("numeric_slope")
    slope_s = f", log-log slope {slope:.4f}" if slope is not None else ""
    print(f"  {key:8s}: predicted {r['predicted']}, "
          f"computed {r['computed']}{slope_s}")
print("all agree:", out["all_agree"])

print()
print("=== the normalized (finite) invariants ===")
nz = normalized_kg_kn_tg(ad, cd)
k = nz["k"]
print(f"in the 1/k-arc-length parameter (k = {k}) everything is finite:")
print(f"  kg~(0) = {nz['kg_tilde'].coefficient(0):.10f}")
print(f"  kn~(0) = {nz['kn_tilde'].coefficient(0):.10f}")
print(f"  tg~(0) = {nz['tg_tilde'].coefficient(0):.10f}")
print("and the frame scalars satisfy kappa_1 = k * kg~:")
t = 2.0 ** -6
print(f"  kappa_1({t:g}) = {nz['kappa1'](t):.10f}  vs  "
      f"k*kg~({t:g}) = {k * nz['kg_tilde'](t):.10f}")

print()
print("=== a degenerate contact: gamma tangent on a (2,3)-edge ===")
f2 = Vec3(Jet2.var_u(N, exact=True),
          Jet2({(0, 2): Fraction(1)}, N, exact=True),
          Jet2({(0, 3): Fraction(1)}, N, exact=True))
ad2 = adapt(f2)
cd2 = contact_data(ad2, gamma)
out2 = verify_orders(ad2, cd2)
for key, r in out2["results"].items():
    print(f"  {key:8s}: predicted {r['predicted']}, computed {r['computed']}")
