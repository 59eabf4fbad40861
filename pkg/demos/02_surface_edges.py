"""Surface edges: adapted coordinates, type criteria, invariants.

An m-type edge is a surface germ whose singular curve consists of
points where f_v vanishes to order exactly m - 1 in the null direction.
The library finds adapted coordinates (singular set v = 0, null
direction d/dv), checks the rank criteria defining the (m, n)-type,
produces the constructive normal form

    (u,  u^2 a(u)/2 + v^m/m!,  u^2 b0(u)/2 + v^m b_m(u, v)/m!),

and evaluates the edge invariants: the cuspidal curvatures
omega_{m,m+i}, the singular/normal/torsion curvatures kappa_s, kappa_nu,
kappa_t, and the vanishing orders of the Gaussian and mean curvatures.
"""

import random
from fractions import Fraction

from edgegeom import (Jet2, Vec3, adapt, classify, gauss_mean_orders,
                      is_front, kappa_s_nu_t, omega, surface_normal_form)
from edgegeom.edge_model import apply_map_to_surface

N = 12


def poly(terms):
    return Jet2({k: Fraction(v) for k, v in terms.items()}, N, exact=True)


# a cuspidal edge, pushed through a random source diffeomorphism so that
# nothing about the chart is special
f0 = Vec3(Jet2.var_u(N, exact=True),
          poly({(0, 2): Fraction(1, 2), (2, 0): Fraction(1, 4)}),
          poly({(0, 3): Fraction(1, 6), (1, 2): Fraction(1, 2)}))
rng = random.Random(4)
P = poly({(1, 0): 2, (0, 1): 1, (2, 0): Fraction(1, 3)})
Q = poly({(0, 1): 1, (1, 1): Fraction(-1, 2)})
f = apply_map_to_surface(f0, (P, Q))

print("=== classification of a scrambled germ ===")
cl = classify(f, max_degree=10)
print(f"m = {cl.m}, n = {cl.n}, first relevant exponent r = {cl.r}")
print("criteria:", {k: v for k, v in sorted(cl.criteria.items())})

print()
print("=== constructive normal form ===")
nf = surface_normal_form(cl.adapted)
print(f"a(u)   = {nf.a}")
print(f"b0(u)  = {nf.b0}")
print(f"b_m coefficients (u^i v^j): "
      f"{ {k: str(c) for k, c in sorted(nf.bm.coeffs.items()) if c != 0} }")

print()
print("=== edge invariants ===")
ad = cl.adapted
kk = kappa_s_nu_t(ad)
print(f"front: {is_front(ad)}")
print(f"kappa_s(0)  = {kk['kappa_s0']:.12f}   (singular curvature)")
print(f"kappa_nu(0) = {kk['kappa_nu0']:.12f}   (limiting normal curvature)")
print(f"kappa_t(0)  = {kk['kappa_t0']}   (cuspidal torsion, exact)")
w = omega(ad, 1)
print(f"omega_{{2,3}}(0) = {w['value']:.12f}   "
      f"(cuspidal curvature; exact data D_1(0) = {w['D_i0']})")

print()
print("=== curvature blow-up at the edge ===")
gm = gauss_mean_orders(ad)
print(f"ord K = {gm['ord_K']},  ord H = {gm['ord_H']}")
print("sampled K(0, v), H(0, v) for v = 1/16, 1/64:")
for v in (2.0 ** -4, 2.0 ** -6):
    print(f"  v = {v:g}:  K = {gm['K_sample'](0.0, v):.6g}, "
          f"H = {gm['H_sample'](0.0, v):.6g}")
