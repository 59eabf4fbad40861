"""Differential invariants of m-type and (m,n)-type surface edges.

All formulas act on a germ in adapted coordinates (singular curve v = 0,
null direction d/dv), where f_v = v^(m-1) psi / (m-1)! with psi(0,0) != 0
and nu-hat = f_u x psi is a nonvanishing normal.  With that unnormalized
normal every fundamental-form coefficient is a rational expression in the
germ's coefficients, so invariant identities can be checked exactly; the
classical (normalized) values are recovered as floats at the end.

Invariants:
  * omega_{m,m+i}: the higher cuspidal curvatures along the edge,
    defined when the preceding determinants det(f_u, d^m f/dv^m,
    d^(m+j) f/dv^(m+j)) vanish identically along v = 0 for j < i,
  * kappa_s, kappa_nu, kappa_t: singular, normal, and cuspidal torsion
    curvature along the edge,
  * the fundamental forms and the vanishing orders of the Gaussian and
    mean curvature at the singular point.

Each invariant is also available for an arbitrary adapted frame
(xi = p d/du + v q d/dv, eta = c(v^(m-1) a d/du + d/dv)) to make frame
independence checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .jets import FLOAT, RATIONAL, Jet1, Jet2, JetError, Vec3
from .orders import OrderValue

__all__ = [
    "VectorField",
    "xi_default",
    "eta_default",
    "psi_of",
    "omega",
    "omega_general",
    "is_front",
    "kappa_s_nu_t",
    "kappa_t_general",
    "fundamental_forms",
    "gauss_mean_orders",
    "edge_curve",
]


@dataclass(frozen=True)
class VectorField:
    """First-order derivation A d/du + B d/dv with Jet2 coefficients."""

    A: Jet2
    B: Jet2

    def apply1(self, F: Jet2) -> Jet2:
        return self.A * F.derive_u() + self.B * F.derive_v()

    def apply(self, f: Vec3) -> Vec3:
        return f.map(self.apply1)

    def iterate(self, f: Vec3, k: int) -> Vec3:
        for _ in range(k):
            f = self.apply(f)
        return f


def xi_default(N: int, mode=RATIONAL) -> VectorField:
    return VectorField(Jet2.const(1, N, mode, True), Jet2.zero(N, mode, True))


def eta_default(N: int, mode=RATIONAL) -> VectorField:
    return VectorField(Jet2.zero(N, mode, True), Jet2.const(1, N, mode, True))


def psi_of(adapted) -> Vec3:
    from .edge_model import psi_factor

    return psi_factor(adapted.f, adapted.m)


def edge_curve(adapted) -> Vec3:
    """The image of the singular curve u -> f(u, 0) as univariate jets."""
    return adapted.f.map(lambda c: c.restrict_v0())


def _dets_along_edge(f: Vec3, m: int, xi: VectorField, eta: VectorField,
                     top: int):
    """D_j = det(xi f, eta^m f, eta^(m+j) f) on v = 0 for j = 1..top,
    plus the frame data needed by the omega normalization."""
    xf = xi.apply(f)
    em = eta.iterate(f, m)
    dets = {}
    cur = em
    for j in range(1, top + 1):
        cur = eta.apply(cur)
        dets[j] = Vec3.det3(xf, em, cur).restrict_v0()
    return xf, em, dets


def omega(adapted, i: int, xi: VectorField | None = None,
          eta: VectorField | None = None) -> dict:
    """omega_{m,m+i}(0): the (m, m+i)-cuspidal curvature of the edge.

    Defined for 1 <= i <= m, and only when D_j = det(f_u, d^m f/dv^m,
    d^(m+j) f/dv^(m+j)) vanishes identically along v = 0 for every j < i
    (checked exactly in rational mode).  Returns the value as a float
    together with the exact ingredients (D_i(0), |f_u|^2(0),
    |f_u x d^m f/dv^m|^2(0)).
    """
    m = adapted.m
    if not 1 <= i <= m:
        raise JetError(
            f"omega_{{m,m+i}} needs 1 <= i <= m; i = {i}, m = {m} is not an "
            "invariant of the edge"
        )
    return omega_general(adapted.f, m, i, xi, eta, N=adapted.N,
                         mode=adapted.mode)


def omega_general(f: Vec3, m: int, i: int, xi=None, eta=None, N=None,
                  mode=None) -> dict:
    N = N if N is not None else min(c.N for c in f)
    mode = mode if mode is not None else f[0].mode
    xi = xi if xi is not None else xi_default(N, mode)
    eta = eta if eta is not None else eta_default(N, mode)
    xf, em, dets = _dets_along_edge(f, m, xi, eta, i)
    for j in range(1, i):
        if not dets[j].is_zero():
            raise JetError(
                f"omega_{{{m},{m + i}}} undefined: det(xi f, eta^{m} f, "
                f"eta^{m + j} f) does not vanish along the edge"
            )
    Di0 = dets[i].constant
    xf0 = tuple(c.constant for c in xf)
    cr = xf.cross(em)
    cr0 = tuple(c.constant for c in cr)
    e2 = sum(x * x for x in xf0)
    c2 = sum(x * x for x in cr0)
    if (mode == RATIONAL and c2 == 0) or (mode == FLOAT and c2 == 0.0):
        raise JetError("frame degenerate: xi f x eta^m f vanishes at origin")
    value = (float(e2) ** ((m + i) / (2.0 * m)) * float(Di0)
             / float(c2) ** ((2 * m + i) / (2.0 * m)))
    return {
        "m": m,
        "i": i,
        "value": value,
        "D_i0": Di0,
        "E0": e2,
        "C0": c2,
        "D_jet": dets[i],
    }


def is_front(adapted) -> bool:
    """Front <=> the unit normal is an immersion direction at the origin,
    i.e. D_1 = det(f_u, d^m f/dv^m, d^(m+1) f/dv^(m+1)) != 0 there."""
    f, m = adapted.f, adapted.m
    N, mode = adapted.N, adapted.mode
    _, _, dets = _dets_along_edge(f, m, xi_default(N, mode),
                                  eta_default(N, mode), 1)
    c = dets[1].constant
    if mode == RATIONAL:
        return c != 0
    return not dets[1].is_zero_coef(c)


def fundamental_forms(adapted) -> dict:
    """First/second fundamental form coefficients with the unnormalized
    normal nu-hat = f_u x psi; every entry is an exact Jet2.

    E = <f_u, f_u>, F = <f_u, psi>, G = <psi, psi>,
    L = -<f_u, nu-hat_u>, M = -<psi, nu-hat_u>, N = -<psi, nu-hat_v>.
    Also returns the identity check det(f_u, d^m f/dv^m,
    d^(m+1) f/dv^(m+1)) = m N along v = 0.
    """
    f, m = adapted.f, adapted.m
    fu = f.map(lambda c: c.derive_u())
    psi = psi_of(adapted)
    nu = fu.cross(psi)
    nuu = nu.map(lambda c: c.derive_u())
    nuv = nu.map(lambda c: c.derive_v())
    E = fu.dot(fu)
    F = fu.dot(psi)
    G = psi.dot(psi)
    L = -fu.dot(nuu)
    M = -psi.dot(nuu)
    Nc = -psi.dot(nuv)
    # identity: det(f_u, eta^m f, eta^(m+1) f) = m * N along v = 0
    em = f
    for _ in range(m):
        em = em.map(lambda c: c.derive_v())
    em1 = em.map(lambda c: c.derive_v())
    det = Vec3.det3(fu, em, em1).restrict_v0()
    ident = det - Nc.restrict_v0() * m
    return {
        "E": E, "F": F, "G": G, "L": L, "M": M, "N": Nc,
        "nu_hat": nu,
        "identity_det_mN": ident,
    }


def kappa_s_nu_t(adapted) -> dict:
    """Singular curvature, limiting normal curvature, and cuspidal
    torsion along the edge.

    kappa_t is a rational function of the germ and is returned as an
    exact jet in u; kappa_s and kappa_nu involve norms and are returned
    as float jets in u, with the values at 0 separately.  The sign of
    kappa_s uses the orientation in which the v^(m-1)-coefficient of
    det(f_u, f_v, nu) is positive.
    """
    f, m = adapted.f, adapted.m
    N = adapted.N
    mu = edge_curve(adapted)           # u -> f(u, 0)
    mu1 = mu.map(lambda c: c.derive())
    mu2 = mu1.map(lambda c: c.derive())
    psi = psi_of(adapted)
    nu_hat = f.map(lambda c: c.derive_u()).cross(psi)
    nu0 = nu_hat.map(lambda c: c.restrict_v0())

    fu0 = mu1
    E = fu0.dot(fu0)
    # rational cuspidal torsion
    psi0 = psi.map(lambda c: c.restrict_v0())
    psiu0 = psi.map(lambda c: c.derive_u().restrict_v0())
    cr = fu0.cross(psi0)
    C = cr.dot(cr)
    d1 = Vec3.det3(fu0, psi0, psiu0)
    fuu0 = mu2
    d2 = Vec3.det3(fu0, psi0, fuu0)
    Cinv = C.truncate(N).invert_unit()
    kt = d1.truncate(N) * Cinv - d2.truncate(N) * fu0.dot(psi0).truncate(N) \
        * Cinv * E.truncate(N).invert_unit()

    # float jets for the normalized curvatures
    muf1 = mu1.to_float()
    muf2 = mu2.to_float()
    nf = nu0.to_float()
    Nw = N
    Ef = muf1.dot(muf1).truncate(Nw)
    nu_len = nf.dot(nf).truncate(Nw).sqrt_unit()
    speed = Ef.sqrt_unit()
    unit_nu = nf.map(lambda c: c.truncate(Nw) * nu_len.invert_unit())
    ks = Vec3.det3(muf1, muf2, unit_nu).truncate(Nw) \
        * (speed * speed * speed).invert_unit()
    kn = muf2.dot(unit_nu).truncate(Nw) * Ef.invert_unit()
    return {
        "kappa_s": ks,
        "kappa_nu": kn,
        "kappa_t": kt,
        "kappa_s0": ks.constant,
        "kappa_nu0": kn.constant,
        "kappa_t0": kt.constant,
    }


def kappa_t_general(f: Vec3, m: int, xi: VectorField, eta: VectorField,
                    N=None) -> Jet1:
    """Cuspidal torsion from an arbitrary adapted frame:
    det(xf, ef, xi ef)/|xf x ef|^2
      - det(xf, ef, xi xf) <xf, ef> / (|xf|^2 |xf x ef|^2)
    with xf = xi f, ef = eta^m f, restricted to v = 0."""
    N = N if N is not None else min(c.N for c in f)
    xf = xi.apply(f)
    ef = eta.iterate(f, m)
    xef = xi.apply(ef)
    xxf = xi.apply(xf)
    r = lambda w: w.map(lambda c: c.restrict_v0())
    xf0, ef0, xef0, xxf0 = r(xf), r(ef), r(xef), r(xxf)
    cr = xf0.cross(ef0)
    C = cr.dot(cr).truncate(N)
    Cinv = C.invert_unit()
    E = xf0.dot(xf0).truncate(N)
    return Vec3.det3(xf0, ef0, xef0).truncate(N) * Cinv \
        - Vec3.det3(xf0, ef0, xxf0).truncate(N) * xf0.dot(ef0).truncate(N) \
        * Cinv * E.invert_unit()


def gauss_mean_orders(adapted) -> dict:
    """Vanishing orders of the Gaussian and mean curvature at the edge
    point, via the numerators

        Knum = L N - v^(m-1) M^2/(m-1)!,
        Hnum = E N - 2 v^(m-1) F M/(m-1)! + v^(m-1) G L/(m-1)!

    whose cofactors (|nu-hat|^2, EG - F^2 scaled) are units.  The order
    is the total-degree vanishing order of the numerator minus (m-1).
    Returns exact OrderValues and float samplers along u = 0 for the
    numeric cross-check K(0,v), H(0,v).
    """
    f, m = adapted.f, adapted.m
    ff = fundamental_forms(adapted)
    E, F, G = ff["E"], ff["F"], ff["G"]
    L, M, Nc = ff["L"], ff["M"], ff["N"]
    nu = ff["nu_hat"]
    fact = math.factorial(m - 1)
    vm1 = Jet2({(0, m - 1): (
        Fraction(1, fact) if adapted.mode == RATIONAL else 1.0 / fact
    )}, m - 1, adapted.mode, True)
    Knum = L * Nc - vm1 * M * M
    Hnum = E * Nc - vm1 * F * M * 2 + vm1 * G * L
    shift = m - 1

    def _ord(num):
        # an exactly-zero polynomial numerator means the curvature vanishes
        # identically, not merely to truncation
        if num.exact and all(c == 0 for c in num.coeffs.values()):
            return None
        return num.order_value().shift(-shift)

    ordK = _ord(Knum)
    ordH = _ord(Hnum)
    nu2 = nu.dot(nu)
    disc = E * G - F * F

    mode = adapted.mode
    Kf, Hf = Knum.to_float(), Hnum.to_float()
    nu2f, discf = nu2.to_float(), disc.to_float()

    def K_at(u, v):
        return (fact / v ** shift) * Kf(u, v) / (nu2f(u, v) * discf(u, v))

    def H_at(u, v):
        return (fact / v ** shift) * Hf(u, v) / (
            2.0 * math.sqrt(nu2f(u, v)) * discf(u, v))

    return {
        "ord_K": ordK,
        "ord_H": ordH,
        "K_numerator": Knum,
        "H_numerator": Hnum,
        "K_sample": K_at,
        "H_sample": H_at,
    }
