"""Curves passing through an edge singularity: contact data, curvature
invariants, their vanishing orders, and closed-form order predictions.

A regular source curve gamma through the singular point, tangent to the
null direction, is written (after reparametrizing by its v-component) as
gamma(t) = (t^l c(t), t) in adapted surface coordinates; l >= 2 is the
contact order with the null line and c(0) != 0.  The space curve
gamma-hat = f o gamma generally has a singular point of order k at t=0,
and its geodesic curvature kappa_g, normal curvature kappa_n, and
geodesic torsion tau_g (taken with the frontal normal nu = f_u x psi,
which restricts to a nonvanishing normal along gamma) blow up with
computable rational orders.

The predicted orders depend only on (m, l), the curvature expansion of
the source curve, and the edge invariants kappa_s, kappa_nu, kappa_t,
omega_{m,m+1}; the module computes both the prediction and the actual
orders, plus the 1/k-arc-length normalized (finite) invariants and the
Frenet-type frame scalars that equal k times the normalized values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .jets import FLOAT, RATIONAL, Jet1, Jet2, JetError, Vec3
from .orders import OrderValue, numeric_order
from .plane_curves import PlaneCurveGerm
from .edge_invariants import kappa_s_nu_t, omega, psi_of

__all__ = [
    "ContactData",
    "LaurentInvariant",
    "transform_curve",
    "contact_data",
    "kg_kn_tg",
    "normalized_kg_kn_tg",
    "predict_orders",
    "verify_orders",
    "sample_graphs",
]


@dataclass
class ContactData:
    """A null-tangent source curve in adapted coordinates."""

    gamma: PlaneCurveGerm     # reparametrized: (t^l c(t), t)
    l: int | None             # None: gamma is the null line itself
    c: Jet1 | None
    kappa_l2: object          # (l-2)nd curvature derivative of gamma at 0
    kappa_l1: object          # (l-1)st
    flipped: bool


@dataclass
class LaurentInvariant:
    """Value numerator(t) / (|denominator data| t^shift) with known order."""

    name: str
    order: OrderValue | None   # None: identically zero
    numerator: Jet1            # float jet after removing the pole
    evaluate: object           # callable t -> float value of the invariant
    leading: float             # coefficient of t^order


def transform_curve(map2, gamma: PlaneCurveGerm) -> PlaneCurveGerm:
    """Push a source curve through a planar jet map (pair of Jet2)."""
    P, Q = map2
    return PlaneCurveGerm(
        P.compose_curve(gamma.x, gamma.y), Q.compose_curve(gamma.x, gamma.y)
    )


def contact_data(adapted, gamma: PlaneCurveGerm,
                 in_original_coords: bool = False) -> ContactData:
    """Normalize a null-tangent curve to the shape (t^l c(t), t).

    The curve must be regular with gamma(0) = 0 and gamma'(0) parallel to
    the null direction d/dv, pointing to positive v (t -> -t is applied
    if needed, and recorded).
    """
    if in_original_coords:
        gamma = transform_curve(adapted.source_map_inv, gamma)
    d1 = (gamma.x.coefficient(1), gamma.y.coefficient(1))
    if not gamma.y.is_zero_coef(d1[1]) and gamma.x.is_zero_coef(d1[0]):
        pass
    else:
        raise JetError(
            "curve must be regular and tangent to the null direction d/dv "
            f"at 0; gamma'(0) = {d1}"
        )
    flipped = False
    gx, gy = gamma.x, gamma.y
    if (gamma.mode == RATIONAL and d1[1] < 0) or \
       (gamma.mode == FLOAT and d1[1] < 0):
        flipped = True
        gx = Jet1([c if i % 2 == 0 else -c for i, c in enumerate(gx.coeffs)],
                  gx.N, gx.mode, gx.exact)
        gy = Jet1([c if i % 2 == 0 else -c for i, c in enumerate(gy.coeffs)],
                  gy.N, gy.mode, gy.exact)
    N = min(gx.N, gy.N)
    inv = gy.truncate(N).with_exact(False).reversion()
    x = gx.truncate(inv.N).with_exact(False).compose(inv)
    t = Jet1.var(inv.N, gamma.mode)
    gamma2 = PlaneCurveGerm(x, t)
    l = x.order_int()
    if l is None:
        return ContactData(gamma=gamma2, l=None, c=None, kappa_l2=None,
                           kappa_l1=None, flipped=flipped)
    if l < 2:
        raise JetError("curve is not tangent to the null direction")
    c = x.divide_t(l)
    kl2 = -c.coefficient(0) * math.factorial(l)
    kl1 = -c.coefficient(1) * math.factorial(l + 1)
    return ContactData(gamma=gamma2, l=l, c=c, kappa_l2=kl2, kappa_l1=kl1,
                       flipped=flipped)


def _image_data(adapted, cd: ContactData):
    """gamma-hat = f o gamma, the normal nu2 along it, and the order k."""
    f = adapted.f
    g = cd.gamma
    ghat = f.map(lambda c: c.compose_curve(g.x, g.y))
    psi = psi_of(adapted)
    nu = f.map(lambda c: c.derive_u()).cross(psi)
    nu2 = nu.map(lambda c: c.compose_curve(g.x, g.y))
    g1 = ghat.map(lambda c: c.derive())
    ords = [c.order_int() for c in g1 if c.order_int() is not None]
    if not ords:
        raise JetError("image curve is constant to truncation")
    k = min(ords) + 1
    return ghat, g1, nu2, k


def kg_kn_tg(adapted, cd: ContactData) -> dict:
    """Geodesic/normal curvature and geodesic torsion of the image curve,
    with exact orders (from the rational numerators when the germ is
    rational) and float evaluators.

        kappa_g = det(g', g'', nu2) / (|g'|^3 |nu2|)
        kappa_n = <g'', nu2> / (|g'|^2 |nu2|)
        tau_g   = det(g', nu2, nu2') / (|g'|^2 |nu2|^2)
    """
    ghat, g1, nu2, k = _image_data(adapted, cd)
    g2 = g1.map(lambda c: c.derive())
    nu2p = nu2.map(lambda c: c.derive())
    Dg = Vec3.det3(g1, g2, nu2)
    Dn = g2.dot(nu2)
    Dt = Vec3.det3(g1, nu2, nu2p)
    km1 = k - 1

    out = {"k": k}
    specs = [
        ("kappa_g", Dg, 3 * km1, 3, False),
        ("kappa_n", Dn, 2 * km1, 2, False),
        ("tau_g", Dt, 2 * km1, 2, True),
    ]
    g1f = g1.to_float()
    nu2f = nu2.to_float()
    sp2 = g1f.dot(g1f)
    nn = nu2f.dot(nu2f)
    for name, num, shift, pw, nu_sq in specs:
        ov = num.order_value()
        if num.exact and num.is_zero():
            order = None
        else:
            order = ov.shift(-shift) if ov.is_exact else ov.shift(-shift)
            if not ov.is_exact:
                order = OrderValue.at_least(order.value)
        numf = num.to_float()

        def make_eval(numf=numf, shift=shift, pw=pw, nu_sq=nu_sq):
            def ev(t):
                s2 = sp2(t)
                n2 = nn(t)
                den = (s2 ** (pw / 2.0)) * (n2 if nu_sq else math.sqrt(n2))
                return numf(t) / den
            return ev

        lead = 0.0
        if order is not None and order.is_exact:
            j = int(ov.value)
            lead = float(numf.coefficient(j))
            e0 = float(sp2.coeffs[2 * km1]) if 2 * km1 <= sp2.N else 0.0
            n0 = float(nn.coeffs[0])
            lead /= (e0 ** (pw / 2.0)) * (n0 if nu_sq else math.sqrt(n0))
        out[name] = LaurentInvariant(
            name=name, order=order, numerator=numf, evaluate=make_eval(),
            leading=lead,
        )
    return out


def normalized_kg_kn_tg(adapted, cd: ContactData) -> dict:
    """Finite invariants in the 1/k-arc-length parameter, plus the frame
    scalars kappa_1, kappa_2, kappa_3 (= k times the normalized values).

    rho = g'/t^(k-1); the 1/k-arc-length is s~ = t P(t)^(1/k) with
    P = t^(-k) integral of t^(k-1) |rho|.  The normalized invariants are

        kg~ = P^((k-1)/k) det(rho, rho', nu2) / (|rho|^3 |nu2|),
        kn~ = P^((k-1)/k) <rho', nu2> / (|rho|^2 |nu2|),
        tg~ = P^((k-1)/k) det(rho, nu2, nu2') / (|rho|^2 |nu2|^2),

    all smooth at t = 0.  The frame {e, nu, b} with e = rho/|rho| and
    b = -e x nu satisfies kappa_1 = <e', b>/s~' = k kg~ etc.
    """
    ghat, g1, nu2, k = _image_data(adapted, cd)
    # pad exact components to the full working degree so the series
    # operations below keep it (roots and inverses are not polynomial)
    N = max(max(c.N for c in g1), max(c.N for c in nu2))
    g1 = g1.map(lambda c: c.to_float().truncate(N).with_exact(False))
    nu2 = nu2.map(lambda c: c.to_float().truncate(N).with_exact(False))
    rho = g1.map(lambda c: c.divide_t(k - 1))
    rhop = rho.map(lambda c: c.derive())
    nu2p = nu2.map(lambda c: c.derive())
    Q = rho.dot(rho).truncate(N - 1)
    sqQ = Q.sqrt_unit()
    P = (Jet1.from_terms({k - 1: 1.0}, sqQ.N, FLOAT, exact=False) * sqQ)\
        .integrate().divide_t(k)
    Pk = P.nth_root_unit(k)
    s_tilde = Jet1.var(Pk.N, FLOAT) * Pk
    Pk1 = Jet1.const(1.0, Pk.N, FLOAT)
    for _ in range(k - 1):
        Pk1 = Pk1 * Pk
    M = Pk1.N
    nrm = nu2.dot(nu2).truncate(M).sqrt_unit()
    Qi = Q.truncate(M).invert_unit()
    common = Pk1 * Qi * nrm.invert_unit()
    kg = Vec3.det3(rho, rhop, nu2).truncate(M) * common * Q.truncate(M)\
        .sqrt_unit().invert_unit()
    kn = rhop.dot(nu2).truncate(M) * common
    tg = Vec3.det3(rho, nu2, nu2p).truncate(M) * common * nrm.invert_unit()

    # frame scalars from {e, nu, b}
    speed = s_tilde.derive()
    e = rho.map(lambda c: c.truncate(M) * Q.truncate(M).sqrt_unit()
                .invert_unit())
    unit_nu = nu2.map(lambda c: c.truncate(M) * nrm.invert_unit())
    b = -e.cross(unit_nu)
    ep = e.map(lambda c: c.derive())
    nup = unit_nu.map(lambda c: c.derive())
    M2 = min(c.N for c in ep)
    sp_inv = speed.truncate(M2).invert_unit()
    kappa1 = ep.dot(b).truncate(M2) * sp_inv
    kappa2 = ep.dot(unit_nu).truncate(M2) * sp_inv
    kappa3 = -(nup.dot(b).truncate(M2)) * sp_inv
    return {
        "k": k,
        "s_tilde": s_tilde,
        "kg_tilde": kg,
        "kn_tilde": kn,
        "tg_tilde": tg,
        "kappa1": kappa1,
        "kappa2": kappa2,
        "kappa3": kappa3,
    }


def _cond(value, tol, mode):
    if mode == RATIONAL and not isinstance(value, float):
        return value != 0
    return abs(float(value)) > tol


def predict_orders(adapted, cd: ContactData, tol: float = 1e-9) -> dict:
    """Closed-form pole orders of kappa_g, kappa_n, tau_g from (m, l) and
    the edge invariants, with the genericity condition evaluated.

    Each entry is {'bound': Fraction, 'exact': bool, 'condition': float,
    'order': OrderValue | ('at_least', bound)}: when the stated condition
    is nonzero the order equals the bound; otherwise only >= bound is
    claimed.
    """
    m = adapted.m
    l = cd.l
    if l is None:
        raise JetError("the null line itself has no contact order l")
    kk = kappa_s_nu_t(adapted)
    ks0 = float(kk["kappa_s0"])
    kn0 = float(kk["kappa_nu0"])
    kt0 = float(kk["kappa_t0"])
    w0 = float(omega(adapted, 1)["value"])
    kl2 = float(cd.kappa_l2)
    kl1 = float(cd.kappa_l1)

    def entry(bound, cond):
        bound = Fraction(bound)
        ok = abs(cond) > tol
        return {
            "bound": bound,
            "condition": cond,
            "exact": ok,
            "order": OrderValue.exact(bound) if ok
            else OrderValue.at_least(bound),
        }

    def exact_entry(bound):
        return {
            "bound": Fraction(bound), "condition": None, "exact": True,
            "order": OrderValue.exact(bound),
        }

    out = {"m": m, "l": l, "invariants": {
        "kappa_s0": ks0, "kappa_nu0": kn0, "kappa_t0": kt0,
        "omega0": w0, "kappa_l2": kl2, "kappa_l1": kl1,
    }}
    if l >= m:
        if l == m:
            out["kappa_g"] = entry(1 - m, kl1)
        elif l <= 2 * m:
            out["kappa_g"] = exact_entry(l - 2 * m)
        elif l == 2 * m + 1:
            out["kappa_g"] = entry(
                1,
                math.factorial(l - 1) * kt0 * w0
                - math.factorial(m) * math.factorial(m + 1) * kl2,
            )
        else:
            out["kappa_g"] = entry(1, kt0 * w0)
        out["kappa_n"] = entry(1 - m, w0)
        if l < 2 * m - 1:
            out["tau_g"] = entry(l - 2 * m + 1, w0)
        elif l == 2 * m - 1:
            out["tau_g"] = entry(
                l - 2 * m + 1,
                m * math.factorial(l - 1) * kt0
                + math.factorial(m - 1) ** 2 * kl2 * w0,
            )
        else:
            out["tau_g"] = entry(0, kt0)
    elif 2 * l > m:
        out["kappa_g"] = exact_entry(m - 2 * l)
        if 2 * l > m + 1:
            out["kappa_n"] = entry(m - 2 * l + 1, w0)
        else:  # 2l = m + 1
            out["kappa_n"] = entry(
                m - 2 * l + 1,
                math.factorial(m + 1) * (m - l + 1) * kn0 * kl2 ** 2
                + 2 * math.factorial(l) ** 2 * w0,
            )
        out["tau_g"] = entry(1 - l, w0)
    else:
        if 2 * l < m:
            out["kappa_g"] = entry(0, ks0)
        else:  # 2l = m
            out["kappa_g"] = entry(
                0, math.factorial(m) * ks0 * kl2 ** 2
                + 2 * math.factorial(l) ** 2,
            )
        out["kappa_n"] = entry(0, kn0)
        out["tau_g"] = entry(1 - l, w0)
    for key in ("kappa_g", "kappa_n", "tau_g"):
        out[key]["label"] = out[key]["order"].label()
    return out


def verify_orders(adapted, cd: ContactData, numeric: bool = True,
                  slope_tol: float = 0.1) -> dict:
    """Predicted vs computed orders, with an optional numeric slope check.

    For each invariant: the prediction, the order computed from the jet
    numerators, whether they agree (equality when the genericity
    condition holds, computed >= bound otherwise), and the log-log slope
    fitted on sampled values when the invariant is nonzero.
    """
    pred = predict_orders(adapted, cd)
    comp = kg_kn_tg(adapted, cd)
    out = {"m": pred["m"], "l": pred["l"], "k": comp["k"], "results": {}}
    for key in ("kappa_g", "kappa_n", "tau_g"):
        p = pred[key]
        li = comp[key]
        if li.order is None:
            agrees = True  # identically zero is compatible with any bound
        elif p["exact"]:
            agrees = li.order.is_exact and li.order.value == p["bound"]
            if not li.order.is_exact:
                agrees = li.order.value > p["bound"]
        else:
            agrees = li.order.value >= p["bound"]
        res = {
            "predicted": p["order"],
            "condition": p["condition"],
            "computed": li.order,
            "agrees": bool(agrees),
            "label": p["label"],
        }
        if numeric and li.order is not None and li.order.is_exact \
                and li.order.value != 0:
            samples = [(t, li.evaluate(t))
                       for t in [2.0 ** -j for j in range(6, 18)]]
            try:
                slope, err = numeric_order(samples)
                res["numeric_slope"] = slope
                res["numeric_ok"] = abs(slope - float(li.order.value)) \
                    <= slope_tol
            except ValueError:
                res["numeric_slope"] = None
                res["numeric_ok"] = None
        out["results"][key] = res
    out["all_agree"] = all(r["agrees"] for r in out["results"].values())
    return out


def sample_graphs(adapted, cd: ContactData, ts=None) -> list:
    """Rows (t, kappa_g, kappa_n, tau_g) on a geometric grid, for plots
    and CSV output."""
    comp = kg_kn_tg(adapted, cd)
    if ts is None:
        ts = [2.0 ** (-j / 2.0) for j in range(4, 24)]
    rows = []
    for t in ts:
        rows.append((
            t,
            comp["kappa_g"].evaluate(t),
            comp["kappa_n"].evaluate(t),
            comp["tau_g"].evaluate(t),
        ))
    return rows
