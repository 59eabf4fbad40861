"""Surface germs with edge-type singularities: adaptation, classification,
and constructive normal forms.

A frontal germ f:(R^2,0)->(R^3,0) whose differential drops to rank one at
the origin is an m-type edge when, in adapted coordinates (singular curve
v = 0, null direction d/dv), all v-derivatives of order 2..m-1 vanish
along v = 0 and f_u x d^m f/dv^m does not vanish at the origin.  It is an
(m,n)-type edge when additionally the first v-derivative along v = 0 that
leaves the plane spanned by f_u and d^m f/dv^m is the n-th, with
det(f_u, d^m f/dv^m, d^n f/dv^n) nonzero at the origin.

The constructive normal form brings such a germ to

    (u,  u^2 a(u)/2 + v^m/m!,  u^2 b0(u)/2 + v^m b_m(u,v)/m!),

b_m(0,0) = 0, by a target rotation and a sequence of explicit source
changes, each recorded so that curves through the singular point can be
transported into the same coordinates.  The adaptation itself is purely
rational; only the final rotation and v-rescaling can force a float
fallback (square/m-th roots).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .jets import (
    FLOAT,
    RATIONAL,
    Jet1,
    Jet2,
    JetError,
    NeedsFloat,
    Vec3,
    exact_root,
    invert_map2,
)

__all__ = [
    "AdaptedEdge",
    "EdgeNormalForm",
    "Classification",
    "adapt",
    "psi_factor",
    "check_criteria",
    "surface_normal_form",
    "classify",
    "compose_map2",
    "apply_map_to_surface",
]


def _is_zero_scalar(c, mode, scale=1.0):
    if mode == RATIONAL:
        return c == 0
    return abs(c) <= 1e-9 * max(1.0, scale)


def compose_map2(outer, inner):
    """(outer o inner) for origin-preserving planar jet maps (pairs of Jet2)."""
    P, Q = outer
    p, q = inner
    return (P.substitute(p, q), Q.substitute(p, q))


def apply_map_to_surface(f: Vec3, m2) -> Vec3:
    p, q = m2
    return f.map(lambda c: c.substitute(p, q))


def _identity_map(N, mode, exact=True):
    return (Jet2.var_u(N, mode, exact), Jet2.var_v(N, mode, exact))


@dataclass
class AdaptedEdge:
    """Adapted coordinates: singular curve v = 0, null direction d/dv,
    v-derivatives of order 2..m-1 absorbed along v = 0."""

    f: Vec3
    m: int
    source_map: tuple       # adapted -> original coordinates
    source_map_inv: tuple   # original -> adapted
    mode: str
    N: int = 0              # working truncation degree


@dataclass
class EdgeNormalForm:
    """Germ in the shape (u, u^2 a/2 + v^m/m!, u^2 b0/2 + v^m b_m/m!)."""

    f: Vec3
    m: int
    n: int | None
    r: int | None            # ord_v of the third component along u = 0
    a: Jet1
    b0: Jet1
    bm: Jet2
    rotation: tuple          # 3x3 rows; applied to the adapted germ
    source_map: tuple        # normal-form -> adapted coordinates
    source_map_inv: tuple
    v_flipped: bool
    mode: str
    n_bound: int | None = None

    def bias_coefficient(self, i: int):
        """beta_{m,im}(0) = b_{im}(0): the i-th bias of the edge."""
        j = i * self.m
        c = self.f[2].v_coefficient(j).coefficient(0)
        return c * math.factorial(j)


@dataclass
class Classification:
    m: int
    n: int | None
    r: int | None
    adapted: AdaptedEdge
    normal_form: EdgeNormalForm
    criteria: dict


def _kernel_direction(f: Vec3):
    """Kernel of the rank-one differential at the origin, or raise."""
    c1 = tuple(c.coefficient(1, 0) for c in f)
    c2 = tuple(c.coefficient(0, 1) for c in f)
    mode = f[0].mode

    def vec_zero(v):
        return all(_is_zero_scalar(x, mode) for x in v)

    minors = (
        c1[0] * c2[1] - c1[1] * c2[0],
        c1[0] * c2[2] - c1[2] * c2[0],
        c1[1] * c2[2] - c1[2] * c2[1],
    )
    scale = max([1.0] + [abs(float(x)) for x in c1 + c2]) ** 2
    if not all(_is_zero_scalar(mn, mode, scale) for mn in minors):
        raise JetError("differential has rank 2 at the origin: not singular")
    if vec_zero(c1) and vec_zero(c2):
        raise JetError("differential vanishes at the origin: rank 0, not an edge")
    if vec_zero(c2):
        return None  # kernel is d/dv already
    if vec_zero(c1):
        return "swap"
    # c2 = lam * c1 with c1 != 0
    k = max(range(3), key=lambda i: abs(float(c1[i])))
    lam = c2[k] / c1[k]
    return lam


def _singular_parameter(f: Vec3):
    """m from the vanishing order of |f_u x f_v|^2 along u = 0."""
    fu = f.map(lambda c: c.derive_u())
    fv = f.map(lambda c: c.derive_v())
    h = fu.cross(fv).norm_sq()
    ov = h.restrict_u0().order_int()
    if ov is None:
        raise JetError(
            "degeneracy measure |f_u x f_v|^2 vanishes to truncation along "
            "u = 0; multiplicity not determined"
        )
    if ov == 0:
        raise JetError("germ is an immersion at the origin")
    if ov % 2 != 0:
        raise JetError(f"odd vanishing order {ov} of |f_u x f_v|^2: not an edge")
    return ov // 2 + 1, h


def _solve_singular_graph(h: Jet2, m: int, N_work=None) -> Jet1:
    """a(u) with the singular curve {v = a(u)}, by jet Newton iteration on
    the (2m-3)rd v-derivative of h = |f_u x f_v|^2."""
    H = h
    for _ in range(2 * m - 3):
        H = H.derive_v()
    Hv = H.derive_v()
    mode = h.mode
    N = N_work if N_work is not None else h.N
    if _is_zero_scalar(Hv.constant, mode):
        raise JetError("singular curve is not a transverse graph over u")
    t = Jet1.var(N, mode)
    a = Jet1.zero(N, mode)
    for _ in range(max(1, N.bit_length() + 1)):
        Ha = H.compose_curve(t, a)
        Hva = Hv.compose_curve(t, a)
        a = a - Ha * Hva.invert_unit()
    return a


def adapt(f: Vec3, assume_polynomial: bool = True,
          max_degree: int | None = None) -> AdaptedEdge:
    """Rational source changes taking an edge germ to adapted coordinates.

    Steps: rotate the kernel of df_0 to d/dv; locate the singular curve
    as a graph v = a(u) and shift it to v = 0; straighten the null
    direction to d/dv along v = 0; absorb tangential v^i-terms
    (i = 2..m-1) by shears u -> u + d(u) v^i.  The first unabsorbable
    order is m.  All steps are rational; the composed source map and its
    inverse are recorded.

    With assume_polynomial the listed coefficients are taken as the whole
    germ (the usual case: germs are entered as polynomials), which keeps
    intermediate jets from losing valid degree under differentiation.
    """
    mode = f[0].mode
    # exact components are whole polynomials: they can be padded to any
    # degree, so only truncated components constrain the working degree
    Nmax = max(c.N for c in f)
    N = min(Nmax if (c.exact or assume_polynomial) else c.N for c in f)
    if max_degree is not None:
        # cap the working degree; truncation below a polynomial's true
        # degree honestly downgrades it to a jet
        N = min(N, max_degree)
    if assume_polynomial:
        f = f.map(lambda c: c.with_exact(True))
    f = f.map(lambda c: c.truncate(N))
    for c in f:
        if not _is_zero_scalar(c.constant, mode):
            raise JetError("surface germ must vanish at the origin")
    total = _identity_map(N, mode)

    ker = _kernel_direction(f)
    if ker == "swap":
        u, v = _identity_map(N, mode)
        step = (v, -u)
        f = apply_map_to_surface(f, step)
        total = compose_map2(total, step)
    elif ker is not None:
        u, v = _identity_map(N, mode)
        step = (u - v * ker, v)
        f = apply_map_to_surface(f, step)
        total = compose_map2(total, step)

    m, h = _singular_parameter(f)
    if m > N - 1:
        raise JetError(f"edge order {m} exceeds what truncation {N} supports")

    a = _solve_singular_graph(h, m, N_work=N)
    if not a.is_zero():
        u, v = _identity_map(N, mode)
        step = (u, v + Jet2.from_jet1_u(a))
        f = apply_map_to_surface(f, step)
        total = compose_map2(total, step)

    # null straightening: f_v(u, 0) = sigma(u) f_u(u, 0)
    fu0 = f.map(lambda c: c.derive_u().restrict_v0())
    fv0 = f.map(lambda c: c.derive_v().restrict_v0())
    num = fu0.dot(fv0)
    den = fu0.norm_sq()
    sigma = num.truncate(N) * den.truncate(N).invert_unit()
    if not sigma.is_zero():
        u, v = _identity_map(N, mode)
        step = (u - v * Jet2.from_jet1_u(sigma), v)
        f = apply_map_to_surface(f, step)
        total = compose_map2(total, step)

    # absorb v^i terms tangent to the singular curve, i = 2..m-1
    for i in range(2, m):
        fu0 = f.map(lambda c: c.derive_u().restrict_v0())
        gi = f.map(lambda c: c.v_coefficient(i) * math.factorial(i))
        ci = fu0.dot(gi).truncate(N) * fu0.norm_sq().truncate(N).invert_unit()
        resid = Vec3(gi[0] - fu0[0] * ci, gi[1] - fu0[1] * ci,
                     gi[2] - fu0[2] * ci)
        if not all(r.is_zero() for r in resid):
            raise JetError(
                f"order-{i} v-derivative along the singular curve is not "
                f"tangential: germ is not {m}-type"
            )
        if not ci.is_zero():
            d = ci * Fraction(-1, math.factorial(i)) if mode == RATIONAL \
                else ci * (-1.0 / math.factorial(i))
            u, v = _identity_map(N, mode)
            step = (u + Jet2.from_jet1_u(d) * _v_power(v, i), v)
            f = apply_map_to_surface(f, step)
            total = compose_map2(total, step)

    # the m-th order must now be transverse at the origin
    fu = f.map(lambda c: c.derive_u())
    fvm = f
    for _ in range(m):
        fvm = fvm.map(lambda c: c.derive_v())
    w = fu.cross(fvm)
    scale = max([1.0] + [abs(float(x)) for x in
                         list(c.constant for c in fu) +
                         list(c.constant for c in fvm)]) ** 2
    if all(_is_zero_scalar(c.constant, mode, scale) for c in w):
        raise JetError(
            f"f_u x d^{m}f/dv^{m} vanishes at the origin: germ is not {m}-type"
        )

    inv = invert_map2(total[0], total[1], N=N)
    return AdaptedEdge(f=f, m=m, source_map=total, source_map_inv=inv,
                       mode=mode, N=N)


def _v_power(v: Jet2, i: int) -> Jet2:
    out = v
    for _ in range(i - 1):
        out = out * v
    return out


def psi_factor(f: Vec3, m: int) -> Vec3:
    """The unit factor psi with f_v = v^(m-1) psi / (m-1)!, in adapted
    coordinates.  psi(u, 0) is the m-th v-derivative along the edge."""
    fact = math.factorial(m - 1)
    return f.map(lambda c: c.derive_v().divide_v(m - 1) * fact)


def check_criteria(f: Vec3, m: int, n: int | None = None) -> dict:
    """Literal rank/independence conditions for m-type and (m,n)-type in
    adapted coordinates.

    c1: d^i f/dv^i = 0 along v = 0 for 2 <= i <= m-1;
    c2: f_u x d^m f/dv^m != 0 at the origin;
    c3: det(f_u, d^m f/dv^m, d^i f/dv^i) = 0 along v = 0 for m < i < n;
    c4: det(f_u, d^m f/dv^m, d^n f/dv^n) != 0 at the origin.
    """
    mode = f[0].mode
    fu = f.map(lambda c: c.derive_u())
    derivs = {0: f}
    d = f
    top = max(m, n or 0)
    for i in range(1, top + 1):
        d = d.map(lambda c: c.derive_v())
        derivs[i] = d
    out = {}
    c1 = all(
        all(c.restrict_v0().is_zero() for c in derivs[i])
        for i in range(2, m)
    )
    out["c1"] = c1
    fvm = derivs[m]
    w = fu.cross(fvm)
    scale = max([1.0] + [abs(float(c.constant)) for c in fu] +
                [abs(float(c.constant)) for c in fvm]) ** 2
    out["c2"] = not all(_is_zero_scalar(c.constant, mode, scale) for c in w)
    out["m_type"] = out["c1"] and out["c2"]
    if n is not None:
        if n <= m or n % m == 0:
            raise JetError(f"n = {n} must exceed m = {m} and not be a multiple")
        c3 = True
        for i in range(m + 1, n):
            det = Vec3.det3(fu, fvm, derivs[i]).restrict_v0()
            if not det.is_zero():
                c3 = False
        out["c3"] = c3
        det_n = Vec3.det3(fu, fvm, derivs[n]).constant
        sc = scale * max(
            1.0, max(abs(float(c.constant)) for c in derivs[n]))
        out["c4"] = not _is_zero_scalar(det_n, mode, sc)
        out["mn_type"] = out["m_type"] and c3 and out["c4"]
    return out


def _normalize3(vec, mode):
    """(unit vector, norm) of a constant 3-vector; NeedsFloat if irrational."""
    g = sum(x * x for x in vec)
    if mode == RATIONAL:
        root = exact_root(Fraction(g), 2)
        if root is None:
            raise NeedsFloat(f"|{vec}| is irrational")
        nrm = root
    else:
        nrm = math.sqrt(g)
    return tuple(x / nrm for x in vec), nrm


def surface_normal_form(adapted: AdaptedEdge) -> EdgeNormalForm:
    """Target rotation + source changes to the constructive normal form.

    Falls back to float coefficients when a required root is irrational;
    the adapted germ itself stays exact either way.
    """
    try:
        return _surface_normal_form(adapted)
    except NeedsFloat:
        if adapted.mode == FLOAT:
            raise
        fl = AdaptedEdge(
            f=adapted.f.to_float(), m=adapted.m,
            source_map=tuple(c.to_float() for c in adapted.source_map),
            source_map_inv=tuple(c.to_float() for c in adapted.source_map_inv),
            mode=FLOAT, N=adapted.N,
        )
        return _surface_normal_form(fl)


def _surface_normal_form(adapted: AdaptedEdge) -> EdgeNormalForm:
    f, m, mode = adapted.f, adapted.m, adapted.mode
    N = adapted.N if adapted.N else min(c.N for c in f)
    fu0 = tuple(c.derive_u().constant for c in f)
    psi = psi_factor(f, m)
    psi0 = tuple(c.constant for c in psi)
    e1, _ = _normalize3(fu0, mode)
    ip = sum(a * b for a, b in zip(e1, psi0))
    raw = tuple(p - ip * a for p, a in zip(psi0, e1))
    if all(_is_zero_scalar(x, mode) for x in raw):
        raise JetError("d^m f/dv^m parallel to f_u at origin: not m-type")
    e2, _ = _normalize3(raw, mode)
    e3 = (
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    )
    rot = (e1, e2, e3)
    g = Vec3(*[f[0] * r[0] + f[1] * r[1] + f[2] * r[2] for r in rot])

    # flatten the first component to u
    vj = Jet2.var_v(N, mode)
    umap, vmap = invert_map2(g[0], vj, N=N)
    g = apply_map_to_surface(g, (umap, vmap))
    src = (umap, vmap)

    # v-rescale so the second component's v-part is exactly v^m/m!
    g2_u0 = g[1].restrict_v0()
    q2 = (g[1] - Jet2.from_jet1_u(g2_u0, N)).divide_v(m)
    c0 = q2.constant * math.factorial(m)
    if mode == RATIONAL:
        if c0 <= 0:
            raise JetError("orientation normalization failed")
        root = exact_root(Fraction(c0), m)
        if root is None:
            raise NeedsFloat(f"{m}-th root of {c0} is irrational")
    scaler = (q2 * math.factorial(m)).truncate(N).nth_root_unit(m)
    vmap2 = Jet2.var_v(N, mode) * scaler
    umap2 = Jet2.var_u(N, mode)
    inv2 = invert_map2(umap2, vmap2, N=N)
    g = apply_map_to_surface(g, inv2)
    src = compose_map2(src, inv2)

    v_flipped = False
    if m % 2 == 0:
        f3_axis = g[2].restrict_u0()
        first_odd = None
        for j in range(1, f3_axis.N + 1, 2):
            cj = f3_axis.coefficient(j)
            if not f3_axis.is_zero_coef(cj):
                first_odd = cj
                break
        if first_odd is not None and first_odd < 0:
            flip = (Jet2.var_u(N, mode), -Jet2.var_v(N, mode))
            g = apply_map_to_surface(g, flip)
            src = compose_map2(src, flip)
            v_flipped = True

    # read off the structure functions
    a_u = g[1].restrict_v0().divide_t(2) * 2
    b0_u = g[2].restrict_v0().divide_t(2) * 2
    bm = (g[2] - Jet2.from_jet1_u(g[2].restrict_v0(), N)).divide_v(m) \
        * math.factorial(m)
    axis = g[2].restrict_u0()
    r = axis.order_int()
    n = None
    for j in range(m + 1, axis.N + 1):
        if j % m == 0:
            continue
        cj = axis.coefficient(j)
        if not axis.is_zero_coef(cj):
            n = j
            break
    inv_src = invert_map2(src[0], src[1], N=N)
    return EdgeNormalForm(
        f=g, m=m, n=n, r=r, a=a_u, b0=b0_u, bm=bm, rotation=rot,
        source_map=src, source_map_inv=inv_src, v_flipped=v_flipped,
        mode=mode, n_bound=None if n is not None else axis.N + 1,
    )


def classify(f: Vec3, max_degree: int | None = None) -> Classification:
    """Full classification: adapt, read m, build the normal form, read n
    and r, and evaluate the literal criteria as a cross-check."""
    adapted = adapt(f, max_degree=max_degree)
    nf = surface_normal_form(adapted)
    crit = check_criteria(adapted.f, adapted.m,
                          nf.n if nf.n is not None and nf.n % adapted.m else None)
    return Classification(
        m=adapted.m, n=nf.n, r=nf.r, adapted=adapted, normal_form=nf,
        criteria=crit,
    )
