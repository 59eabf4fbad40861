"""Plane-curve germs: multiplicity, (m,n)-type, normal form, cuspidal
curvatures, biases, and normalized curvature.

A germ gamma:(R,0)->(R^2,0) of multiplicity m is brought to the shape

    A gamma(psi(s)) = ( s^m/m!,
                        sum_i beta_{m,im} s^{im}/(im)! + r_{m,n} s^n/n! + ... )

by a rotation A sending gamma^(m)(0) to the positive x-axis and the
reparametrization t = psi(s) that makes the first component exactly
s^m/m!.  The t^{im} coefficients are the (m,im)-biases and the first
admissible coefficient (exponent not a multiple of m) is the
(m,n)-cuspidal curvature r_{m,n}.

The only irrational constant in the whole reduction is a power of
g = |gamma^(m)(0)|^2, so rational mode carries every normal-form
coefficient exactly as a pair (r, e) meaning r * g**e (ScaledPower).
Closed-form multiplicity-3 oracles expressed in the scaled inner
products a~_i = gamma^(m)(0).gamma^(i)(0)/|gamma^(m)(0)| and
determinants b~_i = det(gamma^(m)(0), gamma^(i)(0))/|gamma^(m)(0)|
live in the same ring, so oracle-vs-pipeline identities can be checked
exactly after clearing the fractional powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .jets import FLOAT, RATIONAL, Jet1, JetError, NeedsFloat
from .orders import OrderValue

__all__ = [
    "PlaneCurveGerm",
    "ScaledPower",
    "CurveNormalForm",
    "PreconditionError",
    "multiplicity",
    "curve_normal_form",
    "mn_type",
    "cuspidal_curvature",
    "closed_form_oracle_m3",
    "psi_series_oracle",
    "r_closed_form_general",
    "bias_behavior",
    "normalized_plane_curvature",
]


class PreconditionError(ValueError):
    """A staged closed-form formula was applied outside its validity range."""


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class PlaneCurveGerm:
    """Pair of univariate jets vanishing at 0."""

    x: Jet1
    y: Jet1

    def __post_init__(self):
        if self.x.mode != self.y.mode:
            raise JetError("component mode mismatch")
        for c in (self.x, self.y):
            if not c.is_zero_coef(c.coeffs[0]):
                raise JetError("curve germ must vanish at 0")

    @property
    def mode(self):
        return self.x.mode

    @property
    def N(self):
        return min(self.x.N, self.y.N)

    def to_float(self) -> "PlaneCurveGerm":
        return PlaneCurveGerm(self.x.to_float(), self.y.to_float())

    def derivative_at0(self, i: int):
        """gamma^(i)(0) as a coefficient pair."""
        fact = math.factorial(i)
        return (self.x.coefficient(i) * fact, self.y.coefficient(i) * fact)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()


@dataclass(frozen=True)
class ScaledPower:
    """Exact value r * g**e over a fixed positive base g.

    Sums require the exponents to differ by an integer; products and
    rational powers of pure powers (r = 1) are closed.  Equality between
    two values clears the fractional powers by raising both sides to the
    common exponent denominator, so it is exact in rational mode.
    """

    r: object  # Fraction (rational mode) or float
    e: Fraction
    g: object  # Fraction or float, > 0

    def __post_init__(self):
        object.__setattr__(self, "e", Fraction(self.e))

    def _check(self, other):
        if self.g != other.g:
            raise ValueError("scaled powers over different bases")

    def __mul__(self, other):
        if isinstance(other, ScaledPower):
            self._check(other)
            return ScaledPower(self.r * other.r, self.e + other.e, self.g)
        return ScaledPower(self.r * other, self.e, self.g)

    __rmul__ = __mul__

    def __neg__(self):
        return ScaledPower(-self.r, self.e, self.g)

    def __add__(self, other):
        if not isinstance(other, ScaledPower):
            raise TypeError("can only add scaled powers")
        self._check(other)
        if self.r == 0:
            return other
        if other.r == 0:
            return self
        lo, hi = (self, other) if self.e <= other.e else (other, self)
        d = hi.e - lo.e
        if d.denominator != 1:
            raise ValueError("exponents differ by a non-integer; cannot add")
        return ScaledPower(lo.r + hi.r * self.g ** int(d), lo.e, self.g)

    def __sub__(self, other):
        return self.__add__(-other)

    def __truediv__(self, other):
        if isinstance(other, ScaledPower):
            self._check(other)
            if other.r == 0:
                raise ZeroDivisionError
            return ScaledPower(self.r / other.r, self.e - other.e, self.g)
        return ScaledPower(self.r / other, self.e, self.g)

    def pow_int(self, k: int) -> "ScaledPower":
        return ScaledPower(self.r ** k, self.e * k, self.g)

    def pow_frac(self, p: Fraction) -> "ScaledPower":
        p = Fraction(p)
        if self.r == 1:
            return ScaledPower(self.r, self.e * p, self.g)
        if p.denominator == 1:
            return self.pow_int(p.numerator)
        raise ValueError("fractional power of a non-pure scaled power")

    @property
    def is_zero(self) -> bool:
        return self.r == 0

    def sign(self) -> int:
        return 0 if self.r == 0 else (1 if self.r > 0 else -1)

    def to_float(self) -> float:
        return float(self.r) * float(self.g) ** float(self.e)

    def equals(self, other: "ScaledPower") -> bool:
        """Exact equality of the represented values."""
        self._check(other)
        if self.r == 0 or other.r == 0:
            return self.r == 0 and other.r == 0
        if self.sign() != other.sign():
            return False
        d = other.e - self.e
        q = d.denominator
        # |r_self|^q == |r_other|^q * g^(d*q)
        return abs(self.r) ** q == abs(other.r) ** q * self.g ** int(d * q)

    def close_to(self, other: "ScaledPower", rtol: float = 1e-10) -> bool:
        a, b = self.to_float(), other.to_float()
        return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))

    def __repr__(self):
        return f"ScaledPower({self.r} * g^{self.e})"


@dataclass
class CurveNormalForm:
    """Result of the rotation + reparametrization reduction."""

    m: int
    n: int | None
    g: object                     # |gamma^(m)(0)|^2
    values: dict                  # j -> ScaledPower, j! * (s^j coeff of 2nd comp)
    biases: dict                  # im -> ScaledPower (exponents < n)
    r: ScaledPower | None         # (m,n)-cuspidal curvature
    sign_flipped: bool
    mode: str
    valid_N: int
    n_bound: int | None = None    # when n is None: no admissible term up to here
    # float-mode renditions (always available)
    rotation: tuple = ()          # 2x2 row tuples
    phi: Jet1 | None = None       # s = phi(t), new parameter in the old
    psi: Jet1 | None = None       # t = psi(s)
    x_nf: Jet1 | None = None
    y_nf: Jet1 | None = None
    b: Jet1 | None = None         # residual factor, b(0) = r_{m,n}

    def value_float(self, j: int) -> float:
        return self.values[j].to_float() if j in self.values else 0.0


def multiplicity(gamma: PlaneCurveGerm):
    """Smallest m with gamma' = t^(m-1) rho, rho(0) != 0; returns (m, rho)."""
    if gamma.is_zero():
        raise JetError(f"zero germ to truncation N={gamma.N}; no multiplicity")
    dx, dy = gamma.x.derive(), gamma.y.derive()
    ords = [o for o in (dx.order_int(), dy.order_int()) if o is not None]
    m1 = min(ords)
    rho = (dx.divide_t(m1) if not dx.is_zero() else dx,
           dy.divide_t(m1) if not dy.is_zero() else dy)
    # components with fewer valid coefficients than m1 shifts: keep aligned
    rho = (dx.truncate(dx.N).divide_t(m1), dy.truncate(dy.N).divide_t(m1)) \
        if not (dx.is_zero() or dy.is_zero()) else rho
    return m1 + 1, rho


def _sqrt_value(v, mode):
    if mode == FLOAT:
        return math.sqrt(v)
    from .jets import exact_root

    r = exact_root(Fraction(v), 2)
    if r is None:
        raise NeedsFloat(f"sqrt of {v} is irrational")
    return r


def curve_normal_form(gamma: PlaneCurveGerm) -> CurveNormalForm:
    """Rotation + reparametrization reduction of a finite-multiplicity germ.

    Exact in rational mode: every normal-form coefficient is a rational
    multiple of a power of g = |gamma^(m)(0)|^2.
    """
    m, _rho = multiplicity(gamma)
    mode = gamma.mode
    N = gamma.N
    fact_m = math.factorial(m)
    w1 = gamma.x.coefficient(m) * fact_m
    w2 = gamma.y.coefficient(m) * fact_m
    g = w1 * w1 + w2 * w2
    # rotated components scaled by sqrt(g): X/sqrt(g), Y/sqrt(g)
    X = gamma.x * w1 + gamma.y * w2
    Y = gamma.x * (-w2) + gamma.y * w1
    if mode == RATIONAL:
        inv_g = Fraction(1) / g
    else:
        inv_g = 1.0 / g
    U = X.divide_t(m) * (fact_m * inv_g)
    if mode == RATIONAL and U.coefficient(0) != 1:
        raise AssertionError("unit normalization failed")
    phi_t = Jet1.var(U.N, mode) * U.truncate(U.N).with_exact(False).nth_root_unit(m)
    psi_t = phi_t.reversion()
    Yt = Y.truncate(psi_t.N).with_exact(False).compose(psi_t)
    Xt = X.truncate(psi_t.N).with_exact(False).compose(psi_t)
    # sanity: first component collapses to g s^m / m! exactly
    for j, c in enumerate(Xt.coeffs):
        expect = g / fact_m if j == m else 0
        if mode == RATIONAL:
            assert c == (Fraction(g, fact_m) if j == m else 0), (j, c)
        else:
            if abs(c - (g / fact_m if j == m else 0.0)) > 1e-8 * abs(g):
                raise AssertionError("float normal-form pipeline lost accuracy")
    validN = Yt.N
    values = {}
    for j in range(m + 1, validN + 1):
        cj = Yt.coefficient(j)
        if mode == FLOAT and Yt.is_zero_coef(cj):
            cj = 0.0
        if mode == RATIONAL or cj != 0.0:
            values[j] = ScaledPower(
                cj * math.factorial(j), Fraction(-(j + m), 2 * m), g
            )
    values = {j: v for j, v in values.items() if True}
    sign_flipped = False
    if m % 2 == 0:
        odd = [j for j in sorted(values) if j % 2 == 1 and not values[j].is_zero]
        if odd and values[odd[0]].sign() < 0:
            sign_flipped = True
            values = {
                j: (-v if j % 2 == 1 else v) for j, v in values.items()
            }
            Yt = Jet1(
                [(-c if j % 2 == 1 else c) for j, c in enumerate(Yt.coeffs)],
                Yt.N, mode,
            )
            psi_t = Jet1(
                [(-c if j % 2 == 0 else c) for j, c in enumerate(psi_t.coeffs)],
                psi_t.N, mode,
            )
            phi_t = Jet1(
                [(-c if j % 2 == 0 else c) for j, c in enumerate(phi_t.coeffs)],
                phi_t.N, mode,
            )
    n = None
    for j in sorted(values):
        if j % m != 0 and not values[j].is_zero:
            n = j
            break
    biases = {}
    stop = n if n is not None else validN + 1
    for j in sorted(values):
        if j % m == 0 and j > m and j < stop and not values[j].is_zero:
            biases[j] = values[j]
    r = values.get(n) if n is not None else None

    # float renditions
    gf = float(g)
    sq = math.sqrt(gf)
    rot = ((float(w1) / sq, float(w2) / sq), (-float(w2) / sq, float(w1) / sq))
    scale = gf ** (1.0 / (2 * m))
    phi_f = phi_t.to_float() * scale
    inner = Jet1.from_terms({1: 1.0 / scale}, psi_t.N, FLOAT, exact=False)
    psi_f = psi_t.to_float().compose(inner)
    x_nf = Jet1.from_terms({m: 1.0 / fact_m}, validN, FLOAT, exact=False)
    y_coeffs = [0.0] * (validN + 1)
    for j, v in values.items():
        y_coeffs[j] = v.to_float() / math.factorial(j)
    y_nf = Jet1(y_coeffs, validN, FLOAT)
    if n is not None:
        resid = list(y_coeffs)
        for j in biases:
            resid[j] = 0.0
        b = Jet1(resid, validN, FLOAT).divide_t(n) * float(math.factorial(n))
    else:
        b = Jet1.zero(max(validN - (m + 1), 0), FLOAT)
    return CurveNormalForm(
        m=m, n=n, g=g, values=values, biases=biases, r=r,
        sign_flipped=sign_flipped, mode=mode, valid_N=validN,
        n_bound=None if n is not None else validN + 1,
        rotation=rot, phi=phi_f, psi=psi_f, x_nf=x_nf, y_nf=y_nf, b=b,
    )


def mn_type(gamma: PlaneCurveGerm):
    """(m, n) with n the first admissible exponent; n is None when every
    non-multiple-of-m coefficient vanishes to truncation."""
    nf = curve_normal_form(gamma)
    return nf.m, nf.n


def cuspidal_curvature(gamma: PlaneCurveGerm) -> dict:
    """r_{m,n} and the biases beta_{m,im} of the germ."""
    nf = curve_normal_form(gamma)
    return {
        "m": nf.m,
        "n": nf.n,
        "r": nf.r,
        "r_float": nf.r.to_float() if nf.r is not None else None,
        "biases": nf.biases,
        "biases_float": {j: v.to_float() for j, v in nf.biases.items()},
        "normal_form": nf,
    }


# ---------------------------------------------------------------------------
# Closed-form oracles for multiplicity 3 (and the general (m, m+1) case)
# ---------------------------------------------------------------------------


def _tilde_coeffs(gamma: PlaneCurveGerm, m: int, top: int):
    """Scaled inner products/determinants against gamma^(m)(0).

    Returns (g, a, b) where a[i], b[i] are ScaledPower values of
    a~_i = w.gamma^(i)(0)/|w| and b~_i = det(w, gamma^(i)(0))/|w|,
    w = gamma^(m)(0).  a~_m is stored as the pure power g^(1/2).
    """
    w = gamma.derivative_at0(m)
    g = w[0] * w[0] + w[1] * w[1]
    a, b = {}, {}
    for i in range(m, top + 1):
        d = gamma.derivative_at0(i)
        Ai = w[0] * d[0] + w[1] * d[1]
        Bi = _det2(w, d)
        if i == m:
            if gamma.mode == RATIONAL and Ai != g:
                raise AssertionError("inner product normalization failed")
            a[i] = ScaledPower(1, Fraction(1, 2), g)
        else:
            a[i] = ScaledPower(Ai, Fraction(-1, 2), g)
        b[i] = ScaledPower(Bi, Fraction(-1, 2), g)
    return g, a, b


def closed_form_oracle_m3(gamma: PlaneCurveGerm, want: str | None = None) -> dict:
    """Closed forms for r_{3,4}, r_{3,5}, beta_{3,6}, r_{3,7}, r_{3,8},
    beta_{3,9}, r_{3,10} in terms of the scaled coefficients.

    Each later value is defined only under the vanishing of the earlier
    ones; violating a stage raises PreconditionError.  Returns whatever
    is defined for the germ (or just `want`).
    """
    m, _ = multiplicity(gamma)
    if m != 3:
        raise PreconditionError(f"oracle requires multiplicity 3, got {m}")
    g, a, b = _tilde_coeffs(gamma, 3, 10)
    a3, a4, a5, a6, a7 = a[3], a[4], a[5], a[6], a[7]
    b4, b5, b6, b7, b8, b9, b10 = b[4], b[5], b[6], b[7], b[8], b[9], b[10]

    out = {}
    out["r34"] = b4 / a3.pow_frac(Fraction(4, 3))
    stage2 = b4.is_zero
    if stage2:
        out["r35"] = b5 / a3.pow_frac(Fraction(5, 3))
    stage3 = stage2 and b5.is_zero
    if stage3:
        out["beta36"] = b6 / a3.pow_int(2)
        r37 = (-7 * a4 * b6 + 2 * a3 * b7) / (2 * a3.pow_frac(Fraction(10, 3)))
        out["r37"] = r37
        stage4 = r37.is_zero
        if stage4:
            r38 = (-35 * a4.pow_int(2) * b6
                   + 2 * a3 * (-28 * a5 * b6 + 5 * a3 * b8)) / (
                10 * a3.pow_frac(Fraction(14, 3)))
            out["r38"] = r38
            if r38.is_zero:
                out["beta39"] = -(
                    63 * a4 * a5 * b6 + 42 * a3 * a6 * b6
                    - 5 * a3.pow_int(2) * b9
                ) / (5 * a3.pow_int(5))
                out["r310"] = (
                    10 * a3.pow_int(3) * b10
                    + 945 * a4.pow_int(2) * a5 * b6
                    - 42 * a3 * (3 * a5.pow_int(2) - 10 * a4 * a6) * b6
                    - 15 * a3.pow_int(2) * (8 * a7 * b6 + 5 * a4 * b9)
                ) / (10 * a3.pow_frac(Fraction(19, 3)))
    if want is not None:
        if want not in out:
            raise PreconditionError(
                f"{want} undefined for this germ: an earlier invariant is nonzero"
            )
        return {want: out[want]}
    return out


def psi_series_oracle(a: dict) -> list:
    """The first ten reparametrization coefficients psi_1..psi_10, as floats.

    `a` maps i -> a~_i (floats), i = 3..10, with a[3] > 0.  These are the
    closed forms of the compositional inverse of
    phi(t) = t (3! sum a~_i t^(i-3)/i!)^(1/3), normalized as
    psi(s) = sum psi_i s^i / i!.
    """
    a3, a4, a5, a6, a7, a8, a9, a10 = (float(a[i]) for i in range(3, 11))
    p = a3 ** (1.0 / 3.0)
    psi = [0.0] * 11
    psi[1] = 1 / p
    psi[2] = -a4 / (6 * a3 ** (5 / 3))
    psi[3] = (5 * a4 ** 2 - 4 * a3 * a5) / (40 * a3 ** 3)
    psi[4] = (-175 * a4 ** 3 + 252 * a3 * a4 * a5 - 72 * a3 ** 2 * a6) / (
        1080 * a3 ** (13 / 3))
    psi[5] = (13475 * a4 ** 4 - 27720 * a3 * a4 ** 2 * a5
              + 10080 * a3 ** 2 * a4 * a6
              + 432 * a3 ** 2 * (14 * a5 ** 2 - 5 * a3 * a7)) / (
        45360 * a3 ** (17 / 3))
    psi[6] = (-1575 * a4 ** 5 + 4200 * a3 * a4 ** 3 * a5
              - 1680 * a3 ** 2 * a4 ** 2 * a6
              + 96 * a3 ** 2 * a4 * (-21 * a5 ** 2 + 5 * a3 * a7)
              + 16 * a3 ** 3 * (42 * a5 * a6 - 5 * a3 * a8)) / (2240 * a3 ** 7)
    psi[7] = (475475 * a4 ** 6 - 1556100 * a3 * a4 ** 4 * a5
              + 655200 * a3 ** 2 * a4 ** 3 * a6
              - 42120 * a3 ** 2 * a4 ** 2 * (-28 * a5 ** 2 + 5 * a3 * a7)
              + 3240 * a3 ** 3 * a4 * (-182 * a5 * a6 + 15 * a3 * a8)
              - 1296 * a3 ** 3 * (91 * a5 ** 3 - 60 * a3 * a5 * a7
                                  + 5 * a3 * (-7 * a6 ** 2 + a3 * a9))) / (
        233280 * a3 ** (25 / 3))
    psi[8] = (-155520 * a10 * a3 ** 6
              + 11 * (-4447625 * a4 ** 7 + 17243100 * a3 * a4 ** 5 * a5
                      - 7497000 * a3 ** 2 * a4 ** 4 * a6
                      + 2570400 * a3 ** 2 * a4 ** 3 * (-7 * a5 ** 2 + a3 * a7)
                      - 45360 * a3 ** 3 * a4 ** 2 * (-238 * a5 * a6 + 15 * a3 * a8)
                      + 15552 * a3 ** 4 * (-98 * a5 ** 2 * a6 + 20 * a3 * a6 * a7
                                           + 15 * a3 * a5 * a8)
                      + 5184 * a3 ** 3 * a4 * (833 * a5 ** 3 - 420 * a3 * a5 * a7
                                               + 5 * a3 * (-49 * a6 ** 2
                                                           + 5 * a3 * a9)))) / (
        6998400 * a3 ** (29 / 3))
    psi[9] = (17920 * a10 * a4 * a3 ** 6
              + 2480625 * a4 ** 8 - 11113200 * a3 * a4 ** 6 * a5
              + 4939200 * a3 ** 2 * a4 ** 4 * (3 * a5 ** 2 + a4 * a6)
              - 70560 * a3 ** 3 * a4 ** 2 * (84 * a5 ** 3 + 140 * a4 * a5 * a6
                                             + 25 * a4 ** 2 * a7)
              + 4032 * a3 ** 4 * (84 * a5 ** 4 + 840 * a4 * a5 ** 2 * a6
                                  + 600 * a4 ** 2 * a5 * a7
                                  + 25 * a4 ** 2 * (14 * a6 ** 2 + 5 * a4 * a8))
              + 2560 * a3 ** 6 * (12 * a7 ** 2 + 21 * a6 * a8 + 14 * a5 * a9)
              - 4480 * a3 ** 5 * (72 * a5 ** 2 * a7
                                  + a5 * (84 * a6 ** 2 + 90 * a4 * a8)
                                  + 5 * a4 * (24 * a6 * a7 + 5 * a4 * a9))) / (
        89600 * a3 ** 11)
    psi[10] = 13 * (-16865646875 * a4 ** 9 + 85717170000 * a3 * a4 ** 7 * a5
                    + 19595520 * a10 * a3 ** 6 * (-10 * a4 ** 2 + 3 * a3 * a5)
                    - 38710980000 * a3 ** 2 * a4 ** 6 * a6
                    + 2844072000 * a3 ** 2 * a4 ** 5 * (-49 * a5 ** 2 + 5 * a3 * a7)
                    - 1422036000 * a3 ** 3 * a4 ** 4 * (-70 * a5 * a6 + 3 * a3 * a8)
                    + 372314880 * a3 ** 4 * a4 ** 2 * (-154 * a5 ** 2 * a6
                                                       + 20 * a3 * a6 * a7
                                                       + 15 * a3 * a5 * a8)
                    + 206841600 * a3 ** 3 * a4 ** 3 * (385 * a5 ** 3
                                                       - 132 * a3 * a5 * a7
                                                       + a3 * (-77 * a6 ** 2
                                                               + 5 * a3 * a9))
                    - 1119744 * a3 ** 4 * a4 * (10241 * a5 ** 4
                                                - 7980 * a3 * a5 ** 2 * a7
                                                + 150 * a3 ** 2 * (4 * a7 ** 2
                                                                   + 7 * a6 * a8)
                                                + 70 * a3 * a5 * (-133 * a6 ** 2
                                                                  + 10 * a3 * a9))
                    + 186624 * a3 ** 5 * (22344 * a5 ** 3 * a6
                                          - 10080 * a3 * a5 * a6 * a7
                                          - 3780 * a3 * a5 ** 2 * a8
                                          + 5 * a3 * (-392 * a6 ** 3
                                                      + 135 * a3 * a7 * a8
                                                      + 105 * a3 * a6 * a9))) / (
        1763596800 * a3 ** (37 / 3))
    return psi


def r_closed_form_general(gamma: PlaneCurveGerm) -> ScaledPower:
    """(m, m+1)-cuspidal curvature b~_{m+1} / a~_m^((m+1)/m)."""
    m, _ = multiplicity(gamma)
    g, a, b = _tilde_coeffs(gamma, m, m + 1)
    return b[m + 1] / a[m].pow_frac(Fraction(m + 1, m))


def bias_behavior(gamma: PlaneCurveGerm) -> dict:
    """Qualitative approach of the normal form to the tangent line.

    Labels: 'crosses-axis', 'same-side', 'cusp-same-side', 'cusp-crosses',
    by the parity case of (m, n) and the index k of the first nonzero
    bias.  Verified numerically by sampling the sign of the second
    normal-form component at small parameters of both signs.
    """
    nf = curve_normal_form(gamma)
    m, n = nf.m, nf.n
    if n is None:
        raise PreconditionError(
            f"no admissible exponent up to degree {nf.valid_N}; (m,n)-type needed"
        )
    if m % 2 == 0 and n % 2 == 0:
        raise PreconditionError(
            "both m and n even: the image is a half-curve, behavior not classified"
        )
    ks = [j // m for j in sorted(nf.biases)]
    k = ks[0] if ks else None
    if m % 2 == 1 and n % 2 == 1:
        label = "same-side" if (k is not None and k % 2 == 0) else "crosses-axis"
    elif m % 2 == 1:  # n even
        label = "crosses-axis" if (k is not None and k % 2 == 1) else "same-side"
    else:  # m even, n odd
        label = "cusp-same-side" if k is not None else "cusp-crosses"

    # numeric confirmation: compare sign(y) for t of both signs
    y = nf.y_nf
    sample_ok = True
    for j in range(4, 11):
        t = 2.0 ** -j
        yp, yn = y(t), y(-t)
        if yp == 0.0 or yn == 0.0:
            continue
        same = (yp > 0) == (yn > 0)
        expect_same = label in ("same-side", "cusp-same-side")
        if same != expect_same:
            sample_ok = False
    return {"label": label, "k": k, "m": m, "n": n, "sampling_consistent": sample_ok}


def normalized_plane_curvature(gamma_hat: PlaneCurveGerm) -> dict:
    """1/k-arc-length s~ and the normalized curvature of a plane germ.

    gamma_hat' = t^(k-1) rho with rho(0) != 0.  Returns s~ (a smooth jet
    in t with s~'(0) > 0), the normalized curvature as a jet in t and in
    the 1/k-arc-length parameter, and the frame scalar kappa1 which must
    equal k * kappa~.
    """
    g = gamma_hat if gamma_hat.mode == FLOAT else gamma_hat.to_float()
    # pad exact components to the full working degree so the series
    # operations below keep it (roots and inverses are not polynomial)
    Nw = max(g.x.N, g.y.N)
    g = PlaneCurveGerm(g.x.truncate(Nw).with_exact(False),
                       g.y.truncate(Nw).with_exact(False))
    k, (r1, r2) = multiplicity(g)
    Q = r1 * r1 + r2 * r2  # |rho|^2, unit
    sqQ = Q.sqrt_unit()
    # s = integral |t^(k-1)| sqrt(Q); for t > 0: s = t^k P(t)
    P = (Jet1.from_terms({k - 1: 1.0}, sqQ.N, FLOAT, exact=False) * sqQ)\
        .integrate().divide_t(k)
    Pk = P.nth_root_unit(k)
    s_tilde = Jet1.var(Pk.N, FLOAT) * Pk
    d = _det2_jets(r1, r2)
    Pk1 = Pk
    for _ in range(k - 2):
        Pk1 = Pk1 * Pk
    # kappa~ = P^((k-1)/k) det(rho, rho') / Q^(3/2)
    kappa_t = (Pk1 if k >= 2 else Jet1.const(1.0, Pk.N, FLOAT)) * d \
        * (sqQ * Q).invert_unit()
    st_prime = s_tilde.derive()
    kappa1 = d * Q.invert_unit() * st_prime.invert_unit()
    inv = s_tilde.reversion()
    kappa_s = kappa_t.truncate(inv.N).compose(inv)
    return {
        "k": k,
        "s_tilde": s_tilde,
        "kappa_tilde_t": kappa_t,
        "kappa_tilde": kappa_s,
        "kappa1": kappa1,
        "reparametrized": PlaneCurveGerm(
            g.x.truncate(inv.N).compose(inv), g.y.truncate(inv.N).compose(inv)
        ),
    }


def _det2_jets(a1, a2):
    return a1 * a2.derive() - a2 * a1.derive()
