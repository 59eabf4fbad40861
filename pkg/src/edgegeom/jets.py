"""Truncated power-series (jet) arithmetic in one and two variables.

Coefficients are exact rationals (fractions.Fraction) or binary floats;
a computation never mixes the two modes.  Jets record the degree to
which their coefficients are guaranteed valid, so order queries can
distinguish "exactly n" from "at least N+1".  Jets built from actual
polynomials may carry exact=True, meaning every omitted coefficient is
a true zero; such jets compose with deeply truncated partners without
dragging the common truncation down.

Operations that would force irrational constants in rational mode
(non-perfect roots) raise NeedsFloat so the caller can rebuild the
pipeline with float coefficients instead of silently approximating.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .orders import OrderValue

__all__ = [
    "RATIONAL",
    "FLOAT",
    "NeedsFloat",
    "JetError",
    "Jet1",
    "Jet2",
    "Vec3",
    "invert_map2",
    "exact_root",
    "ZERO_TOL",
]

RATIONAL = "rational"
FLOAT = "float"

#: Relative zero tolerance in float mode (relative to the largest
#: coefficient magnitude in the jet).
ZERO_TOL = 1e-9

#: Hard cap on the stored degree of exact polynomial jets, so products of
#: exact jets cannot grow without bound.
MAX_EXACT_N = 96


class NeedsFloat(ArithmeticError):
    """Raised when a rational-mode computation requires an irrational constant."""


class JetError(ValueError):
    """Invalid jet operation (mode mismatch, non-unit inversion, ...)."""


def _int_nth_root(n: int, m: int):
    """Exact integer m-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / m))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** m == n:
            return cand
    return None


def exact_root(value: Fraction, m: int):
    """Exact m-th root of a nonnegative Fraction, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    p = _int_nth_root(value.numerator, m)
    q = _int_nth_root(value.denominator, m)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _coerce(value, mode):
    if mode == RATIONAL:
        if isinstance(value, float):
            raise JetError("float coefficient in rational mode")
        return Fraction(value)
    return float(value)


def _binomial_series(alpha: Fraction, N: int, mode: str) -> list:
    """Coefficients of (1+x)^alpha up to degree N."""
    alpha = Fraction(alpha)
    out = [Fraction(1)]
    for k in range(1, N + 1):
        out.append(out[-1] * (alpha - (k - 1)) / k)
    if mode == FLOAT:
        return [float(c) for c in out]
    return out


class Jet1:
    """Univariate jet sum c_i t^i + O(t^{N+1})."""

    __slots__ = ("coeffs", "N", "mode", "exact")

    def __init__(self, coeffs, N=None, mode=RATIONAL, exact=False):
        coeffs = list(coeffs)
        if N is None:
            N = len(coeffs) - 1
        if len(coeffs) < N + 1:
            coeffs += [0] * (N + 1 - len(coeffs))
        coeffs = [_coerce(c, mode) for c in coeffs[: N + 1]]
        self.coeffs = coeffs
        self.N = N
        self.mode = mode
        self.exact = bool(exact)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero(N, mode=RATIONAL, exact=False):
        return Jet1([0] * (N + 1), N, mode, exact)

    @staticmethod
    def const(c, N, mode=RATIONAL, exact=False):
        z = [0] * (N + 1)
        z[0] = c
        return Jet1(z, N, mode, exact)

    @staticmethod
    def var(N, mode=RATIONAL, exact=False):
        z = [0] * (N + 1)
        if N >= 1:
            z[1] = 1
        return Jet1(z, N, mode, exact)

    @staticmethod
    def from_terms(terms, N, mode=RATIONAL, exact=True):
        """Jet from {exponent: coefficient}."""
        z = [0] * (N + 1)
        for e, c in terms.items():
            if e > N:
                if exact:
                    raise JetError(f"exponent {e} beyond stored degree {N}")
                continue
            z[e] = c
        return Jet1(z, N, mode, exact)

    # -- bookkeeping ----------------------------------------------------------

    def _scale_mag(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def is_zero_coef(self, c) -> bool:
        if self.mode == RATIONAL:
            return c == 0
        s = self._scale_mag()
        return abs(c) <= ZERO_TOL * s if s else True

    def truncate(self, N: int) -> "Jet1":
        if N >= self.N:
            if self.exact:
                return Jet1(self.coeffs + [0] * (N - self.N), N, self.mode, True)
            return self
        # shrinking an exact jet stays exact only if nothing real is dropped
        exact = self.exact and all(c == 0 for c in self.coeffs[N + 1:])
        return Jet1(self.coeffs[: N + 1], N, self.mode, exact)

    def poly_degree(self) -> int:
        """Largest exponent carrying a nonzero coefficient (0 for the zero jet)."""
        for i in range(self.N, -1, -1):
            if self.coeffs[i] != 0:
                return i
        return 0

    def with_exact(self, exact: bool) -> "Jet1":
        return Jet1(self.coeffs, self.N, self.mode, exact)

    def to_float(self) -> "Jet1":
        return Jet1([float(c) for c in self.coeffs], self.N, FLOAT, self.exact)

    def _pair_N(self, other: "Jet1"):
        if self.mode != other.mode:
            raise JetError("coefficient mode mismatch")
        if self.exact and other.exact:
            return None  # exact result
        if self.exact:
            return other.N
        if other.exact:
            return self.N
        return min(self.N, other.N)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet1):
            other = Jet1.const(other, self.N, self.mode, True)
        N = self._pair_N(other)
        if N is None:
            N = min(max(self.N, other.N), MAX_EXACT_N)
            exact = max(self.N, other.N) <= MAX_EXACT_N
        else:
            exact = False
        c = [0] * (N + 1)
        for i in range(N + 1):
            x = self.coeffs[i] if i <= self.N else 0
            y = other.coeffs[i] if i <= other.N else 0
            c[i] = x + y
        return Jet1(c, N, self.mode, exact)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Jet1([-c for c in self.coeffs], self.N, self.mode, self.exact)

    def __sub__(self, other):
        if not isinstance(other, Jet1):
            other = Jet1.const(other, self.N, self.mode, True)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Jet1):
            # scalar
            s = _coerce(other, self.mode)
            return Jet1([c * s for c in self.coeffs], self.N, self.mode, self.exact)
        if self.mode != other.mode:
            raise JetError("coefficient mode mismatch")
        if self.exact and other.exact:
            N = self.poly_degree() + other.poly_degree()
            exact = N <= MAX_EXACT_N
            N = min(N, MAX_EXACT_N)
        else:
            exact = False
            if self.exact:
                N = other.N
            elif other.exact:
                N = self.N
            else:
                N = min(self.N, other.N)
        c = [0] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            hi = min(other.N, N - i)
            for j in range(hi + 1):
                b = other.coeffs[j]
                if b != 0:
                    c[i + j] += a * b
        return Jet1(c, N, self.mode, exact)

    def __rmul__(self, other):
        return self.__mul__(other)

    # -- calculus -------------------------------------------------------------

    def derive(self) -> "Jet1":
        N = self.N if self.exact else self.N - 1
        if N < 0:
            raise JetError("cannot differentiate a degree-(-1) jet")
        c = [0] * (N + 1)
        for i in range(1, self.N + 1):
            if i - 1 <= N:
                c[i - 1] = i * self.coeffs[i]
        return Jet1(c, N, self.mode, self.exact)

    def integrate(self) -> "Jet1":
        """Antiderivative vanishing at 0."""
        N = min(self.N + 1, MAX_EXACT_N) if self.exact else self.N + 1
        c = [0] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if i + 1 <= N:
                if self.mode == RATIONAL:
                    c[i + 1] = a / Fraction(i + 1)
                else:
                    c[i + 1] = a / (i + 1)
        return Jet1(c, N, self.mode, self.exact and self.N + 1 <= MAX_EXACT_N)

    # -- composition ----------------------------------------------------------

    def compose(self, g: "Jet1") -> "Jet1":
        """Taylor expansion of self(g(t)); requires g(0) = 0."""
        if self.mode != g.mode:
            raise JetError("coefficient mode mismatch")
        if not g.is_zero_coef(g.coeffs[0]):
            raise JetError("inner series must vanish at 0")
        if self.exact and g.exact:
            full = self.poly_degree() * max(g.poly_degree(), 1)
            N = min(full, MAX_EXACT_N)
            exact = full <= MAX_EXACT_N
        else:
            exact = False
            N = g.N if self.exact else (self.N if g.exact else min(self.N, g.N))
        g = g.truncate(N) if g.N > N else g
        res = Jet1.zero(N, self.mode, exact)
        for i in range(min(self.N, N), -1, -1):
            res = res * g + Jet1.const(self.coeffs[i], N, self.mode, exact)
        res.exact = exact
        return res.truncate(N)

    def invert_unit(self) -> "Jet1":
        """Multiplicative inverse; requires a unit constant term."""
        c0 = self.coeffs[0]
        if self.is_zero_coef(c0):
            raise JetError("cannot invert a non-unit jet; split off the order first")
        N = self.N
        inv0 = Fraction(1) / c0 if self.mode == RATIONAL else 1.0 / c0
        out = [inv0] + [0] * N
        for n in range(1, N + 1):
            acc = 0
            for k in range(1, min(n, self.N) + 1):
                fk = self.coeffs[k]
                if fk != 0:
                    acc += fk * out[n - k]
            out[n] = -inv0 * acc
        return Jet1(out, N, self.mode, False)

    def nth_root_unit(self, m: int) -> "Jet1":
        """g with g^m = self, g(0) > 0; requires self(0) > 0."""
        c0 = self.coeffs[0]
        if self.mode == RATIONAL:
            if c0 <= 0:
                raise JetError("nth_root_unit requires a positive constant term")
            r0 = exact_root(c0, m)
            if r0 is None:
                raise NeedsFloat(
                    f"rational mode cannot take an exact {m}-th root of {c0}"
                )
        else:
            if c0 <= ZERO_TOL * self._scale_mag():
                raise JetError("nth_root_unit requires a positive constant term")
            r0 = c0 ** (1.0 / m)
        N = self.N
        # self = c0 (1 + h), root = r0 * (1+x)^{1/m} composed with h.
        h = (self * (Fraction(1, 1) / c0 if self.mode == RATIONAL else 1.0 / c0)
             - 1)
        h.exact = False
        binom = Jet1(
            _binomial_series(Fraction(1, m), N, self.mode), N, self.mode, False
        )
        return binom.compose(h.truncate(N)) * r0

    def sqrt_unit(self) -> "Jet1":
        return self.nth_root_unit(2)

    def reversion(self) -> "Jet1":
        """Compositional inverse; requires f(0)=0, f'(0) != 0.

        Newton iteration on jets, doubling the correct degree per step.
        """
        if not self.is_zero_coef(self.coeffs[0]):
            raise JetError("reversion requires f(0) = 0")
        if self.N < 1 or self.is_zero_coef(self.coeffs[1]):
            raise JetError("reversion requires f'(0) != 0")
        N = self.N
        f = self.truncate(N).with_exact(False)
        # f' padded back to degree N: the Newton correction only consumes
        # derivative coefficients up to degree N-2, so the padding is safe.
        fp = Jet1(f.derive().coeffs, N, self.mode, False)
        inv_f1 = (Fraction(1) / f.coeffs[1]) if self.mode == RATIONAL else 1.0 / f.coeffs[1]
        s = Jet1.var(N, self.mode)
        g = s * inv_f1
        known = 1
        while known < N:
            # g <- g - (f(g) - s) / f'(g)
            err = f.compose(g) - s
            corr = err * fp.compose(g).invert_unit()
            g = g - corr
            known = min(2 * known + 1, N)
        return g.truncate(N)

    # -- structure queries ----------------------------------------------------

    def order_int(self):
        """Smallest exponent with nonzero coefficient, or None if zero jet."""
        if self.mode == RATIONAL:
            for i, c in enumerate(self.coeffs):
                if c != 0:
                    return i
            return None
        s = self._scale_mag()
        if s == 0.0:
            return None
        for i, c in enumerate(self.coeffs):
            if abs(c) > ZERO_TOL * s:
                return i
        return None

    def order_value(self) -> OrderValue:
        o = self.order_int()
        if o is None:
            return OrderValue.at_least(self.N + 1)
        return OrderValue.exact(o)

    def is_zero(self) -> bool:
        return self.order_int() is None

    def coefficient(self, i):
        if i <= self.N:
            return self.coeffs[i]
        if self.exact:
            return Fraction(0) if self.mode == RATIONAL else 0.0
        raise JetError(f"coefficient {i} beyond valid degree {self.N}")

    @property
    def constant(self):
        return self.coeffs[0]

    def shift_mul(self, k: int) -> "Jet1":
        """Multiply by t^k."""
        N = min(self.N + k, MAX_EXACT_N) if self.exact else self.N + k
        c = [0] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if i + k <= N:
                c[i + k] = a
        return Jet1(c, N, self.mode, self.exact and self.N + k <= MAX_EXACT_N)

    def divide_t(self, k: int) -> "Jet1":
        """Exact division by t^k; the low coefficients must vanish."""
        for i in range(min(k, self.N + 1)):
            if not self.is_zero_coef(self.coeffs[i]):
                raise JetError(f"jet not divisible by t^{k}: t^{i} term present")
        N = self.N if self.exact else self.N - k
        if N < 0:
            raise JetError("division exhausts the jet")
        c = [0] * (N + 1)
        for i in range(k, self.N + 1):
            if i - k <= N:
                c[i - k] = self.coeffs[i]
        return Jet1(c, N, self.mode, self.exact)

    def __call__(self, t):
        """Horner evaluation at a float (or Fraction) point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self):
        terms = [
            f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c != 0
        ] or ["0"]
        tag = "exact" if self.exact else f"O(t^{self.N + 1})"
        return f"Jet1({' + '.join(terms[:8])}{' + ...' if len(terms) > 8 else ''}; {tag})"


class Jet2:
    """Bivariate jet sum c_ij u^i v^j + O(total degree N+1)."""

    __slots__ = ("coeffs", "N", "mode", "exact")

    def __init__(self, coeffs, N, mode=RATIONAL, exact=False):
        self.N = N
        self.mode = mode
        self.exact = bool(exact)
        cl = {}
        for (i, j), c in coeffs.items():
            if i + j > N:
                if exact:
                    raise JetError(f"monomial u^{i} v^{j} beyond stored degree {N}")
                continue
            c = _coerce(c, mode)
            if c != 0:
                cl[(i, j)] = c
        self.coeffs = cl

    # -- construction ---------------------------------------------------------

    @staticmethod
    def zero(N, mode=RATIONAL, exact=False):
        return Jet2({}, N, mode, exact)

    @staticmethod
    def const(c, N, mode=RATIONAL, exact=False):
        return Jet2({(0, 0): c}, N, mode, exact)

    @staticmethod
    def var_u(N, mode=RATIONAL, exact=False):
        return Jet2({(1, 0): 1}, N, mode, exact)

    @staticmethod
    def var_v(N, mode=RATIONAL, exact=False):
        return Jet2({(0, 1): 1}, N, mode, exact)

    @staticmethod
    def from_jet1_u(j: Jet1, N=None, exact=None) -> "Jet2":
        N = j.N if N is None else N
        exact = j.exact if exact is None else exact
        return Jet2({(i, 0): c for i, c in enumerate(j.coeffs) if c != 0},
                    N, j.mode, exact)

    @staticmethod
    def from_jet1_v(j: Jet1, N=None, exact=None) -> "Jet2":
        N = j.N if N is None else N
        exact = j.exact if exact is None else exact
        return Jet2({(0, i): c for i, c in enumerate(j.coeffs) if c != 0},
                    N, j.mode, exact)

    # -- bookkeeping ----------------------------------------------------------

    def _scale_mag(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def is_zero_coef(self, c) -> bool:
        if self.mode == RATIONAL:
            return c == 0
        s = self._scale_mag()
        return abs(c) <= ZERO_TOL * s if s else True

    def truncate(self, N: int) -> "Jet2":
        if N >= self.N:
            if self.exact:
                return Jet2(self.coeffs, N, self.mode, True)
            return self
        kept = {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= N}
        # shrinking an exact jet stays exact only if nothing real is dropped
        exact = self.exact and all(
            c == 0 for k, c in self.coeffs.items() if k[0] + k[1] > N
        )
        return Jet2(kept, N, self.mode, exact)

    def poly_degree(self) -> int:
        """Largest total degree carrying a nonzero coefficient."""
        return max((i + j for (i, j), c in self.coeffs.items() if c != 0),
                   default=0)

    def with_exact(self, exact: bool) -> "Jet2":
        return Jet2(self.coeffs, self.N, self.mode, exact)

    def to_float(self) -> "Jet2":
        return Jet2({k: float(c) for k, c in self.coeffs.items()},
                    self.N, FLOAT, self.exact)

    def _pair(self, other: "Jet2"):
        if self.mode != other.mode:
            raise JetError("coefficient mode mismatch")

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet2):
            other = Jet2.const(other, self.N, self.mode, True)
        self._pair(other)
        if self.exact and other.exact:
            N = min(max(self.N, other.N), MAX_EXACT_N)
            exact = max(self.N, other.N) <= MAX_EXACT_N
        else:
            exact = False
            N = other.N if self.exact else (self.N if other.exact else min(self.N, other.N))
        out = {}
        for k, c in self.coeffs.items():
            if k[0] + k[1] <= N:
                out[k] = out.get(k, 0) + c
        for k, c in other.coeffs.items():
            if k[0] + k[1] <= N:
                out[k] = out.get(k, 0) + c
        return Jet2(out, N, self.mode, exact)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Jet2({k: -c for k, c in self.coeffs.items()},
                    self.N, self.mode, self.exact)

    def __sub__(self, other):
        if not isinstance(other, Jet2):
            other = Jet2.const(other, self.N, self.mode, True)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            s = _coerce(other, self.mode)
            return Jet2({k: c * s for k, c in self.coeffs.items()},
                        self.N, self.mode, self.exact)
        self._pair(other)
        if self.exact and other.exact:
            N = self.poly_degree() + other.poly_degree()
            exact = N <= MAX_EXACT_N
            N = min(N, MAX_EXACT_N)
        else:
            exact = False
            N = other.N if self.exact else (self.N if other.exact else min(self.N, other.N))
        out = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j <= N:
                    k = (i, j)
                    out[k] = out.get(k, 0) + a * b
        return Jet2(out, N, self.mode, exact)

    def __rmul__(self, other):
        return self.__mul__(other)

    # -- calculus -------------------------------------------------------------

    def derive_u(self) -> "Jet2":
        N = self.N if self.exact else self.N - 1
        out = {}
        for (i, j), c in self.coeffs.items():
            if i >= 1 and (i - 1) + j <= N:
                out[(i - 1, j)] = i * c
        return Jet2(out, max(N, 0), self.mode, self.exact)

    def derive_v(self) -> "Jet2":
        N = self.N if self.exact else self.N - 1
        out = {}
        for (i, j), c in self.coeffs.items():
            if j >= 1 and i + (j - 1) <= N:
                out[(i, j - 1)] = j * c
        return Jet2(out, max(N, 0), self.mode, self.exact)

    # -- composition ----------------------------------------------------------

    def v_coefficient(self, j: int) -> Jet1:
        """Coefficient of v^j as a Jet1 in u."""
        N = self.N if self.exact else self.N - j
        if N < 0:
            raise JetError("v-power beyond valid degree")
        c = [0] * (N + 1)
        for (i, jj), a in self.coeffs.items():
            if jj == j and i <= N:
                c[i] = a
        return Jet1(c, N, self.mode, self.exact)

    def max_v_power(self) -> int:
        return max((j for (_, j) in self.coeffs.keys()), default=0)

    def substitute(self, phi: "Jet2", psi: "Jet2") -> "Jet2":
        """self(phi(u,v), psi(u,v)); both substitutes must vanish at 0."""
        self._pair(phi)
        self._pair(psi)
        for s in (phi, psi):
            if (0, 0) in s.coeffs and not s.is_zero_coef(s.coeffs[(0, 0)]):
                raise JetError("substituted series must vanish at 0")
        if self.exact and phi.exact and psi.exact:
            full = self.poly_degree() * max(
                phi.poly_degree(), psi.poly_degree(), 1)
            N = min(full, MAX_EXACT_N)
            exact = full <= MAX_EXACT_N
        else:
            exact = False
            cands = [s.N for s in (self, phi, psi) if not s.exact]
            N = min(cands)
        phi = phi.truncate(N)
        psi = psi.truncate(N)
        # Horner in v with polynomial coefficients in u.
        maxj = self.max_v_power()
        res = Jet2.zero(N, self.mode, exact)
        for j in range(maxj, -1, -1):
            cj = self.v_coefficient(j)  # Jet1 in u
            # evaluate cj at phi via Horner
            term = Jet2.zero(N, self.mode, exact)
            for i in range(min(cj.N, N), -1, -1):
                term = term * phi + Jet2.const(cj.coeffs[i], N, self.mode, exact)
            res = res * psi + term
        res.exact = exact
        return res.truncate(N)

    def compose_curve(self, g: Jet1, h: Jet1) -> Jet1:
        """self(g(t), h(t)) as a Jet1; g(0) = h(0) = 0 required."""
        if self.mode != g.mode or self.mode != h.mode:
            raise JetError("coefficient mode mismatch")
        for s in (g, h):
            if not s.is_zero_coef(s.coeffs[0]):
                raise JetError("substituted curve must vanish at 0")
        if self.exact and g.exact and h.exact:
            full = self.poly_degree() * max(
                g.poly_degree(), h.poly_degree(), 1)
            N = min(full, MAX_EXACT_N)
            exact = full <= MAX_EXACT_N
        else:
            exact = False
            cands = [s.N for s in (self, g, h) if not s.exact]
            N = min(cands)
        g = g.truncate(N)
        h = h.truncate(N)
        maxj = self.max_v_power()
        res = Jet1.zero(N, self.mode, exact)
        for j in range(maxj, -1, -1):
            cj = self.v_coefficient(j)
            term = Jet1.zero(N, self.mode, exact)
            for i in range(min(cj.N, N), -1, -1):
                term = term * g + Jet1.const(cj.coeffs[i], N, self.mode, exact)
            res = res * h + term
        res.exact = exact
        return res.truncate(N)

    def restrict_v0(self) -> Jet1:
        return self.v_coefficient(0)

    def restrict_u0(self) -> Jet1:
        """Jet1 in v along u = 0."""
        N = self.N
        c = [0] * (N + 1)
        for (i, j), a in self.coeffs.items():
            if i == 0:
                c[j] = a
        return Jet1(c, N, self.mode, self.exact)

    def invert_unit(self) -> "Jet2":
        c0 = self.coeffs.get((0, 0), 0)
        if self.is_zero_coef(c0):
            raise JetError("cannot invert a non-unit jet; split off the order first")
        inv0 = Fraction(1) / c0 if self.mode == RATIONAL else 1.0 / c0
        N = self.N
        h = (self * inv0 - 1).truncate(N)
        h.exact = False
        # geometric series 1/(1+h) via Horner
        res = Jet2.zero(N, self.mode)
        one = Jet2.const(1, N, self.mode)
        for _ in range(N + 1):
            res = one - h * res
        return res * inv0

    def nth_root_unit(self, m: int) -> "Jet2":
        c0 = self.coeffs.get((0, 0), 0)
        if self.mode == RATIONAL:
            if c0 <= 0:
                raise JetError("nth_root_unit requires a positive constant term")
            r0 = exact_root(c0, m)
            if r0 is None:
                raise NeedsFloat(
                    f"rational mode cannot take an exact {m}-th root of {c0}"
                )
            inv0 = Fraction(1) / c0
        else:
            if c0 <= ZERO_TOL * self._scale_mag():
                raise JetError("nth_root_unit requires a positive constant term")
            r0 = c0 ** (1.0 / m)
            inv0 = 1.0 / c0
        N = self.N
        h = (self * inv0 - 1).truncate(N)
        h.exact = False
        coeffs = _binomial_series(Fraction(1, m), N, self.mode)
        # Horner in h
        res = Jet2.zero(N, self.mode)
        for c in reversed(coeffs):
            res = res * h + Jet2.const(c, N, self.mode)
        return res * r0

    def sqrt_unit(self) -> "Jet2":
        return self.nth_root_unit(2)

    def divide_v(self, k: int) -> "Jet2":
        """Exact division by v^k."""
        N = self.N if self.exact else self.N - k
        out = {}
        for (i, j), c in self.coeffs.items():
            if j < k:
                if not self.is_zero_coef(c):
                    raise JetError(f"jet not divisible by v^{k}: u^{i} v^{j} present")
                continue
            if i + j - k <= N:
                out[(i, j - k)] = c
        return Jet2(out, N, self.mode, self.exact)

    def divide_u(self, k: int) -> "Jet2":
        N = self.N if self.exact else self.N - k
        out = {}
        for (i, j), c in self.coeffs.items():
            if i < k:
                if not self.is_zero_coef(c):
                    raise JetError(f"jet not divisible by u^{k}: u^{i} v^{j} present")
                continue
            if i - k + j <= N:
                out[(i - k, j)] = c
        return Jet2(out, N, self.mode, self.exact)

    # -- structure queries ----------------------------------------------------

    def order_int(self):
        if self.mode == RATIONAL:
            degs = [i + j for (i, j), c in self.coeffs.items() if c != 0]
        else:
            s = self._scale_mag()
            if s == 0.0:
                return None
            degs = [i + j for (i, j), c in self.coeffs.items()
                    if abs(c) > ZERO_TOL * s]
        return min(degs) if degs else None

    def order_value(self) -> OrderValue:
        o = self.order_int()
        if o is None:
            return OrderValue.at_least(self.N + 1)
        return OrderValue.exact(o)

    def v_order_at_u0(self):
        """Order in v of the restriction to u = 0, or None."""
        return self.restrict_u0().order_int()

    def is_zero(self) -> bool:
        return self.order_int() is None

    def coefficient(self, i: int, j: int):
        if i + j <= self.N or self.exact:
            c = self.coeffs.get((i, j), 0)
            return c if c != 0 else (Fraction(0) if self.mode == RATIONAL else 0.0)
        raise JetError(f"coefficient ({i},{j}) beyond valid degree {self.N}")

    @property
    def constant(self):
        return self.coeffs.get((0, 0), Fraction(0) if self.mode == RATIONAL else 0.0)

    def __call__(self, u, v):
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc += c * (u ** i) * (v ** j)
        return acc

    def __repr__(self):
        terms = [
            f"{c}*u^{i}v^{j}"
            for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))
        ] or ["0"]
        tag = "exact" if self.exact else f"O(deg {self.N + 1})"
        return f"Jet2({' + '.join(terms[:8])}{' + ...' if len(terms) > 8 else ''}; {tag})"


class Vec3:
    """Triple of jets (Jet1 or Jet2) with shared mode."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i):
        return (self.x, self.y, self.z)[i]

    def map(self, fn) -> "Vec3":
        return Vec3(fn(self.x), fn(self.y), fn(self.z))

    def __add__(self, other):
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Vec3(-self.x, -self.y, -self.z)

    def scale(self, s) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    def dot(self, other):
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other) -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm_sq(self):
        return self.dot(self)

    @staticmethod
    def det3(a: "Vec3", b: "Vec3", c: "Vec3"):
        return a.dot(b.cross(c))

    def to_float(self) -> "Vec3":
        return self.map(lambda j: j.to_float())

    def truncate(self, N: int) -> "Vec3":
        return self.map(lambda j: j.truncate(N))

    def eval(self, *args):
        return (self.x(*args), self.y(*args), self.z(*args))

    def __repr__(self):
        return f"Vec3({self.x!r}, {self.y!r}, {self.z!r})"


def invert_map2(P: Jet2, Q: Jet2, N=None):
    """Inverse of the origin-preserving jet map (u,v) -> (P, Q).

    Requires an invertible linear part.  Returns (R, S) with
    P(R,S) = u, Q(R,S) = v up to the working degree.
    """
    if P.mode != Q.mode:
        raise JetError("coefficient mode mismatch")
    mode = P.mode
    if N is None:
        cands = [s.N for s in (P, Q) if not s.exact]
        N = min(cands) if cands else min(max(P.N, Q.N), MAX_EXACT_N)
    for s in (P, Q):
        c0 = s.coeffs.get((0, 0), 0)
        if not s.is_zero_coef(c0):
            raise JetError("map must preserve the origin")
    a, b = P.coefficient(1, 0), P.coefficient(0, 1)
    c, d = Q.coefficient(1, 0), Q.coefficient(0, 1)
    det = a * d - b * c
    if (mode == RATIONAL and det == 0) or (mode == FLOAT and abs(det) < 1e-300):
        raise JetError("map has singular linear part")
    inv_det = (Fraction(1) / det) if mode == RATIONAL else 1.0 / det
    P = P.truncate(N).with_exact(False)
    Q = Q.truncate(N).with_exact(False)
    u = Jet2.var_u(N, mode)
    v = Jet2.var_v(N, mode)
    # linear inverse as the seed
    R = (u * d - v * b) * inv_det
    S = (v * a - u * c) * inv_det
    # modified Newton with the constant Jacobian inverse: each pass
    # corrects one more total degree, and needs no jet division
    for _ in range(N - 1):
        F1 = P.substitute(R, S) - u
        F2 = Q.substitute(R, S) - v
        if all(F1.is_zero_coef(x) for x in F1.coeffs.values()) and \
           all(F2.is_zero_coef(x) for x in F2.coeffs.values()):
            break
        dR = (F1 * d - F2 * b) * inv_det
        dS = (F2 * a - F1 * c) * inv_det
        R = (R - dR).truncate(N)
        S = (S - dS).truncate(N)
    return R, S
