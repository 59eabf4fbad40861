"""Rational-order bookkeeping and numeric order estimation.

A quotient expression g1 / (|g2| g3) of analytic germs has a well defined
rational order ord(g1) - ord(g2) - ord(g3): the exponent governing its
growth or decay along the approach to the base point.  This module keeps
that arithmetic exact (orders may be genuine fractions when factors carry
fractional exponents) and supplies an independent numeric estimator --
the slope of log|value| against log|t| on a geometric grid -- used to
corroborate every exactly computed order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "OrderValue",
    "QuotientExpr",
    "rational_order",
    "numeric_order",
    "sample_grid",
    "richardson_limit",
]


@dataclass(frozen=True)
class OrderValue:
    """An exact order, or a lower bound forced by truncation.

    kind is 'exact' or 'at_least'.  For 'at_least' the value records the
    best bound the truncation degree allows.
    """

    kind: str
    value: Fraction

    def __post_init__(self):
        if self.kind not in ("exact", "at_least"):
            raise ValueError(f"bad OrderValue kind {self.kind!r}")
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @staticmethod
    def exact(value) -> "OrderValue":
        return OrderValue("exact", Fraction(value))

    @staticmethod
    def at_least(value) -> "OrderValue":
        return OrderValue("at_least", Fraction(value))

    def shift(self, delta) -> "OrderValue":
        return OrderValue(self.kind, self.value + Fraction(delta))

    def __str__(self) -> str:
        v = self.value
        s = str(v) if v.denominator != 1 else str(v.numerator)
        return s if self.is_exact else f">= {s}"

    # Comparisons against plain numbers interpret an 'at_least' value as
    # the statement "true order >= value"; only the decidable cases are
    # offered as helpers.
    def equals(self, other) -> bool:
        return self.is_exact and self.value == Fraction(other)

    def exceeds(self, other) -> bool:
        """True when the order is certainly > other."""
        o = Fraction(other)
        if self.is_exact:
            return self.value > o
        return self.value > o

    def at_least_bound(self, other) -> bool:
        """True when the order is certainly >= other."""
        return self.value >= Fraction(other)

    def label(self) -> str:
        """Boundedness label per the rational-order convention."""
        if not self.is_exact:
            if self.value >= 1:
                return "rationally continuous"
            if self.value >= 0:
                return "rationally bounded"
            return "undetermined"
        if self.value >= 1:
            return "rationally continuous"
        if self.value >= 0:
            return "rationally bounded"
        return "unbounded"


@dataclass(frozen=True)
class QuotientExpr:
    """g1 / (prod |g2_j|^{e_j} * prod g3_j^{e_j}) with rational exponents.

    Factors are any objects exposing order_value() -> OrderValue (jets).
    Absolute-value factors contribute to the order exactly like plain
    ones; they are kept separate only for sign bookkeeping by callers.
    """

    numerator: object
    abs_factors: tuple = ()
    denominators: tuple = ()

    @staticmethod
    def of(numerator, abs_factors=(), denominators=()) -> "QuotientExpr":
        def norm(fs):
            out = []
            for f in fs:
                if isinstance(f, tuple):
                    out.append((f[0], Fraction(f[1])))
                else:
                    out.append((f, Fraction(1)))
            return tuple(out)

        return QuotientExpr(numerator, norm(abs_factors), norm(denominators))


def rational_order(q: QuotientExpr) -> OrderValue:
    """Order of a quotient expression: ord(num) - sum of weighted factor orders."""
    num = q.numerator.order_value()
    total = num.value
    kind = num.kind
    for jet, exp in tuple(q.abs_factors) + tuple(q.denominators):
        o = jet.order_value()
        if not o.is_exact:
            raise ValueError(
                "denominator factor vanishes to truncation; its order must "
                "be split off before forming the quotient"
            )
        total -= exp * o.value
    return OrderValue(kind, total)


def sample_grid(j_lo: int = 3, j_hi: int = 12, both_signs: bool = True) -> list[float]:
    """Geometric parameter grid t = 2^-j used by the numeric estimator."""
    ts = [2.0 ** -j for j in range(j_lo, j_hi + 1)]
    if both_signs:
        ts = ts + [-t for t in ts]
    return ts


def numeric_order(samples: Iterable[tuple[float, float]], n_fit: int = 6):
    """Least-squares slope of log|value| vs log|t|.

    Uses the n_fit samples of smallest |t| with finite nonzero value.
    Returns (slope, stderr).  A sign change across the usable samples is
    tolerated (the fit is on |value|); all-zero input raises.
    """
    pts = [
        (abs(t), abs(v))
        for t, v in samples
        if t != 0.0 and math.isfinite(v) and v != 0.0
    ]
    if len(pts) < 2:
        raise ValueError("need at least two finite nonzero samples")
    pts.sort(key=lambda p: p[0])
    pts = pts[:n_fit]
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    sol, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    slope = float(sol[0])
    dof = len(pts) - 2
    if dof > 0 and len(res):
        s2 = float(res[0]) / dof
        sxx = float(((x - x.mean()) ** 2).sum())
        stderr = math.sqrt(s2 / sxx) if sxx > 0 else float("inf")
    else:
        stderr = 0.0
    return slope, stderr


def richardson_limit(f: Callable[[float], float], t0: float = 2.0 ** -4,
                     levels: int = 4) -> float:
    """Limit of f(t) as t -> 0+ by polynomial (Neville) extrapolation.

    Evaluates on t0, t0/2, ..., t0/2^(levels-1) and extrapolates to 0,
    assuming a smooth expansion of f in t.
    """
    ts = [t0 / 2.0 ** i for i in range(levels)]
    vals = [f(t) for t in ts]
    # Neville's scheme evaluated at t = 0.
    for j in range(1, levels):
        for i in range(levels - j):
            vals[i] = vals[i + 1] + (vals[i + 1] - vals[i]) * ts[i + j] / (
                ts[i] - ts[i + j]
            )
    return vals[0]
