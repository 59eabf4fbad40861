"""Shared builders for the test suite: random rational germs in the
shapes the classification results quantify over."""

from fractions import Fraction
import math
import random

from edgegeom import Jet1, Jet2, PlaneCurveGerm, Vec3


def rand_frac(rng: random.Random, lo: int = -5, hi: int = 5,
              max_den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        den = rng.randint(1, max_den)
        num = rng.randint(lo * den, hi * den)
        f = Fraction(num, den)
        if not nonzero or f != 0:
            return f


def staged_m3_curve(rng: random.Random, stage: int, N: int = 14):
    """Random rational multiplicity-3 germ whose derivative data
    (A_i, B_i) satisfies the vanishing preconditions of the given stage.

    gamma^(i)(0) = (A_i w + B_i w-perp)/g with w = gamma^(3)(0),
    g = |w|^2, so the scaled coefficients are a~_i = A_i/sqrt(g),
    b~_i = B_i/sqrt(g).  Stages: 1 generic (b~_4 != 0); 2: b~_4 = 0;
    3: b~_4 = b~_5 = 0; 4: also r_{3,7} = 0; 5: also r_{3,8} = 0.
    """
    w1 = Fraction(rng.choice([1, 2, 3, -1, -2]))
    w2 = Fraction(rng.choice([0, 1, 2, -1, -3]))
    if w1 == 0 and w2 == 0:
        w1 = Fraction(1)
    g = w1 * w1 + w2 * w2
    A = {3: g}
    B = {3: Fraction(0)}
    for i in range(4, 11):
        A[i] = rand_frac(rng)
        B[i] = rand_frac(rng)
    if stage >= 2:
        B[4] = Fraction(0)
        B[5] = rand_frac(rng, nonzero=True)
    if stage >= 3:
        B[5] = Fraction(0)
        B[6] = rand_frac(rng, nonzero=True)
    if stage >= 4:
        # clear r_{3,7}: 2 a3 b7 = 7 a4 b6
        B[7] = 7 * A[4] * B[6] / (2 * A[3])
    if stage >= 5:
        # clear r_{3,8}: 35 a4^2 b6 + 56 a3 a5 b6 = 10 a3^2 b8
        B[8] = 7 * (5 * A[4] ** 2 + 8 * A[3] * A[5]) * B[6] / (
            10 * A[3] ** 2)
    xs = {i: (A[i] * w1 - B[i] * w2) / (g * math.factorial(i))
          for i in range(3, 11)}
    ys = {i: (A[i] * w2 + B[i] * w1) / (g * math.factorial(i))
          for i in range(3, 11)}
    x = Jet1.from_terms({i: c for i, c in xs.items() if c != 0}, N,
                        exact=True)
    y = Jet1.from_terms({i: c for i, c in ys.items() if c != 0}, N,
                        exact=True)
    return PlaneCurveGerm(x, y), A, B, g


def normal_form_surface(m: int, a: dict, b0: dict, bm: dict,
                        N: int) -> Vec3:
    """(u, u^2 a(u)/2 + v^m/m!, u^2 b0(u)/2 + v^m bm(u,v)/m!), exact
    rational; `a`, `b0` map u-degree -> coefficient, `bm` maps
    (i, j) -> coefficient with bm[(0, 0)] absent or zero."""
    fm = Fraction(1, math.factorial(m))
    half = Fraction(1, 2)
    f2 = {(i + 2, 0): Fraction(c) * half for i, c in a.items() if c != 0}
    f2[(0, m)] = f2.get((0, m), 0) + fm
    f3 = {(i + 2, 0): Fraction(c) * half for i, c in b0.items() if c != 0}
    for (i, j), c in bm.items():
        if c != 0:
            key = (i, j + m)
            f3[key] = f3.get(key, 0) + Fraction(c) * fm
    return Vec3(
        Jet2.var_u(N, exact=True),
        Jet2({k: c for k, c in f2.items() if c != 0}, N, exact=True),
        Jet2({k: c for k, c in f3.items() if c != 0}, N, exact=True),
    )


def rand_mn_edge(rng: random.Random, m: int, n: int, N: int,
                 kappa_nu_nonzero: bool = False) -> Vec3:
    """Random (m, n)-edge in normal form; n is forced by making
    bm(0, v) start exactly at v^(n-m) and earlier non-multiple-of-m
    slots zero."""
    assert n > m and n % m != 0
    a = {i: rand_frac(rng, -2, 2) for i in range(0, 3)}
    b0 = {i: rand_frac(rng, -2, 2) for i in range(0, 3)}
    if kappa_nu_nonzero:
        b0[0] = rand_frac(rng, 1, 3)
    # (m,n)-type needs the v^j-coefficient of bm to vanish identically in
    # u for 0 < j < n - m; v^(n-m) must be present at the origin
    bm = {}
    for j in range(n - m, min(n - m + 3, N - m)):
        bm[(0, j)] = (rand_frac(rng, nonzero=True) if j == n - m
                      else rand_frac(rng, -2, 2))
        for i in (1, 2):
            bm[(i, j)] = rand_frac(rng, -2, 2)
    for i in (1, 2):
        bm[(i, 0)] = rand_frac(rng, -2, 2)
    return normal_form_surface(m, a, b0, bm, N)


def null_tangent_curve(l: int, c: dict, N: int) -> PlaneCurveGerm:
    """(t^l c(t), t) with c given as {t-degree offset: coefficient}."""
    terms = {l + i: Fraction(v) for i, v in c.items() if v != 0}
    return PlaneCurveGerm(
        Jet1.from_terms(terms, N, exact=True),
        Jet1.var(N, exact=True),
    )
