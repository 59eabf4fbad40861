"""Jet arithmetic: frozen examples and algebraic property tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from edgegeom import FLOAT, RATIONAL, Jet1, Jet2, JetError, Vec3, invert_map2

N = 8


def j1(*coeffs, exact=False):
    return Jet1(list(coeffs), N, RATIONAL, exact)


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def jets1(min_order=0):
    def build(coeffs):
        cs = [Fraction(0)] * min_order + coeffs
        return Jet1(cs[: N + 1], N, RATIONAL)
    return st.lists(small_fracs, min_size=1, max_size=N + 1).map(build)


# -- frozen examples ---------------------------------------------------------

def test_geometric_series_inverse():
    one_minus_t = j1(1, -1)
    inv = one_minus_t.invert_unit()
    assert inv.coeffs == [Fraction(1)] * (N + 1)


def test_reversion_of_t_plus_t2():
    f = j1(0, 1, 1)
    g = f.reversion()
    # catalan alternating: t - t^2 + 2t^3 - 5t^4 + 14t^5 - ...
    assert g.coeffs[1:6] == [Fraction(c) for c in (1, -1, 2, -5, 14)]


def test_sqrt_of_one_plus_t():
    s = j1(1, 1).sqrt_unit()
    assert s.coeffs[:4] == [Fraction(1), Fraction(1, 2), Fraction(-1, 8),
                            Fraction(1, 16)]
    assert (s * s).coeffs[:3] == [Fraction(1), Fraction(1), Fraction(0)]


def test_compose_polynomials():
    f = j1(0, 0, 1)          # t^2
    g = j1(0, 2, 1)          # 2t + t^2
    h = f.compose(g)         # (2t + t^2)^2 = 4t^2 + 4t^3 + t^4
    assert h.coeffs[2:5] == [Fraction(4), Fraction(4), Fraction(1)]


def test_divide_t_requires_vanishing():
    with pytest.raises(JetError):
        j1(1, 1).divide_t(1)
    assert j1(0, 0, 3).divide_t(2).coeffs[0] == 3


def test_truncate_drops_exact_when_terms_lost():
    f = Jet1([0, 1, 0, 5], 3, RATIONAL, exact=True)
    assert f.truncate(2).exact is False
    assert f.truncate(5).exact is True
    assert f.truncate(5).N == 5


def test_jet2_substitute_matches_evaluation():
    f = Jet2({(1, 0): 1, (0, 2): 2, (1, 1): -3}, 6, RATIONAL)
    phi = Jet2({(1, 0): 1, (0, 1): 1}, 6, RATIONAL)
    psi = Jet2({(0, 1): 1, (2, 0): -1}, 6, RATIONAL)
    g = f.substitute(phi, psi)
    for u, v in [(Fraction(1, 3), Fraction(-1, 2)),
                 (Fraction(1, 5), Fraction(1, 7))]:
        assert g(u, v) == f(phi(u, v), psi(u, v))


def test_invert_map2_roundtrip():
    P = Jet2({(1, 0): 1, (0, 2): 1, (1, 1): -2}, 6, RATIONAL)
    Q = Jet2({(0, 1): 1, (2, 0): 3}, 6, RATIONAL)
    R, S = invert_map2(P, Q)
    u = Jet2.var_u(6)
    v = Jet2.var_v(6)
    assert (P.substitute(R, S) - u).is_zero()
    assert (Q.substitute(R, S) - v).is_zero()


def test_nth_root_unit():
    f = j1(1, 3, 3, 1)       # (1 + t)^3
    r = f.nth_root_unit(3)
    assert r.coeffs[:3] == [Fraction(1), Fraction(1), Fraction(0)]


# -- property tests ----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(jets1(), jets1(), jets1())
def test_ring_laws(a, b, c):
    assert ((a + b) * c).coeffs == (a * c + b * c).coeffs
    assert (a * b).coeffs == (b * a).coeffs
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


@settings(max_examples=40, deadline=None)
@given(jets1(min_order=1))
def test_reversion_round_trip(f):
    if f.coeffs[1] == 0:
        f = f + Jet1.var(N)
    g = f.reversion()
    comp = f.compose(g)
    assert comp.coeffs[1] == 1
    assert all(c == 0 for i, c in enumerate(comp.coeffs) if i != 1)


@settings(max_examples=40, deadline=None)
@given(jets1(), st.integers(min_value=2, max_value=4))
def test_root_power_round_trip(f, m):
    # force the unit part to 1 so the root stays rational
    f = f - Jet1.const(f.coeffs[0], N) + Jet1.const(1, N)
    r = f.nth_root_unit(m)
    p = r
    for _ in range(m - 1):
        p = p * r
    assert p.coeffs == f.coeffs


@settings(max_examples=40, deadline=None)
@given(jets1(min_order=1), jets1(min_order=1))
def test_order_additivity(a, b):
    oa, ob = a.order_int(), b.order_int()
    prod = (a * b).order_int()
    if oa is None or ob is None:
        assert prod is None or prod > min(x for x in (oa, ob)
                                          if x is not None)
    elif oa + ob <= N:
        assert prod == oa + ob


@settings(max_examples=30, deadline=None)
@given(jets1(), jets1())
def test_float_mirrors_rational(a, b):
    prod = (a * b).to_float()
    fprod = a.to_float() * b.to_float()
    for x, y in zip(prod.coeffs, fprod.coeffs):
        assert abs(x - y) <= 1e-10 * max(1.0, abs(x))


def test_vec3_cross_and_det():
    a = Vec3(*(Jet2.const(c, 3) for c in (1, 0, 0)))
    b = Vec3(*(Jet2.const(c, 3) for c in (0, 1, 0)))
    c = Vec3(*(Jet2.const(c, 3) for c in (0, 0, 1)))
    assert a.cross(b)[2].constant == 1
    assert Vec3.det3(a, b, c).constant == 1
