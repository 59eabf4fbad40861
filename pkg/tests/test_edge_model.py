"""Adapted coordinates, type criteria, and surface normal forms."""

import random
from fractions import Fraction

import pytest
from edgegeom import (Jet1, Jet2, JetError, Vec3, adapt, check_criteria,
                      classify, invert_map2, surface_normal_form)
from edgegeom.edge_model import apply_map_to_surface, compose_map2

from conftest import normal_form_surface, rand_mn_edge

N = 12


def cuspidal_edge(n=N):
    return normal_form_surface(2, {}, {}, {(0, 1): Fraction(1, 2)}, n)


def scrambled(f, rng, n=N):
    """Push f through a random rational source diffeomorphism jet."""
    a, b = Fraction(rng.randint(1, 3)), Fraction(rng.randint(-2, 2))
    c, d = Fraction(rng.randint(-2, 2)), Fraction(rng.randint(1, 3))
    if a * d - b * c == 0:
        d += 1
    P = Jet2({(1, 0): a, (0, 1): b,
              (2, 0): Fraction(rng.randint(-2, 2), 3),
              (1, 1): Fraction(rng.randint(-2, 2), 2)}, n, exact=True)
    Q = Jet2({(1, 0): c, (0, 1): d,
              (0, 2): Fraction(rng.randint(-2, 2), 3)}, n, exact=True)
    return apply_map_to_surface(f, (P, Q))


def test_classify_cuspidal_edge():
    cl = classify(cuspidal_edge())
    assert (cl.m, cl.n, cl.r) == (2, 3, 3)
    assert cl.criteria["m_type"] and cl.criteria["mn_type"]


def test_classify_25_edge():
    f = normal_form_surface(2, {}, {}, {(0, 3): Fraction(1, 2)}, N)
    cl = classify(f)
    assert (cl.m, cl.n, cl.r) == (2, 5, 5)


def test_classify_34_edge():
    f = normal_form_surface(3, {0: 1}, {0: 1}, {(0, 1): 1}, N)
    cl = classify(f)
    assert (cl.m, cl.n) == (3, 4)


def test_adapt_scrambled_round_trip():
    rng = random.Random(5)
    base = cuspidal_edge()
    f = scrambled(base, rng)
    ad = adapt(f, max_degree=10)
    assert ad.m == 2
    # source maps invert each other
    u = Jet2.var_u(ad.N)
    v = Jet2.var_v(ad.N)
    P, Q = compose_map2(ad.source_map, ad.source_map_inv)
    assert (P - u).is_zero() and (Q - v).is_zero()
    # adapted germ = f o source_map
    g = apply_map_to_surface(f, ad.source_map)
    for got, want in zip(g, ad.f):
        assert (got - want.truncate(got.N)).is_zero()


def test_adapted_shape():
    rng = random.Random(11)
    f = scrambled(normal_form_surface(3, {0: 1}, {}, {(0, 1): 1}, N), rng)
    ad = adapt(f, max_degree=10)
    assert ad.m == 3
    # first component is u; d^i f/dv^i = 0 along v = 0 for 2 <= i < m
    crit = check_criteria(ad.f, ad.m, 4)
    assert crit["c1"] and crit["c2"]


def test_check_criteria_rejects_bad_n():
    f = cuspidal_edge()
    with pytest.raises(JetError):
        check_criteria(f, 2, 4)   # multiple of m
    with pytest.raises(JetError):
        check_criteria(f, 2, 2)


def test_normal_form_reads_invariant_functions():
    # germ already in normal form: a, b0, bm must be read back verbatim
    a = {0: Fraction(1), 1: Fraction(-1, 2)}
    b0 = {0: Fraction(2), 1: Fraction(1, 3)}
    bm = {(0, 1): Fraction(1), (1, 0): Fraction(-1), (0, 3): Fraction(2)}
    f = normal_form_surface(2, a, b0, bm, N)
    nf = surface_normal_form(adapt(f))
    assert nf.m == 2 and nf.n == 3
    for i, c in a.items():
        assert nf.a.coefficient(i) == c
    for i, c in b0.items():
        assert nf.b0.coefficient(i) == c
    assert nf.bm.coefficient(0, 1) == Fraction(1)


def test_normal_form_of_scrambled_edge_matches_type():
    rng = random.Random(42)
    for m, n in [(2, 3), (2, 5), (3, 4)]:
        f0 = rand_mn_edge(rng, m, n, N)
        f = scrambled(f0, rng)
        cl = classify(f, max_degree=N)
        assert (cl.m, cl.n) == (m, n), (m, n, cl.m, cl.n)
        # the literal rank criteria are chart-independent only for
        # n <= 2m (the i = 2m determinant picks up frame terms beyond)
        if n <= 2 * m:
            assert cl.criteria["mn_type"]


def test_invert_map2_on_random_maps():
    rng = random.Random(3)
    for _ in range(5):
        P = Jet2({(1, 0): 1, (0, 1): Fraction(rng.randint(-2, 2)),
                  (2, 0): Fraction(rng.randint(-2, 2), 2),
                  (0, 2): Fraction(rng.randint(-2, 2), 3)}, 8, exact=True)
        Q = Jet2({(0, 1): 1, (1, 1): Fraction(rng.randint(-2, 2), 2)},
                 8, exact=True)
        R, S = invert_map2(P, Q)
        u, v = Jet2.var_u(8), Jet2.var_v(8)
        assert (P.substitute(R, S) - u).is_zero()
        assert (Q.substitute(R, S) - v).is_zero()
