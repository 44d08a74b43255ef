import random
from math import comb

import pytest

from wgauss.algebra import PrimeField
from wgauss.curves import CanonicalG4Curve, HyperellipticCurve, PlaneQuarticCurve
from wgauss.divisors import Divisor, gcd_div
from wgauss.gauss import (
    BnkVerdict,
    GrassPoint,
    expected_generic_fiber,
    fiber,
    gauss_eval,
    hyperelliptic_fiber_prediction,
    in_Bnk,
    in_multiple_locus,
    in_Rnk,
    intersection_divisor,
)
from wgauss.linsys import find_g13
from wgauss.spans import NotInSmoothLocusError, ell, in_smooth_Wn, span

F = PrimeField(10007)
HE = HyperellipticCurve(F, [0, -1, 0, 0, 0, 0, 0, 1])
KLEIN = PlaneQuarticCurve(F, {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1})
G4 = CanonicalG4Curve(F, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1},
                      {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1,
                       (0, 0, 0, 3): 1, (1, 1, 1, 0): 1})


def smooth_divisor(curve, n, rng):
    while True:
        items = {}
        while sum(items.values()) < n:
            P = curve.sample_point(rng)
            items[P] = items.get(P, 0) + 1
        D = Divisor(curve, list(items.items()))
        if D.degree == n and in_smooth_Wn(D):
            return D


def test_gauss_eval_n1_is_canonical_point():
    rng = random.Random(1)
    P = HE.sample_point(rng)
    W = gauss_eval(Divisor(HE, [(P, 1)]))
    assert W.span.dim == 0
    assert W.span.contains_vector(HE.canonical_coords(P).coords)


def test_gauss_eval_conjugation_invariance():
    rng = random.Random(2)
    for _ in range(10):
        D = smooth_divisor(HE, 2, rng)
        items = [(HE.involution(P), m) for P, m in D.items]
        Dp = Divisor(HE, items)
        assert gauss_eval(D) == gauss_eval(Dp)


def test_gauss_eval_rejects_singular_locus():
    rng = random.Random(3)
    P = HE.sample_point(rng)
    D = Divisor(HE, [(P, 1), (HE.involution(P), 1)])
    with pytest.raises(NotInSmoothLocusError):
        gauss_eval(D)


def test_quartic_gauss_is_the_line():
    rng = random.Random(4)
    P, Q = KLEIN.sample_point(rng), KLEIN.sample_point(rng)
    W = gauss_eval(Divisor(KLEIN, [(P, 1), (Q, 1)]))
    assert W.span.dim == 1
    assert W.span.contains_vector(P.coords)
    assert W.span.contains_vector(Q.coords)


def test_intersection_divisor_hyperelliptic_conjugate_fill():
    rng = random.Random(5)
    D = smooth_divisor(HE, 2, rng)
    W = gauss_eval(D)
    WC = intersection_divisor(W)
    expect = D
    for P, m in D.items:
        expect = expect + Divisor(HE, [(HE.involution(P), m)])
    assert WC == expect


def test_intersection_divisor_quartic_point():
    # n = 1 on the quartic: W is a point, cut by two independent lines
    rng = random.Random(55)
    P = KLEIN.sample_point(rng)
    W = gauss_eval(Divisor(KLEIN, [(P, 1)]))
    WC = intersection_divisor(W)
    assert WC.mult_of(P) >= 1
    assert WC.degree >= 1
    # generically the gcd of two transverse line sections is just the point
    assert WC.degree <= 2


def test_intersection_divisor_quartic_bezout():
    rng = random.Random(6)
    D = smooth_divisor(KLEIN, 2, rng)
    W = gauss_eval(D)
    WC = intersection_divisor(W)
    assert WC.degree == 4
    assert D <= WC


def test_intersection_divisor_g4_identity():
    rng = random.Random(7)
    for _ in range(5):
        D = smooth_divisor(G4, 2, rng)
        W = gauss_eval(D)
        assert intersection_divisor(W) == D


def test_fiber_cardinalities_all_models():
    rng = random.Random(8)
    # hyperelliptic: 2^n
    for n in (1, 2):
        D = smooth_divisor(HE, n, rng)
        rep = fiber(gauss_eval(D))
        if not (rep.flags["nonreduced"] or rep.flags["weierstrass"]):
            assert rep.cardinality == 2 ** n
        assert D in rep.fiber
    # plane quartic: 6
    D = smooth_divisor(KLEIN, 2, rng)
    rep = fiber(gauss_eval(D))
    if not rep.flags["nonreduced"]:
        assert rep.cardinality == 6
    # genus 4: singleton
    D = smooth_divisor(G4, 2, rng)
    rep = fiber(gauss_eval(D))
    assert rep.cardinality == 1 and rep.fiber == [D]


def test_fiber_members_all_verify():
    rng = random.Random(9)
    D = smooth_divisor(HE, 2, rng)
    W = gauss_eval(D)
    rep = fiber(W)
    for E in rep.fiber:
        assert ell(E) == 1
        assert span(E) == W.span
    assert rep.cardinality <= comb(rep.WC.degree, 2)


def test_expected_generic_fiber():
    assert expected_generic_fiber(HE, 2) == 4
    assert expected_generic_fiber(HE, 1) == 2
    assert expected_generic_fiber(KLEIN, 2) == comb(4, 2) == 6
    assert expected_generic_fiber(G4, 2) == 1
    assert expected_generic_fiber(G4, 3) == comb(6, 3) == 20
    g5 = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
    assert g5.genus == 5
    assert expected_generic_fiber(g5, 3) == 8
    with pytest.raises(ValueError):
        expected_generic_fiber(HE, 3)


def test_prediction_matches_fiber_exactly():
    rng = random.Random(10)
    for _ in range(15):
        D = smooth_divisor(HE, 2, rng)
        rep = fiber(gauss_eval(D))
        pred, strict = hyperelliptic_fiber_prediction(D)
        assert sorted(repr(e) for e in pred) == sorted(repr(e) for e in rep.fiber)
        assert set(map(repr, pred)) == set(map(repr, rep.fiber))
        if strict:
            assert rep.cardinality < 4
        else:
            assert rep.cardinality == 4


def test_prediction_degenerate_cases():
    rng = random.Random(11)
    # Weierstrass support
    W = type(HE.sample_point(rng)).affine(F, F.zero, F.zero)
    P = HE.sample_point(rng)
    D = Divisor(HE, [(W, 1), (P, 1)])
    pred, strict = hyperelliptic_fiber_prediction(D)
    assert strict and len(pred) <= 2
    rep = fiber(gauss_eval(D))
    assert rep.cardinality == len(pred) < 4
    assert rep.flags["weierstrass"]
    # non-reduced
    D2 = Divisor(HE, [(P, 2)])
    pred2, strict2 = hyperelliptic_fiber_prediction(D2)
    assert strict2
    rep2 = fiber(gauss_eval(D2))
    assert rep2.cardinality == len(pred2) <= 2
    assert rep2.flags["nonreduced"]


def test_fiber_through_infinity():
    # divisor containing the odd-model infinity point (a Weierstrass point)
    rng = random.Random(56)
    P = HE.sample_point(rng)
    while not P.y:
        P = HE.sample_point(rng)
    inf = HE.infinity_points()[0]
    D = Divisor(HE, [(inf, 1), (P, 1)])
    assert in_smooth_Wn(D)
    rep = fiber(gauss_eval(D))
    assert rep.WC.degree == 4
    assert rep.WC.mult_of(inf) == 2  # ramified fill-in at the branch point
    assert rep.flags["weierstrass"]
    pred, strict = hyperelliptic_fiber_prediction(D)
    assert strict and rep.cardinality == len(pred) == 2
    assert D in rep.fiber


def test_fiber_even_model():
    curve = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 1])  # genus 3, two infs
    inf1, inf2 = curve.infinity_points()
    rng = random.Random(57)
    P = curve.sample_point(rng)
    while not P.y:
        P = curve.sample_point(rng)
    # infinity pair behaves like any conjugate pair: not in the smooth locus
    assert not in_smooth_Wn(Divisor(curve, [(inf1, 1), (inf2, 1)]))
    D = Divisor(curve, [(inf1, 1), (P, 1)])
    assert in_smooth_Wn(D)
    rep = fiber(gauss_eval(D))
    assert rep.WC.degree == 4
    assert rep.WC.mult_of(inf2) == 1
    if not rep.flags["nonreduced"]:
        assert rep.cardinality == 4


def test_multiple_locus_hyperelliptic_everything():
    rng = random.Random(12)
    for _ in range(5):
        D = smooth_divisor(HE, 2, rng)
        assert in_multiple_locus(D)


def test_multiple_locus_g4():
    rng = random.Random(13)
    # generic divisors are not multiple
    for _ in range(5):
        D = smooth_divisor(G4, 2, rng)
        assert not in_multiple_locus(D)
    # two points of a trisecant member are
    L = find_g13(G4, seed=5)
    member = L.member((1, 3))
    pts = member.support()
    D = Divisor(G4, [(pts[0], 1), (pts[1], 1)])
    if in_smooth_Wn(D):
        assert in_multiple_locus(D)


def test_rnk_basics():
    rng = random.Random(14)
    D = smooth_divisor(HE, 2, rng)
    assert in_Rnk(D, 0)
    assert in_Rnk(D, 1)
    assert not in_Rnk(D, 2)   # k = n: empty by convention
    Dg = smooth_divisor(G4, 2, rng)
    assert in_Rnk(Dg, 0) and not in_Rnk(Dg, 1)


def test_rnk_hyperelliptic_via_pair_completion():
    # conjugate-free reduced D of degree n: (W.C) has degree 2n, so
    # membership holds for every k <= n - 1
    rng = random.Random(15)
    he4 = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 0, 1])  # genus 4
    for curve, n in ((HE, 2), (he4, 3)):
        while True:
            D = smooth_divisor(curve, n, rng)
            if D.is_reduced() and not any(curve.is_weierstrass(P) for P in D.support()):
                break
        WC = intersection_divisor(gauss_eval(D))
        assert WC.degree == 2 * n
        for k in range(n):
            assert in_Rnk(D, k)


def test_genus_two_minimum():
    # smallest supported genus: n = 1 only, fibers are involution orbits
    c2 = HyperellipticCurve(F, [1, 1, 0, 0, 0, 1])
    assert c2.genus == 2
    rng = random.Random(60)
    P = c2.sample_point(rng)
    while not P.y:
        P = c2.sample_point(rng)
    D = Divisor(c2, [(P, 1)])
    rep = fiber(gauss_eval(D))
    assert rep.cardinality == 2
    assert sorted(map(repr, rep.fiber)) == sorted(
        map(repr, [D, Divisor(c2, [(c2.involution(P), 1)])]))


def test_genus_five_fiber_n3():
    g5 = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
    assert g5.genus == 5
    rng = random.Random(61)
    D = smooth_divisor(g5, 3, rng)
    rep = fiber(gauss_eval(D))
    if not (rep.flags["nonreduced"] or rep.flags["weierstrass"]):
        assert rep.cardinality == 8 == expected_generic_fiber(g5, 3)
    assert rep.WC.degree == 6


def test_bnk_modes():
    rng = random.Random(16)
    D = smooth_divisor(G4, 2, rng)
    W = gauss_eval(D)
    assert in_Bnk(W, 2, 0, mode="geq").value
    assert not in_Bnk(W, 2, 1, mode="geq").value
    L = find_g13(G4, seed=6)
    member = L.member((1, 2))
    from wgauss.linsys import beta
    Wm = beta(member)
    v = in_Bnk(Wm, 2, 1, mode="exact")
    assert v.value and v.deg == 3 and v.mode == "exact"
