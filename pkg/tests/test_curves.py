import random

import pytest

from wgauss.algebra import QQ, ExtField, PrimeField
from wgauss.curves import (
    INF,
    CanonicalG4Curve,
    CurveError,
    HomForm,
    HyperellipticCurve,
    PlaneQuarticCurve,
    curve_from_json,
    curve_hash,
    curve_to_json,
    exhaustive_singular_search,
    validate,
)

F11 = PrimeField(11)
F = PrimeField(10007)

KLEIN = {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1}
SEGRE = {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}
G4_CUBIC = {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1,
            (0, 0, 0, 3): 1, (1, 1, 1, 0): 1}


def hyperelliptic_g3(field=F):
    return HyperellipticCurve(field, [0, -1, 0, 0, 0, 0, 0, 1])  # y^2 = x^7 - x


def test_validate_odd_degree_genus():
    c = validate({"model": "hyperelliptic", "field": {"type": "prime", "p": 11},
                  "f": [0, -1, 0, 0, 0, 0, 0, 1]})
    assert c.genus == 3 and c.odd_model


def test_validate_rejects_non_squarefree():
    with pytest.raises(CurveError):
        HyperellipticCurve(F11, [0, 0, 0, 0, 1])  # y^2 = x^4
    with pytest.raises(CurveError):
        HyperellipticCurve(F11, [0, 0, 0, 0, 0, -1, 1, 0, 1])  # double root


def test_validate_klein_quartic():
    c = PlaneQuarticCurve(F, KLEIN)
    assert c.genus == 3
    # elimination agrees with exhaustive search at small p
    small = PlaneQuarticCurve(F11, KLEIN)
    assert exhaustive_singular_search(small) == []


def test_validate_rejects_nodal_quartic():
    with pytest.raises(CurveError):
        PlaneQuarticCurve(F, {(3, 0, 1): 1, (4, 0, 0): 1, (0, 4, 0): 1})


def test_validate_g4_and_planted_singular():
    CanonicalG4Curve(F, SEGRE, G4_CUBIC)
    fermat = {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1}
    with pytest.raises(CurveError):
        CanonicalG4Curve(F, SEGRE, fermat)
    # exhaustive cross-check at p = 7: the planted singulars are rational there
    F7 = PrimeField(7)
    bad = CanonicalG4Curve(F7, HomForm(F7, 4, 2, SEGRE),
                           HomForm(F7, 4, 3, fermat), check=False)
    assert len(exhaustive_singular_search(bad)) > 0
    good = CanonicalG4Curve(F7, HomForm(F7, 4, 2, SEGRE),
                            HomForm(F7, 4, 3, G4_CUBIC), check=False)
    assert exhaustive_singular_search(good) == []


def test_validate_over_qq_by_reduction():
    c = PlaneQuarticCurve(QQ, {k: QQ.elem(v) for k, v in KLEIN.items()})
    assert c.genus == 3


def test_sample_point_on_curve_and_deterministic():
    c = hyperelliptic_g3()
    p1 = c.sample_point(random.Random(42))
    p2 = c.sample_point(random.Random(42))
    assert p1 == p2
    assert c.contains(p1)
    y2 = p1.y * p1.y
    assert y2 == c.f(p1.x)


def test_sample_point_coverage():
    c = HyperellipticCurve(PrimeField(101), [1, 1, 0, 0, 0, 1])  # genus 2
    rng = random.Random(1)
    xs = set()
    signs = set()
    for _ in range(2000):
        P = c.sample_point(rng)
        assert c.contains(P)
        xs.add(P.x.value)
        if P.y:
            signs.add(P.y.value < 51)
    K, all_pts = c.points_over(1)
    affine_xs = {P.x.value for P in all_pts if P.kind == "aff"}
    assert len(xs) > 0.6 * len(affine_xs)
    assert signs == {True, False}


def test_involution_basic_and_fixed_points():
    c = hyperelliptic_g3()
    rng = random.Random(3)
    for _ in range(100):
        P = c.sample_point(rng)
        Q = c.involution(P)
        assert c.involution(Q) == P
        if P.y:
            assert Q != P
    # direct Weierstrass point: x = 0 is a root of x^7 - x
    W = type(P).affine(F, F.zero, F.zero)
    assert c.involution(W) == W


def test_weierstrass_points_odd_model():
    c = hyperelliptic_g3()
    K, pts = c.weierstrass_points()
    assert len(pts) == 2 * c.genus + 2 == 8
    assert sum(1 for P in pts if P.kind == "inf") == 1
    for P in pts:
        assert c.involution(P) == P


def test_weierstrass_points_even_model():
    # y^2 = x^8 + x + 1 over F_10007 (check squarefree first), genus 3
    f = [1, 1, 0, 0, 0, 0, 0, 0, 1]
    c = HyperellipticCurve(F, f)
    assert not c.odd_model and c.genus == 3
    K, pts = c.weierstrass_points()
    assert len(pts) == 8
    assert all(P.kind == "aff" for P in pts)
    # infinity points are swapped by the involution (lc = 1 is a square)
    i1, i2 = c.infinity_points()
    assert i1.field == F
    assert c.involution(i1) == i2


def test_canonical_coords():
    c = hyperelliptic_g3()
    P = type(c.sample_point(random.Random(0))).affine(F, F.elem(2), F.elem(1))
    cc = c.canonical_coords(P)
    assert cc.coords == (F.one, F.elem(2), F.elem(4))
    rng = random.Random(5)
    for _ in range(20):
        P = c.sample_point(rng)
        assert c.canonical_coords(P) == c.canonical_coords(c.involution(P))
    q = PlaneQuarticCurve(F, KLEIN)
    P = q.sample_point(rng)
    assert q.canonical_coords(P) is P


def test_local_param_weierstrass_leading_term():
    c = hyperelliptic_g3()
    x0 = F.zero  # root of x^7 - x
    P = type(c.sample_point(random.Random(0))).affine(F, x0, F.zero)
    x, y = c.local_series(P, 4)
    fp = c.f.derivative()(x0)
    assert x.coefficient(0) == x0
    assert not x.coefficient(1)
    assert x.coefficient(2) == F.one / fp
    assert y.coefficient(1) == F.one


def test_local_param_t0_returns_point_and_residual():
    c = hyperelliptic_g3()
    rng = random.Random(6)
    for _ in range(10):
        P = c.sample_point(rng)
        x, y = c.local_series(P, 6)
        assert x.coefficient(0) == P.x and y.coefficient(0) == P.y
        acc = x * 0
        for i, co in enumerate(c.f.coeffs):
            acc = acc + x ** i * co
        assert (y * y - acc).is_zero()


def test_local_param_infinity_residual():
    c = hyperelliptic_g3()
    P = c.infinity_points()[0]
    x, y = c.local_series(P, 8)
    assert x.valuation() == -2 and y.valuation() == -(2 * c.genus + 1)
    acc = x * 0
    for i, co in enumerate(c.f.coeffs):
        acc = acc + x ** i * co
    assert (y * y - acc).is_zero()


def test_local_param_even_infinity():
    c = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 1])
    for P in c.infinity_points():
        x, y = c.local_series(P, 6)
        assert x.valuation() == -1
        acc = x * 0
        for i, co in enumerate(c.f.coeffs):
            acc = acc + x ** i * co
        assert (y * y - acc).is_zero()


def test_g4_local_series_residuals():
    g = CanonicalG4Curve(F, SEGRE, G4_CUBIC)
    rng = random.Random(8)
    for _ in range(5):
        P = g.sample_point(rng)
        s = g.local_series(P, 5)
        for form in (g.quadric, g.cubic):
            acc = s[0] * 0
            for exps, co in form.coeffs.items():
                term = s[0] * 0 + co
                for i, e in enumerate(exps):
                    for _ in range(e):
                        term = term * s[i]
                acc = acc + term
            assert acc.is_zero()
        assert [c.coefficient(0) for c in s] == list(P.coords)


def test_curve_json_roundtrip():
    curves = [
        hyperelliptic_g3(),
        HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, 1]),
        PlaneQuarticCurve(F, KLEIN),
        CanonicalG4Curve(F, SEGRE, G4_CUBIC),
        HyperellipticCurve(QQ, [QQ.elem("1/2"), 1, 0, 0, 0, 1]),
    ]
    for c in curves:
        blob = curve_to_json(c)
        c2 = curve_from_json(blob)
        assert c2 == c
        assert curve_hash(c2) == curve_hash(c)


def test_points_over_enumeration_hyperelliptic():
    c = HyperellipticCurve(F11, [0, -1, 0, 0, 0, 0, 0, 1])
    K, pts = c.points_over(1)
    assert len(set(pts)) == len(pts)
    for P in pts:
        assert c.contains(P)
    # involution closes on the point set
    s = set(pts)
    for P in pts:
        assert c.involution(P) in s


def test_points_over_enumeration_g4():
    F7 = PrimeField(7)
    g = CanonicalG4Curve(F7, SEGRE, G4_CUBIC)
    K, pts = g.points_over(1)
    for P in pts:
        assert g.contains(P)
    # Weil bound sanity: |#C - (q+1)| <= 2g sqrt(q)
    q = 7
    assert abs(len(pts) - (q + 1)) <= 8 * 2.6458
    K2, pts2 = g.points_over(2)
    sub = {P.coerce(K2).coords for P in pts}
    assert sub <= {P.coords for P in pts2}


def test_quartic_points_over():
    q = PlaneQuarticCurve(F11, KLEIN)
    K, pts = q.points_over(1)
    for P in pts:
        assert q.contains(P)
    assert abs(len(pts) - 12) <= 6 * 3.4


def test_even_model_nonsquare_leading_coefficient():
    # infinity points land in the quadratic extension when lc is a nonresidue
    nr = F.nonresidue().value
    c = HyperellipticCurve(F, [1, 1, 0, 0, 0, 0, 0, 0, nr])
    assert not c.odd_model and c.genus == 3
    i1, i2 = c.infinity_points()
    assert i1.field.degree == 2
    assert c.involution(i1) == i2 and c.contains(i1)
    x, y = c.local_series(i1, 5)
    acc = x * 0
    for i, co in enumerate(c.f.coeffs):
        acc = acc + x ** i * co
    assert (y * y - acc).is_zero()


def test_canonical_coords_on_rational_normal_curve():
    # the 2x2 minors of [[1, x, ..., x^(g-2)], [x, x^2, ..., x^(g-1)]] vanish
    c = hyperelliptic_g3()
    rng = random.Random(23)
    for _ in range(20):
        P = c.sample_point(rng)
        v = c.canonical_coords(P).coords
        g = c.genus
        for i in range(g - 1):
            for j in range(g - 1):
                assert v[i] * v[j + 1] == v[j] * v[i + 1]


def test_x_value_and_points_above():
    c = hyperelliptic_g3()
    rng = random.Random(9)
    P = c.sample_point(rng)
    t0 = c.x_value(P)
    pts = c.points_above_x(t0, F)
    assert P in pts and c.involution(P) in pts
    assert c.x_value(c.infinity_points()[0]) is INF
    inf_pts = c.points_above_x(INF, F)
    assert len(inf_pts) == 1
