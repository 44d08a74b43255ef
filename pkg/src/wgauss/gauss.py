"""The Gauss map on degree-n divisors, intersection divisors, and fibers.

gauss_eval sends a divisor D with ell(D) = 1 to its span, a point of the
Grassmannian G(n-1, g-1).  The intersection divisor (W . C) of a subspace W
is the gcd of the hyperplane sections over hyperplanes containing W; fibers
of the Gauss map are enumerated as subdivisors of (W . C) over the splitting
field, keeping those with the right span and ell = 1.
"""

from math import comb

from .algebra.fields import coerce
from .algebra.linalg import MatrixExact
from .algebra.poly import Poly, poly_gcd, roots_in_splitting_extension
from .curves import INF, CurveError, ProjectivePoint
from .divisors import Divisor, gcd_div, pullback_x
from .spans import (
    NotInSmoothLocusError,
    ell,
    hyperplane_section,
    span,
)


class UnsupportedConfiguration(RuntimeError):
    """Curve model / dimension combination outside the supported ranges."""


class GrassPoint:
    """A point of G(n-1, g-1): an (n-1)-plane via its dual hyperplane basis."""

    __slots__ = ("span", "n")

    def __init__(self, linear_span, n):
        if linear_span.dim != n - 1:
            raise ValueError(f"span has dimension {linear_span.dim}, expected {n - 1}")
        self.span = linear_span
        self.n = n

    @property
    def curve(self):
        return self.span.curve

    def plucker(self):
        return self.span.plucker()

    def __eq__(self, other):
        if isinstance(other, GrassPoint):
            return self.n == other.n and self.span == other.span
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.span.curve))

    def __repr__(self):
        return f"GrassPoint(n={self.n}, {self.span!r})"


def gauss_eval(D):
    """span(D) as a Grassmannian point; defined only on the smooth locus."""
    n = D.degree
    g = D.curve.genus
    if not 1 <= n <= g - 1:
        raise ValueError(f"degree {n} out of range 1..{g - 1}")
    sp = span(D)
    if D.degree - sp.dim != 1:  # ell(D) != 1
        raise NotInSmoothLocusError(
            f"ell(D) = {D.degree - sp.dim} >= 2: Gauss map undefined here")
    return GrassPoint(sp, n)


def _binary_restriction_divisor(curve, b0, b1, field, cap):
    """Divisor cut on the line through b0, b1 by the quadric and cubic, via
    the gcd of the two restricted binary forms.  Genus-4 model only."""
    q_coeffs = curve.quadric.restrict_line(b0, b1, field=field)
    e_coeffs = curve.cubic.restrict_line(b0, b1, field=field)
    pq = Poly(field, q_coeffs)
    pe = Poly(field, e_coeffs)
    if pq.is_zero() and pe.is_zero():
        raise CurveError("line lies on the curve; impossible for a smooth model")
    if pq.is_zero():
        g, inf_ord = pe.monic(), 3 - pe.degree
    elif pe.is_zero():
        g, inf_ord = pq.monic(), 2 - pq.degree
    else:
        g = poly_gcd(pq, pe)
        inf_ord = min(2 - pq.degree, 3 - pe.degree)
    items = []
    if g.degree >= 1:
        K, roots = roots_in_splitting_extension(g, cap=cap)
        for r, m in roots:
            coords = [coerce(a, K) + r * coerce(b, K) for a, b in zip(b0, b1)]
            P = ProjectivePoint(K, coords)
            assert curve.contains(P)
            items.append((P, m))
    if inf_ord:
        P = ProjectivePoint(field, list(b1))
        assert curve.contains(P)
        items.append((P, inf_ord))
    return Divisor(curve, items, field=field)


def intersection_divisor(W, cap=12):
    """(W . C): gcd of the hyperplane sections over hyperplanes through W."""
    sp = W.span if isinstance(W, GrassPoint) else W
    curve = sp.curve
    g = curve.genus
    fld = sp.field
    rows = sp.hyperplanes.rows
    if not rows:
        raise UnsupportedConfiguration("W = P^(g-1) has no intersection divisor")
    if curve.model == "hyperelliptic":
        polys = [Poly(fld, row) for row in rows]
        gpoly = polys[0]
        for q in polys[1:]:
            gpoly = poly_gcd(gpoly, q)
        inf_ord = min((g - 1) - q.degree for q in polys)
        p1 = []
        if gpoly.degree >= 1:
            K, roots = roots_in_splitting_extension(gpoly, cap=cap)
            p1.extend(roots)
        if inf_ord:
            p1.append((INF, inf_ord))
        return pullback_x(curve, p1, field=fld)
    if curve.model == "plane_quartic":
        if len(rows) == 1:
            return hyperplane_section(curve, rows[0], field=fld, cap=cap)
        if len(rows) == 2:
            d1 = hyperplane_section(curve, rows[0], field=fld, cap=cap)
            d2 = hyperplane_section(curve, rows[1], field=fld, cap=cap)
            return gcd_div(d1, d2)
        raise UnsupportedConfiguration("plane quartic supports dim(W) in {0, 1}")
    if curve.model == "canonical_g4":
        if len(rows) == 1:
            return hyperplane_section(curve, rows[0], field=fld, cap=cap)
        if len(rows) == 2:
            m = MatrixExact(fld, rows)
            b0, b1 = m.kernel_basis()
            return _binary_restriction_divisor(curve, b0, b1, fld, cap)
        raise UnsupportedConfiguration("genus-4 model supports dim(W) in {1, 2}")
    raise UnsupportedConfiguration(f"unsupported model {curve.model}")


class FiberReport:
    """Everything known about one Gauss-map fiber."""

    __slots__ = ("W", "WC", "fiber", "cardinality", "flags")

    def __init__(self, W, WC, fiber, flags):
        self.W = W
        self.WC = WC
        self.fiber = fiber
        self.cardinality = len(fiber)
        self.flags = flags

    def __repr__(self):
        return (f"FiberReport(card={self.cardinality}, deg_WC={self.WC.degree}, "
                f"flags={self.flags})")


def fiber(W, n=None, cap=12):
    """Enumerate the Gauss fiber over W among degree-n subdivisors of (W.C)."""
    n = n or W.n
    curve = W.curve
    WC = intersection_divisor(W, cap=cap)
    flags = {
        "nonreduced": not WC.is_reduced(),
        "weierstrass": (curve.model == "hyperelliptic"
                        and any(curve.is_weierstrass(P) for P in WC.support())),
    }
    members = []
    for E in WC.subdivisors(n):
        if ell(E) != 1:
            continue
        if span(E) == W.span:
            members.append(E)
    return FiberReport(W, WC, members, flags)


def expected_generic_fiber(curve, n):
    """Generic fiber cardinality of the Gauss map on degree-n divisors."""
    g = curve.genus
    if not 1 <= n <= g - 1:
        raise ValueError(f"n = {n} out of range 1..{g - 1}")
    if curve.model == "hyperelliptic":
        return 2 ** n
    if n == g - 1:
        return comb(2 * g - 2, g - 1)
    return 1


def hyperelliptic_fiber_prediction(D):
    """Predicted fiber through D: conjugate-flip combinations that stay in
    the smooth locus, plus the strict-drop flag (non-reduced or fixed-point
    support forces cardinality below 2^n)."""
    from .divisors import hyperelliptic_reduce, x_fibers
    curve = D.curve
    if curve.model != "hyperelliptic":
        raise CurveError("prediction applies to hyperelliptic models")
    groups = x_fibers(curve, D)
    fixed_support = any(kind == "branch" for _, kind, _ in groups)
    strict = (not D.is_reduced()) or fixed_support

    choices = []
    for _, kind, group in groups:
        if kind == "branch":
            (W, m), = group
            choices.append([((W, m),)])
        else:
            (P1, a), (P2, b) = group
            total = a + b
            opts = []
            for j in range(total + 1):
                opt = []
                if j:
                    opt.append((P1, j))
                if total - j:
                    opt.append((P2, total - j))
                opts.append(tuple(opt))
            choices.append(opts)

    members = []

    def rec(i, acc):
        if i == len(choices):
            cand = Divisor(curve, acc, field=D.field)
            if hyperelliptic_reduce(cand).k == 0:
                members.append(cand)
            return
        for opt in choices[i]:
            rec(i + 1, acc + list(opt))

    rec(0, [])
    members.sort(key=lambda E: tuple(P.sort_key() for P, _ in E.items))
    return members, strict


def in_multiple_locus(D, cap=12):
    """Is D in the multiple locus: some other divisor shares its span,
    equivalently deg((span D) . C) >= deg D + 1."""
    W = gauss_eval(D)
    return intersection_divisor(W, cap=cap).degree >= D.degree + 1


def in_Rnk(D, k, cap=12):
    """Membership in the (n+k)-intersection locus; empty by convention for
    k >= n."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return True
    n = D.degree
    if k >= n:
        return False
    W = gauss_eval(D)
    return intersection_divisor(W, cap=cap).degree >= n + k


class BnkVerdict:
    __slots__ = ("value", "mode", "deg")

    def __init__(self, value, mode, deg):
        self.value = value
        self.mode = mode
        self.deg = deg

    def __bool__(self):
        return self.value

    def __repr__(self):
        return f"BnkVerdict({self.value}, mode={self.mode}, deg_WC={self.deg})"


def in_Bnk(W, n, k, mode="geq", cap=12):
    """Gauss-image stratification test: deg(W . C) compared against n + k.

    mode "exact" demands equality (valid when no larger system exists),
    "geq" uses the inclusion-style inequality.  The verdict records the mode
    and the computed degree.
    """
    if mode not in ("exact", "geq"):
        raise ValueError("mode must be 'exact' or 'geq'")
    if k == 0 and mode == "geq":
        return BnkVerdict(True, mode, None)
    deg = intersection_divisor(W, cap=cap).degree
    value = (deg == n + k) if mode == "exact" else (deg >= n + k)
    return BnkVerdict(value, mode, deg)
