"""Linear spans of divisors and geometric Riemann-Roch.

The span of an effective divisor D on a canonically embedded curve is the
intersection of all hyperplanes H of P^(g-1) with D <= phi^* H, counted with
multiplicity.  A LinearSpan is stored dually: its ``hyperplanes`` matrix is
the canonical (RREF) basis of the space of hyperplane coefficient vectors h
cutting spans through D, of size s x g, so the projective dimension of the
span is g - 1 - s and ell(D) = deg D - dim(span D).

For hyperelliptic models, hyperplanes correspond to binary forms h(t) of
degree g-1 on the base P^1; the multiplicity rules are: a conjugate pair
{P, iota(P)} with multiplicities (a, b) imposes vanishing to order max(a, b)
at the common x-value, an involution-fixed point of multiplicity m imposes
order ceil(m/2).  For the plane models the conditions are Taylor
coefficients of hyperplane forms along local parametrizations.
"""

from math import comb

from .algebra.fields import coerce, common_field
from .algebra.linalg import MatrixExact, plucker
from .algebra.poly import Poly, roots_in_splitting_extension
from .curves import (
    INF,
    ProjectivePoint,
    _ternary_common_zeros_ext,
)
from .divisors import Divisor, pullback_x, x_fibers


class NotSpecialError(ValueError):
    """Residual construction attempted on a nonspecial divisor."""


class NotInSmoothLocusError(ValueError):
    """Gauss-map style operation on a divisor with ell >= 2."""


class LinearSpan:
    """Span of a divisor, stored as the dual space of hyperplanes through it."""

    __slots__ = ("curve", "field", "hyperplanes", "_plucker")

    def __init__(self, curve, field, hyperplane_rows):
        self.curve = curve
        self.field = field
        m = MatrixExact(field, hyperplane_rows)
        self.hyperplanes = m.row_space_matrix() if m.nrows else m
        self._plucker = None

    @property
    def ambient(self):
        return self.curve.genus

    @property
    def s(self):
        return self.hyperplanes.nrows

    @property
    def dim(self):
        return self.ambient - 1 - self.s

    def subspace_basis(self):
        """Basis of the linear subspace of F^g underlying the span."""
        if self.s == 0:
            return MatrixExact.identity(self.field, self.ambient).rows
        return self.hyperplanes.kernel_basis()

    def plucker(self):
        """Normalized Plucker vector of the span (requires dim >= 0)."""
        if self._plucker is None:
            basis = self.subspace_basis()
            if not basis:
                raise ValueError("empty span has no Plucker coordinates")
            self._plucker = plucker(MatrixExact(self.field, basis))
        return self._plucker

    def map_field(self, target):
        sp = LinearSpan.__new__(LinearSpan)
        sp.curve = self.curve
        sp.field = target
        sp.hyperplanes = self.hyperplanes.map_field(target)
        sp._plucker = None
        return sp

    def __eq__(self, other):
        if not isinstance(other, LinearSpan):
            return NotImplemented
        if self.curve != other.curve:
            return False
        fld = common_field(self.field, other.field)
        return (self.hyperplanes.map_field(fld).rows
                == other.hyperplanes.map_field(fld).rows)

    def __hash__(self):
        return hash((self.curve, self.s))

    def contains_vector(self, v):
        fld = self.field
        for row in self.hyperplanes.rows:
            acc = fld.zero
            for a, b in zip(row, v):
                acc = acc + a * coerce(b, fld)
            if acc:
                return False
        return True

    def contains_span(self, other):
        """Geometric containment: other's span lies inside this one."""
        fld = common_field(self.field, other.field)
        big = other.hyperplanes.map_field(fld)
        mine = self.hyperplanes.map_field(fld)
        if mine.nrows == 0:
            return True
        stacked = big.stack(mine)
        return stacked.rank() == big.rank()

    def __repr__(self):
        return f"LinearSpan(dim={self.dim} in P^{self.ambient - 1})"

    def to_json(self):
        fld = self.field
        out = {
            "ambient": self.ambient,
            "field": fld.describe(),
            "hyperplanes": [[fld.to_json(c) for c in row]
                            for row in self.hyperplanes.rows],
        }
        if self.dim >= 0:
            out["plucker"] = [fld.to_json(c) for c in self.plucker()]
        return out


def _pair_order(kind, group):
    if kind == "branch":
        (_, m), = group
        return (m + 1) // 2
    (_, a), (_, b) = group
    return max(a, b)


def hyperplane_conditions(D):
    """Matrix whose kernel is the space of hyperplanes h with D <= phi^* H."""
    curve = D.curve
    g = curve.genus
    fld = D.field
    rows = []
    if curve.model == "hyperelliptic":
        for t0, kind, group in x_fibers(curve, D):
            k = _pair_order(kind, group)
            if t0 is INF:
                for l in range(k):
                    row = [fld.zero] * g
                    row[g - 1 - l] = fld.one
                    rows.append(row)
            else:
                for l in range(k):
                    row = []
                    for j in range(g):
                        if j < l:
                            row.append(fld.zero)
                        else:
                            row.append(t0 ** (j - l) * comb(j, l))
                    rows.append(row)
    else:
        for P, m in D.items:
            if m == 1:
                rows.append([coerce(c, fld) for c in P.coords])
            else:
                series = curve.canonical_series(P, m)
                for l in range(m):
                    rows.append([coerce(s.coefficient(l), fld) for s in series])
    return MatrixExact(fld, rows) if rows else MatrixExact(fld, [])


def span(D):
    """The linear span of phi(D), multiplicity-aware."""
    curve = D.curve
    g = curve.genus
    fld = D.field
    M = hyperplane_conditions(D)
    if M.nrows == 0:
        basis = MatrixExact.identity(fld, g).rows
    else:
        basis = M.kernel_basis()
    return LinearSpan(curve, fld, basis)


def ell(D):
    """Dimension of the space of functions with poles bounded by D."""
    return D.degree - span(D).dim


def dim_complete(D):
    """Projective dimension of the complete linear system |D|."""
    return ell(D) - 1


def is_special(D):
    return span(D).s >= 1


def in_smooth_Wn(D):
    """Is D in the preimage of the smooth locus, i.e. ell(D) = 1?"""
    g = D.curve.genus
    if not 1 <= D.degree <= g - 1:
        raise ValueError(f"degree {D.degree} out of range 1..{g - 1}")
    return ell(D) == 1


def sing_shift(curve, D, p):
    """D + p + iota(p): lands in the singular-locus preimage (ell >= 2)."""
    extra = Divisor(curve, [(p, 1), (curve.involution(p), 1)])
    return D + extra


def hyperplane_section(curve, h, field=None, cap=12):
    """The divisor phi^*(H) of a hyperplane h (coefficient vector), degree 2g-2."""
    g = curve.genus
    fld = field
    if fld is None:
        fld = curve.field
        for c in h:
            if hasattr(c, "field"):
                fld = common_field(fld, c.field)
    h = [coerce(c, fld) for c in h]
    if not any(h):
        raise ValueError("zero hyperplane")
    if curve.model == "hyperelliptic":
        hp = Poly(fld, h)
        inf_ord = (g - 1) - hp.degree
        K, roots = roots_in_splitting_extension(hp, cap=cap) if hp.degree >= 1 \
            else (fld, [])
        p1 = [(r, m) for r, m in roots]
        if inf_ord:
            p1.append((INF, inf_ord))
        D = pullback_x(curve, p1, field=fld)
        assert D.degree == 2 * g - 2
        return D
    if curve.model == "plane_quartic":
        m = MatrixExact(fld, [h])
        b0, b1 = m.kernel_basis()
        form = curve.form.map_field(fld)
        quart = Poly(fld, form.restrict_line(b0, b1, field=fld))
        d = 4
        items = []
        if quart.degree >= 1:
            K, roots = roots_in_splitting_extension(quart, cap=cap)
            for r, mult in roots:
                coords = [coerce(a, K) + r * coerce(b, K) for a, b in zip(b0, b1)]
                items.append((ProjectivePoint(K, coords), mult))
        if quart.degree < d:
            items.append((ProjectivePoint(fld, list(b1)), d - max(quart.degree, 0)))
        D = Divisor(curve, items, field=fld)
        assert D.degree == 4
        return D
    # canonical genus-4 model: plane section of degree 6
    m = MatrixExact(fld, [h])
    b0, b1, b2 = m.kernel_basis()
    conic = curve.quadric.map_field(fld).restrict_plane(b0, b1, b2, field=fld)
    cubic = curve.cubic.map_field(fld).restrict_plane(b0, b1, b2, field=fld)
    triples = _ternary_common_zeros_ext(fld, conic, cubic, cap=2 * cap)
    pts = []
    for (a0, a1, a2) in triples:
        K = a0.field
        coords = [a0 * coerce(u, K) + a1 * coerce(v, K) + a2 * coerce(w, K)
                  for u, v, w in zip(b0, b1, b2)]
        P = ProjectivePoint(K, coords)
        assert curve.contains(P)
        pts.append(P)
    if len(pts) == 2 * g - 2:
        items = [(P, 1) for P in pts]  # six distinct points: all simple
    else:
        items = [(P, _section_multiplicity(curve, P, h)) for P in pts]
    D = Divisor(curve, items, field=None)
    assert D.degree == 2 * g - 2, f"plane section degree {D.degree} != {2 * g - 2}"
    return D


def _section_multiplicity(curve, P, h, max_order=8):
    """ord_t of the hyperplane form along the local parametrization at P."""
    series = curve.canonical_series(P, max_order)
    fld = series[0].field
    acc = series[0] * 0
    for c, s in zip(h, series):
        acc = acc + s * coerce(c, fld)
    v = acc.valuation()
    if v is None:
        raise ArithmeticError("hyperplane vanishes to full precision at a point")
    return v


def residual(D, cap=12):
    """A residual divisor F with D + F a hyperplane section (degree 2g-2).

    Uses the first hyperplane through span(D) in RREF order; requires D to
    be special.
    """
    sp = span(D)
    if sp.s < 1:
        raise NotSpecialError("residual construction requires a special divisor")
    h = sp.hyperplanes.rows[0]
    sec = hyperplane_section(D.curve, h, field=sp.field, cap=cap)
    return sec - D
