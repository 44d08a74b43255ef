"""Complete linear systems, the span map on their members, and duals.

A complete system |D| of a special divisor D is stored as a residual
divisor F (with D + F a hyperplane section) together with the canonical
basis h_0, ..., h_r of hyperplanes through span(F); the member with
parameter c in P^r is phi^*(sum c_i h_i) - F.  The member-to-span map
beta(F) = span(F) restricts to complete systems; reconstruct_system walks
it backwards from Grassmannian samples using intersection divisors.

Non-reduced members correspond to parameter hyperplanes tangent (through
the associated morphism phi_L) to the image curve; dual_samples harvests
them together with contact-order certificates.  For pencils on the genus-4
model and for pencils on hyperelliptic curves the full branch binary form
is available, giving the total dual count with multiplicity.
"""

import random
from itertools import product

from .algebra.fields import coerce, common_field
from .algebra.linalg import MatrixExact
from .algebra.poly import Poly, roots_in_splitting_extension
from .curves import INF, CurveError
from .divisors import Divisor, gcd_div, hyperelliptic_reduce, pullback_x, x_fibers
from .gauss import GrassPoint, UnsupportedConfiguration, intersection_divisor
from .spans import (
    NotSpecialError,
    ell,
    hyperplane_conditions,
    hyperplane_section,
    span,
)


class MemberError(ValueError):
    """A divisor claimed to belong to a system does not."""


class InequivalentSamplesError(ValueError):
    """Reconstruction inputs come from distinct linear systems."""


class CompleteSystem:
    """|D| presented by a residual divisor and a hyperplane basis."""

    __slots__ = ("curve", "field", "degree", "r", "F", "basis", "cap",
                 "_base_locus", "_unit_members")

    def __init__(self, curve, field, degree, F, basis, cap=12):
        self.curve = curve
        self.field = field
        self.degree = degree
        self.F = F
        self.basis = tuple(tuple(row) for row in basis)
        self.r = len(self.basis) - 1
        self.cap = cap
        self._base_locus = None
        self._unit_members = None

    def hyperplane_of(self, c):
        fld = self.field
        for ci in c:
            if hasattr(ci, "field"):
                fld = common_field(fld, ci.field)
        cs = [coerce(ci, fld) for ci in c]
        if not any(cs):
            raise ValueError("zero parameter")
        h = [fld.zero] * len(self.basis[0])
        for ci, row in zip(cs, self.basis):
            if ci:
                for j, v in enumerate(row):
                    h[j] = h[j] + ci * coerce(v, fld)
        return h, fld

    def member(self, c):
        """The member divisor with parameter c in P^r."""
        h, fld = self.hyperplane_of(c)
        sec = hyperplane_section(self.curve, h, field=fld, cap=self.cap)
        return sec - self.F

    def unit_members(self):
        if self._unit_members is None:
            out = []
            for i in range(self.r + 1):
                c = [0] * (self.r + 1)
                c[i] = 1
                out.append(self.member(c))
            self._unit_members = out
        return self._unit_members

    def base_locus(self):
        """gcd of the members (a basis suffices)."""
        if self._base_locus is None:
            members = self.unit_members()
            B = members[0]
            for E in members[1:]:
                B = gcd_div(B, E)
            self._base_locus = B
        return self._base_locus

    def member_parameter(self, E):
        """Parameter of a member, normalized; raises MemberError otherwise."""
        if E.degree != self.degree:
            raise MemberError("degree mismatch")
        total = E + self.F
        M = hyperplane_conditions(total)
        fld = M.field if M.nrows else self.field
        fld = common_field(fld, self.field)
        rows = []
        bt = [[coerce(v, fld) for v in row] for row in self.basis]
        for row in (M.map_field(fld).rows if M.nrows else []):
            rows.append([sum((a * b for a, b in zip(row, brow)), fld.zero)
                         for brow in bt])
        sol = MatrixExact(fld, rows).kernel_basis() if rows else \
            MatrixExact.identity(fld, self.r + 1).rows
        if len(sol) != 1:
            raise MemberError("parameter is not unique; not a member")
        c = sol[0]
        if self.member(c) != E:
            raise MemberError("hyperplane section does not reproduce the divisor")
        lead = next(v for v in c if v)
        return tuple(v / lead for v in c)

    def rational_parameters(self):
        """All of P^r over the base field (finite fields, small r)."""
        fld = self.curve.field
        elems = list(fld.elements())
        for lead in range(self.r + 1):
            prefix = [fld.zero] * lead + [fld.one]
            for tail in product(elems, repeat=self.r - lead):
                yield tuple(prefix) + tail

    def members_rational(self, limit=10 ** 6):
        count = self.curve.field.order ** self.r
        if count > limit:
            raise UnsupportedConfiguration(
                f"rational sweep of size ~{count} exceeds limit {limit}")
        for c in self.rational_parameters():
            yield c, self.member(c)

    def __repr__(self):
        return (f"CompleteSystem(degree={self.degree}, r={self.r}, "
                f"deg F={self.F.degree})")

    def to_json(self):
        fld = self.field
        return {
            "degree": self.degree,
            "dim": self.r,
            "residual": self.F.to_json(),
            "basis": [[fld.to_json(c) for c in row] for row in self.basis],
            "base_locus": self.base_locus().to_json(),
        }


def complete_system(D, cap=12):
    """The complete linear system |D| of a special effective divisor."""
    from .spans import residual
    sp = span(D)
    if sp.s < 1:
        raise NotSpecialError("complete_system requires a special divisor")
    F = residual(D, cap=cap)
    spF = span(F)
    basis = spF.hyperplanes.rows
    L = CompleteSystem(D.curve, spF.field, D.degree, F, basis, cap=cap)
    r_expected = ell(D) - 1
    assert L.r == r_expected, f"system dimension {L.r} != ell - 1 = {r_expected}"
    return L


def linear_equiv(D, E, cap=12):
    """Linear equivalence test for effective divisors of equal degree.

    Hyperelliptic models compare canonical forms; otherwise D must be
    special and the test asks whether E plus a residual of D is a
    hyperplane section.
    """
    if D.curve != E.curve:
        raise CurveError("mixed curves")
    if D.degree != E.degree:
        return False
    if D == E:
        return True
    curve = D.curve
    if curve.model == "hyperelliptic":
        a, b = hyperelliptic_reduce(D), hyperelliptic_reduce(E)
        return a.k == b.k and a.B == b.B
    from .spans import residual
    sp = span(D)
    if sp.s < 1:
        raise NotSpecialError("linear equivalence implemented for special divisors")
    F = residual(D, cap=cap)
    total = E + F
    M = hyperplane_conditions(total)
    return M.rank() < curve.genus


def beta(F, cap=12):
    """The span of a member of a complete special system, as a GrassPoint."""
    sp = span(F)
    l = F.degree - sp.dim
    if l < 2:
        raise ValueError("beta expects a member of a positive-dimensional system")
    n = F.degree - l + 1
    return GrassPoint(sp, n)


def classify_member(L, E):
    """Flags for a member: reduced (away from the base locus) and, on
    hyperelliptic models, membership in the conjugate-choice set."""
    L.member_parameter(E)  # raises MemberError when E is not in L
    B = L.base_locus()
    core = E - B
    flags = {"reduced": core.is_reduced(), "nc": None}
    if L.curve.model == "hyperelliptic":
        flags["nc"] = _nc_status(L, E, B)
    return flags


def _nc_status(L, E, B):
    """Existence of pairwise-non-conjugate representatives, checked over all
    per-fiber choices."""
    curve = L.curve
    G = E - B
    b_support = set()
    for P, _ in B.items:
        b_support.add(P.coerce(G.field) if P.field != G.field else P)
    classes = []
    for t0, kind, group in x_fibers(curve, G):
        if kind == "branch":
            (W, m), = group
            assert m % 2 == 0, "pullback part must pair up at branch points"
            classes.append([(W,)] if m == 2 else ([] if m > 2 else [()]))
            if m > 2:
                return False  # two representatives both equal to the fixed point
        else:
            (P1, a), (P2, b) = group
            assert a == b, "pullback part must be conjugation-symmetric"
            classes.append([(P1,), (P2,)])
    for choice in product(*classes):
        chosen = [q for tup in choice for q in tup]
        ok = True
        pool = chosen + list(b_support)
        for i, u in enumerate(pool):
            for v in pool[i + 1:]:
                if curve.involution(u.coerce(G.field)) == v.coerce(G.field):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def phi_L(L, P, order_hint=None):
    """Evaluate the morphism attached to L at a curve point: the projective
    tuple (h_0 : ... : h_r) along phi, with the common residual part
    cancelled by series stripping."""
    vals, v = _phi_series(L, P, order_hint)
    out = tuple(s.coefficient(v) for s in vals)
    fld = vals[0].field
    lead = next((c for c in out if c), None)
    assert lead is not None
    inv = fld.one / lead
    return tuple(c * inv for c in out)


def _phi_series(L, P, order_hint=None):
    """Series of the r+1 coordinate forms of phi_L along a local
    parametrization at P, plus their minimal valuation."""
    curve = L.curve
    order = order_hint or (L.F.degree + L.base_locus().degree + 4)
    while True:
        series = curve.canonical_series(P, order)
        fld = series[0].field
        vals = []
        for row in L.basis:
            acc = series[0] * 0
            for c, s in zip(row, series):
                acc = acc + s * coerce(c, fld)
            vals.append(acc)
        vs = [s.valuation() for s in vals]
        known = [v for v in vs if v is not None]
        if known and (min(known) < order - 1 or all(v is not None for v in vs)):
            v = min(known)
            if all(v2 is None or v2 >= v for v2 in vs):
                return vals, v
        order *= 2
        if order > 512:
            raise ArithmeticError("phi_L series did not stabilize")


def contact_order(L, c, P):
    """Contact order of the parameter hyperplane c with phi_L(C) at phi_L(P)."""
    vals, v = _phi_series(L, P, order_hint=L.F.degree + L.base_locus().degree + 8)
    fld = vals[0].field
    acc = vals[0] * 0
    for ci, s in zip(c, vals):
        acc = acc + s * coerce(ci, fld)
    w = acc.valuation()
    if w is None:
        return acc.prec - v
    return w - v


class DualSample:
    """A tangent parameter hyperplane with its contact certificate."""

    __slots__ = ("parameter", "point", "order", "member")

    def __init__(self, parameter, point, order, member):
        self.parameter = parameter
        self.point = point
        self.order = order
        self.member = member

    def __repr__(self):
        return f"DualSample(order={self.order}, at={self.point!r})"

    def to_json(self):
        def enc(c):
            return c.field.to_json(c) if hasattr(c, "field") else c
        return {
            "parameter": [enc(c) for c in self.parameter],
            "contact_order": self.order,
            "member": self.member.to_json(),
        }


def dual_samples(L, trials=50, sweep_limit=10 ** 6, rng=None, cap=12):
    """Non-reduced members of L as dual-hypersurface points.

    Each sample carries the unique parameter hyperplane, a repeated point of
    the member, and the verified contact order (>= 2) of the hyperplane with
    the image curve at that point.  Pencils use the discriminant of the
    member family when available; small parameter spaces are swept
    exhaustively; otherwise parameters are drawn at random (and the list may
    come back short).
    """
    B = L.base_locus()
    fld = L.curve.field
    out = []
    if L.r == 1:
        try:
            bf = dual_branch_form(L)
        except UnsupportedConfiguration:
            bf = None
        if bf is not None:
            for (s, t), _m in bf.roots(cap=cap):
                c = _branch_parameter(L, (s, t))
                if c is None:
                    continue
                try:
                    sample = _certify_nonreduced(L, c, B)
                except Exception:
                    continue
                if sample is not None:
                    out.append(sample)
            return out
    if fld.is_finite and fld.order ** L.r <= sweep_limit:
        params = L.rational_parameters()
        exhaustive = True
    else:
        rng = rng or random.Random(0)
        params = (tuple(fld.rand(rng) for _ in range(L.r + 1))
                  for _ in range(trials * 4))
        exhaustive = False
    for c in params:
        if not any(1 for v in c if v):
            continue
        sample = _certify_nonreduced(L, c, B)
        if sample is not None:
            out.append(sample)
            if len(out) >= trials and not exhaustive:
                break
    return out


def _branch_parameter(L, st):
    """Translate a branch-form root into a system parameter."""
    curve = L.curve
    s, t = st
    if curve.model == "hyperelliptic":
        # branch roots are x-values: the member is the pulled-back fiber
        # (plus base locus); find its parameter
        if not s:
            p1 = [(INF, 1)]
        else:
            p1 = [(t / s, 1)]
        E = pullback_x(curve, p1, field=t.field if hasattr(t, "field") else None)
        E = E + L.base_locus()
        try:
            return L.member_parameter(E)
        except MemberError:
            return None
    return (s, t)


def _certify_nonreduced(L, c, B):
    E = L.member(c)
    core = E - B
    if core.is_reduced():
        return None
    Prep = next(P for P, m in core.items if m >= 2)
    o = contact_order(L, c, Prep)
    assert o >= 2, "contact certificate failed"
    return DualSample(tuple(c), Prep, o, E)


class BranchForm:
    """Binary form on a pencil's parameter line whose roots (with
    multiplicity) are the non-reduced members."""

    __slots__ = ("field", "poly", "formal_degree")

    def __init__(self, field, poly, formal_degree):
        self.field = field
        self.poly = poly
        self.formal_degree = formal_degree

    def total_multiplicity(self):
        return self.formal_degree

    def roots(self, cap=12):
        """[(parameter (s, t), multiplicity)] over splitting extensions."""
        out = []
        inf_ord = self.formal_degree - self.poly.degree
        if self.poly.degree >= 1:
            K, roots = roots_in_splitting_extension(self.poly, cap=cap)
            for r, m in roots:
                out.append(((K.one, r), m))
        if inf_ord:
            out.append(((self.field.zero, self.field.one), inf_ord))
        return out


def dual_branch_form(L, verify_points=5):
    """The full branch form of a pencil (r = 1).

    Supported cases: hyperelliptic pencils pulled back from P^1 (members are
    g^1_2 translates: the branch form is the ramification form of the double
    cover, degree 2g+2) and base-point-free pencils of collinear members on
    the genus-4 model (moving-line family; degree 12 by Riemann-Hurwitz).
    """
    if L.r != 1:
        raise UnsupportedConfiguration("branch forms are defined for pencils")
    curve = L.curve
    fld = curve.field
    if curve.model == "hyperelliptic":
        g = curve.genus
        f = curve.f
        d = 2 * g + 2
        return BranchForm(fld, f.monic(), d)
    if curve.model == "canonical_g4":
        return _g13_branch_form(L, verify_points)
    raise UnsupportedConfiguration(f"no branch form for model {curve.model}")


def _member_line(L, c):
    sp = span(L.member(c))
    if sp.dim != 1:
        raise UnsupportedConfiguration("members are not collinear")
    return sp


def _line_intersection_point(l1, l2):
    fld = common_field(l1.field, l2.field)
    stacked = l1.hyperplanes.map_field(fld).stack(l2.hyperplanes.map_field(fld))
    ker = stacked.kernel_basis()
    if len(ker) != 1:
        raise UnsupportedConfiguration("member lines do not meet the residual line")
    return ker[0], fld


def _g13_branch_form(L, verify_points):
    """Moving-line family for a base-point-free pencil of trisecants."""
    curve = L.curve
    fld = L.field
    if L.base_locus().degree != 0:
        raise UnsupportedConfiguration("branch form needs a base-point-free pencil")
    anchors = [(fld.one, fld.zero), (fld.zero, fld.one), (fld.one, fld.one)]
    lines = [_member_line(L, c) for c in anchors]
    # two transversal lines: the residual line and another member of its pencil
    Bprime = span(L.F)
    if Bprime.dim != 1:
        raise UnsupportedConfiguration("residual is not a line")
    complementary = complete_system(L.F, cap=L.cap)
    Bsecond = None
    for c in anchors + [(fld.one, fld.elem(2))]:
        sp = span(complementary.member(c))
        if sp.dim == 1 and sp != Bprime:
            Bsecond = sp
            break
    if Bsecond is None:
        raise UnsupportedConfiguration("could not find two transversal lines")

    def moving_point(transversal):
        pts = [_line_intersection_point(l, transversal)[0] for l in lines]
        fld2 = transversal.field
        x0, x1, xm = [[coerce(v, fld2) for v in p] for p in pts]
        sol = MatrixExact(fld2, [[x0[i], x1[i]] for i in range(4)]).solve(xm)
        if sol is None or not sol[0] or not sol[1]:
            raise UnsupportedConfiguration("anchor normalization failed")
        lam, mu = sol
        return [v * lam for v in x0], [v * mu for v in x1]

    u0, u1 = moving_point(Bprime)
    w0, w1 = moving_point(Bsecond)
    # family line at (s : t): join of u0 s + u1 t and w0 s + w1 t
    # substitute x_i -> u*b'(s,t)_i + v*b''(s,t)_i into the cubic (and the
    # quadric as a sanity check): 4-variable exponents (u, v, s, t)
    from .curves import mp_substitute

    def family(form):
        images = []
        for i in range(4):
            im = {}
            for key, val in ((( 1, 0, 1, 0), u0[i]), ((1, 0, 0, 1), u1[i]),
                             ((0, 1, 1, 0), w0[i]), ((0, 1, 0, 1), w1[i])):
                if val:
                    im[key] = val
            images.append(im)
        return mp_substitute(form.map_field(fld).coeffs, images, fld, 4)

    qfam = family(curve.quadric)
    if qfam:
        raise UnsupportedConfiguration("family lines do not lie on the quadric")
    efam = family(curve.cubic)

    def uv_coeff(j):
        # binary cubic in (s, t) multiplying u^(3-j) v^j
        cs = [fld.zero] * 4
        for (eu, ev, es, et), v in efam.items():
            if ev == j:
                cs[et] = cs[et] + v
        return cs

    a, b, c, d = (uv_coeff(j) for j in range(4))
    # verify the family reproduces members at a few parameters
    check = anchors + [(fld.one, fld.elem(2 + i)) for i in range(max(0, verify_points - 3))]
    for (s, t) in check:
        bp = [x * s + y * t for x, y in zip(u0, u1)]
        bq = [x * s + y * t for x, y in zip(w0, w1)]
        from .gauss import _binary_restriction_divisor
        got = _binary_restriction_divisor(curve, bp, bq, fld, L.cap)
        if got != L.member((s, t)):
            raise UnsupportedConfiguration("family does not match the members")
    # branch form = Res_(u,v)(dG/du, dG/dv) for the family cubic G
    three = fld.elem(3)
    two = fld.elem(2)
    pa, pb, pc, pd = (Poly(fld, cs) for cs in (a, b, c, d))
    rows = [
        [pa * three, pb * two, pc, Poly.zero(fld)],
        [Poly.zero(fld), pa * three, pb * two, pc],
        [pb, pc * two, pd * three, Poly.zero(fld)],
        [Poly.zero(fld), pb, pc * two, pd * three],
    ]
    from .curves import _poly_det
    disc = _poly_det(rows, fld)
    if disc.is_zero():
        raise UnsupportedConfiguration("degenerate discriminant")
    return BranchForm(fld, disc, 12)


def reconstruct_system(W_samples, n=None, k=None, cap=12):
    """Recover a complete system from Grassmannian samples via (W . C).

    All samples must cut intersection divisors of one linear-equivalence
    class; returns (system, members) with members[i] = (W_i . C) and the
    round trip beta(members[i]) = W_i verified.
    """
    if not W_samples:
        raise ValueError("need at least one sample")
    members = [intersection_divisor(W, cap=cap) for W in W_samples]
    first = members[0]
    for E in members[1:]:
        if not linear_equiv(first, E, cap=cap):
            raise InequivalentSamplesError("samples from distinct systems")
    L = complete_system(first, cap=cap)
    if n is not None and first.degree != n + (k or 0):
        raise ValueError("sample degrees do not match the requested (n, k)")
    for W, E in zip(W_samples, members):
        if beta(E, cap=cap) != W:
            raise InequivalentSamplesError("round trip beta(E) = W failed")
    return L, members


def trisecants_through(curve, P, cap=12):
    """The degree-3 members through a point of the genus-4 model: cut by the
    lines of the quadric through P (components of the tangent-plane conic)."""
    if curve.model != "canonical_g4":
        raise UnsupportedConfiguration("trisecants live on the genus-4 model")
    from .curves import mp_partial, mp_eval
    from .gauss import _binary_restriction_divisor
    fld = P.field
    quad = curve.quadric.map_field(fld)
    grad = [mp_eval(mp_partial(quad.coeffs, i, fld), P.coords, fld)
            for i in range(4)]
    if not any(grad):
        raise CurveError("singular quadric point")
    basis = MatrixExact(fld, [grad]).kernel_basis()
    conic = quad.restrict_plane(*basis, field=fld)
    # P in plane coordinates
    pc = MatrixExact(fld, [list(v) for v in basis]).transpose().solve(list(P.coords))
    assert pc is not None
    # rank-2 conic: vertex = kernel of its matrix, split off the two lines
    half = fld.one / fld.elem(2)
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            if i == j:
                key = tuple(2 if t == i else 0 for t in range(3))
                row.append(conic.coeffs.get(key, fld.zero))
            else:
                key = tuple(1 if t in (i, j) else 0 for t in range(3))
                row.append(conic.coeffs.get(key, fld.zero) * half)
        rows.append(row)
    M = MatrixExact(fld, rows)
    ker = M.kernel_basis()
    if len(ker) != 1:
        raise UnsupportedConfiguration("tangent conic does not have rank 2")
    vertex = ker[0]
    # complete to a basis of the plane coordinates
    comp = []
    for e in MatrixExact.identity(fld, 3).rows:
        cand = MatrixExact(fld, [vertex] + comp + [e])
        if cand.rank() == len(comp) + 2:
            comp.append(e)
        if len(comp) == 2:
            break
    images = [
        {(1, 0): comp[0][i], (0, 1): comp[1][i]} for i in range(3)
    ]
    from .curves import mp_substitute
    restr = mp_substitute(conic.coeffs, [
        {k: v for k, v in im.items() if v} for im in images], fld, 2)
    cs = [fld.zero] * 3
    for (i, j), v in restr.items():
        cs[j] = cs[j] + v
    bq = Poly(fld, cs)
    # roots of the binary quadratic give the two line directions
    dirs = []
    if bq.degree >= 1:
        K, roots = roots_in_splitting_extension(bq, cap=cap)
        for r, _ in roots:
            dirs.append((K, [coerce(a, K) + r * coerce(b, K)
                             for a, b in zip(comp[0], comp[1])]))
    if bq.degree < 2:
        dirs.append((fld, list(comp[1])))
    members = []
    for K, d in dirs:
        # the line joins the vertex and the direction point, in P^3 coords
        v3 = [sum((coerce(basis[j][i], K) * coerce(vertex[j], K) for j in range(3)),
                  K.zero) for i in range(4)]
        d3 = [sum((coerce(basis[j][i], K) * coerce(d[j], K) for j in range(3)),
                  K.zero) for i in range(4)]
        member = _binary_restriction_divisor(curve, v3, d3, K, cap)
        assert member.degree == 3
        members.append(member)
    return members


def find_g13(curve, seed=0, cap=12):
    """A complete g^1_3 pencil on the genus-4 model, found through ruling
    lines at sampled points; prefers members defined over the base field."""
    rng = random.Random(seed)
    fallback = None
    for _ in range(40):
        P = curve.sample_point(rng)
        try:
            members = trisecants_through(curve, P, cap=cap)
        except (UnsupportedConfiguration, CurveError):
            continue
        members.sort(key=lambda m: m.field.degree)
        for member in members:
            L = complete_system(member, cap=cap)
            if L.r != 1:
                continue
            if member.field.degree == curve.field.degree:
                return L
            fallback = fallback or L
    if fallback is not None:
        return fallback
    raise UnsupportedConfiguration("no trisecant pencil found")


def hyperelliptic_image_witness(D, k=1, cap=12):
    """Conjugate-double the first k points of D: a system member F with
    beta(F) = gauss_eval(D) and F in the conjugate-choice set."""
    from .gauss import gauss_eval
    curve = D.curve
    if curve.model != "hyperelliptic":
        raise CurveError("witness construction is hyperelliptic-only")
    n = D.degree
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    flat = []
    for P, m in D.items:
        flat.extend([P] * m)
    items = []
    for i, P in enumerate(flat):
        if i < k:
            items.append((P, 1))
            items.append((curve.involution(P), 1))
        else:
            items.append((P, 1))
    F = Divisor(curve, items, field=D.field)
    W = gauss_eval(D)
    bW = beta(F, cap=cap)
    assert bW == W, "doubled divisor span differs from the Gauss image point"
    L = complete_system(F, cap=cap)
    flags = classify_member(L, F)
    assert flags["nc"], "constructed witness must admit conjugate-free choices"
    return L, F
