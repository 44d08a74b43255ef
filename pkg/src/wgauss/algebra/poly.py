"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first with a nonzero leading
coefficient (empty tuple for the zero polynomial).  A Poly carries its
field explicitly; mixing fields raises.  Factorization and root finding
are implemented for finite fields only (squarefree split, distinct-degree,
then Cantor-Zassenhaus equal-degree splitting, seeded deterministically
from the input so results are reproducible).
"""

import random

from .fields import ExtField, FieldError, PrimeField, Rationals, coerce


class ExtensionCapError(RuntimeError):
    """A splitting field would exceed the configured extension-degree cap."""


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.elem(c) if not field.contains(c) else c for c in coeffs]
        n = len(cs)
        while n and not cs[n - 1]:
            n -= 1
        self.field = field
        self.coeffs = tuple(cs[:n])

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError("mixed-field polynomials")
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] - other[i] for i in range(n)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.field, [c * other for c in self.coeffs])
        other = self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r, b = Poly.one(self.field), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def divmod(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = self.field.one / other.lead()
        q = [self.field.zero] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            if not rem[-1]:
                rem.pop()
                continue
            c = rem[-1] * inv
            q[len(rem) - 1 - db] = c
            off = len(rem) - 1 - db
            for i in range(db + 1):
                rem[off + i] = rem[off + i] - c * other.coeffs[i]
            rem.pop()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.one / self.lead()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        if self.degree < 1:
            return Poly.zero(self.field)
        return Poly(self.field, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, n):
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero,) * n + self.coeffs)

    def reverse(self, degree=None):
        """Coefficient reversal at the stated degree (default: own degree)."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below actual degree")
        cs = [self.field.zero] * (d + 1)
        for i, c in enumerate(self.coeffs):
            cs[d - i] = c
        return Poly(self.field, cs)

    def map_field(self, target):
        return Poly(target, [coerce(c, target) for c in self.coeffs])

    def sort_key(self):
        return (len(self.coeffs), tuple(self.field.sort_key(c) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c!r})*x^{i}" if i else f"({c!r})")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a, b):
    """Monic greatest common divisor; rejects mixed-field inputs."""
    if a.field != b.field:
        raise FieldError("mixed-field inputs to gcd")
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """(g, u, v) with u*a + v*b = g, g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.one(f)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = f.one / r0.lead()
    return r0 * inv, s0 * inv, t0 * inv


def powmod(base, e, mod):
    r = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            r = (r * base) % mod
        base = (base * base) % mod
        e >>= 1
    return r


def resultant(a, b):
    """Sylvester-matrix determinant, first argument's coefficient rows first."""
    f = a.field
    if b.field != f:
        raise FieldError("mixed-field inputs to resultant")
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return f.zero
    if m == 0 and n == 0:
        return f.one
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    size = m + n
    rows = []
    arev = [a.coeffs[m - i] for i in range(m + 1)]
    brev = [b.coeffs[n - i] for i in range(n + 1)]
    for i in range(n):
        rows.append([f.zero] * i + arev + [f.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([f.zero] * i + brev + [f.zero] * (size - n - 1 - i))
    return _det(rows, f)


def _det(rows, field):
    n = len(rows)
    rows = [list(r) for r in rows]
    det = field.one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return field.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        inv = field.one / pv
        for r in range(col + 1, n):
            c = rows[r][col]
            if c:
                factor = c * inv
                row_r, row_c = rows[r], rows[col]
                for j in range(col, n):
                    row_r[j] = row_r[j] - factor * row_c[j]
    return det


def discriminant(a):
    """Res(a, a') / lc(a), with the usual sign (-1)^(d(d-1)/2)."""
    d = a.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(a, a.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return r / a.lead() * sign


# -- finite-field factorization --------------------------------------------

def _require_finite(f):
    if isinstance(f.field, Rationals):
        raise FieldError("unsupported operation over the rationals")


def _seed_of(a):
    v = 0xD1F
    for c in a.coeffs:
        v = (v * 0x1000193 + a.field.encode_int(c) + 1) & ((1 << 61) - 1)
    v = (v * 0x1000193 + a.field.order) & ((1 << 61) - 1)
    return v


def squarefree_decomposition(a):
    """[(squarefree factor, multiplicity)] over a finite field, a monic."""
    _require_finite(a)
    field = a.field
    p = field.char
    out = []
    a = a.monic()

    def frob_root(g):
        # g = h(x^p); recover h by taking p^(k-1)-th powers of coefficients
        e = field.order // p
        cs = []
        for i in range(0, g.degree + 1, p):
            cs.append(g[i] ** e)
        return Poly(field, cs)

    def sf(a, mult):
        if a.degree < 1:
            return
        d = a.derivative()
        if d.is_zero():
            sf(frob_root(a), mult * p)
            return
        g = poly_gcd(a, d)
        w = a // g
        m = 1
        while w.degree > 0:
            y = poly_gcd(w, g)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), m * mult))
            w, g = y, g // y
            m += 1
        if g.degree > 0:
            sf(frob_root(g), mult * p)

    sf(a, 1)
    return out


def distinct_degree_decomposition(a):
    """[(product of irreducibles of degree d, d)] for squarefree monic a."""
    field = a.field
    q = field.order
    out = []
    x = Poly.x(field)
    h = x
    f = a
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = powmod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree_split(a, d, rng):
    """Cantor-Zassenhaus split of a (all factors of degree d) into irreducibles."""
    field = a.field
    q = field.order
    if a.degree == d:
        return [a.monic()]
    out = []
    stack = [a.monic()]
    e = (q ** d - 1) // 2
    while stack:
        f = stack.pop()
        if f.degree == d:
            out.append(f)
            continue
        while True:
            r = Poly(field, [field.rand(rng) for _ in range(f.degree)] + [field.one])
            g = poly_gcd(r, f)
            if 0 < g.degree < f.degree:
                break
            h = powmod(r, e, f) - Poly.one(field)
            g = poly_gcd(h, f)
            if 0 < g.degree < f.degree:
                break
        stack.append(g)
        stack.append(f // g)
    return out


def factor_finite(a):
    """[(irreducible monic factor, multiplicity)], deterministic order.

    The product of factor^mult equals monic(a); base field must be finite.
    """
    _require_finite(a)
    if a.degree < 0:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(_seed_of(a))
    result = []
    for sqf, mult in squarefree_decomposition(a):
        for part, d in distinct_degree_decomposition(sqf):
            for irr in equal_degree_split(part, d, rng):
                result.append((irr, mult))
    result.sort(key=lambda fm: fm[0].sort_key())
    return result


def distinct_roots_in_field(a):
    """All roots of a lying in its own (finite) coefficient field, no multiplicity."""
    _require_finite(a)
    field = a.field
    x = Poly.x(field)
    xq = powmod(x, field.order, a)
    lin = poly_gcd(xq - x, a)
    if lin.degree <= 0:
        return []
    roots = _linear_split(lin)
    roots.sort(key=field.sort_key)
    return roots


def roots_in_field(a):
    """[(root, multiplicity)] for roots lying in a's own finite field.

    Cheaper than full factorization: gcd with x^q - x isolates the product
    of distinct rational linear factors, multiplicities follow by division.
    """
    _require_finite(a)
    field = a.field
    if a.degree < 1:
        return []
    x = Poly.x(field)
    lin = poly_gcd(powmod(x, field.order, a) - x, a)
    if lin.degree < 1:
        return []
    out = []
    for r in _linear_split(lin):
        factor = Poly(field, [-r, field.one])
        m = 0
        while True:
            q, rem = a.divmod(factor)
            if not rem.is_zero():
                break
            a = q
            m += 1
        assert m >= 1
        out.append((r, m))
    out.sort(key=lambda rm: field.sort_key(rm[0]))
    return out


def _linear_split(lin):
    """Distinct roots of a squarefree product of rational linear factors."""
    field = lin.field
    if lin.degree == 1:
        return [-lin.monic()[0]]
    if lin.degree == 2:
        mon = lin.monic()
        b, c = mon[1], mon[0]
        disc = b * b - c * 4
        s = field.sqrt(disc)
        assert s is not None
        half = field.one / field.elem(2)
        return [(-b + s) * half, (-b - s) * half]
    rng = random.Random(_seed_of(lin) ^ 0x11EA4)
    return [-f[0] for f in equal_degree_split(lin.monic(), 1, rng)]


def roots_in_splitting_extension(a, cap=12):
    """All roots of a over a splitting extension, with multiplicities.

    Returns (field, [(root, mult)]); the field is the canonical extension of
    degree lcm over the irreducible factors.  Degrees beyond ``cap`` raise
    ExtensionCapError.  Multiplicities sum to deg(a).
    """
    _require_finite(a)
    if a.degree < 0:
        raise ValueError("zero polynomial")
    import math
    base = a.field
    factors = factor_finite(a)
    total = base.degree
    for f, _ in factors:
        total = math.lcm(total, base.degree * f.degree)
    if total > cap:
        raise ExtensionCapError(
            f"splitting field degree {total} exceeds cap {cap}")
    target = PrimeField(base.char) if total == 1 else ExtField(base.char, total)
    out = []
    for f, m in factors:
        g = f.map_field(target)
        for r in distinct_roots_in_field(g):
            out.append((r, m))
    out.sort(key=lambda rm: target.sort_key(rm[0]))
    assert sum(m for _, m in out) == a.degree
    return target, out


def is_irreducible(a):
    _require_finite(a)
    if a.degree < 1:
        return False
    fs = factor_finite(a)
    return len(fs) == 1 and fs[0][1] == 1
