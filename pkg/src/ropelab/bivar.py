"""Homogeneous polynomials in S = K[t, u] with exact coefficient arithmetic.

A nonzero polynomial of degree d is a dense coefficient vector of length
d + 1 where ``coeffs[i]`` multiplies ``t^(d-i) * u^i``.  The zero polynomial
carries no degree (empty coefficient vector) and is compatible with every
degree slot of a graded matrix.
"""

from __future__ import annotations

from .errors import AllZero, DegreeMismatch, DivisionByZero, FieldMismatch
from .fields import Field


class HomPoly:
    """Homogeneous element of K[t,u]; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        cs = tuple(coeffs)
        if cs and not any(cs):
            cs = ()
        self.coeffs = cs

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree of a nonzero polynomial; None for the zero polynomial."""
        return None if self.is_zero else len(self.coeffs) - 1

    def __eq__(self, other):
        return (
            isinstance(other, HomPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"HomPoly({self.text()})"

    def text(self) -> str:
        """Human-readable form, e.g. ``t^2 - 2*t*u``."""
        if self.is_zero:
            return "0"
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            a, b = d - i, i
            mono = "*".join(
                ([] if a == 0 else [f"t^{a}" if a > 1 else "t"])
                + ([] if b == 0 else [f"u^{b}" if b > 1 else "u"])
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def to_json(self):
        return {
            "deg": self.degree,
            "coeffs": [self.field.scalar_to_json(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(field: Field, obj) -> "HomPoly":
        return HomPoly(field, [field.of(c) for c in obj["coeffs"]])


def hp_zero(field: Field) -> HomPoly:
    return HomPoly(field, ())


def hp_const(field: Field, c, degree: int = 0) -> HomPoly:
    """c * t^degree (zero polynomial when c == 0)."""
    c = field.of(c)
    if not c:
        return hp_zero(field)
    return HomPoly(field, (c,) + (field.zero,) * degree)


def hp_monomial(field: Field, c, t_exp: int, u_exp: int) -> HomPoly:
    c = field.of(c)
    if not c:
        return hp_zero(field)
    coeffs = [field.zero] * (t_exp + u_exp + 1)
    coeffs[u_exp] = c
    return HomPoly(field, coeffs)


def hp_from_coeffs(field: Field, coeffs) -> HomPoly:
    return HomPoly(field, [field.of(c) for c in coeffs])


def _check_fields(f: HomPoly, g: HomPoly):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")


def hp_add(f: HomPoly, g: HomPoly) -> HomPoly:
    _check_fields(f, g)
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    if f.degree != g.degree:
        raise DegreeMismatch(f"degree {f.degree} + degree {g.degree}")
    K = f.field
    return HomPoly(K, [K.add(a, b) for a, b in zip(f.coeffs, g.coeffs)])


def hp_neg(f: HomPoly) -> HomPoly:
    K = f.field
    return HomPoly(K, [K.neg(c) for c in f.coeffs])


def hp_sub(f: HomPoly, g: HomPoly) -> HomPoly:
    return hp_add(f, hp_neg(g))


def hp_scale(f: HomPoly, c) -> HomPoly:
    K = f.field
    c = K.of(c)
    if not c:
        return hp_zero(K)
    return HomPoly(K, [K.mul(c, a) for a in f.coeffs])


def hp_mul(f: HomPoly, g: HomPoly) -> HomPoly:
    """Exact convolution product; degree adds."""
    _check_fields(f, g)
    if f.is_zero or g.is_zero:
        return hp_zero(f.field)
    K = f.field
    out = [K.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return HomPoly(K, out)


def hp_eval(f: HomPoly, t0, u0):
    """Exact evaluation at a point of K^2."""
    K = f.field
    t0, u0 = K.of(t0), K.of(u0)
    if f.is_zero:
        return K.zero
    d = f.degree
    tp, up = [K.one], [K.one]
    for _ in range(d):
        tp.append(K.mul(tp[-1], t0))
        up.append(K.mul(up[-1], u0))
    acc = K.zero
    for i, c in enumerate(f.coeffs):  # coeffs[i] * t^(d-i) * u^i
        if c:
            acc = K.add(acc, K.mul(c, K.mul(tp[d - i], up[i])))
    return acc


# -- dense univariate K[t] helpers (dehomogenization lane) ---------------------


def polyt_trim(K: Field, a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def polyt_divmod(K: Field, a: list, b: list):
    """Division with remainder in K[t]; coefficient lists, ascending powers."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [K.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = K.inv(b[-1])
    while len(a) >= len(b) and a:
        c = K.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = K.sub(a[shift + i], K.mul(c, bc))
        polyt_trim(K, a)
    return q, a


def polyt_gcd(K: Field, a: list, b: list) -> list:
    a, b = list(a), list(b)
    polyt_trim(K, a)
    polyt_trim(K, b)
    while b:
        _, r = polyt_divmod(K, a, b)
        a, b = b, r
    if a:
        inv = K.inv(a[-1])
        a = [K.mul(c, inv) for c in a]
    return a


def _u_valuation(f: HomPoly) -> int:
    for i, c in enumerate(f.coeffs):
        if c:
            return i
    raise AllZero("zero polynomial has no u-valuation")


def hp_dehomogenize(f: HomPoly) -> list:
    """f(t, 1) as an ascending K[t] coefficient list."""
    K = f.field
    d = f.degree
    out = [K.zero] * (d + 1)
    for i, c in enumerate(f.coeffs):
        out[d - i] = c
    return polyt_trim(K, out)


def hp_rehomogenize(K: Field, a: list, extra_u: int = 0) -> HomPoly:
    """Homogenize an ascending K[t] list to its t-degree, then shift by u^extra_u."""
    d = len(a) - 1
    coeffs = [K.zero] * (d + extra_u + 1)
    for i, c in enumerate(a):  # c * t^i -> t^i u^(d - i + extra_u)
        coeffs[d - i + extra_u] = c
    return HomPoly(K, coeffs)


def hp_gcd(fs) -> HomPoly:
    """Monic homogeneous gcd; Euclidean algorithm on dehomogenizations.

    The common power of u is split off first (u is invisible at u = 1), the
    gcd is computed in K[t], and the result is rehomogenized.  Normalization:
    the lowest-u-power coefficient is scaled to 1.
    """
    fs = [f for f in fs if not f.is_zero]
    if not fs:
        raise AllZero("gcd of no nonzero polynomials")
    K = fs[0].field
    for f in fs:
        _check_fields(fs[0], f)
    e = min(_u_valuation(f) for f in fs)
    g = hp_dehomogenize(fs[0])
    for f in fs[1:]:
        g = polyt_gcd(K, g, hp_dehomogenize(f))
        if len(g) == 1 and e == 0:
            break
    out = hp_rehomogenize(K, g, extra_u=e)
    lead = out.coeffs[_u_valuation(out)]
    return hp_scale(out, K.inv(lead))


def hp_divmod(f: HomPoly, g: HomPoly):
    """Exact homogeneous division attempt: returns (q, r) with f = q*g + r.

    Both f and r are homogeneous of f's degree; q is homogeneous of degree
    deg f - deg g (or zero).
    """
    _check_fields(f, g)
    K = f.field
    if g.is_zero:
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero:
        return hp_zero(K), hp_zero(K)
    if f.degree < g.degree:
        return hp_zero(K), f
    ft = hp_dehomogenize(f)
    gt = hp_dehomogenize(g)
    q, r = polyt_divmod(K, ft, gt)
    # Exactness in the homogeneous ring also needs the u-valuations to work out.
    extra = f.degree - g.degree - (len(q) - 1)
    if r or extra < 0:
        return None, f
    qh = hp_rehomogenize(K, q, extra_u=extra)
    return qh, hp_zero(K)


def hp_divides(g: HomPoly, f: HomPoly) -> bool:
    """True iff g divides f exactly in K[t,u]."""
    if f.is_zero:
        return True
    if g.is_zero:
        return False
    if f.degree < g.degree:
        return False
    q, r = hp_divmod(f, g)
    return q is not None and r.is_zero and hp_mul(q, g) == f
