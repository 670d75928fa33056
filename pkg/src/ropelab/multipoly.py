"""Sparse multivariate polynomials over R = K[x_0..x_r, t, u].

Exponent vectors are tuples of length nvars = r+3, ordered x_0..x_r, t, u.
Terms are kept in a dict with no zero coefficients; printing and JSON use
degree-reverse-lexicographic order on the x block then t, u so output is
reproducible.
"""

from __future__ import annotations

from .errors import FieldMismatch
from .fields import Field


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return None if self.is_zero else max(sum(e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, tuple(sorted(self.terms.items()))))

    def add(self, other: "MultiPoly") -> "MultiPoly":
        if self.field != other.field:
            raise FieldMismatch("MultiPoly fields differ")
        K = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            s = K.add(prev, c) if prev is not None else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(K, self.nvars, out)

    def neg(self) -> "MultiPoly":
        K = self.field
        return MultiPoly(K, self.nvars, {e: K.neg(c) for e, c in self.terms.items()})

    def sub(self, other: "MultiPoly") -> "MultiPoly":
        return self.add(other.neg())

    def scale(self, c) -> "MultiPoly":
        K = self.field
        c = K.of(c)
        if not c:
            return mp_zero(K, self.nvars)
        return MultiPoly(K, self.nvars, {e: K.mul(c, v) for e, v in self.terms.items()})

    def mul(self, other: "MultiPoly") -> "MultiPoly":
        if self.field != other.field:
            raise FieldMismatch("MultiPoly fields differ")
        K = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                s = K.add(prev, K.mul(c1, c2)) if prev is not None else K.mul(c1, c2)
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(K, self.nvars, out)

    def eval(self, point):
        """Exact evaluation at a tuple of nvars scalars."""
        K = self.field
        acc = K.zero
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                for _ in range(p):
                    v = K.mul(v, x)
            acc = K.add(acc, v)
        return acc

    def sorted_terms(self):
        """Terms in degrevlex order on the x block, then t, u (descending)."""
        return sorted(self.terms.items(), key=lambda ec: _degrevlex_key(ec[0]), reverse=True)

    def text(self) -> str:
        if self.is_zero:
            return "0"
        nx = self.nvars - 2
        names = [f"x{i}" for i in range(nx)] + ["t", "u"]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{p}" if p > 1 else names[i] for i, p in enumerate(e) if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.text()})"

    def to_json(self):
        return [
            {"e": list(e), "c": self.field.scalar_to_json(c)} for e, c in self.sorted_terms()
        ]

    @staticmethod
    def from_json(field: Field, nvars: int, obj) -> "MultiPoly":
        return MultiPoly(field, nvars, {tuple(t["e"]): field.of(t["c"]) for t in obj})


def _degrevlex_key(e: tuple):
    xs = e[:-2]
    return (sum(e), tuple(-v for v in reversed(xs)), e[-2], e[-1])


def mp_zero(field: Field, nvars: int) -> MultiPoly:
    return MultiPoly(field, nvars, {})


def mp_const(field: Field, c, nvars: int) -> MultiPoly:
    c = field.of(c)
    if not c:
        return mp_zero(field, nvars)
    return MultiPoly(field, nvars, {(0,) * nvars: c})


def mp_monomial(field: Field, c, exps: tuple, nvars: int) -> MultiPoly:
    c = field.of(c)
    if not c:
        return mp_zero(field, nvars)
    assert len(exps) == nvars
    return MultiPoly(field, nvars, {tuple(exps): c})


def mp_variable(field: Field, idx: int, nvars: int) -> MultiPoly:
    exps = [0] * nvars
    exps[idx] = 1
    return mp_monomial(field, field.one, tuple(exps), nvars)


def mp_from_hompoly(field: Field, hp, nvars: int) -> MultiPoly:
    """Lift an S = K[t,u] polynomial into R (t, u are the last two variables)."""
    if hp.is_zero:
        return mp_zero(field, nvars)
    d = hp.degree
    terms = {}
    for i, c in enumerate(hp.coeffs):
        if c:
            e = [0] * nvars
            e[nvars - 2] = d - i
            e[nvars - 1] = i
            terms[tuple(e)] = c
    return MultiPoly(field, nvars, terms)
