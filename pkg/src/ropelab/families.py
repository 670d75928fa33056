"""Parameter spaces, minimal types, and the Hilbert-scheme classification.

Dimension formulas for the spaces of ropes with fixed right/left type, the
balanced minimal types, pointwise minimality of their Rao function, component
dimensions, generic smoothness / non-reducedness (with its characteristic-two
exception for double lines), generic initial ideals, and the explicit block
matrices used to exhibit unobstructed ropes of degree >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bivar import hp_monomial, hp_zero
from .errors import DegenerateRope, PreconditionViolated, RangeError, ShapeError
from .fields import Field
from .graded import GradedMap
from .multipoly import mp_monomial
from .rope import Rope, binom1
from .normal import h0_normal


@dataclass(frozen=True)
class TypeVector:
    values: tuple
    kind: str  # "right" or "left"

    def __post_init__(self):
        if tuple(sorted(self.values)) != self.values:
            raise ShapeError("type vectors are stored ascending")

    @property
    def genus(self) -> int:
        return -sum(self.values)


@dataclass(frozen=True)
class Classification:
    component_dim: int
    generically_smooth: bool | None
    nonreduced: bool | None
    general_member: str  # "skew-lines" | "rope" | "unknown"


def dim_V_alpha(n: int, alpha) -> int:
    """Dimension of the parameter space of ropes with right type alpha."""
    alpha = tuple(sorted(alpha))
    k = n - 1 - len(alpha)
    if not 1 <= k <= n - 2:
        raise ShapeError(f"right type of length {len(alpha)} impossible in P^{n}")
    g = -sum(alpha)
    corr = sum(binom1(ai - aj + 1) for ai in alpha for aj in alpha)
    return (n - 1) * (n - k + 1 - g) - corr


def dim_W_beta(n: int, beta) -> int:
    """Dimension of the parameter space of ropes with left type beta."""
    beta = tuple(sorted(beta))
    k = len(beta)
    if not 1 <= k <= n - 2:
        raise ShapeError(f"left type of length {k} impossible in P^{n}")
    g = -sum(beta)
    corr = sum(binom1(bi - bj + 1) for bi in beta for bj in beta)
    return (n - 1) * (k + 2 - g) - corr


def minimal_types(n: int, k: int, g: int):
    """Balanced right and left types of genus g: the most generic ropes."""
    r = n - 2
    if not 1 <= k <= r:
        raise ShapeError(f"need 1 <= k <= n-2")
    if g > 0:
        raise ShapeError("rope genus is nonpositive")
    p1, s1 = divmod(-g, r + 1 - k)
    alpha = tuple([p1] * (r + 1 - k - s1) + [p1 + 1] * s1)
    p2, s2 = divmod(-g, k)
    beta = tuple([p2] * (k - s2) + [p2 + 1] * s2)
    return TypeVector(alpha, "right"), TypeVector(beta, "left")


def rao_of_types(alpha, beta, r: int, z: int) -> int:
    return (
        sum(binom1(z + a) for a in alpha)
        + sum(binom1(z - b) for b in beta)
        - (r + 1) * binom1(z)
    )


def _compositions(total: int, parts: int):
    """Ascending tuples of nonnegative ints with the given sum."""
    def rec(lo, left, parts):
        if parts == 1:
            if left >= lo:
                yield (left,)
            return
        for v in range(lo, left // parts + 1):
            for rest in rec(v, left - v, parts - 1):
                yield (v,) + rest
    return rec(0, total, parts)


def rho_min_dominates(n: int, k: int, g: int, z_range) -> bool:
    """Exhaustive check that the balanced types minimize the Rao function.

    For z <= 0 only the right type matters, for z > 0 only the left type;
    all types with the correct sum are enumerated.
    """
    if -g > 12:
        raise PreconditionViolated("partition enumeration capped at -g <= 12")
    r = n - 2
    amin, bmin = minimal_types(n, k, g)
    for z in z_range:
        rho_min = rao_of_types(amin.values, bmin.values, r, z)
        if z <= 0:
            for alpha in _compositions(-g, r + 1 - k):
                if rao_of_types(alpha, bmin.values, r, z) < rho_min:
                    return False
        else:
            for beta in _compositions(-g, k):
                if rao_of_types(amin.values, beta, r, z) < rho_min:
                    return False
    return True


def component_dim(n: int, d: int, g: int) -> int:
    """Dimension of the component of the Hilbert scheme containing the ropes."""
    if not 2 <= d <= n - 1:
        raise ShapeError("need 2 <= d <= n-1")
    if d == 2 and g == -1:
        return 4 * (n - 1)  # the skew-lines component
    k = n - d
    return (n - 1) * (k + 2 - g) - k * k


def classify(n: int, d: int, g: int, characteristic: int) -> Classification:
    """Tri-state classification; never extrapolates beyond the theorems."""
    if not 2 <= d <= n - 1:
        raise ShapeError("need 2 <= d <= n-1")
    dim = component_dim(n, d, g)
    if d == 2:
        if g == -1:
            return Classification(dim, True, False, "skew-lines")
        smooth = characteristic != 2 or g == -2
        nonred = characteristic == 2 and g <= -3
        return Classification(dim, smooth, nonred, "rope")
    in_range = g <= d - n and (g <= -3 * (d - 1) or -g == 2 * (d - 1))
    if in_range:
        return Classification(dim, True, False, "rope")
    return Classification(dim, None, None, "unknown")


def is_obstructed(rope: Rope, characteristic: int | None = None):
    """h^0(N_C) > dim of the component; None when outside the theorem range."""
    n, d, g = rope.n, rope.degree, rope.genus
    ch = rope.field.char if characteristic is None else characteristic
    cls = classify(n, d, g, ch)
    if cls.generically_smooth is None and d >= 3:
        if rope.alpha[0] < 2:
            return None
    h0 = h0_normal(rope).h0
    return h0 > cls.component_dim


def gin_ideal(rope: Rope):
    """Generic initial ideal in degrevlex: all x_i x_j plus x_{j-1} t^{beta_j}."""
    if not rope.nondegenerate:
        raise DegenerateRope("gin formula needs a nondegenerate rope")
    field, r = rope.field, rope.r
    nvars = r + 3
    out = []
    for i in range(r + 1):
        for j in range(i, r + 1):
            e = [0] * nvars
            e[i] += 1
            e[j] += 1
            out.append(mp_monomial(field, field.one, tuple(e), nvars))
    for pos, b in enumerate(sorted(rope.beta)):
        e = [0] * nvars
        e[pos] = 1
        e[r + 1] = b
        out.append(mp_monomial(field, field.one, tuple(e), nvars))
    return out


# -- the explicit unobstructed matrices -------------------------------------------


def _tilde_block(field: Field, p: int, s: int, w: int, deleted: int):
    """The bidiagonal (s+w-deleted) x (s+w+1-deleted) block of t/u powers.

    Row i carries t^p, u^p for i < w and t^(p+1), u^(p+1) otherwise; deleting
    the last rows also drops the columns they alone occupied.
    """
    rows = s + w - deleted
    cols = s + w + 1 - deleted
    zero = hp_zero(field)
    out = []
    degs = []
    for i in range(rows):
        e = p if i < w else p + 1
        row = [zero] * cols
        row[i] = hp_monomial(field, 1, e, 0)
        row[i + 1] = hp_monomial(field, 1, 0, e)
        out.append(row)
        degs.append(e)
    return out, degs, cols


def _aprime(field: Field, p: int, i: int):
    """(t^{p+1}, t^p u, ..., t^{p+2-i} u^{i-1}, u^{p+1}), a 1 x (i+1) block."""
    row = [hp_monomial(field, 1, p + 1 - m, m) for m in range(i)]
    row.append(hp_monomial(field, 1, 0, p + 1))
    return row, p + 1


def _adoubleprime(field: Field, p: int, i: int):
    """(t^p, t^{p-1} u, ..., t^{p+1-i} u^{i-1}, u^p), a 1 x (i+1) block."""
    row = [hp_monomial(field, 1, p - m, m) for m in range(i)]
    row.append(hp_monomial(field, 1, 0, p))
    return row, p


def thm613_matrix(p: int, s: int, w: int, r: int, field: Field) -> GradedMap:
    """Block matrix A_r with right type (p^w, (p+1)^s) whose rope is general.

    Exists exactly for s+w <= r <= (s+w)(p+1)+s-1.  In the top stretch of the
    last range the printed bidiagonal block is empty and its leftover zero
    column would degenerate the rope; there the leading 1-row block widens by
    one monomial instead, which is the unique shape consistent with the
    prescribed type and nondegeneracy.  Shapes are audited before returning.
    """
    if p < 1 or w < 1 or s < 0:
        raise RangeError("need p >= 1, w >= 1, s >= 0")
    lo, hi = s + w, (s + w) * (p + 1) + s - 1
    if not lo <= r <= hi:
        raise RangeError(f"r={r} outside [{lo}, {hi}] for (p,s,w)=({p},{s},{w})")
    blocks = []  # (rows, row degrees, ncols)
    if r == s + w:
        blocks.append(_tilde_block(field, p, s, w, 0))
    elif r <= s + w + s * (p + 1):
        j, i = divmod(r - (s + w), p + 1)
        if i == 0:
            j, i = j - 1, p + 1
        blocks.append(_tilde_block(field, p, s, w, j + 1))
        row, deg = _aprime(field, p, i)
        blocks.append(([row], [deg], i + 1))
        for _ in range(j):
            row, deg = _aprime(field, p, p + 1)
            blocks.append(([row], [deg], p + 2))
    else:
        j, i = divmod(r - (s * (p + 2) + w), p)
        if i == 0:
            j, i = j - 1, p
        if j + s + 1 < s + w:
            blocks.append(_tilde_block(field, p, s, w, j + s + 1))
            row, deg = _adoubleprime(field, p, i)
            blocks.append(([row], [deg], i + 1))
        else:
            # empty bidiagonal block: widen the head block instead
            row, deg = _adoubleprime(field, p, i + 1)
            blocks.append(([row], [deg], i + 2))
        for _ in range(j):
            row, deg = _adoubleprime(field, p, p)
            blocks.append(([row], [deg], p + 1))
        for _ in range(s):
            row, deg = _aprime(field, p, p + 1)
            blocks.append(([row], [deg], p + 2))

    total_rows = sum(len(rows) for rows, _, _ in blocks)
    total_cols = sum(nc for _, _, nc in blocks)
    if total_rows != s + w:
        raise RangeError(f"block rows {total_rows} != s+w = {s + w}")
    if total_cols != r + 1:
        raise RangeError(f"block columns {total_cols} != r+1 = {r + 1}")
    zero = hp_zero(field)
    entries = []
    degs = []
    col0 = 0
    for rows, rdegs, nc in blocks:
        for row in rows:
            entries.append([zero] * col0 + row + [zero] * (total_cols - col0 - nc))
        degs.extend(rdegs)
        col0 += nc
    order = sorted(range(total_rows), key=lambda i: degs[i])
    entries = [entries[i] for i in order]
    degs = [degs[i] for i in order]
    want = tuple([p] * w + [p + 1] * s)
    if tuple(degs) != want:
        raise RangeError(f"row degrees {tuple(degs)} != prescribed type {want}")
    return GradedMap(field, [1] * total_cols, [1 - d for d in degs], entries)
