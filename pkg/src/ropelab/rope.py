"""Ropes supported on the line V(x_0..x_{n-2}) in P^n.

A rope of degree n-k is encoded by matrices A ((r+1-k) x (r+1)) and
B ((r+1) x k) over S = K[t,u] with A·B = 0, the rows of A generating the left
kernel of B, and both ideals of maximal minors of codimension two.  The right
type alpha and left type beta are the sorted row/column entry degrees; the
arithmetic genus is g = -sum(beta) = -sum(alpha).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bivar import HomPoly, hp_zero
from .errors import (
    CodimTooSmall,
    DegenerateRope,
    GenerationFailed,
    InternalError,
    RankDeficient,
    ShapeError,
)
from .fields import Field
from .graded import (
    GradedMap,
    compose,
    coker_hilbert,
    generic_rank,
    is_zero_map,
    kernel_generators,
    minors_codim2,
)
from .multipoly import MultiPoly, mp_monomial, mp_zero


def binom1(a: int) -> int:
    """binom(a, 1) with the convention binom(a, b) = 0 for a < b."""
    return a if a >= 1 else 0


@dataclass(frozen=True)
class Rope:
    field: Field
    n: int
    k: int
    A: GradedMap
    B: GradedMap
    alpha: tuple
    beta: tuple
    genus: int

    @property
    def r(self) -> int:
        return self.n - 2

    @property
    def degree(self) -> int:
        return self.n - self.k

    @property
    def nondegenerate(self) -> bool:
        return all(b >= 1 for b in self.beta)

    def __repr__(self):
        return (
            f"Rope(n={self.n}, deg={self.degree}, g={self.genus}, "
            f"alpha={self.alpha}, beta={self.beta}, field={self.field})"
        )


def _beta_of(B: GradedMap) -> tuple:
    return tuple(a - 1 for a in B.source.twists)


def _alpha_of(A: GradedMap) -> tuple:
    return tuple(1 - b for b in A.target.twists)


def rope_from_B(n: int, B: GradedMap, field: Field | None = None) -> Rope:
    """Validated rope from its matrix B; A is recomputed as the left kernel."""
    field = field or B.field
    r = n - 2
    if n < 3:
        raise ShapeError("ambient dimension must be at least 3")
    if B.nrows != r + 1:
        raise ShapeError(f"B must have {r + 1} rows for n={n}, got {B.nrows}")
    k = B.ncols
    if not 1 <= k <= r:
        raise ShapeError(f"need 1 <= k <= n-2, got k={k}")
    if any(a != 1 for a in B.target.twists):
        raise ShapeError("B must map into S^{r+1}(-1): target twists all 1")
    if not minors_codim2(B):
        raise CodimTooSmall("maximal minors of B have a common factor")
    # A^t is the syzygy matrix of B^t.
    kappa = kernel_generators(B.transpose_map(source_twist=1))
    A = GradedMap(
        field,
        [1] * (r + 1),
        [1 - (c - 1) for c in kappa.source.twists],
        [[kappa.entries[j][q] for j in range(r + 1)] for q in range(len(kappa.source.twists))],
    )
    if A.nrows != r + 1 - k:
        raise InternalError(f"left kernel of B has rank {A.nrows}, expected {r + 1 - k}")
    if not minors_codim2(A):
        raise CodimTooSmall("maximal minors of A have a common factor")
    if not is_zero_map(compose(A, B)):
        raise InternalError("A·B != 0")
    alpha = tuple(sorted(_alpha_of(A)))
    beta = tuple(sorted(_beta_of(B)))
    if sum(alpha) != sum(beta):
        raise InternalError(f"type sums disagree: {alpha} vs {beta}")
    return Rope(field=field, n=n, k=k, A=A, B=B, alpha=alpha, beta=beta, genus=-sum(beta))


def rope_from_A(n: int, A: GradedMap, field: Field | None = None) -> Rope:
    """Validated rope from its matrix A; B is the (right) syzygy matrix of A."""
    field = field or A.field
    r = n - 2
    if A.ncols != r + 1:
        raise ShapeError(f"A must have {r + 1} columns for n={n}, got {A.ncols}")
    if any(a != 1 for a in A.source.twists):
        raise ShapeError("A must be defined on S^{r+1}(-1): source twists all 1")
    if generic_rank(A) != A.nrows:
        raise RankDeficient("rows of A are dependent over the fraction field")
    if not minors_codim2(A):
        raise CodimTooSmall("maximal minors of A have a common factor")
    B = kernel_generators(A)
    return rope_from_B(n, B, field)


def random_rope(n: int, alpha, field: Field, seed: int, max_tries: int = 100) -> Rope:
    """Random rope with the given right type; deterministic under seed.

    When no nondegenerate rope of this type exists in P^n (sum(alpha) < k) the
    rope is produced in block normal form: a nondegenerate rope spanning the
    maximal possible P^m padded by an identity block.
    """
    alpha = tuple(sorted(alpha))
    r = n - 2
    k = n - 1 - len(alpha)
    if not 1 <= k <= r:
        raise ShapeError(f"right type of length {len(alpha)} impossible in P^{n}")
    if sum(alpha) < 1:
        raise ShapeError("right type must have positive sum")
    g = -sum(alpha)
    d = n - k
    m_span = min(n, d - g)
    rng = random.Random(seed)
    if m_span >= n:
        return _random_nondegenerate(n, alpha, field, rng, max_tries)
    inner = _random_nondegenerate(m_span, alpha, field, rng, max_tries)
    return _block_embed(inner, n)


def _random_nondegenerate(n: int, alpha, field: Field, rng, max_tries: int) -> Rope:
    r = n - 2
    zero = hp_zero(field)
    for _ in range(max_tries):
        entries = []
        for a in alpha:
            row = []
            for _ in range(r + 1):
                row.append(HomPoly(field, [field.rand(rng) for _ in range(a + 1)]))
            entries.append(row)
        try:
            A = GradedMap(field, [1] * (r + 1), [1 - a for a in alpha], entries)
        except Exception:
            continue
        if generic_rank(A) != len(alpha) or not minors_codim2(A):
            continue
        try:
            rope = rope_from_A(n, A, field)
        except (CodimTooSmall, RankDeficient):
            continue
        if rope.nondegenerate:
            return rope
    raise GenerationFailed(f"no nondegenerate rope of type {tuple(alpha)} found in P^{n} after {max_tries} tries")


def _block_embed(rope: Rope, n: int) -> Rope:
    """Embed a nondegenerate rope of P^m into P^n in block normal form.

    B becomes [[B', 0], [0, I]] and the recomputed A has the shape (A' | 0).
    """
    field = rope.field
    m = rope.n
    pad = n - m
    if pad <= 0:
        return rope
    zero = hp_zero(field)
    one = HomPoly(field, (field.one,))
    src = list(rope.B.source.twists) + [1] * pad
    tgt = [1] * (n - 1)
    entries = []
    for i in range(m - 1):
        entries.append(list(rope.B.entries[i]) + [zero] * pad)
    for i in range(pad):
        row = [zero] * rope.B.ncols + [one if j == i else zero for j in range(pad)]
        entries.append(row)
    B = GradedMap(field, src, tgt, entries)
    return rope_from_B(n, B, field)


def random_double_line(n: int, g: int, field: Field, seed: int) -> Rope:
    """Random 2-rope of the given genus, in block normal form when degenerate."""
    if g > -1:
        raise ShapeError("a non-planar double line has genus <= -1")
    return random_rope(n, (-g,), field, seed)


# -- closed-form invariants ------------------------------------------------------


def hilbert_function(rope: Rope, j: int) -> int:
    """Hilbert function of the rope's coordinate ring."""
    r = rope.r
    return (
        binom1(j + 1)
        + (r + 1) * binom1(j)
        - sum(binom1(j - b) for b in rope.beta)
    )


def rao_function(rope: Rope, i: int) -> int:
    """Dimension of the degree-i piece of the Hartshorne-Rao module."""
    r = rope.r
    return (
        sum(binom1(i + a) for a in rope.alpha)
        + sum(binom1(i - b) for b in rope.beta)
        - (r + 1) * binom1(i)
    )


def rao_via_cokerA(rope: Rope, i: int) -> int:
    """Rao function computed independently as coker(phi_A) ranks."""
    return coker_hilbert(rope.A, i)


def regularity(rope: Rope) -> int:
    """Castelnuovo-Mumford regularity: maximal generator degree of I_C."""
    if not rope.nondegenerate:
        raise DegenerateRope("regularity formula requires a nondegenerate rope")
    return max(rope.beta) + 1


def h0_structure(rope: Rope, d: int) -> int:
    """h^0 of the twisted structure sheaf O_C(d)."""
    return binom1(d + 1) + sum(binom1(d + a) for a in rope.alpha)


@dataclass(frozen=True)
class BettiTable:
    """Twist multiplicities of the free resolution, per homological index."""

    entries: tuple  # tuple over i of tuple of (generator degree, multiplicity)

    def rank(self, i: int) -> int:
        return sum(mult for _, mult in self.entries[i - 1])

    @property
    def length(self) -> int:
        return len(self.entries)

    def alternating_rank_sum(self) -> int:
        return sum((-1) ** (i + 1) * self.rank(i) for i in range(1, self.length + 1))

    def rows(self):
        for i in range(1, self.length + 1):
            for deg, mult in self.entries[i - 1]:
                yield (i, deg, mult)


def betti_table(rope: Rope) -> BettiTable:
    """Graded Betti numbers of I_C from the closed-form resolution shape.

    Homological index i carries D_i of rank (n-1)C(n-1,i) - C(n-1,i+1) in
    generator degree i+1, plus C(n-1,i-1) copies of degree (i-1)+beta_s+1 for
    each s.  For a degenerate rope this is the table over the coordinate ring
    of the span.
    """
    from math import comb

    n = rope.n
    out = []
    for i in range(1, n + 1):
        counts: dict[int, int] = {}
        if i <= n - 1:
            d_rank = (n - 1) * comb(n - 1, i) - comb(n - 1, i + 1)
            if d_rank:
                counts[i + 1] = counts.get(i + 1, 0) + d_rank
        q_copies = comb(n - 1, i - 1)
        if q_copies:
            for b in rope.beta:
                deg = (i - 1) + b + 1
                counts[deg] = counts.get(deg, 0) + q_copies
        if counts:
            out.append(tuple(sorted(counts.items())))
        else:
            out.append(())
    while out and not out[-1]:
        out.pop()
    return BettiTable(entries=tuple(out))


def ideal_generators(rope: Rope) -> list:
    """Generators of I_C: all x_i x_j (i <= j) then the k forms [x]·B."""
    n, r, field = rope.n, rope.r, rope.field
    nvars = r + 3  # x_0..x_r, t, u
    gens = []
    for i in range(r + 1):
        for j in range(i, r + 1):
            exps = [0] * nvars
            exps[i] += 1
            exps[j] += 1
            gens.append(mp_monomial(field, field.one, tuple(exps), nvars))
    for s in range(rope.B.ncols):
        acc = mp_zero(field, nvars)
        for i in range(r + 1):
            e = rope.B.entries[i][s]
            if e.is_zero:
                continue
            d = e.degree
            for l, c in enumerate(e.coeffs):
                if c:
                    exps = [0] * nvars
                    exps[i] = 1
                    exps[r + 1] = d - l
                    exps[r + 2] = l
                    acc = acc.add(mp_monomial(field, c, tuple(exps), nvars))
        gens.append(acc)
    return gens


# -- serialization ----------------------------------------------------------------


def rope_to_json(rope: Rope) -> dict:
    return {"n": rope.n, "field": rope.field.to_json(), "B": rope.B.to_json(),
            "alpha": list(rope.alpha)}


def rope_from_json(obj) -> Rope:
    field = Field.from_json(obj["field"])
    B = GradedMap.from_json(field, obj["B"])
    rope = rope_from_B(int(obj["n"]), B, field)
    stored = obj.get("alpha")
    if stored is not None and tuple(sorted(stored)) != rope.alpha:
        raise InternalError(f"stored right type {stored} disagrees with recomputed {rope.alpha}")
    return rope
