"""Global sections of the normal sheaf via exact linear systems.

The sections are the degree-zero solutions of three S-linear equation
families in the unknown polynomials P^{ij} (degree 2), P^s (degree
beta_s + 1) and Q^{ij}_l (degree alpha_l + 1):

  1.  P^{ih} a_{lj} - P^{jh} a_{li} = 0
  2.  sum_i b_{is} P^{ij} = 0
  3.  sum_i b_{is} Q^{ij}_l + P^s a_{lj} = 0

plus k(r+1-k) completely free polynomials Q^s_l of degree beta_s + alpha_l,
which are never materialized: they contribute the count F to the dimension.
Everything is solved exactly (fraction-free over Q, modular over F_p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bivar import HomPoly, hp_add, hp_mul, hp_neg, hp_scale, hp_zero
from .errors import CharMismatch, DegenerateRope, PreconditionViolated, ShapeError
from .graded import GradedMap, submatrix_det
from .linalg import Eliminator, same_span, solvable, sparse_nullspace
from .rope import Rope, binom1


@dataclass(frozen=True)
class UnknownLayout:
    """Slot bookkeeping: P^{ij} lex, then P^s, then Q^{ij}_l lex on (l,i,j);
    each polynomial unknown occupies consecutive slots, low u-power first."""

    r: int
    k: int
    alphas: tuple  # row degrees of A, matrix order
    betas: tuple  # column degrees of B, matrix order
    p_offsets: dict
    ps_offsets: dict
    q_offsets: dict
    total: int

    def p_slot(self, i: int, j: int) -> int:
        return self.p_offsets[(min(i, j), max(i, j))]

    def q_slot(self, l: int, i: int, j: int) -> int:
        return self.q_offsets[(l, min(i, j), max(i, j))]


def _build_layout(rope: Rope) -> UnknownLayout:
    r, k = rope.r, rope.k
    alphas = tuple(1 - b for b in rope.A.target.twists)
    betas = tuple(a - 1 for a in rope.B.source.twists)
    off = 0
    p_offsets = {}
    for i in range(r + 1):
        for j in range(i, r + 1):
            p_offsets[(i, j)] = off
            off += 3
    ps_offsets = {}
    for s in range(k):
        ps_offsets[s] = off
        off += betas[s] + 2
    q_offsets = {}
    for l in range(len(alphas)):
        for i in range(r + 1):
            for j in range(i, r + 1):
                q_offsets[(l, i, j)] = off
                off += alphas[l] + 2
    return UnknownLayout(
        r=r, k=k, alphas=alphas, betas=betas,
        p_offsets=p_offsets, ps_offsets=ps_offsets, q_offsets=q_offsets, total=off,
    )


@dataclass(frozen=True)
class NormalSystem:
    rope: Rope
    layout: UnknownLayout
    rows: tuple  # sparse rows (dict slot -> scalar)
    free_params: int


def _acc(field, eq_rows, offset, unknown_dim, poly: HomPoly, sign: int):
    """eq_rows[m] += sign * poly[d] * unknown[c] for c + d = m."""
    if poly.is_zero:
        return
    for d, pc in enumerate(poly.coeffs):
        if not pc:
            continue
        val = pc if sign > 0 else field.neg(pc)
        for c in range(unknown_dim):
            m = c + d
            row = eq_rows[m]
            slot = offset + c
            prev = row.get(slot)
            row[slot] = field.add(prev, val) if prev is not None else val


def assemble_system(rope: Rope) -> NormalSystem:
    """All scalar rows of the three equation families, in a fixed order."""
    K = rope.field
    r, k = rope.r, rope.k
    A, B = rope.A, rope.B
    lay = _build_layout(rope)
    alphas, betas = lay.alphas, lay.betas
    rows = []

    # family 1: P^{ih} a_{lj} - P^{jh} a_{li} = 0, degree alpha_l + 2
    for l in range(len(alphas)):
        arow = A.entries[l]
        for h in range(r + 1):
            for i in range(r + 1):
                for j in range(i + 1, r + 1):
                    if arow[j].is_zero and arow[i].is_zero:
                        continue
                    eq = [dict() for _ in range(alphas[l] + 3)]
                    _acc(K, eq, lay.p_slot(i, h), 3, arow[j], +1)
                    _acc(K, eq, lay.p_slot(j, h), 3, arow[i], -1)
                    rows.extend(e for e in eq if e)

    # family 2: sum_i b_{is} P^{ij} = 0, degree beta_s + 2
    for s in range(k):
        for j in range(r + 1):
            eq = [dict() for _ in range(betas[s] + 3)]
            for i in range(r + 1):
                _acc(K, eq, lay.p_slot(i, j), 3, B.entries[i][s], +1)
            rows.extend(e for e in eq if e)

    # family 3: sum_i b_{is} Q^{ij}_l + P^s a_{lj} = 0, degree beta_s + alpha_l + 1
    for s in range(k):
        for l in range(len(alphas)):
            for j in range(r + 1):
                eq = [dict() for _ in range(betas[s] + alphas[l] + 2)]
                for i in range(r + 1):
                    _acc(K, eq, lay.q_slot(l, i, j), alphas[l] + 2, B.entries[i][s], +1)
                _acc(K, eq, lay.ps_offsets[s], betas[s] + 2, A.entries[l][j], +1)
                rows.extend(e for e in eq if e)

    free = sum(betas[s] + alphas[l] + 1 for s in range(k) for l in range(len(alphas)))
    return NormalSystem(rope=rope, layout=lay, rows=tuple(rows), free_params=free)


@dataclass(frozen=True)
class SolutionRecord:
    """One solution of families 1-3, as polynomials keyed like the unknowns."""

    p: dict  # (i, j) -> HomPoly, i <= j
    ps: dict  # s (0-based column) -> HomPoly
    q: dict  # (l, i, j) -> HomPoly
    vector: tuple  # raw coordinates in the layout


@dataclass(frozen=True)
class NormalSections:
    h0: int
    basis: tuple  # SolutionRecord
    free_params: int
    condition58: bool
    system: NormalSystem


def _vector_to_record(rope: Rope, lay: UnknownLayout, vec) -> SolutionRecord:
    K = rope.field
    p = {}
    for (i, j), off in lay.p_offsets.items():
        p[(i, j)] = HomPoly(K, vec[off : off + 3])
    ps = {}
    for s, off in lay.ps_offsets.items():
        ps[s] = HomPoly(K, vec[off : off + lay.betas[s] + 2])
    q = {}
    for (l, i, j), off in lay.q_offsets.items():
        q[(l, i, j)] = HomPoly(K, vec[off : off + lay.alphas[l] + 2])
    return SolutionRecord(p=p, ps=ps, q=q, vector=tuple(vec))


def record_to_vector(rope: Rope, lay: UnknownLayout, p=None, ps=None, q=None):
    """Dense layout vector from polynomial data (missing keys are zero)."""
    K = rope.field
    vec = [K.zero] * lay.total
    def put(off, dim, poly):
        if poly is None or poly.is_zero:
            return
        if poly.degree + 1 > dim:
            raise ShapeError("polynomial too long for its slot")
        for c, v in enumerate(poly.coeffs):
            vec[off + c] = v
    for (i, j), off in lay.p_offsets.items():
        put(off, 3, (p or {}).get((i, j)))
    for s, off in lay.ps_offsets.items():
        put(off, lay.betas[s] + 2, (ps or {}).get(s))
    for (l, i, j), off in lay.q_offsets.items():
        put(off, lay.alphas[l] + 2, (q or {}).get((l, i, j)))
    return vec


def h0_normal(rope: Rope) -> NormalSections:
    """Exact dimension of the space of normal-sheaf sections, with basis."""
    system = assemble_system(rope)
    K = rope.field
    null = sparse_nullspace(K, system.rows, system.layout.total)
    basis = tuple(_vector_to_record(rope, system.layout, v) for v in null)
    sections = NormalSections(
        h0=len(null) + system.free_params,
        basis=basis,
        free_params=system.free_params,
        condition58=False,
        system=system,
    )
    cond = check_condition_58(rope, sections)
    return NormalSections(
        h0=sections.h0, basis=basis, free_params=system.free_params,
        condition58=cond, system=system,
    )


def check_pij(rope: Rope, sections: NormalSections) -> bool:
    """Prop-5.4 shape of the P-block of the solution space.

    All P^{ij} vanish, except for 2-ropes of genus -1 where the block is the
    line spanned by the products a_{0i} a_{0j} of the single row of A.
    """
    K = rope.field
    lay = sections.system.layout
    nslots = 3 * len(lay.p_offsets)
    pvecs = []
    for rec in sections.basis:
        v = []
        for (i, j) in sorted(lay.p_offsets):
            off = lay.p_offsets[(i, j)]
            v.extend(rec.vector[off : off + 3])
        if any(v):
            pvecs.append(v)
    special = rope.degree == 2 and rope.genus == -1
    if not special:
        return not pvecs
    arow = rope.A.entries[0]
    expected = {}
    for i in range(rope.r + 1):
        for j in range(i, rope.r + 1):
            expected[(i, j)] = hp_mul(arow[i], arow[j])
    ev = []
    for (i, j) in sorted(lay.p_offsets):
        poly = expected[(i, j)]
        cs = list(poly.coeffs) + [K.zero] * (3 - len(poly.coeffs))
        ev.extend(cs[:3])
    return same_span(K, pvecs, [ev])


def check_condition_58(rope: Rope, sections: NormalSections) -> bool:
    """P = B^t lambda solvable with linear lambda, for every basis solution."""
    K = rope.field
    r, k = rope.r, rope.k
    lay = sections.system.layout
    rhs_col = 2 * (r + 1)
    for rec in sections.basis:
        rows = []
        for s in range(k):
            deg = lay.betas[s] + 1
            eq = [dict() for _ in range(deg + 1)]
            for i in range(r + 1):
                _acc(K, eq, 2 * i, 2, rope.B.entries[i][s], +1)
            ps = rec.ps[s]
            for m, row in enumerate(eq):
                c = ps.coeffs[m] if m < len(ps.coeffs) else K.zero
                if c:
                    row[rhs_col] = K.neg(c)
            rows.extend(e for e in eq if e)
        if not solvable(K, rows, rhs_col):
            return False
    return True


def normal_lower_bound(rope: Rope) -> int:
    """(r+1)(2+k-g) - k^2 plus the correction sum, valid for deg >= 3, alpha_0 >= 2."""
    if rope.degree <= 2:
        raise PreconditionViolated("lower bound needs degree at least 3")
    if rope.alpha[0] < 2:
        raise PreconditionViolated("lower bound needs alpha_0 >= 2")
    r, k, g = rope.r, rope.k, rope.genus
    al = rope.alpha
    corr = 0
    for l in range(len(al)):
        for h in range(len(al)):
            for v in range(h, len(al)):
                corr += max(0, al[l] - al[h] - al[v] + 2)
    return (r + 1) * (2 + k - g) - k * k + corr


def expected_h0_if_58(rope: Rope) -> int:
    """The lower bound as an exact prediction (equality under Condition 5.8)."""
    return normal_lower_bound(rope)


def double_line_formula(n: int, g: int, characteristic: int) -> int:
    """Closed form for h^0 of the normal sheaf of a double line."""
    if n < 3 or g > -1:
        raise PreconditionViolated("need n >= 3 and g <= -1")
    if g == -1:
        return 4 * (n - 1)
    if characteristic == 2:
        return n * (3 - g) - 6
    return (n - 1) * (3 - g) - 1


# -- the Prop 5.6 closed-form solutions -------------------------------------------


def _block_span(rope: Rope) -> int:
    """m with C spanning P^m, from the block normal form (A' | 0)."""
    arow_zero = [all(rope.A.entries[l][j].is_zero for l in range(rope.A.nrows))
                 for j in range(rope.r + 1)]
    pad = 0
    for z in reversed(arow_zero):
        if not z:
            break
        pad += 1
    if any(arow_zero[: rope.r + 1 - pad]):
        raise ShapeError("matrices not in block normal form: interior zero column of A")
    return rope.n - pad


def _hb_constant(rope: Rope, m: int):
    """c with a_{0j} = c * (-1)^j det(B_j) on the nondegenerate block."""
    K = rope.field
    rows = list(range(m - 1))
    cols = [s for s in range(rope.k) if rope.B.source.twists[s] - 1 >= 1]
    for j in range(m - 1):
        d = submatrix_det(rope.B, [i for i in rows if i != j], cols)
        if d.is_zero:
            continue
        a0j = rope.A.entries[0][j]
        if a0j.is_zero:
            raise ShapeError("vanishing entry of A on the nondegenerate block")
        lead = next(i for i, c in enumerate(d.coeffs) if c)
        ratio = K.div(a0j.coeffs[lead], d.coeffs[lead])
        c = ratio if j % 2 == 0 else K.neg(ratio)
        signed = hp_scale(d, ratio)
        if signed == a0j:
            return c
        raise ShapeError("A is not proportional to the signed maximal minors of B")
    raise ShapeError("all maximal minors of the B block vanish")


def double_line_solution_oracle(rope: Rope, parameters) -> SolutionRecord:
    """Explicit solution of equation family 3 for a 2-rope.

    In characteristic != 2, ``parameters`` is ``{"lam": [r+1 linear HomPoly]}``.
    In characteristic 2 it is ``{"ps": {s: HomPoly}, "lam": {s: HomPoly},
    "cprime": scalar, "p1": HomPoly}`` where ``ps`` gives P^s on the
    nondegenerate block, ``lam`` the linear forms for the identity columns,
    and ``cprime``/``p1`` appear only for genus -1.
    """
    if rope.degree != 2:
        raise ShapeError("oracle applies to 2-ropes only")
    K = rope.field
    r = rope.r
    m = _block_span(rope)
    lay = _build_layout(rope)
    arow = rope.A.entries[0]
    B = rope.B
    # identify columns: B' columns have degree >= 1, identity columns degree 0
    id_cols = [s for s in range(rope.k) if lay.betas[s] == 0]
    bp_cols = [s for s in range(rope.k) if lay.betas[s] >= 1]
    if len(bp_cols) != m - 2 or len(id_cols) != rope.n - m:
        raise ShapeError("column degrees inconsistent with block normal form")
    id_row = {}
    for s in id_cols:
        ones = [i for i in range(r + 1) if not B.entries[i][s].is_zero]
        if len(ones) != 1 or B.entries[ones[0]][s].degree != 0:
            raise ShapeError("identity column is not a coordinate vector")
        id_row[s] = ones[0]

    if K.char != 2:
        lam = list(parameters["lam"])
        if len(lam) != r + 1:
            raise CharMismatch(f"need r+1 = {r + 1} linear forms")
        half = K.inv(K.of(2))
        ps = {}
        for s in bp_cols:
            acc = hp_zero(K)
            for j in range(m - 1):
                if not lam[j].is_zero and not B.entries[j][s].is_zero:
                    acc = hp_add(acc, hp_mul(lam[j], B.entries[j][s]))
            ps[s] = hp_neg(hp_scale(acc, half)) if not acc.is_zero else acc
        for s in id_cols:
            ps[s] = hp_neg(lam[id_row[s]])
        q = {}
        for i in range(r + 1):
            for j in range(i, r + 1):
                if j <= m - 2:
                    term = hp_add(hp_mul(lam[i], arow[j]), hp_mul(lam[j], arow[i]))
                    q[(0, i, j)] = hp_scale(term, half)
                elif i <= m - 2:
                    q[(0, i, j)] = hp_mul(lam[j], arow[i])
                else:
                    q[(0, i, j)] = hp_zero(K)
        vec = record_to_vector(rope, lay, ps=ps, q=q)
        return _vector_to_record(rope, lay, vec)

    # characteristic 2
    ps_in = dict(parameters.get("ps", {}))
    lam_in = dict(parameters.get("lam", {}))
    cprime = parameters.get("cprime")
    p1 = parameters.get("p1")
    ps = {}
    for s in bp_cols:
        ps[s] = ps_in.get(s, hp_zero(K))
    for s in id_cols:
        ps[s] = lam_in.get(s, hp_zero(K))
    q = {(0, i, j): hp_zero(K) for i in range(r + 1) for j in range(i, r + 1)}
    if rope.genus <= -2:
        c_hb = _hb_constant(rope, m)
        pvec = [ps[s] for s in bp_cols]
        rows_nd = list(range(m - 1))
        for j in range(m - 1):
            others = [i for i in rows_nd if i != j]
            for pos, i in enumerate(others):
                # adj((B_j)^t)_{pos, h} = cofactor: (-1)^(pos+h) det(B_j^t minus row h col pos)
                acc = hp_zero(K)
                for h in range(m - 2):
                    sub_rows = [x for x in others if x != i]
                    sub_cols = [y for y in range(m - 2) if y != h]
                    minor = submatrix_det(B, sub_rows, sub_cols)
                    if minor.is_zero or pvec[h].is_zero:
                        continue
                    val = hp_mul(minor, pvec[h])
                    if (pos + h) % 2:
                        val = hp_neg(val)
                    acc = hp_add(acc, val)
                if acc.is_zero:
                    continue
                sgn = c_hb if (j + 1) % 2 == 0 else K.neg(c_hb)
                key = (0, min(i, j), max(i, j))
                q[key] = hp_scale(acc, sgn)
    else:  # genus -1: m = 3, B' is 2 x 1
        if cprime is None:
            cprime = K.zero
        if p1 is None:
            p1 = hp_zero(K)
        s0 = bp_cols[0]
        ps[s0] = p1
        c_dd = None  # b = c'' * (a01, -a00)
        if not arow[1].is_zero:
            b0 = B.entries[0][s0]
            lead_b = next(c for c in b0.coeffs if c)
            lead_a = arow[1].coeffs[next(i for i, c in enumerate(b0.coeffs) if c)]
            c_dd = K.div(lead_b, lead_a)
        if c_dd is None or hp_scale(arow[1], c_dd) != B.entries[0][s0]:
            raise ShapeError("B block is not proportional to (a01, -a00)")
        q[(0, 0, 0)] = hp_scale(hp_mul(arow[0], arow[0]), cprime)
        q[(0, 1, 1)] = hp_scale(hp_mul(arow[1], arow[1]), cprime)
        q[(0, 0, 1)] = hp_add(
            hp_scale(hp_mul(arow[0], arow[1]), cprime), hp_scale(p1, K.inv(c_dd))
        )
    # cross terms: Q^{ij} = a_{0i} P^j for i <= m-2 < j (char 2: sign-free)
    for j in id_cols:
        jr = id_row[j]
        for i in range(m - 1):
            if not arow[i].is_zero and not ps[j].is_zero:
                q[(0, min(i, jr), max(i, jr))] = hp_mul(arow[i], ps[j])
    vec = record_to_vector(rope, lay, ps=ps, q=q)
    return _vector_to_record(rope, lay, vec)


def oracle_residual(rope: Rope, system: NormalSystem, record: SolutionRecord) -> bool:
    """True iff the record satisfies every assembled equation exactly."""
    K = rope.field
    for row in system.rows:
        acc = K.zero
        for slot, c in row.items():
            v = record.vector[slot]
            if v:
                acc = K.add(acc, K.mul(K.of(c), v))
        if acc:
            return False
    return True
