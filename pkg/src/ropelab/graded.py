"""Graded free modules over S = K[t,u] and degree-preserving maps.

A module with twist list (a_0, ..., a_m) is ⊕_j S(-a_j): generator j sits in
degree a_j, and [S(-a)]_d has basis t^(d-a-i) u^i for 0 <= i <= d-a.  Kernels
are computed degree by degree with exact linear algebra; generic ranks use
fraction-free Bareiss elimination so no randomness is involved.
"""

from __future__ import annotations

from itertools import combinations

from .bivar import (
    HomPoly,
    hp_add,
    hp_divmod,
    hp_eval,
    hp_gcd,
    hp_monomial,
    hp_mul,
    hp_neg,
    hp_scale,
    hp_sub,
    hp_zero,
)
from .errors import BoundTooSmall, DegreeMismatch, FieldMismatch, InternalError, ShapeError
from .fields import Field
from .linalg import Eliminator, sparse_nullspace, sparse_rank


class GradedFreeModule:
    __slots__ = ("field", "twists")

    def __init__(self, field: Field, twists):
        self.field = field
        self.twists = tuple(twists)

    def dim(self, d: int) -> int:
        """Dimension of the degree-d piece."""
        return sum(max(0, d - a + 1) for a in self.twists)

    def basis(self, d: int):
        """Degree-d monomial basis as (generator index, u-power) pairs."""
        return [(j, i) for j, a in enumerate(self.twists) for i in range(d - a + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.field == other.field
            and self.twists == other.twists
        )

    def __repr__(self):
        return f"GradedFreeModule({self.twists})"


class GradedMap:
    """Matrix of HomPoly entries; entry (i, j) is homogeneous of degree
    source_twist[j] - target_twist[i], and Zero whenever that is negative."""

    __slots__ = ("field", "source", "target", "entries")

    def __init__(self, field: Field, source_twists, target_twists, entries):
        self.field = field
        self.source = GradedFreeModule(field, source_twists)
        self.target = GradedFreeModule(field, target_twists)
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != len(self.target.twists):
            raise ShapeError(f"{len(rows)} rows for {len(self.target.twists)} target twists")
        for i, row in enumerate(rows):
            if len(row) != len(self.source.twists):
                raise ShapeError(f"row {i} has {len(row)} entries")
            for j, e in enumerate(row):
                if e.field != field:
                    raise FieldMismatch("entry field differs from map field")
                want = self.source.twists[j] - self.target.twists[i]
                if not e.is_zero and e.degree != want:
                    raise DegreeMismatch(
                        f"entry ({i},{j}) has degree {e.degree}, expected {want}"
                    )
        self.entries = rows

    @property
    def nrows(self) -> int:
        return len(self.target.twists)

    @property
    def ncols(self) -> int:
        return len(self.source.twists)

    def entry(self, i: int, j: int) -> HomPoly:
        return self.entries[i][j]

    def __repr__(self):
        return f"GradedMap({self.nrows}x{self.ncols}, src={self.source.twists}, tgt={self.target.twists})"

    def transpose_map(self, source_twist: int = 1) -> "GradedMap":
        """The transposed matrix as a graded map S^rows(-source_twist) -> ...

        Row i of the transpose has the degrees of column i of self; target
        twists are derived so every entry slot is consistent.
        """
        K = self.field
        tgt = []
        for j in range(self.ncols):
            degs = {e.degree for e in (self.entries[i][j] for i in range(self.nrows)) if not e.is_zero}
            if len(degs) > 1:
                raise DegreeMismatch(f"column {j} entries not of one degree: {degs}")
            d = degs.pop() if degs else self.source.twists[j] - self.target.twists[0]
            tgt.append(source_twist - d)
        entries = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMap(K, [source_twist] * self.nrows, tgt, entries)

    def to_json(self):
        return {
            "source_twists": list(self.source.twists),
            "target_twists": list(self.target.twists),
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json(field: Field, obj) -> "GradedMap":
        entries = [[HomPoly.from_json(field, e) for e in row] for row in obj["entries"]]
        return GradedMap(field, obj["source_twists"], obj["target_twists"], entries)


def graded_map(field, source_twists, target_twists, entries) -> GradedMap:
    return GradedMap(field, source_twists, target_twists, entries)


def compose(m1: GradedMap, m2: GradedMap) -> GradedMap:
    """m1 ∘ m2 (matrix product m1 · m2)."""
    if m1.source.twists != m2.target.twists:
        raise ShapeError("composition twist mismatch")
    K = m1.field
    out = []
    for i in range(m1.nrows):
        row = []
        for j in range(m2.ncols):
            acc = hp_zero(K)
            for l in range(m1.ncols):
                a, b = m1.entries[i][l], m2.entries[l][j]
                if not a.is_zero and not b.is_zero:
                    acc = hp_add(acc, hp_mul(a, b))
            row.append(acc)
        out.append(row)
    return GradedMap(K, m2.source.twists, m1.target.twists, out)


def is_zero_map(m: GradedMap) -> bool:
    return all(e.is_zero for row in m.entries for e in row)


# -- degree pieces -------------------------------------------------------------


def _offsets(twists, d):
    off, total = [], 0
    for a in twists:
        off.append(total)
        total += max(0, d - a + 1)
    return off, total


def degree_piece_rows(m: GradedMap, d: int):
    """Sparse rows (dicts col -> scalar) of the induced K-linear map."""
    src_off, ncols = _offsets(m.source.twists, d)
    tgt_off, nrows = _offsets(m.target.twists, d)
    rows = [dict() for _ in range(nrows)]
    K = m.field
    for i, b in enumerate(m.target.twists):
        ti = tgt_off[i]
        tdim = max(0, d - b + 1)
        if tdim == 0:
            continue
        for j, a in enumerate(m.source.twists):
            e = m.entries[i][j]
            if e.is_zero:
                continue
            sj = src_off[j]
            for s in range(max(0, d - a + 1)):  # source monomial u-power s
                for l, c in enumerate(e.coeffs):
                    if c:
                        row = rows[ti + s + l]
                        col = sj + s
                        prev = row.get(col)
                        row[col] = K.add(prev, c) if prev is not None else c
    return rows, nrows, ncols


def degree_piece(m: GradedMap, d: int):
    """Dense matrix of [source]_d -> [target]_d in the monomial bases."""
    rows, nrows, ncols = degree_piece_rows(m, d)
    K = m.field
    return [[rows[i].get(j, K.zero) for j in range(ncols)] for i in range(nrows)]


def degree_piece_rank(m: GradedMap, d: int) -> int:
    rows, _, _ = degree_piece_rows(m, d)
    return sparse_rank(m.field, rows)


def coker_hilbert(m: GradedMap, d: int) -> int:
    """dim [target]_d minus the rank of the degree-d piece."""
    return m.target.dim(d) - degree_piece_rank(m, d)


# -- generic (fraction-field) rank ---------------------------------------------


def _hp_exact_quotient(num: HomPoly, den: HomPoly) -> HomPoly:
    q, r = hp_divmod(num, den)
    if q is None or not r.is_zero:
        raise InternalError("Bareiss division not exact")
    return q


def generic_rank(m: GradedMap) -> int:
    """Rank over the fraction field of S, by fraction-free Bareiss elimination."""
    M = [list(row) for row in m.entries]
    nrows, ncols = len(M), len(M[0]) if M else 0
    rank = 0
    prev = None
    while True:
        pi = pj = None
        for i in range(rank, nrows):
            for j in range(rank, ncols):
                if not M[i][j].is_zero:
                    pi, pj = i, j
                    break
            if pi is not None:
                break
        if pi is None:
            return rank
        M[rank], M[pi] = M[pi], M[rank]
        if pj != rank:
            for row in M:
                row[rank], row[pj] = row[pj], row[rank]
        piv = M[rank][rank]
        for i in range(rank + 1, nrows):
            for j in range(rank + 1, ncols):
                num = hp_sub(hp_mul(M[i][j], piv), hp_mul(M[i][rank], M[rank][j]))
                if prev is not None and not num.is_zero:
                    num = _hp_exact_quotient(num, prev)
                M[i][j] = num
            M[i][rank] = hp_zero(m.field)
        prev = piv
        rank += 1
        if rank == min(nrows, ncols):
            return rank


def eval_matrix(m: GradedMap, t0, u0):
    """Evaluate all entries at a point of K^2 (dense scalar matrix)."""
    return [[hp_eval(e, t0, u0) for e in row] for row in m.entries]


# -- minors and the codimension-two test ----------------------------------------


def _sparse_det(field: Field, M, rows, cols) -> HomPoly:
    """Determinant by cofactor expansion along the sparsest remaining row."""
    if not rows:
        from .bivar import hp_const

        return hp_const(field, 1)
    best, best_nnz = None, None
    for ri, i in enumerate(rows):
        nnz = sum(1 for j in cols if not M[i][j].is_zero)
        if best_nnz is None or nnz < best_nnz:
            best, best_nnz = ri, nnz
            if nnz <= 1:
                break
    if best_nnz == 0:
        return hp_zero(field)
    i = rows[best]
    sub_rows = rows[:best] + rows[best + 1 :]
    acc = hp_zero(field)
    for cj, j in enumerate(cols):
        e = M[i][j]
        if e.is_zero:
            continue
        sub_cols = cols[:cj] + cols[cj + 1 :]
        minor = _sparse_det(field, M, sub_rows, sub_cols)
        term = hp_mul(e, minor)
        if (best + cj) % 2:
            term = hp_neg(term)
        acc = hp_add(acc, term)
    return acc


def det(m: GradedMap) -> HomPoly:
    if m.nrows != m.ncols:
        raise ShapeError("determinant of a non-square matrix")
    return _sparse_det(m.field, m.entries, list(range(m.nrows)), list(range(m.ncols)))


def submatrix_det(m: GradedMap, rows, cols) -> HomPoly:
    return _sparse_det(m.field, m.entries, list(rows), list(cols))


def maximal_minors(m: GradedMap):
    """All minors of size min(rows, cols), subsets enumerated in lex order."""
    k = min(m.nrows, m.ncols)
    if k < 1:
        raise ShapeError("matrix has no maximal minors")
    out = []
    if m.nrows >= m.ncols:
        for rows in combinations(range(m.nrows), k):
            out.append(submatrix_det(m, rows, range(k)))
    else:
        for cols in combinations(range(m.ncols), k):
            out.append(submatrix_det(m, range(k), cols))
    return out


def minors_codim2(m: GradedMap) -> bool:
    """True iff the maximal minors are not all zero and share no common factor.

    Over K[t,u] the ideal of maximal minors has codimension 2 exactly when its
    gcd is a unit.  Minors are accumulated into a running gcd with early exit.
    """
    k = min(m.nrows, m.ncols)
    if k < 1:
        return False
    g = None
    if m.nrows >= m.ncols:
        subsets = ((rows, tuple(range(k))) for rows in combinations(range(m.nrows), k))
    else:
        subsets = ((tuple(range(k)), cols) for cols in combinations(range(m.ncols), k))
    for rows, cols in subsets:
        d = submatrix_det(m, rows, cols)
        if d.is_zero:
            continue
        g = d if g is None else hp_gcd([g, d])
        if g.degree == 0:
            return True
    return g is not None and g.degree == 0


# -- kernels ---------------------------------------------------------------------


def default_kernel_bound(m: GradedMap) -> int:
    """max source twist + sum of per-row entry degrees + 2 (safe, certified)."""
    row_deg = 0
    for row in m.entries:
        degs = [e.degree for e in row if not e.is_zero]
        if degs:
            row_deg += max(degs)
    return max(m.source.twists) + row_deg + 2


def _flatten(element, twists, d, src_off, ncols, K):
    """Column vector of HomPoly (degree d) -> dense coordinates in [source]_d."""
    v = [K.zero] * ncols
    for j, comp in enumerate(element):
        if comp.is_zero:
            continue
        base = src_off[j]
        for i, c in enumerate(comp.coeffs):
            if c:
                v[base + i] = c
    return v


def kernel_generators(m: GradedMap, degree_bound: int | None = None) -> GradedMap:
    """Minimal generators of ker m, found degree by degree.

    Returns a graded map kappa into m.source with m ∘ kappa = 0 whose source
    twists are the generator degrees in ascending order.  Every candidate that
    is not already in S_+ · (earlier generators) is kept, with the first
    nonzero coordinate normalized to 1.
    """
    K = m.field
    if degree_bound is None:
        degree_bound = default_kernel_bound(m)
    if degree_bound < max(m.source.twists) + 1:
        raise BoundTooSmall("degree bound below smallest possible generator degree")
    gens = []  # (degree, tuple of HomPoly per source component)
    src_twists = m.source.twists
    for d in range(min(src_twists), degree_bound + 1):
        rows, _, ncols = degree_piece_rows(m, d)
        if ncols == 0:
            continue
        null = sparse_nullspace(K, rows, ncols)
        if not null:
            continue
        src_off, _ = _offsets(src_twists, d)
        span = Eliminator(K)
        for e, comps in gens:
            for a in range(d - e + 1):
                mono = hp_monomial(K, 1, d - e - a, a)
                mult = [hp_mul(mono, comp) if not comp.is_zero else comp for comp in comps]
                vec = _flatten(mult, src_twists, d, src_off, ncols, K)
                span.insert({i: c for i, c in enumerate(vec) if c})
        for v in null:
            if span.insert({i: c for i, c in enumerate(v) if c}):
                lead = next(c for c in v if c)
                inv = K.inv(lead)
                comps = []
                for j, a in enumerate(src_twists):
                    lo = src_off[j]
                    cs = [K.mul(inv, c) for c in v[lo : lo + max(0, d - a + 1)]]
                    comps.append(HomPoly(K, cs))
                gens.append((d, tuple(comps)))
    if any(e >= degree_bound - 1 for e, _ in gens):
        raise BoundTooSmall(
            "kernel generators appear at the top of the degree window; raise the bound"
        )
    corank = m.ncols - generic_rank(m)
    if len(gens) != corank:
        raise InternalError(
            f"kernel not free as expected: {len(gens)} generators vs corank {corank}"
        )
    entries = [[gens[q][1][j] for q in range(len(gens))] for j in range(m.ncols)]
    kappa = GradedMap(K, [e for e, _ in gens], src_twists, entries)
    if not is_zero_map(compose(m, kappa)):
        raise InternalError("kernel generators do not compose to zero")
    return kappa
