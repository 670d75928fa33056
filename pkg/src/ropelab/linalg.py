"""Sparse exact Gaussian elimination over Q and F_p.

Rows are dicts column -> scalar.  Over Q the elimination is fraction-free:
rows are cleared to integers and combined by cross-multiplication with gcd
normalization, so no Fraction arithmetic happens in the hot loop.  Over F_p
rows stay reduced mod p.  Pivoting is by first nonzero column, matching the
deterministic bases promised to callers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import Field


def _clear_row(row: dict) -> dict:
    """Scale a Q-row to coprime integers (sign of first entry preserved)."""
    if not row:
        return row
    denom = 1
    for v in row.values():
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = {c: int(v * denom) if isinstance(v, Fraction) else v * denom for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


class Eliminator:
    """Incremental row reducer keeping pivot rows keyed by leading column."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Reduce a row against the current pivots; returns the residue."""
        p = self.field.char
        if p == 0:
            row = _clear_row({c: v for c, v in row.items() if v})
        else:
            row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            if p == 0:
                a, b = piv[c], row[c]
                new = {}
                for col, v in row.items():
                    new[col] = v * a
                for col, v in piv.items():
                    w = new.get(col, 0) - v * b
                    if w:
                        new[col] = w
                    else:
                        new.pop(col, None)
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                row = {col: v // g for col, v in new.items()} if g > 1 else new
            else:
                b = row[c] * pow(piv[c], -1, p) % p
                new = dict(row)
                for col, v in piv.items():
                    w = (new.get(col, 0) - v * b) % p
                    if w:
                        new[col] = w
                    else:
                        new.pop(col, None)
                row = new
        return row

    def insert(self, row: dict) -> bool:
        """Reduce and, if independent, store as a new pivot row."""
        res = self.reduce(row)
        if res:
            self.pivots[min(res)] = res
            return True
        return False

    def nullspace(self, ncols: int) -> list:
        """Canonical kernel basis, one vector per free column, ascending.

        Vectors are dense lists of field scalars with the free coordinate
        normalized to 1.
        """
        K = self.field
        free = [c for c in range(ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            v = {f: K.one}
            for c in order:
                if c > f:
                    continue
                piv = self.pivots[c]
                acc = K.zero
                for col, w in piv.items():
                    if col != c and col in v:
                        acc = K.add(acc, K.mul(K.of(w), v[col]))
                if acc:
                    v[c] = K.neg(K.div(acc, K.of(piv[c])))
            basis.append([v.get(c, K.zero) for c in range(ncols)])
        return basis


def sparse_rank(field: Field, rows) -> int:
    elim = Eliminator(field)
    for row in rows:
        elim.insert(row)
    return elim.rank


def sparse_nullspace(field: Field, rows, ncols: int) -> list:
    elim = Eliminator(field)
    for row in rows:
        elim.insert(row)
    return elim.nullspace(ncols)


def dense_to_sparse(matrix) -> list:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def matrix_rank(field: Field, matrix) -> int:
    return sparse_rank(field, dense_to_sparse(matrix))


def matrix_nullspace(field: Field, matrix, ncols: int | None = None) -> list:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return sparse_nullspace(field, dense_to_sparse(matrix), ncols)


def solvable(field: Field, rows, rhs_col: int) -> bool:
    """Consistency of [M | b]: no pivot may land in the rhs column.

    ``rows`` are sparse rows of the augmented matrix; ``rhs_col`` is the
    column index holding b.
    """
    elim = Eliminator(field)
    for row in rows:
        elim.insert(row)
    return rhs_col not in elim.pivots


def span_rank(field: Field, vectors) -> int:
    """Rank of a list of dense vectors."""
    return sparse_rank(field, dense_to_sparse(vectors))


def same_span(field: Field, vecs_a, vecs_b) -> bool:
    """True iff two lists of dense vectors span the same subspace."""
    ra = span_rank(field, vecs_a)
    rb = span_rank(field, vecs_b)
    if ra != rb:
        return False
    return span_rank(field, list(vecs_a) + list(vecs_b)) == ra
