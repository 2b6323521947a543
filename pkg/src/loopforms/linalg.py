"""Deterministic exact linear algebra over cyclotomic scalars.

Row reduction always picks the first nonzero column and, within it, the first
row with a nonzero entry, so reduced forms (and therefore kernel bases) are
canonical: the same input yields the same output bit for bit.  Kernel bases
are additionally re-reduced so the returned vectors are themselves in reduced
row-echelon form.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .cyclo import CycloNum

Vector = tuple[CycloNum, ...]
Matrix = tuple[Vector, ...]

__all__ = [
    "Matrix",
    "SpanSolver",
    "Vector",
    "identity_matrix",
    "is_identity",
    "mat_inverse",
    "mat_mul",
    "mat_pow",
    "mat_vec",
    "nullspace",
    "rank",
    "rref",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "zero_vector",
]


def zero_vector(n: int, order: int) -> Vector:
    z = CycloNum.zero(order)
    return (z,) * n


def vec_add(a: Sequence[CycloNum], b: Sequence[CycloNum]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[CycloNum], b: Sequence[CycloNum]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: CycloNum, a: Sequence[CycloNum]) -> Vector:
    return tuple(c * x for x in a)


def identity_matrix(n: int, order: int) -> Matrix:
    one = CycloNum.one(order)
    zero = CycloNum.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_vec(mat: Sequence[Sequence[CycloNum]], v: Sequence[CycloNum]) -> Vector:
    out = []
    for row in mat:
        acc = None
        for a, x in zip(row, v):
            if a.is_zero() or x.is_zero():
                continue
            term = a * x
            acc = term if acc is None else acc + term
        if acc is None:
            acc = CycloNum.zero(row[0].order if row else v[0].order)
        out.append(acc)
    return tuple(out)


def mat_mul(a: Sequence[Sequence[CycloNum]], b: Sequence[Sequence[CycloNum]]) -> Matrix:
    bt = list(zip(*b))
    rows = []
    for arow in a:
        row = []
        for bcol in bt:
            acc = None
            for x, y in zip(arow, bcol):
                if x.is_zero() or y.is_zero():
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else CycloNum.zero(arow[0].order))
        rows.append(tuple(row))
    return tuple(rows)


def mat_pow(mat: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ValueError("negative matrix power not supported here")
    n = len(mat)
    order = mat[0][0].order
    result = identity_matrix(n, order)
    for _ in range(k):
        result = mat_mul(result, mat)
    return result


def is_identity(mat: Sequence[Sequence[CycloNum]]) -> bool:
    for i, row in enumerate(mat):
        for j, entry in enumerate(row):
            if i == j:
                if not (entry - 1).is_zero():
                    return False
            elif not entry.is_zero():
                return False
    return True


def rref(rows: Iterable[Sequence[CycloNum]], pivot_limit: Optional[int] = None) -> tuple[list[list[CycloNum]], list[int]]:
    """Reduced row echelon form; pivots restricted to columns < pivot_limit.

    Returns the reduced rows (zero rows dropped) and the pivot column list.
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    limit = ncols if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    rank_so_far = 0
    for col in range(limit):
        pivot_row = None
        for r in range(rank_so_far, len(work)):
            if not work[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank_so_far], work[pivot_row] = work[pivot_row], work[rank_so_far]
        prow = work[rank_so_far]
        inv = prow[col].inverse()
        for j in range(col, ncols):
            if not prow[j].is_zero():
                prow[j] = inv * prow[j]
        for r in range(len(work)):
            if r == rank_so_far:
                continue
            factor = work[r][col]
            if factor.is_zero():
                continue
            row = work[r]
            for j in range(col, ncols):
                if not prow[j].is_zero():
                    row[j] = row[j] - factor * prow[j]
        pivots.append(col)
        rank_so_far += 1
    return work[:rank_so_far], pivots


def rank(rows: Iterable[Sequence[CycloNum]]) -> int:
    reduced, pivots = rref(rows)
    return len(pivots)


def nullspace(rows: Iterable[Sequence[CycloNum]], ncols: int, order: int) -> list[Vector]:
    """Canonical kernel basis of the linear map given by `rows` (ncols unknowns)."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    zero = CycloNum.zero(order)
    one = CycloNum.one(order)
    basis = []
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = one
        for r, pc in enumerate(pivots):
            entry = reduced[r][f]
            if not entry.is_zero():
                vec[pc] = -entry
        basis.append(vec)
    if not basis:
        return []
    canonical, _ = rref(basis)
    return [tuple(row) for row in canonical]


def mat_inverse(mat: Matrix) -> Matrix:
    n = len(mat)
    order = mat[0][0].order
    ident = identity_matrix(n, order)
    augmented = [list(row) + list(irow) for row, irow in zip(mat, ident)]
    reduced, pivots = rref(augmented, pivot_limit=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return tuple(tuple(reduced[i][n:]) for i in range(n))


class SpanSolver:
    """Express vectors exactly in the span of a fixed list of vectors.

    Precomputes one factorization so repeated membership queries against the
    same span are cheap.
    """

    def __init__(self, vectors: Sequence[Sequence[CycloNum]], ambient_dim: int, order: int):
        self.ambient_dim = ambient_dim
        self.order = order
        self.count = len(vectors)
        # columns of B are the spanning vectors; reduce [B | I] with pivots
        # restricted to the B part, keeping the zero rows: their I-part rows
        # are the consistency functionals for membership queries
        ident = identity_matrix(ambient_dim, order)
        work = []
        for i in range(ambient_dim):
            row = [vectors[k][i] for k in range(self.count)]
            row.extend(ident[i])
            work.append(row)
        ncols = self.count + ambient_dim
        pivots: list[int] = []
        rank_so_far = 0
        for col in range(self.count):
            pivot_row = None
            for r in range(rank_so_far, len(work)):
                if not work[r][col].is_zero():
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            work[rank_so_far], work[pivot_row] = work[pivot_row], work[rank_so_far]
            prow = work[rank_so_far]
            inv = prow[col].inverse()
            for j in range(ncols):
                if not prow[j].is_zero():
                    prow[j] = inv * prow[j]
            for r in range(len(work)):
                if r == rank_so_far:
                    continue
                factor = work[r][col]
                if factor.is_zero():
                    continue
                row = work[r]
                for j in range(ncols):
                    if not prow[j].is_zero():
                        row[j] = row[j] - factor * prow[j]
            pivots.append(col)
            rank_so_far += 1
        self._pivots = pivots
        self._rank = rank_so_far
        self._solve_rows = [row[self.count:] for row in work[:rank_so_far]]
        self._check_rows = [row[self.count:] for row in work[rank_so_far:]]

    def coords(self, v: Sequence[CycloNum]) -> Optional[list[CycloNum]]:
        """Coefficients expressing v in the spanning vectors, or None."""
        for crow in self._check_rows:
            acc = None
            for a, x in zip(crow, v):
                if a.is_zero() or x.is_zero():
                    continue
                term = a * x
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                return None
        zero = CycloNum.zero(self.order)
        out = [zero] * self.count
        for r, pc in enumerate(self._pivots):
            srow = self._solve_rows[r]
            acc = None
            for a, x in zip(srow, v):
                if a.is_zero() or x.is_zero():
                    continue
                term = a * x
                acc = term if acc is None else acc + term
            out[pc] = acc if acc is not None else zero
        return out

    def contains(self, v: Sequence[CycloNum]) -> bool:
        return self.coords(v) is not None
