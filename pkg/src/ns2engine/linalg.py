"""Exact Gaussian elimination over the Scalar field.

Matrices are lists of lists of Scalar; rows are mutated in place by the
elimination routines, so callers pass copies when they need the original.
"""

from __future__ import annotations

from .scalars import Scalar


def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    n_cols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pr = None
        for k in range(r, len(rows)):
            if not rows[k][c].is_zero():
                pr = k
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = rowr = [x * inv for x in rows[r]]
        # touch only the pivot row's nonzero columns during elimination
        nz = [(i, b) for i, b in enumerate(rowr) if not b.is_zero()]
        for k in range(len(rows)):
            if k != r:
                rowk = rows[k]
                f = rowk[c]
                if not f.is_zero():
                    nf = -f
                    for i, b in nz:
                        rowk[i] = rowk[i] + nf * b
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: list[list[Scalar]]) -> int:
    return len(rref([list(row) for row in rows])[0])


def kernel_basis(rows: list[list[Scalar]], m: int, width: int | None = None) -> list[list[Scalar]]:
    """Basis of the right kernel of the matrix (coordinates as Scalars).

    With no rows the matrix is the zero map, whose kernel is the full
    space; `width` supplies the column count in that case.
    """
    if not rows:
        if not width:
            return []
        basis = []
        for c in range(width):
            vec = [Scalar.zero(m) for _ in range(width)]
            vec[c] = Scalar.one(m)
            basis.append(vec)
        return basis
    n_cols = len(rows[0])
    red, pivots = rref([list(row) for row in rows])
    piv_set = set(pivots)
    free = [c for c in range(n_cols) if c not in piv_set]
    basis = []
    for fc in free:
        vec = [Scalar.zero(m) for _ in range(n_cols)]
        vec[fc] = Scalar.one(m)
        for r_idx, pc in enumerate(pivots):
            vec[pc] = -red[r_idx][fc]
        basis.append(vec)
    return basis


class SubspaceReducer:
    """Reduction modulo the row span of a set of vectors.

    Stores the RREF of the spanning set; reduce() subtracts the unique
    combination of RREF rows matching the pivot coordinates, leaving a
    canonical representative supported on non-pivot columns.
    """

    def __init__(self, spanning_rows: list[list[Scalar]], n_cols: int, m: int):
        self.n_cols = n_cols
        self.m = m
        self.rows, self.pivots = rref([list(r) for r in spanning_rows])
        piv_set = set(self.pivots)
        self.free = [c for c in range(n_cols) if c not in piv_set]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: list[Scalar]) -> list[Scalar]:
        out = list(vec)
        for r_idx, pc in enumerate(self.pivots):
            f = out[pc]
            if not f.is_zero():
                row = self.rows[r_idx]
                out = [a - f * b for a, b in zip(out, row)]
        return out

    def contains(self, vec: list[Scalar]) -> bool:
        return all(c.is_zero() for c in self.reduce(vec))
