"""Gaussian elimination over finite fields.

Pivoting takes the first row (from the current one down) with a nonzero
entry in the column; columns are scanned left to right.  That fixed order
makes nullspace bases reproducible bit for bit.
"""
from __future__ import annotations

from typing import Sequence

from .field import Field, FieldElement


def rref(F: Field, rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    for r in M:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    nrows = len(M)
    mul, sub = F.mul, F.sub
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        inv = F.inv(row[c])
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] = mul(row[j], inv)
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    other = M[i]
                    for j in nz:
                        other[j] = sub(other[j], mul(f, row[j]))
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace(F: Field, rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : A v = 0}, one vector per free column in increasing order."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][free])
        basis.append(v)
    return basis


def solve(F: Field, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """One particular solution of A v = b (free variables set to 0), or None."""
    if len(rows) != len(rhs):
        raise ValueError("rhs length does not match row count")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [0] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = R[r][ncols]
    return v


def solve_linear_system(A: Sequence[Sequence[int | FieldElement]], field: Field | None = None,
                        homogeneous: bool = True, rhs: Sequence[int | FieldElement] | None = None):
    """Nullspace basis (homogeneous) or a particular solution / None.

    Entries may be raw integers (``field`` required) or FieldElements.
    """
    if field is None:
        field = next((v.field for r in A for v in r if isinstance(v, FieldElement)), None)
        if field is None:
            raise ValueError("field is required for integer matrices")
    rows = [[field.check(int(v)) for v in r] for r in A]
    if homogeneous:
        return nullspace(field, rows)
    if rhs is None:
        raise ValueError("rhs required for an inhomogeneous system")
    return solve(field, rows, [field.check(int(b)) for b in rhs])
