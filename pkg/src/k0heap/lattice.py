"""Exact integer matrix normal forms: Hermite, Smith, lattice membership.

All arithmetic is arbitrary-precision Python int.  A lattice is always the
integer span of the *rows* of a matrix: relations are row vectors over
generator coordinates.  Entry growth during elimination is kept in check by
always pivoting on a minimal-absolute-value nonzero entry.

Matrices are immutable values; every function returns fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in rows]
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
        else:
            width = 0 if cols is None else cols
        return cls(len(data), width, tuple(x for r in data for x in r))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class InvariantFactors:
    """Canonical shape of a finitely generated abelian group.

    ``rank`` counts infinite cyclic factors; ``torsion`` lists the finite
    invariant factors d1 | d2 | ... with every di >= 2.
    """

    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisibility chain: {a} does not divide {b}")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ matrix @ right`` is diagonal with the given diagonal entries."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def pivot_count(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def identity_matrix(n: int) -> IntMatrix:
    return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError("inner dimensions do not match")
    brows = b.to_rows()
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        acc = [0] * b.cols
        for k, coeff in enumerate(arow):
            if coeff:
                brow = brows[k]
                for j in range(b.cols):
                    acc[j] += coeff * brow[j]
        out.append(acc)
    return IntMatrix.from_rows(out, cols=b.cols)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_sub(target: list[int], source: list[int], q: int) -> None:
    for j in range(len(target)):
        target[j] -= q * source[j]


def _hnf_inplace(a: list[list[int]], u: list[list[int]]) -> list[tuple[int, int]]:
    """Bring ``a`` to row Hermite normal form, mirroring row ops on ``u``.

    Returns the pivot positions (row, col) in order.  Pivots end positive,
    entries above a pivot reduced into [0, pivot), zero rows last.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    pivots: list[tuple[int, int]] = []
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            p = a[r][c]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // p
                    if q:
                        _row_sub(a[i], a[r], q)
                        _row_sub(u[i], u[r], q)
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < m and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            pivots.append((r, c))
            r += 1
    # normalize entries above each pivot into [0, pivot)
    for i, c in pivots:
        p = a[i][c]
        for j in range(i):
            q = a[j][c] // p
            if q:
                _row_sub(a[j], a[i], q)
                _row_sub(u[j], u[i], q)
    return pivots


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with U unimodular and U*M = H."""
    a = m.to_rows()
    u = identity_matrix(m.rows).to_rows()
    _hnf_inplace(a, u)
    return IntMatrix.from_rows(a, cols=m.cols), IntMatrix.from_rows(u, cols=m.rows)


def _pivot_positions(h: IntMatrix) -> list[tuple[int, int]]:
    pivots = []
    for i in range(h.rows):
        row = h.row(i)
        for c, x in enumerate(row):
            if x:
                pivots.append((i, c))
                break
    return pivots


def residue(h: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Reduce ``v`` against a matrix already in row HNF.

    The result is zero exactly when ``v`` lies in the row span of ``h``.
    """
    if len(v) != h.cols:
        raise ValueError(f"vector length {len(v)} does not match {h.cols} columns")
    w = list(v)
    for i, c in _pivot_positions(h):
        p = h.row(i)[c]
        q = w[c] // p
        if q:
            row = h.row(i)
            for j in range(c, h.cols):
                w[j] -= q * row[j]
    return tuple(w)


def lattice_member(m: IntMatrix, v: Sequence[int]) -> bool:
    """True when ``v`` lies in the integer span of the rows of ``m``."""
    h, _ = hnf(m)
    return not any(residue(h, v))


def _col_sub(a: list[list[int]], j: int, t: int, q: int) -> None:
    for row in a:
        row[j] -= q * row[t]


def _col_swap(a: list[list[int]], j: int, t: int) -> None:
    for row in a:
        row[j], row[t] = row[t], row[j]


def smith_decomposition(m: IntMatrix) -> SmithDecomposition:
    """Diagonalize over the integers with unimodular transforms on both sides.

    The diagonal forms a divisibility chain d1 | d2 | ... followed by zeros.
    """
    a = m.to_rows()
    rows, cols = m.rows, m.cols
    u = identity_matrix(rows).to_rows()
    v = identity_matrix(cols).to_rows()
    t = 0
    bound = min(rows, cols)
    while t < bound:
        pos = [(i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not pos:
            break
        i0, j0 = min(pos, key=lambda ij: (abs(a[ij[0]][ij[1]]), ij))
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            _col_swap(a, j0, t)
            _col_swap(v, j0, t)
        while True:
            # clear column t with row operations
            for i in range(rows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        _row_sub(a[i], a[t], q)
                        _row_sub(u[i], u[t], q)
            col_nz = [i for i in range(rows) if i != t and a[i][t]]
            if col_nz:
                i = min(col_nz, key=lambda i: abs(a[i][t]))
                a[t], a[i] = a[i], a[t]
                u[t], u[i] = u[i], u[t]
                continue
            # clear row t with column operations
            for j in range(cols):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        _col_sub(a, j, t, q)
                        _col_sub(v, j, t, q)
            row_nz = [j for j in range(cols) if j != t and a[t][j]]
            if row_nz:
                j = min(row_nz, key=lambda j: abs(a[t][j]))
                _col_swap(a, j, t)
                _col_swap(v, j, t)
                continue
            # pivot must divide the remaining submatrix for the chain property
            d = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % d),
                None,
            )
            if bad is None:
                break
            _row_sub(a[t], a[bad[0]], -1)
            _row_sub(u[t], u[bad[0]], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diagonal = tuple(a[i][i] for i in range(bound))
    return SmithDecomposition(
        diagonal=diagonal,
        left=IntMatrix.from_rows(u, cols=rows),
        right=IntMatrix.from_rows(v, cols=cols),
    )


def snf(m: IntMatrix) -> InvariantFactors:
    """Invariant factors of the cokernel Z^cols / rowspan(m)."""
    dec = smith_decomposition(m)
    r = dec.pivot_count
    return InvariantFactors(rank=m.cols - r, torsion=tuple(d for d in dec.diagonal if d > 1))
