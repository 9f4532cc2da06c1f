"""Exact integer matrix kernels.

Everything here runs on Python ints; there is no floating point.  Matrices
are stored sparsely as ``{(row, col): value}`` with no explicit zeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

__all__ = [
    "SparseIntMatrix",
    "rank_rational",
    "rank_gf2",
    "hermite_normal_form",
    "smith_normal_form",
    "order_in_quotient",
]


@dataclass(frozen=True)
class SparseIntMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            if v:
                clean[(i, j)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "SparseIntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return SparseIntMatrix(self.rows, other.cols, acc)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def rank_rational(m: SparseIntMatrix) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Pivots are chosen by Markowitz cost ``(r - 1) * (c - 1)`` with ties broken
    by lowest ``(row, col)``.  Each updated row ``a * row - b * pivot_row`` is
    divided by its content, which keeps entries small and the division exact.
    """
    rows = {i: r for i, r in enumerate(m.row_dicts()) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            col_rows.setdefault(j, set()).add(i)

    rank = 0
    while rows:
        best = None
        for i in sorted(rows):
            ri = len(rows[i]) - 1
            for j in sorted(rows[i]):
                cost = (ri * (len(col_rows[j]) - 1), i, j)
                if best is None or cost < best:
                    best = cost
            if best[0] == 0:
                break
        _, pi, pj = best
        pivot = rows.pop(pi)
        for j in pivot:
            col_rows[j].discard(pi)
        a = pivot[pj]
        for i in sorted(col_rows.pop(pj)):
            row = rows[i]
            b = row[pj]
            new: dict[int, int] = {}
            for j in row.keys() | pivot.keys():
                v = a * row.get(j, 0) - b * pivot.get(j, 0)
                if v:
                    new[j] = v
            for j in row:
                if j not in new and j != pj:
                    col_rows[j].discard(i)
            for j in new:
                col_rows.setdefault(j, set()).add(i)
            if new:
                g = _content(new)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                rows[i] = new
            else:
                del rows[i]
        for j in [j for j, s in col_rows.items() if not s]:
            del col_rows[j]
        rank += 1
    return rank


def rank_gf2(m: SparseIntMatrix) -> int:
    """Rank of ``m`` reduced mod 2, rows packed into int bitsets."""
    packed: dict[int, int] = {}
    for (i, j), v in m.entries.items():
        if v & 1:
            packed[i] = packed.get(i, 0) ^ (1 << j)
    basis: dict[int, int] = {}
    for i in sorted(packed):
        row = packed[i]
        while row:
            low = row & -row
            if low in basis:
                row ^= basis[low]
            else:
                basis[low] = row
                break
    return len(basis)


def _hnf_rows(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF with its transform, on dense lists; returns (H, U) with U @ M = H."""
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]
    prow = 0
    for col in range(ncols):
        if prow == len(a):
            break
        while True:
            nz = [i for i in range(prow, len(a)) if a[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[prow], a[k] = a[k], a[prow]
            u[prow], u[k] = u[k], u[prow]
            done = True
            for i in range(prow + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[prow][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[prow])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[prow])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if prow < len(a) and a[prow][col]:
            if a[prow][col] < 0:
                a[prow] = [-x for x in a[prow]]
                u[prow] = [-x for x in u[prow]]
            p = a[prow][col]
            for i in range(prow):
                q = a[i][col] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[prow])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[prow])]
            prow += 1
    return a[:prow], u[:prow]


def hermite_normal_form(m: SparseIntMatrix) -> tuple[SparseIntMatrix, SparseIntMatrix]:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``m``.

    Returns ``(H, U)`` where ``H`` holds only the nonzero HNF rows (a basis of
    the row lattice, echelon form, positive pivots, entries above each pivot
    reduced into ``[0, pivot)``) and ``U @ m == H``.
    """
    h, u = _hnf_rows(m.to_rows(), m.cols)
    return SparseIntMatrix.from_rows(h, m.cols), SparseIntMatrix.from_rows(u, m.rows)


def smith_normal_form(m: SparseIntMatrix) -> list[int]:
    """Diagonal of the Smith normal form, padded with zeros to ``min(rows, cols)``."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    diag = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if clean:
                # pivot must divide the remaining block; otherwise fold an offending row in
                bad = next(
                    (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p), None
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # move the smallest nonzero in row/column t onto the diagonal
            cand = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (min(nr, nc) - len(diag))


def order_in_quotient(lattice: SparseIntMatrix, v: Sequence[int]) -> int | None:
    """Order of ``v`` in ``Z^n / L`` where ``L`` is the row lattice; ``None`` if infinite.

    ``v`` is written as a rational combination of the HNF basis rows; the
    order is the lcm of the coefficient denominators.
    """
    if len(v) != lattice.cols:
        raise ValueError(f"vector has length {len(v)}, lattice has {lattice.cols} columns")
    h, _ = _hnf_rows(lattice.to_rows(), lattice.cols)
    residual = [Fraction(x) for x in v]
    coeffs = []
    for row in h:
        pc = next(j for j, x in enumerate(row) if x)
        c = residual[pc] / row[pc]
        coeffs.append(c)
        if c:
            residual = [r - c * x for r, x in zip(residual, row)]
    if any(residual):
        return None
    return lcm(1, *(c.denominator for c in coeffs))
