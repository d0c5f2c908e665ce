"""Polynomial matrices: Jacobians, Hessians and their minors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from castelnuovo.polyring import Polynomial, Ring, RingMismatch


@dataclass(frozen=True)
class PolyMatrix:
    ring: Ring
    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("matrix rows have different lengths")
        for r in self.rows:
            for f in r:
                if f.ring != self.ring:
                    raise RingMismatch(f"entry {f} is not in {self.ring}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]], ring: Ring | None = None) -> "PolyMatrix":
        if ring is None:
            ring = rows[0][0].ring
        return cls(ring, tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))


def jacobian(fs: Sequence[Polynomial]) -> PolyMatrix:
    if not fs:
        raise ValueError("jacobian of an empty list")
    ring = fs[0].ring
    return PolyMatrix.from_rows([[f.diff(v) for v in ring.variables] for f in fs], ring)


def hessian(f: Polynomial) -> PolyMatrix:
    ring = f.ring
    grad = [f.diff(v) for v in ring.variables]
    n = ring.nvars
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = grad[i].diff(ring.variables[j])
    return PolyMatrix.from_rows(rows, ring)


def derivative_matrix(fs: Sequence[Polynomial], kind: str = "jacobian") -> PolyMatrix:
    """``jacobian`` of a list of polynomials, or ``hessian`` of a single one."""
    if kind == "jacobian":
        return jacobian(fs)
    if kind == "hessian":
        if len(fs) != 1:
            raise ValueError(f"hessian needs exactly one polynomial, got {len(fs)}")
        return hessian(fs[0])
    raise ValueError(f"unknown derivative matrix kind {kind!r}")


def determinant(m: PolyMatrix) -> Polynomial:
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return m.ring.one
    return _minor_table(m, n)[(tuple(range(n)), tuple(range(n)))]


def _minor_table(m: PolyMatrix, k: int) -> dict:
    """All k x k minors, keyed by (row tuple, column tuple).

    Built by Laplace expansion along the first chosen row, reusing the
    (k-1) x (k-1) minors of the remaining rows.
    """
    nrows, ncols = m.shape
    ring = m.ring

    @lru_cache(maxsize=None)
    def minor(rows: tuple, cols: tuple) -> Polynomial:
        if len(rows) == 1:
            return m.rows[rows[0]][cols[0]]
        r0, rest = rows[0], rows[1:]
        acc = ring.zero
        for pos, c in enumerate(cols):
            a = m.rows[r0][c]
            if not a:
                continue
            sub = minor(rest, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = a * sub
            acc = acc - term if pos % 2 else acc + term
        return acc

    return {(r, c): minor(r, c) for r in combinations(range(nrows), k)
            for c in combinations(range(ncols), k)}


def minors(m: PolyMatrix, k: int, nonzero: bool = True) -> list[Polynomial]:
    """All k x k minors (rows and columns in lexicographic order of index subsets).

    Zero minors are dropped unless ``nonzero`` is False.
    """
    nrows, ncols = m.shape
    if k < 1 or k > min(nrows, ncols):
        raise ValueError(f"minor size {k} impossible for a {nrows}x{ncols} matrix")
    table = _minor_table(m, k)
    out = [table[key] for key in sorted(table)]
    return [f for f in out if f] if nonzero else out
