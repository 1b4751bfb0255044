"""Exact linear algebra over a prime field F_p, backed by int64 numpy arrays.

All matrices hold residues in [0, p).  With p < 2^16 every product fits in
int64 with room to spare, so no computation here ever rounds.
"""

from __future__ import annotations

import numpy as np


def mod_inv(a: int, p: int) -> int:
    # p prime, a != 0 mod p
    return pow(int(a) % p, p - 2, p)


class Subspace:
    """A subspace of F_p^width stored as a reduced row echelon basis.

    Rows are kept with strictly increasing pivot columns, unit pivots and
    zeros above each pivot, so equal subspaces have identical `rows` arrays.
    """

    __slots__ = ("p", "width", "_rows", "_pivots")

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def rows(self) -> np.ndarray:
        if not self._rows:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.array(self._rows, dtype=np.int64)

    def copy(self) -> "Subspace":
        dup = Subspace(self.p, self.width)
        dup._rows = [r.copy() for r in self._rows]
        dup._pivots = list(self._pivots)
        return dup

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Residue of vec modulo the row space."""
        p = self.p
        v = np.asarray(vec, dtype=np.int64) % p
        for row, piv in zip(self._rows, self._pivots):
            c = v[piv]
            if c:
                v = (v - c * row) % p
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def insert(self, vec) -> bool:
        """Add vec to the space. Returns True if the dimension grew."""
        v = self.reduce(vec)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = (v * mod_inv(int(v[piv]), self.p)) % self.p
        # clear the new pivot column in the old rows
        for i, row in enumerate(self._rows):
            c = row[piv]
            if c:
                self._rows[i] = (row - c * v) % self.p
        at = np.searchsorted(np.array(self._pivots, dtype=np.int64), piv) if self._pivots else 0
        self._rows.insert(int(at), v)
        self._pivots.insert(int(at), piv)
        return True

    def extend(self, mat) -> None:
        for row in np.atleast_2d(np.asarray(mat, dtype=np.int64)):
            self.insert(row)

    def leq(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if (self.p, self.width, self.dim) != (other.p, other.width, other.dim):
            return False
        return bool(np.array_equal(self.rows(), other.rows()))

    def __hash__(self):
        return hash((self.p, self.width, self.rows().tobytes()))


def span(mat, p: int, width: int | None = None) -> Subspace:
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    if width is None:
        width = mat.shape[1]
    sub = Subspace(p, width)
    sub.extend(mat)
    return sub


def reduce_columns(sub: Subspace, mat: np.ndarray) -> np.ndarray:
    """Reduce every column of mat modulo the row space of sub."""
    p = sub.p
    out = np.asarray(mat, dtype=np.int64) % p
    for row, piv in zip(sub._rows, sub._pivots):
        coef = out[piv, :].copy()
        if coef.any():
            out = (out - np.outer(row, coef)) % p
    return out


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0 mod p}."""
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % p
    m, k = a.shape
    a = a.copy()
    pivot_cols: list[int] = []
    r = 0
    for c in range(k):
        rows_nz = np.flatnonzero(a[r:, c])
        if rows_nz.size == 0:
            continue
        i = r + int(rows_nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * mod_inv(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.flatnonzero(col)
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    free_cols = [c for c in range(k) if c not in set(pivot_cols)]
    basis = np.zeros((len(free_cols), k), dtype=np.int64)
    for idx, fc in enumerate(free_cols):
        basis[idx, fc] = 1
        for ri, pc in enumerate(pivot_cols):
            basis[idx, pc] = (-a[ri, fc]) % p
    return basis


def rank(mat, p: int) -> int:
    """Rank by in-place forward elimination (no back-substitution)."""
    a = (np.atleast_2d(np.asarray(mat, dtype=np.int64)) % p).copy()
    m, k = a.shape
    r = 0
    for c in range(k):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * mod_inv(int(a[r, c]), p)) % p
        rows = np.flatnonzero(a[r + 1 :, c]) + r + 1
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        r += 1
        if r == m:
            break
    return r
