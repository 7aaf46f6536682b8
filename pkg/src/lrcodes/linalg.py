"""Dense matrices over a finite field, plus column-matroid circuits."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec

__all__ = [
    "FieldMatrix",
    "Circuit",
    "rank",
    "rref",
    "in_span",
    "nullspace",
    "parity_check",
    "circuits",
    "is_circuit",
    "subset_rank",
    "encode_all",
]


@dataclass(frozen=True)
class FieldMatrix:
    field: FieldSpec
    entries: tuple  # tuple of row tuples
    ncols: int = -1

    def __post_init__(self):
        rows = self.entries
        if self.ncols < 0:
            object.__setattr__(self, "ncols", len(rows[0]) if rows else 0)
        if rows:
            width = self.ncols
            q = self.field.q
            for row in rows:
                if len(row) != width:
                    raise ValueError("ragged matrix")
                for v in row:
                    if not 0 <= v < q:
                        raise ValueError(f"entry {v} not in {self.field!r}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], ncols=None):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if not rows:
            return cls(field, (), ncols or 0)
        return cls(field, rows)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence[int]], nrows=None):
        if not cols:
            return cls(field, tuple(() for _ in range(nrows or 0)), 0)
        return cls.from_rows(field, zip(*cols))

    @classmethod
    def identity(cls, field: FieldSpec, k: int):
        return cls.from_rows(field, [[int(i == j) for j in range(k)] for i in range(k)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self.ncols

    @property
    def shape(self):
        return (self.rows, self.cols)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix.from_columns(self.field, [self.column(j) for j in idx], self.rows)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix.from_rows(self.field, zip(*self.entries), self.rows)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        F = self.field
        if other.field != F:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for row in self.entries:
            out.append([_dot(F, row, c) for c in ocols])
        return FieldMatrix.from_rows(F, out, other.cols)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def __str__(self):
        f = self.field.fmt
        return "\n".join(" ".join(f(v) for v in row) for row in self.entries)


@dataclass(frozen=True, order=True)
class Circuit:
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m


def _dot(F: FieldSpec, a, b) -> int:
    if F.m == 1:
        return sum(x * y for x, y in zip(a, b)) % F.p
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    prime = F.m == 1
    p = F.p
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        if prime:
            M[r] = [v * inv % p for v in M[r]]
        else:
            M[r] = [F.mul(v, inv) for v in M[r]]
        pr = M[r]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                if prime:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], pr)]
                else:
                    M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], pr)]
        pivots.append(c)
        r += 1
    return M, pivots


def _rank_rows(F: FieldSpec, rows) -> int:
    return len(rref(F, rows)[1])


def rank(M: FieldMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return _rank_rows(M.field, M.entries)


def subset_rank(F: FieldSpec, cols: Sequence[Sequence[int]]) -> int:
    """Rank of a list of column vectors."""
    if not cols:
        return 0
    # rows of the elimination are the vectors themselves
    return _rank_rows(F, cols)


def in_span(F: FieldSpec, v: Sequence[int], S: Sequence[Sequence[int]]) -> bool:
    """True iff column vector v lies in the span of the vectors S."""
    for s in S:
        if len(s) != len(v):
            raise ValueError("dimension mismatch")
    if not any(v):
        return True
    if not S:
        return False
    return subset_rank(F, list(S) + [v]) == subset_rank(F, S)


def nullspace(M: FieldMatrix) -> list[list[int]]:
    """Basis of {x : M x = 0}."""
    F = M.field
    n = M.cols
    R, pivots = rref(F, M.entries) if M.rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R[i][f])
        basis.append(x)
    return basis


def parity_check(G: FieldMatrix) -> FieldMatrix:
    """(n-k) x n matrix H of full rank with G H^T = 0."""
    k, n = G.shape
    if rank(G) != k:
        raise ValueError(f"generator has rank {rank(G)} < {k} rows")
    return FieldMatrix.from_rows(G.field, nullspace(G), n)


def is_circuit(F: FieldSpec, cols: Sequence[Sequence[int]]) -> bool:
    s = len(cols)
    if s == 0 or subset_rank(F, cols) == s:
        return False
    return all(subset_rank(F, cols[:i] + cols[i + 1:]) == s - 1 for i in range(s))


def circuits(G: FieldMatrix, size_cap: int | None = None) -> list[Circuit]:
    """All circuits of the column matroid of G up to size_cap, by size.

    Sizes are scanned in increasing order and supersets of circuits already
    found are skipped, so every dependent set that survives is minimal.
    """
    n = G.cols
    F = G.field
    if size_cap is None:
        size_cap = G.rows + 1
    size_cap = min(size_cap, n)
    cols = G.columns()
    found: list[Circuit] = []
    masks: list[int] = []
    for s in range(1, size_cap + 1):
        new = []
        for idx in combinations(range(n), s):
            m = 0
            for i in idx:
                m |= 1 << i
            if any(c & m == c for c in masks):
                continue
            if subset_rank(F, [cols[i] for i in idx]) < s:
                new.append((Circuit(idx), m))
        for c, m in new:
            found.append(c)
            masks.append(m)
    return found


def encode_all(G: FieldMatrix, messages: np.ndarray) -> np.ndarray:
    """Codewords m G for a batch of messages (rows of `messages`)."""
    F = G.field
    Ga = G.to_array()
    if F.m == 1:
        return (messages.astype(np.int64) @ Ga) % F.p
    out = np.zeros((messages.shape[0], G.cols), dtype=np.int64)
    for i in range(G.rows):
        out = vec_add(F, out, vec_outer_mul(F, messages[:, i], Ga[i]))
    return out


def _np_tables(F: FieldSpec):
    t = F._tables
    if t is None:
        raise NotImplementedError(f"vectorized arithmetic needs q <= 2^16, got {F!r}")
    exp, log = t
    return np.array(exp, dtype=np.int64), np.array(log, dtype=np.int64)


def vec_outer_mul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Outer product a_i * b_j over F."""
    if F.m == 1:
        return np.multiply.outer(a, b) % F.p
    exp, log = _np_tables(F)
    out = exp[np.add.outer(log[a], log[b])]
    out[np.multiply.outer(a == 0, np.ones_like(b, dtype=bool)) | (b == 0)[None, :]] = 0
    return out


def vec_add(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if F.m == 1:
        return (a + b) % F.p
    if F.p == 2:
        return a ^ b
    p = F.p
    out = np.zeros_like(a)
    scale = 1
    for _ in range(F.m):
        da = (a // scale) % p
        db = (b // scale) % p
        out += ((da + db) % p) * scale
        scale *= p
    return out
