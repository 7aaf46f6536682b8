"""Generator matrices for linear LRCs with all-symbol locality.

The columns come in repair groups. A full group holds r vectors g_1..g_r
followed by their sum s_r, so any one of the r+1 symbols is the (signed)
sum of the other r. When r+1 does not divide n the last group is short:
b-1 vectors and their sum. Vectors are drawn at random and kept only when
they (and the running group sum) stay outside the span of every admissible
(k-1)-selection of earlier columns, which keeps every capped selection of
at most k columns independent.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Optional, Sequence

import numpy as np

from .gf import FieldSpec, field_of_order, prime_power
from .linalg import FieldMatrix, nullspace, rank, rref, subset_rank, vec_add, vec_outer_mul

log = logging.getLogger(__name__)

__all__ = [
    "CodeParams",
    "LinearLrcCode",
    "FeasibilityVerdict",
    "ConstructionError",
    "feasibility",
    "minimum_guaranteed_q",
    "build",
    "build_with_replication",
    "construct",
    "verify_selection_property",
]


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    r: int
    q: int

    def __post_init__(self):
        if not 1 <= self.r <= self.k < self.n:
            raise ValueError(f"need 1 <= r <= k < n, got (n,k,r)=({self.n},{self.k},{self.r})")
        if prime_power(self.q) is None:
            raise ValueError(f"q={self.q} is not a prime power")

    @property
    def a(self) -> int:
        return self.n // (self.r + 1)

    @property
    def b(self) -> int:
        return self.n % (self.r + 1)

    @property
    def A(self) -> int:
        return -(-self.n // (self.r + 1))

    def group_sizes(self) -> list[int]:
        sizes = [self.r + 1] * self.a
        if self.b:
            sizes.append(self.b)
        return sizes


@dataclass(frozen=True)
class LinearLrcCode:
    params: CodeParams
    generator: FieldMatrix
    groups: tuple  # tuple of tuples of column indices
    seed: Optional[int] = None
    replicated_column: Optional[int] = None  # source column of the appended copy

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def r(self) -> int:
        return self.params.r

    def group_of(self, j: int) -> tuple:
        for g in self.groups:
            if j in g:
                return g
        raise IndexError(j)

    def encode(self, message: Sequence[int]) -> tuple:
        F = self.field
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k={self.k}")
        out = []
        for j in range(self.n):
            acc = 0
            for i, x in enumerate(message):
                acc = F.add(acc, F.mul(x, self.generator.entries[i][j]))
            out.append(acc)
        return tuple(out)

    @cached_property
    def repair_relations(self) -> dict:
        """Per column j: list of (positions, coefficients) with y_j = sum c_t y_t.

        All minimal relations inside j's own repair group, smallest first,
        so repair can fall back when the cheapest helper is also missing.
        """
        F = self.field
        cols = self.generator.columns()
        rel = {}
        for j in range(self.n):
            others = [t for t in self.group_of(j) if t != j]
            found = []
            for s in range(1, len(others) + 1):
                for T in itertools.combinations(others, s):
                    if any(set(U) <= set(T) for U, _ in found):
                        continue
                    c = _solve_combination(F, [cols[t] for t in T], cols[j])
                    if c is not None:
                        found.append((T, tuple(c)))
            rel[j] = found
        return rel

    def __eq__(self, other):
        if not isinstance(other, LinearLrcCode):
            return NotImplemented
        return (self.params, self.generator, self.groups, self.seed, self.replicated_column) == (
            other.params, other.generator, other.groups, other.seed, other.replicated_column)

    def __hash__(self):
        return hash((self.params, self.generator, self.groups))


def _solve_combination(F: FieldSpec, vecs, target):
    """Coefficients c with sum c_t vecs_t = target, or None."""
    k = len(target)
    # augmented system: rows are coordinates, unknowns are c_t
    rows = [[v[i] for v in vecs] + [target[i]] for i in range(k)]
    R, piv = rref(F, rows)
    m = len(vecs)
    if m in piv:
        return None
    c = [0] * m
    for i, pc in enumerate(piv):
        c[pc] = R[i][m]
    return c


@dataclass(frozen=True)
class FeasibilityVerdict:
    mode: str  # direct | replicate | infeasible
    reason: str
    d_opt: int = 0

    @property
    def no_code_exists(self) -> bool:
        return self.mode == "infeasible" and self.d_opt == 0


def _d_opt(n, k, r):
    return max(n - k - (-(-k // r)) + 2, 0)


def feasibility(n: int, k: int, r: int) -> FeasibilityVerdict:
    if min(n, k, r) < 1:
        raise ValueError("n, k, r must be positive")
    if r > k:
        raise ValueError(f"invalid input: r={r} > k={k}")
    if k >= n:
        raise ValueError(f"invalid input: k={k} >= n={n}")
    A = -(-n // (r + 1))
    dopt = _d_opt(n, k, r)
    if n - A < k:
        if dopt == 0:
            why = "d_opt = 0: no code exists"
        else:
            why = f"d_opt = {dopt}: existence unknown, construction does not apply"
        return FeasibilityVerdict("infeasible", f"n - ceil(n/(r+1)) = {n - A} < k = {k}; {why}", dopt)
    if n % (r + 1) == 1:
        return FeasibilityVerdict(
            "replicate", f"n = 1 mod {r + 1}: replicate a column of the ({n - 1},{k},{r}) code", dopt)
    return FeasibilityVerdict("direct", f"n - ceil(n/(r+1)) = {n - A} >= k = {k}", dopt)


def minimum_guaranteed_q(n: int, k: int) -> int:
    """Smallest prime power strictly above 2 * C(n, k-1)."""
    q = 2 * comb(n, k - 1) + 1
    while prime_power(q) is None:
        q += 1
    return q


# --- admissible selections ---

def _selections(pools: list[tuple[list, int]], size: int) -> Iterator[list]:
    """All ways to take `size` vectors with at most cap from each pool."""
    def rec(i, need):
        if need == 0:
            yield []
            return
        if i == len(pools):
            return
        vecs, cap = pools[i]
        for c in range(min(cap, len(vecs), need), -1, -1):
            for pick in itertools.combinations(vecs, c):
                for rest in rec(i + 1, need - c):
                    yield list(pick) + rest
    yield from rec(0, size)


class _SpanGuard:
    """Tests whether a vector avoids the span of every admissible selection.

    Each selection's span is stored as its annihilator: v is in span(S)
    iff v is orthogonal to every vector of the null space of S.
    """

    def __init__(self, F: FieldSpec, k: int, pools):
        self.F = F
        cap_total = sum(min(cap, len(v)) for v, cap in pools)
        size = min(k - 1, cap_total)
        ann, owner = [], []
        nsel = 0
        for sel in _selections(pools, size):
            basis = nullspace(FieldMatrix.from_rows(F, sel, k)) if sel else \
                [[int(i == j) for j in range(k)] for i in range(k)]
            ann.extend(basis)
            owner.extend([nsel] * len(basis))
            nsel += 1
        self.nsel = nsel
        self.ann = np.array(ann, dtype=np.int64).reshape(len(ann), k)
        self.owner = np.array(owner, dtype=np.int64)

    def avoids_all(self, v: Sequence[int]) -> bool:
        if self.nsel == 0:
            return any(v)
        F = self.F
        vv = np.asarray(v, dtype=np.int64)
        if F.m == 1:
            dots = (self.ann @ vv) % F.p
        else:
            dots = np.zeros(len(self.ann), dtype=np.int64)
            for i in range(len(vv)):
                dots = vec_add(F, dots, vec_outer_mul(F, self.ann[:, i], vv[i:i + 1])[:, 0])
        nonzero = np.bincount(self.owner, weights=(dots != 0), minlength=self.nsel)
        # in span(S) iff every annihilator of S kills v
        return bool(np.all(nonzero > 0))


def _vec_add(F, a, b):
    return tuple(F.add(x, y) for x, y in zip(a, b))


def _candidates(F: FieldSpec, k: int, rng, attempts: int) -> Iterator[tuple]:
    q = F.q
    for _ in range(attempts):
        yield tuple(int(x) for x in rng.integers(0, q, size=k))
    log.debug("random draws exhausted, scanning F_%d^%d lexicographically", q, k)
    yield from itertools.product(range(q), repeat=k)


def build(params: CodeParams, seed: int = 0, max_attempts: Optional[int] = None) -> LinearLrcCode:
    """Run the group-by-group construction for a directly feasible triple."""
    n, k, r = params.n, params.k, params.r
    verdict = feasibility(n, k, r)
    if verdict.mode != "direct":
        raise ValueError(f"build needs a directly feasible triple: {verdict.mode} ({verdict.reason})")
    F = field_of_order(params.q)
    rng = np.random.default_rng(seed)
    if max_attempts is None:
        max_attempts = 64 * n
    guaranteed = minimum_guaranteed_q(n, k)

    def fail(what):
        raise ConstructionError(
            f"could not find {what} over GF({params.q}); "
            f"success is only guaranteed for q >= {guaranteed}")

    sizes = params.group_sizes()
    sets: list[list[tuple]] = []

    # first group: r independent vectors plus their sum
    first: list[tuple] = []
    for cand in _candidates(F, k, rng, max_attempts * r):
        if subset_rank(F, first + [cand]) == len(first) + 1:
            first.append(cand)
            if len(first) == r:
                break
    else:
        fail("r independent vectors")
    total = first[0]
    for v in first[1:]:
        total = _vec_add(F, total, v)
    sets.append(first + [total])

    for size in sizes[1:]:
        gs: list[tuple] = []
        s = None
        for j in range(size - 1):
            pools = [(S, r) for S in sets]
            if j:
                pools.append((gs + [s], j))
            guard = _SpanGuard(F, k, pools)
            for cand in _candidates(F, k, rng, max_attempts):
                s_next = cand if s is None else _vec_add(F, s, cand)
                if guard.avoids_all(cand) and guard.avoids_all(s_next):
                    gs.append(cand)
                    s = s_next
                    break
            else:
                fail(f"vector {j + 1} of group {len(sets) + 1}")
        sets.append(gs + [s])

    cols = [v for S in sets for v in S]
    G = FieldMatrix.from_columns(F, cols, k)
    groups, start = [], 0
    for S in sets:
        groups.append(tuple(range(start, start + len(S))))
        start += len(S)
    if rank(G) != k:
        raise ConstructionError(f"generator has rank {rank(G)} < k={k}")
    return LinearLrcCode(params, G, tuple(groups), seed)


def build_with_replication(n: int, k: int, r: int, q: int, seed: int = 0,
                           max_attempts: Optional[int] = None) -> LinearLrcCode:
    """Handle n = 1 (mod r+1): build (n-1, k, r) and duplicate column 0."""
    verdict = feasibility(n, k, r)
    if verdict.mode != "replicate":
        raise ValueError(f"replication needs n = 1 mod r+1: {verdict.reason}")
    base = build(CodeParams(n - 1, k, r, q), seed, max_attempts)
    G = base.generator
    rows = [row + (row[0],) for row in G.entries]
    G2 = FieldMatrix.from_rows(G.field, rows)
    groups = [tuple(g) + ((n - 1,) if 0 in g else ()) for g in base.groups]
    return LinearLrcCode(CodeParams(n, k, r, q), G2, tuple(groups), seed, replicated_column=0)


def construct(n: int, k: int, r: int, q: Optional[int] = None, seed: int = 0,
              max_attempts: Optional[int] = None) -> LinearLrcCode:
    """Pick the direct or replication path from the feasibility verdict."""
    verdict = feasibility(n, k, r)
    if q is None:
        q = minimum_guaranteed_q(n, k)
    if verdict.mode == "direct":
        return build(CodeParams(n, k, r, q), seed, max_attempts)
    if verdict.mode == "replicate":
        return build_with_replication(n, k, r, q, seed, max_attempts)
    raise ConstructionError(verdict.reason)


def selection_caps(code: LinearLrcCode) -> list[tuple[tuple, int]]:
    """(group columns, cap) pairs; the replicated copy is left out."""
    out = []
    for g in code.groups:
        g = tuple(j for j in g if not (code.replicated_column is not None and j == code.n - 1))
        out.append((g, len(g) - 1))
    return out


def verify_selection_property(code: LinearLrcCode) -> bool:
    """Every capped selection of at most k columns is independent.

    Only maximal selections are rank-checked: a subset of an independent
    set is independent, and every admissible selection extends to one.
    """
    F = code.field
    cols = code.generator.columns()
    pools = [([cols[j] for j in g], cap) for g, cap in selection_caps(code)]
    size = min(code.k, sum(min(cap, len(v)) for v, cap in pools))
    for sel in _selections(pools, size):
        if subset_rank(F, sel) < len(sel):
            return False
    return True
