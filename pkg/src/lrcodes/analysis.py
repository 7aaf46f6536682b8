"""Distance and locality oracles, checked against the locality bound."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .construction import ConstructionError, LinearLrcCode, construct, feasibility, minimum_guaranteed_q
from .linalg import FieldMatrix, circuits, encode_all, parity_check, subset_rank

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 28

__all__ = [
    "BudgetExceeded",
    "OracleDisagreement",
    "CodeReport",
    "PredictionRange",
    "d_opt",
    "prop_lower_bound",
    "frac",
    "min_distance_bruteforce",
    "min_distance_messages",
    "min_distance_parity",
    "min_distance_circuits",
    "circuit_mu",
    "locality_linear",
    "locality_functional",
    "functional_repair_sets",
    "predicted_distance",
    "analyze",
    "sweep",
]


class BudgetExceeded(RuntimeError):
    pass


class OracleDisagreement(AssertionError):
    pass


def d_opt(n: int, k: int, r: int) -> int:
    """max(n - k - ceil(k/r) + 2, 0)."""
    return max(n - k - (-(-k // r)) + 2, 0)


def frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def prop_lower_bound(n: int, k: int, r: int) -> int:
    """n - k - floor(k/r - n/(r+1)) - floor(n/(r+1)), in exact arithmetic."""
    return n - k - math.floor(Fraction(k, r) - Fraction(n, r + 1)) - n // (r + 1)


# --- minimum distance, linear codes ---

def _generator(code) -> FieldMatrix:
    return code.generator if isinstance(code, LinearLrcCode) else code


def _message_cost(G: FieldMatrix) -> int:
    return G.field.q ** G.rows * G.cols


def _parity_cost(G: FieldMatrix) -> int:
    k, n = G.shape
    nk = n - k
    return sum(math.comb(n, s) for s in range(1, nk + 2)) * max(nk, 1) ** 2 * 8


def min_distance_messages(G: FieldMatrix, budget: int = DEFAULT_BUDGET, chunk: int = 1 << 16) -> int:
    """Minimum weight over all q^k - 1 nonzero messages."""
    F = G.field
    k, n = G.shape
    total = F.q ** k
    if total * n > budget:
        raise BudgetExceeded(f"q^k * n = {total * n} exceeds budget {budget}")
    best = n + 1
    powers = F.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        msgs = (idx[:, None] // powers[None, :]) % F.q
        words = encode_all(G, msgs)
        best = min(best, int((words != 0).sum(axis=1).min()))
    return best


def min_distance_parity(G: FieldMatrix, budget: int = DEFAULT_BUDGET) -> int:
    """Size of the smallest dependent column set of the parity-check matrix."""
    k, n = G.shape
    if _parity_cost(G) > budget:
        raise BudgetExceeded(f"parity-check search too large for n={n}, k={k}")
    H = parity_check(G)
    if H.rows == 0:
        return 1
    F = G.field
    cols = H.columns()
    for s in range(1, n - k + 2):
        for idx in itertools.combinations(range(n), s):
            if subset_rank(F, [cols[j] for j in idx]) < s:
                return s
    raise AssertionError("any n-k+1 columns of H must be dependent")


def min_distance_bruteforce(code, budget: int = DEFAULT_BUDGET, method: str = "auto") -> int:
    """Exhaustive minimum distance.

    Linear codes pick the cheaper of message enumeration and the
    parity-check search; operator-matrix codes use pairwise distances.
    """
    from .f4family import OperatorMatrix, min_distance_pairwise

    if isinstance(code, OperatorMatrix):
        return min_distance_pairwise(code, budget)
    G = _generator(code)
    if method == "auto":
        method = "messages" if _message_cost(G) <= _parity_cost(G) else "parity"
    if method == "messages":
        return min_distance_messages(G, budget)
    if method == "parity":
        return min_distance_parity(G, budget)
    raise ValueError(f"unknown method {method!r}")


# --- minimum distance from circuits ---

def _nontrivial(masks) -> bool:
    for i, c in enumerate(masks):
        rest = 0
        for j, o in enumerate(masks):
            if j != i:
                rest |= o
        if c & ~rest == 0:
            return False
    return True


def _small_union_exists(masks: list[int], m: int, limit: int) -> bool:
    """Is there a nontrivial union of m circuits with at most `limit` elements?"""
    nc = len(masks)
    chosen: list[int] = []

    def dfs(start, union, size):
        depth = len(chosen)
        if depth == m:
            return _nontrivial(chosen)
        # every further circuit brings at least one new element
        if size + (m - depth) > limit:
            return False
        for t in range(start, nc):
            c = masks[t]
            new = c & ~union
            if not new:
                continue
            u = union | c
            us = size + bin(new).count("1")
            if us > limit:
                continue
            chosen.append(c)
            if dfs(t + 1, u, us):
                return True
            chosen.pop()
        return False

    return dfs(0, 0, 0)


def circuit_mu(G: FieldMatrix, max_circuits: int = 20000) -> int:
    """Least m such that every nontrivial union of m circuits has >= m + k elements."""
    k, n = G.shape
    found = circuits(G, k + 1)
    if len(found) > max_circuits:
        raise BudgetExceeded(f"{len(found)} circuits exceed the limit {max_circuits}")
    masks = sorted((c.mask for c in found), key=lambda x: (bin(x).count("1"), x))
    m = 1
    while _small_union_exists(masks, m, m + k - 1):
        m += 1
    return m


def min_distance_circuits(code, max_circuits: int = 20000) -> int:
    G = _generator(code)
    k, n = G.shape
    return n - k - circuit_mu(G, max_circuits) + 2


# --- locality ---

def locality_linear(G: FieldMatrix, r_target: int) -> int:
    """Max over columns of the fewest other columns spanning it (r_target+1 if above target)."""
    if isinstance(G, LinearLrcCode):
        G = G.generator
    F = G.field
    n = G.cols
    cols = G.columns()
    worst = 0
    for j in range(n):
        others = [t for t in range(n) if t != j]
        best = r_target + 1
        for s in range(1, r_target + 1):
            hit = False
            for T in itertools.combinations(others, s):
                S = [cols[t] for t in T]
                rk = subset_rank(F, S)
                if subset_rank(F, S + [cols[j]]) == rk:
                    hit = True
                    break
            if hit:
                best = s
                break
        worst = max(worst, best)
        if worst > r_target:
            break
    return worst


def functional_repair_sets(codebook: np.ndarray, q: int, r_target: int) -> list[Optional[tuple]]:
    """For each coordinate, a smallest set of other coordinates that determines it."""
    words = np.asarray(codebook, dtype=np.int64)
    N, n = words.shape
    out: list[Optional[tuple]] = []
    for j in range(n):
        others = [t for t in range(n) if t != j]
        found = None
        for s in range(1, r_target + 1):
            for T in itertools.combinations(others, s):
                key = np.zeros(N, dtype=np.int64)
                for t in T:
                    key = key * q + words[:, t]
                counts = np.bincount(key * q + words[:, j], minlength=q ** (s + 1)).reshape(-1, q)
                if np.all((counts > 0).sum(axis=1) <= 1):
                    found = T
                    break
            if found is not None:
                break
        out.append(found)
    return out


def locality_functional(codebook: np.ndarray, r_target: int, q: int = 4) -> int:
    sets = functional_repair_sets(codebook, q, r_target)
    if any(s is None for s in sets):
        return r_target + 1
    return max(len(s) for s in sets)


# --- predictions ---

@dataclass(frozen=True)
class PredictionRange:
    lower: int
    upper: int
    exact: bool
    rule: str

    def __post_init__(self):
        assert self.lower <= self.upper
        assert not self.exact or self.lower == self.upper

    def contains(self, d: int) -> bool:
        return self.lower <= d <= self.upper


def predicted_distance(n: int, k: int, r: int) -> PredictionRange:
    dopt = d_opt(n, k, r)
    verdict = feasibility(n, k, r)
    if verdict.mode == "direct" and n % (r + 1) == 0:
        return PredictionRange(dopt, dopt, True, "divisible")
    if k % r and frac(Fraction(k, r)) < frac(Fraction(n, r + 1)):
        return PredictionRange(dopt, dopt, True, "fractional")
    lo = max(dopt - 1, 0)
    rule = "almost-optimal"
    if verdict.mode == "direct" and n % (r + 1) >= 2:
        lo = max(lo, prop_lower_bound(n, k, r))
        rule = "almost-optimal+prop-lower"
    if verdict.mode == "infeasible":
        rule = "infeasible"
    return PredictionRange(lo, dopt, lo == dopt, rule)


# --- reports ---

@dataclass
class CodeReport:
    n: int
    k: int
    d: int
    r: int  # measured locality
    d_opt: int
    verdict: str
    kind: str = "linear"
    r_claimed: Optional[int] = None
    d_circuits: Optional[int] = None
    notes: list = field(default_factory=list)
    repair_sets: Optional[list] = None

    @property
    def gap(self) -> int:
        return self.d_opt - self.d

    def to_json(self) -> dict:
        out = asdict(self)
        out["gap"] = self.gap
        return out

    def summary(self) -> str:
        s = f"(n,k,d,r) = ({self.n},{self.k},{self.d},{self.r})  d_opt = {self.d_opt}  verdict: {self.verdict}"
        for note in self.notes:
            s += f"\n  note: {note}"
        return s


def verdict_for(d: int, dopt: int) -> str:
    if d > dopt:
        return "invalid"
    if d == dopt:
        return "optimal"
    if d == dopt - 1:
        return "almost-optimal"
    return "below"


def analyze(code, budget: int = DEFAULT_BUDGET, cross_check: bool = True) -> CodeReport:
    """Measure d and locality, compare with the bound, cross-check oracles."""
    from .f4family import OperatorMatrix, verify_operator_code

    if isinstance(code, OperatorMatrix):
        return verify_operator_code(code, budget)
    G = _generator(code)
    k, n = G.shape
    d = min_distance_bruteforce(G, budget)
    d_circ = None
    if cross_check:
        d_circ = min_distance_circuits(G)
        if d_circ != d:
            raise OracleDisagreement(f"brute force d={d} but circuit union d={d_circ}")
    r_claim = code.r if isinstance(code, LinearLrcCode) else k
    r_meas = locality_linear(G, k)
    notes = []
    if r_meas > k:
        return CodeReport(n, k, d, r_meas, 0, "invalid", "linear", r_claim, d_circ,
                          ["some column is not in the span of the others"])
    if r_meas > r_claim:
        notes.append(f"measured locality {r_meas} exceeds claimed {r_claim}")
    dopt = d_opt(n, k, r_meas)
    return CodeReport(n, k, d, r_meas, dopt, verdict_for(d, dopt), "linear", r_claim, d_circ, notes)


def _triples(n_max: int):
    for n in range(2, n_max + 1):
        for k in range(1, n):
            for r in range(1, k + 1):
                yield n, k, r


def sweep(n_max: int, q_policy: str = "guaranteed", seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Construct and verify every triple r <= k < n <= n_max.

    Rows follow the sweep report schema plus `ok`, `d_circuits` and `error`.
    Failures are recorded per row; the sweep never aborts.
    """
    rows = []
    for n, k, r in _triples(n_max):
        verdict = feasibility(n, k, r)
        pred = predicted_distance(n, k, r)
        q = _pick_q(n, k, q_policy)
        row = dict(n=n, k=k, r=r, q=q, mode=verdict.mode, d_opt=d_opt(n, k, r),
                   pred_lo=pred.lower, pred_hi=pred.upper, rule=pred.rule,
                   d_measured=None, r_measured=None, verdict=None, seed=seed,
                   d_circuits=None, ok=False, error=None)
        try:
            if verdict.mode == "infeasible":
                # the construction does not cover the triple, so its distance is 0
                row.update(d_measured=0, verdict="infeasible")
            else:
                code = construct(n, k, r, q, seed)
                rep = analyze(code, budget)
                row.update(d_measured=rep.d, r_measured=rep.r, verdict=rep.verdict,
                           d_circuits=rep.d_circuits)
                if rep.r > r:
                    raise AssertionError(f"locality {rep.r} > {r}")
            row["ok"] = pred.contains(row["d_measured"])
            if not row["ok"]:
                row["error"] = f"d={row['d_measured']} outside [{pred.lower}, {pred.upper}]"
        except (ConstructionError, BudgetExceeded, OracleDisagreement, AssertionError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        log.info("sweep %s", row)
        rows.append(row)
    return rows


def _pick_q(n: int, k: int, policy) -> int:
    if policy == "guaranteed":
        return minimum_guaranteed_q(n, k)
    if isinstance(policy, int):
        return policy
    if callable(policy):
        return policy(n, k)
    raise ValueError(f"unknown q policy {policy!r}")
