"""Erasure repair on stored codewords: local repair first, then global decoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .construction import LinearLrcCode
from .f4family import OperatorMatrix, codebook, encode
from .linalg import rref

__all__ = [
    "ErasedWord",
    "RepairOutcome",
    "DecodeResult",
    "RepairError",
    "erase",
    "repair_local",
    "decode_global",
    "simulate",
    "operator_repair_sets",
]


class RepairError(ValueError):
    pass


@dataclass(frozen=True)
class ErasedWord:
    values: tuple  # element, or None where erased

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def erased(self) -> list[int]:
        return [j for j, v in enumerate(self.values) if v is None]

    @property
    def known(self) -> list[int]:
        return [j for j, v in enumerate(self.values) if v is not None]


@dataclass
class RepairOutcome:
    word: list  # None where repair failed
    methods: list  # "known" | "local" | "failed" per coordinate
    reads: dict = field(default_factory=dict)  # coordinate -> symbols read

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.word)

    @property
    def repaired(self) -> list[int]:
        return [j for j, m in enumerate(self.methods) if m == "local"]


@dataclass
class DecodeResult:
    word: Optional[tuple]
    candidates: int  # consistent codewords (capped at 2 for linear codes)

    @property
    def unique(self) -> bool:
        return self.word is not None


def erase(y: Sequence[int], positions) -> ErasedWord:
    n = len(y)
    positions = set(positions)
    for j in positions:
        if not 0 <= j < n:
            raise IndexError(f"position {j} outside [0, {n})")
    return ErasedWord(tuple(None if j in positions else int(v) for j, v in enumerate(y)))


# --- repair sets ---

_operator_cache: dict = {}


def operator_repair_sets(M: OperatorMatrix, sets=None):
    """Per coordinate: (positions, lookup table from their values to y_j)."""
    key = (M, None if sets is None else tuple(map(tuple, sets)))
    if key in _operator_cache:
        return _operator_cache[key]
    from .analysis import functional_repair_sets
    words = codebook(M)
    if sets is None:
        sets = functional_repair_sets(words, 4, M.k)
    out = []
    for j, T in enumerate(sets):
        if T is None:
            out.append(None)
            continue
        T = tuple(T)
        table = {}
        for w in words:
            table[tuple(int(w[t]) for t in T)] = int(w[j])
        out.append((T, table))
    _operator_cache[key] = out
    return out


def _local_rules(code, j, repair_sets=None) -> list:
    """(positions, evaluator) pairs for coordinate j, cheapest first."""
    if isinstance(code, LinearLrcCode):
        F = code.field
        rules = []
        for T, coeffs in code.repair_relations[j]:
            def ev(vals, coeffs=coeffs):
                acc = 0
                for c, v in zip(coeffs, vals):
                    acc = F.add(acc, F.mul(c, v))
                return acc
            rules.append((T, ev))
        return rules
    rules = operator_repair_sets(code, repair_sets)
    if rules[j] is None:
        return []
    T, table = rules[j]
    return [(T, lambda vals, table=table: table[tuple(vals)])]


def repair_local(code, w: ErasedWord, repair_sets=None) -> RepairOutcome:
    """Repair erased symbols from their repair sets, repeating to a fixpoint.

    Linear codes use their group relations. Operator codes use
    `repair_sets` (e.g. cached in a code file) or discover them once.
    """
    if not w.known:
        raise RepairError("every coordinate is erased")
    vals = list(w.values)
    methods = ["known" if v is not None else "failed" for v in vals]
    reads = {}
    progress = True
    while progress:
        progress = False
        for j in range(len(vals)):
            if vals[j] is not None:
                continue
            for T, ev in _local_rules(code, j, repair_sets):
                if all(vals[t] is not None for t in T):
                    vals[j] = ev([vals[t] for t in T])
                    methods[j] = "local"
                    reads[j] = len(T)
                    progress = True
                    break
    return RepairOutcome(vals, methods, reads)


def decode_global(code, w: ErasedWord) -> DecodeResult:
    """Recover the codeword from all known symbols; ambiguity is reported."""
    if not w.known:
        raise RepairError("every coordinate is erased")
    known = w.known
    if isinstance(code, LinearLrcCode):
        return _decode_linear(code, w, known)
    words = codebook(code)
    mask = np.ones(len(words), dtype=bool)
    for j in known:
        mask &= words[:, j] == w.values[j]
    hits = np.flatnonzero(mask)
    if len(hits) == 1:
        return DecodeResult(tuple(int(v) for v in words[hits[0]]), 1)
    return DecodeResult(None, int(len(hits)))


def _decode_linear(code: LinearLrcCode, w: ErasedWord, known) -> DecodeResult:
    F = code.field
    G = code.generator.entries
    k = code.k
    # unknown message m: sum_i m_i G[i][j] = y_j for j known
    rows = [[G[i][j] for i in range(k)] + [w.values[j]] for j in known]
    R, piv = rref(F, rows)
    if k in piv:
        return DecodeResult(None, 0)
    if len(piv) < k:
        return DecodeResult(None, 2)
    m = [0] * k
    for i, pc in enumerate(piv):
        m[pc] = R[i][k]
    return DecodeResult(code.encode(m), 1)


def _random_codeword(code, rng):
    if isinstance(code, LinearLrcCode):
        msg = [int(v) for v in rng.integers(0, code.field.q, size=code.k)]
        return code.encode(msg)
    msg = [int(v) for v in rng.integers(0, 4, size=code.k)]
    return encode(code, msg)


def simulate(code, trials: int, erasure_count: int, seed: int = 0, repair_sets=None) -> dict:
    """Random codewords with random erasure patterns; returns aggregate rates."""
    n = code.n
    if not 0 <= erasure_count < n:
        raise ValueError(f"erasure count must be in [0, {n}), got {erasure_count}")
    rng = np.random.default_rng(seed)
    local_ok = global_ok = 0
    read_total = read_count = 0
    for _ in range(trials):
        y = _random_codeword(code, rng)
        pos = rng.choice(n, size=erasure_count, replace=False)
        w = erase(y, [int(p) for p in pos])
        out = repair_local(code, w, repair_sets)
        if out.complete and tuple(out.word) == tuple(y):
            local_ok += 1
        read_total += sum(out.reads.values())
        read_count += len(out.reads)
        dec = decode_global(code, w)
        if dec.unique and dec.word == tuple(y):
            global_ok += 1
    return {
        "trials": trials,
        "erasures": erasure_count,
        "local_rate": local_ok / trials if trials else 0.0,
        "global_rate": global_ok / trials if trials else 0.0,
        "mean_reads": read_total / read_count if read_count else 0.0,
        "seed": seed,
    }
