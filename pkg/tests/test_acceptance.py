"""Acceptance criteria, one test each, at the stated values and time limits.

Run alone with `pytest tests/test_acceptance.py -v`; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import itertools
import time

import numpy as np
import pytest

from field_checks import SMALL_ORDERS, check_axioms
from lrcodes import codefile
from lrcodes.analysis import (
    analyze, d_opt, locality_linear, min_distance_bruteforce, min_distance_circuits,
    predicted_distance, prop_lower_bound, sweep,
)
from lrcodes.codefile import CodeFile
from lrcodes.construction import (
    CodeParams, build, build_with_replication, construct, verify_selection_property,
)
from lrcodes.f4family import OPERATORS, codebook, family_matrix, verify_family
from lrcodes.gf import field_of_order
from lrcodes.repairsim import decode_global, erase, repair_local

_codes = {}


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def measured(rep):
    return (rep.n, rep.k, rep.d, rep.r)


@pytest.fixture(scope="module")
def sweep9():
    rows, secs = timed(sweep, 9)
    return rows, secs


def cached(key, make):
    if key not in _codes:
        _codes[key] = make()
    return _codes[key]


def code_c5():
    return cached("c5", lambda: build(CodeParams(8, 4, 3, 113), seed=0))


def code_c6():
    return cached("c6", lambda: build(CodeParams(8, 4, 2, 241), seed=0))


def code_c7():
    return cached("c7", lambda: build(CodeParams(10, 4, 3, 487), seed=0))


def code_c8():
    return cached("c8", lambda: build_with_replication(7, 4, 2, 241, seed=0))


def test_c01_f1_33_i1_exhaustive():
    rep, secs = timed(verify_family, "F1_33", 1)
    assert measured(rep) == (7, 4, 3, 3)
    assert rep.d_opt == 3 and rep.verdict == "optimal"
    assert secs < 1


def test_c02_f1_33_i2_exhaustive():
    t = time.perf_counter()
    rep = verify_family("F1_33", 2)
    # independent full pairwise scan over all 4^7 codewords
    W = codebook(family_matrix("F1_33", 2))
    assert len(W) == 4 ** 7
    naive = min(int((W[a + 1:] != W[a]).sum(axis=1).min()) for a in range(len(W) - 1))
    secs = time.perf_counter() - t
    assert measured(rep) == (11, 7, 3, 3) and naive == 3
    assert rep.d_opt == 3
    assert secs < 120


def test_c03_f2_33_i1_exhaustive():
    rep, secs = timed(verify_family, "F2_33", 1)
    assert secs < 5
    assert measured(rep) == (8, 5, 3, 3), rep.summary()
    assert rep.verdict == "optimal"


def test_c04_f1_34_i1_stated_parameters():
    rep, secs = timed(verify_family, "F1_34", 1)
    assert secs < 5
    assert any("locality bound 5" in note for note in rep.notes)
    assert measured(rep) == (8, 4, 3, 4), rep.summary()
    assert rep.d_opt == 5


def test_c05_divisible_construction():
    t = time.perf_counter()
    code = code_c5()
    assert code.groups == ((0, 1, 2, 3), (4, 5, 6, 7))
    assert verify_selection_property(code)
    d_msg = min_distance_bruteforce(code, budget=1 << 31, method="messages")
    d_h = min_distance_bruteforce(code, method="parity")
    d_circ = min_distance_circuits(code)
    r = locality_linear(code.generator, code.k)
    secs = time.perf_counter() - t
    assert d_msg == d_h == d_circ == 4 == d_opt(8, 4, 3)
    assert r == 3
    assert secs < 120


def test_c06_non_divisible_construction():
    t = time.perf_counter()
    code = code_c6()
    rep = analyze(code)
    secs = time.perf_counter() - t
    assert prop_lower_bound(8, 4, 2) == 3 and d_opt(8, 4, 2) == 4
    assert 3 <= rep.d <= 4 and rep.r == 2
    assert secs < 120


def test_c07_fractional_instance_q487():
    t = time.perf_counter()
    code = code_c7()
    d = min_distance_bruteforce(code, method="parity")
    secs = time.perf_counter() - t
    assert predicted_distance(10, 4, 3).rule == "fractional"
    assert d == 6 == d_opt(10, 4, 3)
    assert secs < 600


def test_c08_replication_path():
    t = time.perf_counter()
    base = build(CodeParams(6, 4, 2, 241), seed=0)
    code = code_c8()
    d_base = min_distance_bruteforce(base)
    d = min_distance_bruteforce(code)
    secs = time.perf_counter() - t
    assert d_base == d_opt(6, 4, 2) == 2
    assert d == 2 == d_opt(7, 4, 2) - 1
    assert locality_linear(code.generator, 4) <= 2
    assert secs < 60


def test_c09_sweep_n_le_9(sweep9):
    rows, secs = sweep9
    violations = []
    for row in rows:
        if row["mode"] == "infeasible":
            continue
        n, k, r, d, dopt = row["n"], row["k"], row["r"], row["d_measured"], row["d_opt"]
        if d not in (dopt - 1, dopt):
            violations.append(("range", row))
        if row["mode"] == "direct" and n % (r + 1) == 0 and d != dopt:
            violations.append(("divisible", row))
        if row["rule"] == "fractional" and d != dopt:
            violations.append(("fractional", row))
        if not row["ok"]:
            violations.append(("row", row))
    assert not violations, violations
    assert sum(row["mode"] != "infeasible" for row in rows) > 0
    assert secs < 1800


def test_c10_oracle_equivalence(sweep9):
    rows, _ = sweep9
    disagreements = [row for row in rows
                     if row["mode"] != "infeasible" and row["d_circuits"] != row["d_measured"]]
    for make in (code_c5, code_c6, code_c7, code_c8):
        code = make()
        if min_distance_circuits(code) != min_distance_bruteforce(code):
            disagreements.append(code.params)
    assert not disagreements, disagreements


def test_c11_repair_properties():
    t = time.perf_counter()
    code = code_c5()
    rng = np.random.default_rng(0)
    y = code.encode([int(v) for v in rng.integers(0, 113, size=4)])
    for j in range(code.n):
        out = repair_local(code, erase(y, [j]))
        assert out.methods[j] == "local" and out.reads[j] <= 3 and tuple(out.word) == y
    for e in range(4):
        for pos in itertools.combinations(range(code.n), e):
            res = decode_global(code, erase(y, pos))
            assert res.unique and res.word == y, pos
    ambiguous = [pos for pos in itertools.combinations(range(code.n), 4)
                 if not decode_global(code, erase(y, pos)).unique]
    secs = time.perf_counter() - t
    assert ambiguous
    assert secs < 60


def test_c12_property_suites():
    for q in SMALL_ORDERS:
        check_axioms(field_of_order(q))

    def comp(*names):
        out = tuple(range(4))
        for name in reversed(names):
            out = tuple(OPERATORS[name][x] for x in out)
        return out

    assert OPERATORS["beta2"] == comp("beta", "beta")
    assert OPERATORS["beta3"] == comp("beta", "beta", "beta")
    assert OPERATORS["alpha2"] == comp("alpha", "alpha")
    assert all(OPERATORS["one"][x] ^ OPERATORS["alpha"][x] ^ OPERATORS["alpha2"][x] == 0
               for x in range(4))
    for i in (1, 2):
        W = codebook(family_matrix("F1_33", i))
        for j in range(i):
            assert not np.bitwise_xor.reduce(W[:, 4 * j:4 * j + 4], axis=1).any()
        assert not np.bitwise_xor.reduce(W[:, 4 * i:], axis=1).any()
    for cf in (CodeFile(code_c5(), provenance={"seed": 0}),
               CodeFile(construct(7, 4, 2, 241)),
               CodeFile(family_matrix("F1_34", 1), r=3)):
        text = codefile.dumps(cf)
        back = codefile.loads(text)
        assert codefile.dumps(back) == text and back.code == cf.code


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
