import itertools
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lrcodes.construction import (
    CodeParams, ConstructionError, LinearLrcCode, build, build_with_replication, construct,
    feasibility, minimum_guaranteed_q, verify_selection_property,
)
from lrcodes.gf import field_of_order
from lrcodes.linalg import FieldMatrix, is_circuit, rank


def next_prime_power_above(x):
    # oracle via sympy factorisation, independent of gf.prime_power
    q = x + 1
    while len(sympy.factorint(q)) != 1:
        q += 1
    return q


def independent_by_minors(cols, p):
    # a set of column vectors over GF(p) is independent iff some maximal minor is nonzero mod p
    M = sympy.Matrix(cols).T
    s = M.shape[1]
    return any(M.extract(list(ri), list(range(s))).det() % p
               for ri in itertools.combinations(range(M.shape[0]), s))


def capped_subsets(code):
    # all column subsets of size <= k with at most |group| - 1 from each group
    n, k = code.n, code.k
    for s in range(1, k + 1):
        for idx in itertools.combinations(range(n), s):
            if all(sum(j in g for j in idx) <= len(g) - 1 for g in code.groups):
                yield idx


@pytest.mark.parametrize("n,k,expect", [(8, 4, 113), (10, 4, 241), (5, 1, 3), (9, 6, 2 * comb(9, 5))])
def test_minimum_guaranteed_q(n, k, expect):
    q = minimum_guaranteed_q(n, k)
    assert q == next_prime_power_above(2 * comb(n, k - 1))
    if n != 9:
        assert q == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 14).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_minimum_guaranteed_q_matches_oracle(nk):
    n, k = nk
    assert minimum_guaranteed_q(n, k) == next_prime_power_above(2 * comb(n, k - 1))


def test_feasibility_examples():
    assert feasibility(8, 4, 3).mode == "direct"
    assert feasibility(7, 4, 2).mode == "replicate"
    v = feasibility(8, 7, 3)
    assert v.mode == "infeasible" and v.d_opt == 0 and v.no_code_exists
    with pytest.raises(ValueError):
        feasibility(8, 3, 4)
    with pytest.raises(ValueError):
        feasibility(4, 4, 2)


TRIPLES = [(n, k, r) for n in range(2, 13) for k in range(1, n) for r in range(1, k + 1)]


@pytest.mark.parametrize("n,k,r", TRIPLES)
def test_feasibility_invariants(n, k, r):
    v = feasibility(n, k, r)
    A = -(-n // (r + 1))
    if v.mode == "direct":
        assert n - A >= k and n % (r + 1) != 1
        assert k * (r + 1) <= n * r  # k/r <= n/(r+1)
    elif v.mode == "replicate":
        assert n % (r + 1) == 1 and feasibility(n - 1, k, r).mode == "direct"
    else:
        assert n - A < k


def test_codeparams_validation():
    p = CodeParams(8, 4, 2, 241)
    assert (p.a, p.b, p.A) == (2, 2, 3) and p.group_sizes() == [3, 3, 2]
    with pytest.raises(ValueError):
        CodeParams(8, 4, 5, 113)
    with pytest.raises(ValueError):
        CodeParams(8, 4, 3, 12)


def check_code_invariants(code):
    F, cols = code.field, code.generator.columns()
    assert rank(code.generator) == code.k
    for g in code.groups:
        if code.replicated_column in g:
            g = tuple(j for j in g if j != code.n - 1)
        *head, last = g
        acc = tuple(0 for _ in range(code.k))
        for j in head:
            acc = tuple(F.add(a, b) for a, b in zip(acc, cols[j]))
        assert acc == cols[last]
    assert verify_selection_property(code)


def test_divisible_example(code_843):
    code = code_843
    assert code.groups == ((0, 1, 2, 3), (4, 5, 6, 7))
    check_code_invariants(code)
    F, cols = code.field, code.generator.columns()
    for g in code.groups:  # each full group is a circuit of size r+1
        assert is_circuit(F, [cols[j] for j in g])


def test_selection_property_independent_oracle(code_843):
    code = code_843
    cols = code.generator.columns()
    for idx in capped_subsets(code):
        assert independent_by_minors([cols[j] for j in idx], 113), idx


def test_non_divisible_example():
    code = build(CodeParams(8, 4, 2, 241), seed=3)
    assert code.groups == ((0, 1, 2), (3, 4, 5), (6, 7))
    check_code_invariants(code)
    # b = 2: the short group is {g, g}
    assert code.generator.column(6) == code.generator.column(7)
    cols = code.generator.columns()
    for idx in capped_subsets(code):
        assert independent_by_minors([cols[j] for j in idx], 241), idx


def test_determinism():
    a = build(CodeParams(8, 4, 3, 113), seed=11)
    b = build(CodeParams(8, 4, 3, 113), seed=11)
    c = build(CodeParams(8, 4, 3, 113), seed=12)
    assert a == b and a.generator == b.generator
    assert a.generator != c.generator


def test_build_rejects_replicate_triple():
    with pytest.raises(ValueError):
        build(CodeParams(5, 2, 1, 5))
    assert feasibility(5, 2, 1).mode == "replicate"


def test_replication_examples():
    code = build_with_replication(7, 4, 2, 241, seed=0)
    assert code.n == 7 and code.replicated_column == 0
    assert code.groups[0] == (0, 1, 2, 6)
    assert code.generator.column(6) == code.generator.column(0)
    check_code_invariants(code)
    for n, k, r in [(5, 2, 1), (9, 6, 3)]:
        c = construct(n, k, r, minimum_guaranteed_q(n, k))
        assert c.n == n and c.replicated_column == 0
        check_code_invariants(c)


def test_selection_property_negative():
    F = field_of_order(7)
    # a repeated column inside one group's cap
    G = FieldMatrix.from_columns(F, [(1, 0), (1, 0), (2, 0), (0, 1), (1, 1), (1, 1)], 2)
    code = LinearLrcCode(CodeParams(6, 2, 2, 7), G, ((0, 1, 2), (3, 4, 5)))
    assert not verify_selection_property(code)


def test_k1_selection_property():
    F = field_of_order(5)
    good = LinearLrcCode(CodeParams(4, 1, 1, 5), FieldMatrix.from_rows(F, [[1, 1, 2, 2]]), ((0, 1), (2, 3)))
    bad = LinearLrcCode(CodeParams(4, 1, 1, 5), FieldMatrix.from_rows(F, [[1, 1, 0, 0]]), ((0, 1), (2, 3)))
    assert verify_selection_property(good)
    assert not verify_selection_property(bad)


def test_small_field_failure_reports_guaranteed_q():
    with pytest.raises(ConstructionError, match="113"):
        build(CodeParams(8, 4, 3, 2), seed=0, max_attempts=2)


DIRECT = [t for t in TRIPLES if t[0] <= 9 and feasibility(*t).mode == "direct"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(DIRECT), st.integers(0, 10**6))
def test_build_invariants_any_seed(triple, seed):
    n, k, r = triple
    code = build(CodeParams(n, k, r, minimum_guaranteed_q(n, k)), seed=seed)
    assert [len(g) for g in code.groups] == CodeParams(n, k, r, 3).group_sizes()
    check_code_invariants(code)
