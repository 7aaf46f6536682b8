import itertools

import pytest

from lrcodes.construction import construct
from lrcodes.f4family import encode, family_matrix
from lrcodes.repairsim import RepairError, decode_global, erase, repair_local, simulate


@pytest.fixture(scope="module")
def f133():
    return family_matrix("F1_33", 1)


def sample_word(code):
    return code.encode([(7 * i + 3) % code.field.q for i in range(code.k)])


def test_erase():
    w = erase((1, 2, 3), [1])
    assert w.values == (1, None, 3) and w.erased == [1] and w.known == [0, 2]
    with pytest.raises(IndexError):
        erase((1, 2, 3), [3])


def test_single_erasures_repair_locally(code_843):
    y = sample_word(code_843)
    for j in range(code_843.n):
        out = repair_local(code_843, erase(y, [j]))
        assert out.complete and tuple(out.word) == y
        assert out.methods[j] == "local" and out.reads[j] <= 3


def test_two_erasures_in_one_group_fail_locally(code_843):
    y = sample_word(code_843)
    out = repair_local(code_843, erase(y, [0, 1]))
    assert out.methods[0] == out.methods[1] == "failed"
    assert not out.complete
    # the other group is untouched; one erasure there still repairs
    out = repair_local(code_843, erase(y, [0, 4]))
    assert out.complete and tuple(out.word) == y


def test_global_decoding_exhaustive(code_843):
    y = sample_word(code_843)
    n, d = code_843.n, 4
    for e in range(d):
        for pos in itertools.combinations(range(n), e):
            res = decode_global(code_843, erase(y, pos))
            assert res.unique and res.word == y, pos
    ambiguous = [pos for pos in itertools.combinations(range(n), d)
                 if not decode_global(code_843, erase(y, pos)).unique]
    assert ambiguous


def test_zero_erasures_identity(code_843):
    y = sample_word(code_843)
    assert decode_global(code_843, erase(y, [])).word == y
    assert repair_local(code_843, erase(y, [])).word == list(y)


def test_inconsistent_word_reports_zero_candidates(code_843):
    y = list(sample_word(code_843))
    y[0] = (y[0] + 1) % 113
    res = decode_global(code_843, erase(y, [7]))
    assert res.candidates == 0 and not res.unique


def test_all_erased_raises(code_843):
    with pytest.raises(RepairError):
        repair_local(code_843, erase(sample_word(code_843), range(8)))


def test_f1_33_repair_of_last_block(f133):
    y = encode(f133, [1, 2, 3, 1])
    out = repair_local(f133, erase(y, [5]))
    assert out.complete and tuple(out.word) == y and out.reads[5] <= 3
    # the stated relation y5 + y6 + y7 = 00 repairs it from the other two
    assert y[4] ^ y[6] == y[5]


def test_operator_code_exhaustive_patterns(f133):
    y = encode(f133, [3, 0, 2, 1])
    for j in range(7):
        assert tuple(repair_local(f133, erase(y, [j])).word) == y
    for pos in itertools.combinations(range(7), 2):
        assert decode_global(f133, erase(y, pos)).word == y
    assert any(not decode_global(f133, erase(y, pos)).unique
               for pos in itertools.combinations(range(7), 3))


def test_cascading_repair_after_replication():
    code = construct(7, 4, 2, 241)
    y = sample_word(code)
    # column 6 copies column 0; both erased with one more group member
    out = repair_local(code, erase(y, [0, 6]))
    assert out.complete and tuple(out.word) == y


def test_simulate(code_843):
    one = simulate(code_843, 200, 1, seed=5)
    assert one["local_rate"] == 1.0 and one["mean_reads"] <= 3
    three = simulate(code_843, 200, 3, seed=5)
    assert three["global_rate"] == 1.0
    assert simulate(code_843, 50, 7, seed=5)["global_rate"] == 0.0
    assert simulate(code_843, 50, 2, seed=9) == simulate(code_843, 50, 2, seed=9)
    with pytest.raises(ValueError):
        simulate(code_843, 10, 8)
