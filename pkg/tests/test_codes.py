import pytest

from extremal72.codes import (BlockMap, LinearCode, block_embed, block_project, classify, code_intersection, code_sum,
                              dual, extremal_bound, fixed_projection_identity, min_weight_below, minimum_weight,
                              no_overcode_check, replicate, selfdual_closure, weight_enumerator, words_of_weight)
from extremal72.exceptions import BudgetExceeded, StructuralError
from extremal72.gf2linalg import BitVector


def test_codes_compare_by_span():
    a = LinearCode.from_rows(4, ['1100', '0110'])
    b = LinearCode.from_rows(4, ['1010', '0110'])
    assert a == b
    assert hash(a) == hash(b)
    assert a.k == 2
    assert a.contains(BitVector.from_string('1010'))
    assert not a.contains(0b1000)


def test_code_f_is_self_dual(code_f):
    flags = classify(code_f)
    assert (code_f.n, code_f.k) == (12, 6)
    assert flags.self_dual
    assert not flags.doubly_even
    assert dual(code_f) == code_f
    assert minimum_weight(code_f) == 4


def test_golay_weight_distribution(golay):
    distribution = weight_enumerator(golay)
    assert {w: a for w, a in enumerate(distribution) if a} == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    flags = classify(golay)
    assert flags.self_dual and flags.doubly_even
    assert len(words_of_weight(golay, [8])) == 759


def test_enumeration_budget(golay):
    with pytest.raises(BudgetExceeded):
        weight_enumerator(golay, budget=100)


def test_dual_dimension_and_involution(rng):
    for _ in range(10):
        n = rng.randint(3, 30)
        c = LinearCode.from_rows(n, [rng.getrandbits(n) for _ in range(rng.randint(1, n))])
        d = dual(c)
        assert d.k == n - c.k
        assert all((row & other).bit_count() % 2 == 0 for row in c.rows for other in d.rows)
        assert dual(d) == c


def test_sum_and_intersection_of_codes():
    a = LinearCode.from_rows(6, ['110000', '001100'])
    b = LinearCode.from_rows(6, ['001100', '000011'])
    assert code_sum(a, b).k == 3
    assert code_intersection(a, b) == LinearCode.from_rows(6, ['001100'])


def test_min_weight_below(code_f):
    assert min_weight_below(code_f, 4) is None
    witness = min_weight_below(code_f, 5)
    assert witness.weight == 4
    assert code_f.contains(witness)


def test_min_weight_below_information_sets(golay):
    rows = list(golay.rows) + [row << 24 for row in golay.rows]
    double = LinearCode.from_rows(48, rows)
    assert double.k == 24
    assert min_weight_below(double, 8) is None
    assert min_weight_below(double, 9).weight == 8
    assert minimum_weight(double) == 8


def test_extremal_bound():
    assert extremal_bound(24) == 8
    assert extremal_bound(72) == 16


def test_replicate(code_f):
    doubled = replicate(code_f, 2)
    assert (doubled.n, doubled.k) == (24, 6)
    assert minimum_weight(doubled) == 8


def test_block_project_rejects_non_constant_orbit():
    with pytest.raises(StructuralError) as raised:
        block_project(BitVector.from_string('100000'), BlockMap.PI24)
    assert raised.value.orbit == (1, 3, 5)


def test_block_embed_then_project():
    short = BitVector.from_string('011')
    assert block_project(block_embed(short, BlockMap.PI36), BlockMap.PI36) == short
    long = block_embed(BitVector.from_string('10'), BlockMap.PI24)
    assert str(long) == '101010'


def test_phi_sums_blocks():
    word = BitVector.from_string('110000' '100000')
    assert str(block_project(word, BlockMap.PHI)) == '01'


def test_fixed_projection_identity():
    rows = [(1 | 1 << 3) << (6 * b + i) for b in range(2) for i in range(3)]
    code = LinearCode.from_rows(12, rows)
    assert classify(code).self_dual
    assert fixed_projection_identity(code)


def test_no_overcode(code_f):
    assert no_overcode_check(code_f, 4)
    assert not no_overcode_check(LinearCode.from_rows(4, ['1111']), 2)


def test_selfdual_closure():
    c = LinearCode.from_rows(8, ['11000000', '00110000'])
    closed = selfdual_closure(c)
    assert closed.k == 4
    assert classify(closed).self_dual
    assert c.is_subcode_of(closed)
