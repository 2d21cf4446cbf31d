import pytest

from extremal72.codes import classify
from extremal72.groupalg import cyclic_span, in_v2_bits, is_invariant
from extremal72.helpers.messaging import report_error_free
from extremal72.oracles import (CHECKS, check_class_invariance, check_huffman, check_quotient_counts,
                                check_socle_decompositions, check_solution_classes, check_type2_sums, pair_code,
                                run_all, split_matches_idempotents)
from extremal72.perms import huffman_check, standard_g

FAST_CHECKS = ['idempotents', 'ideal', 'block-tables', 'solution-classes', 'cyclic-modules', 'block-maps',
               'fixed-projection', 'type2-sums', 'socle-decompositions', 'class-invariance']


def test_constructed_socle(socle_12):
    assert (socle_12.n, socle_12.k) == (72, 12)
    assert is_invariant(socle_12)
    assert all(in_v2_bits(row, 12) for row in socle_12.rows)


@pytest.mark.parametrize('name', FAST_CHECKS)
def test_fast_checks_pass(name):
    messages = CHECKS[name]()
    assert messages
    assert report_error_free(messages), messages


def test_small_instances():
    assert report_error_free(check_solution_classes(3))
    assert report_error_free(check_quotient_counts(4))
    assert report_error_free(check_huffman(blocks=4, samples=5, seed=3))


@pytest.mark.slow
def test_run_all():
    messages = run_all(seed=1)
    assert len(messages) >= len(CHECKS)
    assert report_error_free(messages), [str(m) for m in messages if m.severity.value == 'error']


def test_idempotents_project_onto_huffman_parts(rng, golay_g):
    codes = [cyclic_span(72, [rng.getrandbits(72) for _ in range(rng.randint(1, 3))]) for _ in range(20)]
    assert all(split_matches_idempotents(code) for code in codes)
    assert split_matches_idempotents(golay_g)


def test_pair_code_splits_twelve_and_twenty_four():
    code = pair_code(12)
    assert classify(code).self_dual
    split = huffman_check(code, standard_g(12) ** 2)
    assert (split.fixed.k, split.even.k) == (12, 24)
    assert split_matches_idempotents(code)


def test_module_sums_at_two_blocks():
    same, different = check_type2_sums(2)
    assert report_error_free([same, different])
    assert same.message.startswith('30 same-socle')
    assert different.message.startswith('160 pairs')
    assert report_error_free(check_socle_decompositions(2))


def test_class_invariance_over_seeds():
    for seed in range(3):
        assert report_error_free(check_class_invariance(samples=100, seed=seed))
