import itertools

import pytest

from extremal72.codedata import CODE_F_ROWS
from extremal72.codes import LinearCode
from extremal72.config import RunConfig
from extremal72.exceptions import ContractViolation, SearchSuspended, VerificationFailure
from extremal72.gf2linalg import BitVector
from extremal72.groupalg import cyclic_module, h_p_representatives, h_rows
from extremal72.oracles import constructed_socle
from extremal72.searchpipeline import sieve
from extremal72.searchpipeline.sieve import (SieveState, direct_filter, filter_options, sieve_candidate,
                                             socle_summands, stage_names, staged_filter)


def f_row(index: int) -> int:
    return BitVector.from_string(CODE_F_ROWS[index]).bits


BAD_ROWS = (BitVector.from_string('110000000000').bits, BitVector.from_string('000000000011').bits)


def planted_options() -> list[list[list[int]]]:
    """ Three factors over a subcode of F; the options holding a weight-2 word must be dropped. """
    return [
        [[f_row(2)], [BAD_ROWS[0]]],
        [[f_row(3)], [f_row(4)]],
        [[f_row(5)], [BAD_ROWS[1]]],
    ]


def toy_config(**overrides) -> RunConfig:
    values = {'blocks': 2, 'threshold': 100}
    values.update(overrides)
    return RunConfig(**values)


@pytest.fixture
def base() -> LinearCode:
    return LinearCode.from_rows(12, [f_row(0), f_row(1)])


def test_stage_names():
    assert stage_names(6) == ['P', 'T', 'Q', 'F', 'S']
    assert stage_names(3) == ['stage-2', 'stage-3']


def test_filter_options(base):
    assert filter_options(base, [[f_row(2)], [BAD_ROWS[0]]], 4) == [0]


def test_staged_filter_finds_planted_tuples(base):
    expected = [(0, 0, 0), (0, 1, 0)]
    assert staged_filter(base, planted_options(), 4) == expected
    assert staged_filter(base, planted_options(), 4, prefilter=False) == expected


@pytest.mark.parametrize('threshold', [2, 3, 4, 5])
def test_staged_equals_direct(base, threshold):
    for prefilter in (True, False):
        options = planted_options()
        assert staged_filter(base, options, threshold, prefilter) == direct_filter(base, options, threshold, prefilter)


def test_prefilter_drops_non_orthogonal_rows():
    base = LinearCode.zero(4)
    options = [[[0b0011]], [[0b0110]]]
    assert staged_filter(base, options, 1, prefilter=False) == [(0, 0)]
    assert staged_filter(base, options, 1, prefilter=True) == []


def test_socle_summands():
    socle, summands = socle_summands(constructed_socle(4), 4)
    assert socle.k == 4
    assert len(summands) == 2
    with pytest.raises(ContractViolation):
        socle_summands(LinearCode.from_rows(12, [constructed_socle(2).rows[0]]), 2)


def test_sieve_rules_out_everything_above_the_length():
    l = constructed_socle(2)
    state = sieve_candidate(l, toy_config(), 'toy')
    assert state.complete
    assert state.found == []
    assert state.h_sizes == [0]
    p = cyclic_module(BitVector(12, l.rows[0]))
    assert state.representative_counts == [len(h_p_representatives(p, l, l, 'ambient'))]
    assert state.final_survivors == 0
    assert sieve_candidate(l, toy_config(), 'toy', state) is state


def test_sieve_suspends_on_time_budget_and_resumes(monkeypatch):
    clock = itertools.count()
    monkeypatch.setattr(sieve.time, 'monotonic', lambda: next(clock))
    l = constructed_socle(2)
    with pytest.raises(SearchSuspended) as raised:
        sieve_candidate(l, toy_config(time_budget=0.5), 'toy')
    state = raised.value.state
    assert state.stage == 1 and not state.complete
    resumed = sieve_candidate(l, toy_config(), 'toy', SieveState.from_dict(state.to_dict()))
    assert resumed.complete
    assert resumed.representative_counts == state.representative_counts


def test_sieve_suspends_on_survivor_cap():
    l = constructed_socle(2)
    with pytest.raises(SearchSuspended) as raised:
        sieve_candidate(l, toy_config(threshold=1, survivor_cap=1), 'toy')
    state = raised.value.state
    assert len(state.survivors) == state.h_sizes[0] == 2


def test_sieve_refuses_a_survivor_that_is_not_self_dual():
    l = constructed_socle(2)
    with pytest.raises(VerificationFailure):
        sieve_candidate(l, toy_config(threshold=1), 'toy')


def golay_config(**overrides) -> RunConfig:
    values = {'blocks': 4, 'threshold': 8}
    values.update(overrides)
    return RunConfig(**values)


@pytest.mark.parametrize('mode', ['ambient', 'socle'])
def test_sieve_finds_the_golay_code(golay_g, golay_l, mode):
    state = sieve_candidate(golay_l, golay_config(de_filter=mode), 'G1')
    assert state.complete
    assert state.representative_counts == [8, 8]
    assert state.h_sizes == [6, 6]
    assert len(state.found) == 6
    found = [LinearCode.from_rows(24, rows) for rows in state.found]
    assert golay_g in found
    assert all(golay_l.is_subcode_of(code) for code in found)


def test_staged_equals_direct_on_golay_factors(golay_l):
    socle, summands = socle_summands(golay_l, 4)
    options = [[h_rows(z.bits, 4) for z in h_p_representatives(p, socle, golay_l)] for p in summands]
    staged = staged_filter(golay_l, options, 8)
    assert staged == direct_filter(golay_l, options, 8)
    assert len(staged) == 6


def test_golay_sieve_resumes_inside_and_after_the_staged_loop(golay_l, monkeypatch):
    expected = sieve_candidate(golay_l, golay_config(), 'G1')
    clock = itertools.count()
    monkeypatch.setattr(sieve.time, 'monotonic', lambda: next(clock))
    with pytest.raises(SearchSuspended) as first:
        sieve_candidate(golay_l, golay_config(time_budget=0.5), 'G1')
    after_first = first.value.state
    assert after_first.stage == 1
    first_survivors = set(after_first.survivors)

    clock = itertools.count()
    monkeypatch.setattr(sieve.time, 'monotonic', lambda: next(clock))
    with pytest.raises(SearchSuspended) as last:
        sieve_candidate(golay_l, golay_config(time_budget=0.5), 'G1', SieveState.from_dict(after_first.to_dict()))
    after_last = last.value.state
    assert after_last.stage == 2 and not after_last.complete
    assert {survivor[:1] for survivor in after_last.survivors} <= first_survivors
    assert len({survivor[:1] for survivor in after_last.survivors}) <= len(first_survivors)

    resumed = sieve_candidate(golay_l, golay_config(), 'G1', SieveState.from_dict(after_last.to_dict()))
    assert resumed.complete
    assert resumed.found == expected.found
    assert resumed.stage_counts == expected.stage_counts


def test_survivor_cap_is_checked_after_the_last_stage(golay_l):
    config = golay_config(survivor_cap=5)
    with pytest.raises(SearchSuspended) as first:
        sieve_candidate(golay_l, config, 'G1')
    assert first.value.state.stage == 1
    with pytest.raises(SearchSuspended) as last:
        sieve_candidate(golay_l, config, 'G1', first.value.state)
    state = last.value.state
    assert state.stage == 2 and not state.complete
    assert len(state.survivors) == 6
