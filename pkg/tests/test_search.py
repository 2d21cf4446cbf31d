import pytest

from extremal72.codedata import checkpoint_read
from extremal72.config import RunConfig
from extremal72.exceptions import CheckpointMismatch, MissingDataError
from extremal72.oracles import constructed_socle
from extremal72.searchpipeline import full_search, render_report
from extremal72.searchpipeline.report import VERDICT_NONE, parse_report
from extremal72.searchpipeline.search import candidate_payload
from extremal72.tasks import sieve as sieve_task


@pytest.fixture
def config(tmp_path) -> RunConfig:
    return RunConfig(blocks=2, threshold=100, checkpoint=tmp_path / 'search.ckpt', log_level='WARNING')


@pytest.fixture
def candidates():
    return [('toy1', constructed_socle(2)), ('toy2', constructed_socle(2))]


def test_candidate_payload(config):
    payload = candidate_payload('toy', constructed_socle(2), config)
    assert payload['n'] == 12 and len(payload['rows']) == 2
    assert payload['state'] is None
    assert RunConfig.from_dict(payload['config']) == config


def test_full_search_runs_every_candidate(config, candidates):
    report = full_search(candidates, config)
    assert report.complete
    assert report.verdict == VERDICT_NONE
    parsed = parse_report(render_report(report))
    assert [entry['key'] for entry in parsed['candidates']] == ['toy1', 'toy2']
    assert all(entry['found'] == '0' for entry in parsed['candidates'])
    checkpoint = checkpoint_read(config.checkpoint, config.config_hash())
    assert checkpoint.completed == ['toy1', 'toy2']


def test_resume_gives_the_same_report(config, candidates):
    first = render_report(full_search(candidates, config))
    resumed = render_report(full_search(candidates, config, resume=True))
    assert resumed == first


def test_resume_refuses_another_configuration(config, candidates):
    full_search(candidates, config)
    with pytest.raises(CheckpointMismatch):
        full_search(candidates, config.with_overrides(threshold=99), resume=True)


def test_resume_without_checkpoint(config, candidates):
    with pytest.raises(MissingDataError):
        full_search(candidates, config, resume=True)


def test_checkpoint_is_written_after_each_candidate(config, monkeypatch):
    seen = []
    sieve = sieve_task.sieve_candidate

    def recording(code, run_config, key, state):
        path = run_config.checkpoint
        seen.append((key, checkpoint_read(path).completed if path.exists() else []))
        return sieve(code, run_config, key, state)

    monkeypatch.setattr(sieve_task, 'sieve_candidate', recording)
    candidates = [(f'toy{i}', constructed_socle(2)) for i in (1, 2, 3)]
    full_search(candidates, config)
    assert seen == [('toy1', []), ('toy2', ['toy1']), ('toy3', ['toy1', 'toy2'])]


def test_full_search_finds_the_golay_code(tmp_path, golay_l):
    config = RunConfig(blocks=4, threshold=8, checkpoint=tmp_path / 'golay.ckpt', log_level='WARNING')
    report = full_search([('G1', golay_l)], config)
    assert report.complete
    assert report.found_in == ['G1']
    parsed = parse_report(render_report(report))
    assert parsed['verdict'] == 'extremal code found for G1'
    assert parsed['candidates'][0]['reps'] == '8,8'
    assert int(parsed['candidates'][0]['found']) > 0
