import pytest

from extremal72.cli import (EXIT_MISSING_DATA, EXIT_OK, EXIT_SUSPENDED, EXIT_USAGE, EXIT_VERIFICATION, STAGES,
                            main)
from extremal72.codedata import CodeRecord, save_codes
from extremal72.codes import LinearCode
from extremal72.helpers.dataclasses import PipelinePaths
from extremal72.oracles import constructed_socle
from extremal72.searchpipeline.report import VERDICT_NONE

TOY = ['--blocks', '2', '--threshold', '100']


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('REDIS_URI', 'EXTREMAL72_SURVIVOR_CAP', 'EXTREMAL72_TIME_BUDGET', 'EXTREMAL72_THRESHOLD',
                 'EXTREMAL72_BLOCKS'):
        monkeypatch.delenv(name, raising=False)


def write_store(path, *codes: LinearCode):
    save_codes([CodeRecord.from_code(code) for code in codes], path)
    return str(path)


@pytest.fixture
def toy_store(tmp_path):
    return write_store(tmp_path / 'toy.txt', LinearCode(12, constructed_socle(2).gen, 'toy'))


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(['mindist']) == EXIT_USAGE
    assert main(['mindist', '--threshold', '0', 'codes.txt']) == EXIT_USAGE
    capsys.readouterr()


def test_mindist(tmp_path, capsys, code_f):
    store = write_store(tmp_path / 'f.txt', code_f)
    assert main(['mindist', store]) == EXIT_OK
    assert capsys.readouterr().out == 'F [12,6] d=4\n'
    assert main(['mindist', '--below', '4', store]) == EXIT_OK
    assert capsys.readouterr().out == 'F [12,6] none\n'
    assert main(['mindist', '--below', '5', store]) == EXIT_OK
    assert capsys.readouterr().out.startswith('F [12,6] weight=4 ')


def test_missing_files(tmp_path):
    assert main(['mindist', str(tmp_path / 'absent.txt')]) == EXIT_MISSING_DATA
    assert main(['validate-data', '--data', str(tmp_path)]) == EXIT_MISSING_DATA
    assert main(['build-l', '--data', str(tmp_path)]) == EXIT_MISSING_DATA


def test_decompose(toy_store, tmp_path, capsys):
    assert main(['decompose', toy_store]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'direct=True' in out
    assert 'socle summand 1' in out
    not_invariant = write_store(tmp_path / 'pair.txt', LinearCode.from_rows(12, ['110000000000'], name='pair'))
    assert main(['decompose', not_invariant]) == EXIT_VERIFICATION


def test_fixed_code(toy_store, capsys):
    assert main(['fixed-code', toy_store]) == EXIT_OK
    assert 'C(g) -> [2,0]' in capsys.readouterr().out


def test_sieve(toy_store, capsys):
    assert main(['sieve', *TOY, toy_store]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'candidate toy reps=2 h=0 found=0' in out
    assert f'verdict {VERDICT_NONE}' in out
    assert main(['sieve', *TOY, '--name', 'other', toy_store]) == EXIT_MISSING_DATA


def test_sieve_suspension(toy_store, monkeypatch):
    monkeypatch.setenv('EXTREMAL72_SURVIVOR_CAP', '1')
    assert main(['sieve', '--blocks', '2', '--threshold', '1', toy_store]) == EXIT_SUSPENDED


def test_ingest_rejects_a_wrong_classification(tmp_path, code_f):
    source = write_store(tmp_path / 'source.txt', code_f)
    assert main(['ingest', '--data', str(tmp_path / 'data'), source]) == EXIT_VERIFICATION


def test_full_search_reuses_stored_stages(tmp_path, capsys):
    data = tmp_path / 'data'
    paths = PipelinePaths(data)
    for stage in STAGES[:-1]:
        write_store(paths.store(stage), LinearCode.from_rows(12, ['111111000000'], name=f'{stage}1'))
    write_store(paths.store('Lprime'), LinearCode(12, constructed_socle(2).gen, 'Lp1'))
    argv = ['full-search', *TOY, '--data', str(data), '--checkpoint', str(tmp_path / 'search.ckpt')]
    assert main(argv) == EXIT_OK
    out = capsys.readouterr().out
    assert paths.report.read_text(encoding='utf-8') == out
    assert 'candidate Lp1 reps=2 h=0 found=0' in out
    assert main(argv + ['--resume']) == EXIT_OK
    assert capsys.readouterr().out == out


def test_worker_needs_a_broker():
    assert main(['worker']) == EXIT_USAGE


@pytest.mark.slow
def test_verify_lemmas(capsys):
    assert main(['verify-lemmas']) == EXIT_OK
    assert '[ERROR]' not in capsys.readouterr().out
