from pathlib import Path

import pytest

from extremal72 import create_app
from extremal72.config import RunConfig
from extremal72.config.loaders import reference_counts


def test_defaults_without_environment():
    config = RunConfig.from_env({})
    assert config.threshold == 16 and config.blocks == 12
    assert config.budget_enum == 1 << 28
    assert config.data_dir == Path('data')
    assert config.redis_uri is None


def test_from_env_converts_values():
    config = RunConfig.from_env({
        'EXTREMAL72_BUDGET_ENUM': '2**20',
        'EXTREMAL72_THRESHOLD': '12',
        'EXTREMAL72_PREFILTER': 'off',
        'EXTREMAL72_DE_FILTER': 'SOCLE',
        'EXTREMAL72_LOG_LEVEL': 'debug',
        'EXTREMAL72_DATA_DIR': '/tmp/codes',
        'EXTREMAL72_JOBS': '',
        'REDIS_URI': 'redis://localhost:6379/0',
    })
    assert config.budget_enum == 1 << 20
    assert config.threshold == 12
    assert not config.prefilter
    assert config.de_filter == 'socle'
    assert config.log_level == 'DEBUG'
    assert config.data_dir == Path('/tmp/codes')
    assert config.jobs == 1
    assert config.redis_uri == 'redis://localhost:6379/0'


@pytest.mark.parametrize('name, value', [
    ('EXTREMAL72_THRESHOLD', '0'),
    ('EXTREMAL72_DE_FILTER', 'everything'),
    ('EXTREMAL72_STAGE_ORDER', 'random'),
    ('EXTREMAL72_PREFILTER', 'maybe'),
    ('EXTREMAL72_TIME_BUDGET', '-1'),
    ('EXTREMAL72_BLOCKS', 'twelve'),
])
def test_invalid_values_are_rejected(name, value):
    with pytest.raises(ValueError):
        RunConfig.from_env({name: value})


def test_overrides_skip_none():
    config = RunConfig().with_overrides(threshold=8, blocks=None)
    assert (config.threshold, config.blocks) == (8, 12)


def test_hash_covers_only_result_fields():
    base = RunConfig()
    assert base.config_hash() == base.with_overrides(jobs=4, budget_enum=1 << 20, log_level='DEBUG').config_hash()
    assert base.config_hash() != base.with_overrides(threshold=14).config_hash()
    assert base.config_hash() != base.with_overrides(stage_order='ascending').config_hash()


def test_dict_round_trip():
    config = RunConfig(threshold=10, data_dir=Path('/srv/data'))
    assert RunConfig.from_dict(config.to_dict()) == config


def test_celery_settings():
    assert RunConfig().CELERY['task_always_eager']
    remote = RunConfig(redis_uri='redis://localhost:6379/0', jobs=3).CELERY
    assert remote['broker_url'] == 'redis://localhost:6379/0'
    assert remote['worker_concurrency'] == 3


def test_create_app_runs_eagerly():
    app = create_app(RunConfig(log_level='WARNING'))
    assert app.conf.task_always_eager
    assert app.conf.task_serializer == 'custom-json'


def test_reference_counts():
    counts = reference_counts()
    assert counts['classification'] == 41
    assert counts['L'] == 38 and counts['Lprime'] == 40
