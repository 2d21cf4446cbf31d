""" Provides configuration for a search run in the form of a RunConfig
    class that is loaded with the data from the `.env` file """

import dataclasses
from dataclasses import dataclass, field
import hashlib
import json
import os
from pathlib import Path
from typing import Mapping, Optional

from dotenv import load_dotenv

load_dotenv(override=True)

PREFIX = 'EXTREMAL72_'
DE_FILTER_MODES = ('ambient', 'socle')
STAGE_ORDERS = ('canonical', 'ascending')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

# Fields that change what a search finds; everything else may differ between a run and its resume.
HASHED_FIELDS = ('threshold', 'blocks', 'de_filter', 'stage_order', 'prefilter')


def _env_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f'Invalid boolean: {value}')


def _env_int(value: str) -> int:
    """ Accepts plain integers and powers written as `2**28`. """
    value = value.strip()
    if '**' in value:
        base, exponent = value.split('**', 1)
        return int(base) ** int(exponent)
    return int(value)


@dataclass(frozen=True)
class RunConfig:
    """ Settings of a search run. Defaults come from `EXTREMAL72_*` environment variables, cli flags
        override them through `with_overrides`. """
    data_dir: Path = Path('data')
    checkpoint: Path = Path('checkpoints/search.ckpt')
    threshold: int = 16
    blocks: int = 12
    budget_enum: int = 1 << 28
    jobs: int = 1
    group_cap: int = 10 ** 6
    orbit_cap: int = 200_000
    node_cap: int = 5 * 10 ** 7
    survivor_cap: int = 10 ** 7
    time_budget: float = 0.0
    de_filter: str = 'ambient'
    stage_order: str = 'canonical'
    prefilter: bool = True
    seed: int = 0
    log_level: str = 'INFO'
    redis_uri: Optional[str] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'data_dir', Path(self.data_dir))
        object.__setattr__(self, 'checkpoint', Path(self.checkpoint))
        object.__setattr__(self, 'log_level', self.log_level.upper())
        if self.de_filter not in DE_FILTER_MODES:
            raise ValueError(f'Invalid doubly-even filter mode: {self.de_filter}')
        if self.stage_order not in STAGE_ORDERS:
            raise ValueError(f'Invalid stage order: {self.stage_order}')
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f'Invalid log level: {self.log_level}')
        for name in ('threshold', 'blocks', 'budget_enum', 'jobs', 'group_cap', 'orbit_cap', 'node_cap',
                     'survivor_cap'):
            if getattr(self, name) <= 0:
                raise ValueError(f'{name} must be positive, got {getattr(self, name)}')
        if self.time_budget < 0:
            raise ValueError(f'time_budget must not be negative, got {self.time_budget}')

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'RunConfig':
        """ Builds a config from `environ` (default `os.environ`), ignoring unset variables. """
        environ = os.environ if environ is None else environ
        converters = {
            'data_dir': Path, 'checkpoint': Path,
            'threshold': _env_int, 'blocks': _env_int, 'budget_enum': _env_int, 'jobs': _env_int,
            'group_cap': _env_int, 'orbit_cap': _env_int, 'node_cap': _env_int, 'survivor_cap': _env_int,
            'time_budget': float, 'de_filter': str.lower, 'stage_order': str.lower, 'prefilter': _env_bool,
            'seed': _env_int, 'log_level': str,
        }
        values = {}
        for name, convert in converters.items():
            raw = environ.get(PREFIX + name.upper())
            if raw not in (None, ''):
                values[name] = convert(raw)
        if environ.get('REDIS_URI'):
            values['redis_uri'] = environ['REDIS_URI']
        return cls(**values)

    def with_overrides(self, **overrides) -> 'RunConfig':
        """ Copy with every override that is not None applied. """
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict:
        """ Json-safe copy of every field, for task payloads. """
        values = dataclasses.asdict(self)
        values['data_dir'] = str(self.data_dir)
        values['checkpoint'] = str(self.checkpoint)
        return values

    @classmethod
    def from_dict(cls, values: Mapping) -> 'RunConfig':
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{key: value for key, value in values.items() if key in names})

    def hashed_fields(self) -> dict:
        return {name: getattr(self, name) for name in HASHED_FIELDS}

    def config_hash(self) -> str:
        """ SHA-256 of the canonical json of the result-affecting fields. """
        canonical = json.dumps(self.hashed_fields(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @property
    def CELERY(self) -> dict:
        # pylint: disable-msg=invalid-name
        """ Celery settings in the shape `celery_init_app` expects. Without a broker tasks run eagerly. """
        if not self.redis_uri:
            return {
                'task_always_eager': True,
                'task_eager_propagates': True,
                'task_ignore_result': False,
            }
        return {
            'broker_url': self.redis_uri,
            'result_backend': self.redis_uri,
            'task_ignore_result': False,
            'broker_connection_retry_on_startup': True,
            'worker_concurrency': self.jobs,
        }
