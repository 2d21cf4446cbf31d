""" Runs the sieve over every candidate of L', one celery task per candidate, checkpointing after each. """

import logging
import time
from typing import Optional, Sequence

from ..codedata import Checkpoint, Stage, checkpoint_read, checkpoint_write
from ..codes import LinearCode
from ..config import RunConfig
from ..exceptions import SearchSuspended
from .report import SearchReport
from .sieve import SieveState

logger = logging.getLogger(__name__)

POLL_SECONDS = 1.0


def candidate_payload(key: str, code: LinearCode, config: RunConfig, state: Optional[SieveState] = None) -> dict:
    """ Plain-data arguments of `sieve_candidate_task`. """
    return {
        'key': key,
        'n': code.n,
        'rows': code.to_strings(),
        'config': config.to_dict(),
        'state': state.to_dict() if state else None,
    }


def _record_result(checkpoint: Checkpoint, result: dict, config: RunConfig) -> bool:
    """ Stores one task result in the checkpoint and writes it out. Returns whether the candidate was suspended. """
    key = result['key']
    if result['suspended']:
        checkpoint.state[key] = result['state']
        logger.warning('%s suspended: %s', key, result['reason'])
    else:
        checkpoint.mark_done(key, result['state'])
        logger.info('%s sieved, %s of the candidates done', key, len(checkpoint.completed))
    checkpoint_write(checkpoint, config.checkpoint)
    return result['suspended']


def full_search(candidates: Sequence[tuple[str, LinearCode]], config: RunConfig, resume: bool = False) -> SearchReport:
    """ Sieves every candidate and aggregates the report.

    Without a broker the candidates run one after the other in process; with one they run on the worker pool and
    are recorded as they finish. Either way the checkpoint is rewritten after every candidate.

    Args:
        candidates (Sequence[tuple[str, LinearCode]]): (key, L) pairs in report order.
        config (RunConfig): Run configuration; its hash guards the checkpoint.
        resume (bool): Continue from the checkpoint at `config.checkpoint`.

    Returns:
        SearchReport: One line per candidate and the verdict.

    Raises:
        SearchSuspended: When some candidate hit a cap; its state is in the checkpoint.
    """
    # pylint: disable-msg=import-outside-toplevel
    from .. import create_app
    from ..tasks.sieve import sieve_candidate_task

    started = time.monotonic()
    config_hash = config.config_hash()
    if resume:
        checkpoint = checkpoint_read(config.checkpoint, config_hash)
        logger.info('resuming: %s of %s candidates already sieved', len(checkpoint.completed), len(candidates))
    else:
        checkpoint = Checkpoint(Stage.SEARCH, config_hash)
    app = create_app(config)

    def dispatch(key: str, code: LinearCode):
        previous = checkpoint.state.get(key)
        state = SieveState.from_dict(previous) if previous else None
        return sieve_candidate_task.apply_async(args=[candidate_payload(key, code, config, state)])

    todo = [(key, code) for key, code in candidates if not checkpoint.is_done(key)]
    suspended = []
    if app.conf.task_always_eager:
        for key, code in todo:
            if _record_result(checkpoint, dispatch(key, code).get(), config):
                suspended.append(key)
    else:
        pending = {key: dispatch(key, code) for key, code in todo}
        while pending:
            finished = [key for key, result in pending.items() if result.ready()]
            if not finished:
                time.sleep(POLL_SECONDS)
                continue
            for key in finished:
                if _record_result(checkpoint, pending.pop(key).get(), config):
                    suspended.append(key)

    if suspended:
        raise SearchSuspended(f'{len(suspended)} candidates suspended: {", ".join(suspended)}', checkpoint)
    states = [SieveState.from_dict(checkpoint.state[key]) for key, _ in candidates]
    elapsed = time.monotonic() - started
    report = SearchReport.from_states(config_hash, states, elapsed)
    logger.info('search finished in %.1fs: %s', elapsed, report.verdict)
    return report
