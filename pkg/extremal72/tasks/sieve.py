""" Task running the distance sieve for one candidate. Arguments and results are plain data so they travel
    through any broker. """

import logging

from celery import shared_task

from ..codes import LinearCode
from ..config import RunConfig
from ..exceptions import SearchSuspended
from ..searchpipeline.sieve import SieveState, sieve_candidate

logger = logging.getLogger(__name__)


@shared_task(name='sieve.sieve_candidate_task')
def sieve_candidate_task(payload: dict) -> dict:
    """ Sieves the candidate in `payload` (see `candidate_payload`). Returns the state and whether a cap
        suspended it. """
    config = RunConfig.from_dict(payload['config'])
    code = LinearCode.from_rows(payload['n'], payload['rows'], name=payload['key'])
    state = SieveState.from_dict(payload['state']) if payload.get('state') else None
    try:
        finished = sieve_candidate(code, config, payload['key'], state)
    except SearchSuspended as e:
        logger.warning('%s', e)
        return {'key': payload['key'], 'suspended': True, 'reason': str(e), 'state': e.state.to_dict()}
    return {'key': payload['key'], 'suspended': False, 'reason': '', 'state': finished.to_dict()}
