"""Search engine for extremal self-dual doubly-even [72,36,16] codes with an automorphism of order 6: binary linear
codes over GF(2), the F_2<g> module structure of the g-invariant subspaces, and the staged pipeline that rules out
every candidate. """

from celery import Celery

from .config import RunConfig
from .extensions import celery_init_app, configure_logging


def create_app(config: RunConfig) -> Celery:
    """ Configures logging and creates the Celery app for `config`. """
    configure_logging(config.log_level)
    return celery_init_app(config)
