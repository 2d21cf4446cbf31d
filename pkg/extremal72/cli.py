""" Command line entry point: one subcommand per pipeline stage, the structural check suite, and small code
    utilities.

    Exit statuses: 0 success, 1 verification failure, 2 usage error, 3 missing external data, 4 search
    suspended (resume with --resume). """

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import create_app
from .codedata import (CLASSIFICATION_FILE, CodeRecord, Provenance, load_classification, load_codes, save_codes,
                       validate_classification)
from .codes import (BlockMap, LinearCode, block_constant_code, block_project, code_intersection,
                    fixed_projection_identity, min_weight_below, minimum_weight)
from .config import DE_FILTER_MODES, LOG_LEVELS, STAGE_ORDERS, RunConfig
from .extensions import configure_logging
from .exceptions import Extremal72Error, MissingDataError, SearchSuspended
from .groupalg import decompose_socle, socle, v2_space
from .helpers.dataclasses import PipelinePaths
from .helpers.files import read_json_lines, write_json_lines
from .helpers.formatting import code_summary, messages_str, word_str
from .helpers.messaging import StageMessage, report_error_free
from .oracles import run_all
from .perms import huffman_check, is_automorphism, standard_g
from .searchpipeline import (CandidateL, build_AG, build_C36, build_L, full_search, refine_Lprime,
                             render_report, sieve_candidate)
from .searchpipeline.report import SearchReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_MISSING_DATA = 3
EXIT_SUSPENDED = 4

STAGES = ('AG', 'C36', 'L', 'Lprime')


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--data', type=Path, help='data directory (default: EXTREMAL72_DATA_DIR or ./data)')
    common.add_argument('--checkpoint', type=Path, help='checkpoint file of the search')
    common.add_argument('--jobs', type=int, help='worker pool width')
    common.add_argument('--budget-enum', type=int, help='largest number of codewords enumerated at once')
    common.add_argument('--threshold', type=int, help='minimum distance searched for (default 16)')
    common.add_argument('--blocks', type=int, help='number of 6-blocks (default 12)')
    common.add_argument('--de-filter', choices=DE_FILTER_MODES, help='code the adjoined modules keep doubly-even')
    common.add_argument('--stage-order', choices=STAGE_ORDERS, help='order in which the sieve factors are combined')
    common.add_argument('--log-level', type=str.upper, choices=LOG_LEVELS, help='logging level')
    return common


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='extremal72',
        description='Search for a self-dual doubly-even [72,36,16] code with an automorphism of order 6.',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('verify-lemmas', parents=[common], help='run the structural check suite')

    mindist = commands.add_parser('mindist', parents=[common], help='minimum distance or a word below a threshold')
    mindist.add_argument('--below', type=int, help='only look for a word of weight below this value')
    mindist.add_argument('codefile', type=Path)

    fixed = commands.add_parser('fixed-code', parents=[common], help='C(g) and phi(C) of g-invariant codes')
    fixed.add_argument('codefile', type=Path)

    decompose = commands.add_parser('decompose', parents=[common],
                                    help='Huffman split and socle summands of g-invariant codes')
    decompose.add_argument('codefile', type=Path)

    commands.add_parser('build-ag', parents=[common], help='the Golay codes containing F ⊗ <(1,1)>')
    commands.add_parser('build-c36', parents=[common], help='the aligned [36,18,8] codes')
    commands.add_parser('build-l', parents=[common], help='the [72,24] candidates L')
    commands.add_parser('refine-lprime', parents=[common], help='the candidates paired with the standard g')

    sieve = commands.add_parser('sieve', parents=[common], help='sieve the codes of a store in process')
    sieve.add_argument('codefile', type=Path)
    sieve.add_argument('--name', help='only sieve the record with this name')
    sieve.add_argument('--timings', action='store_true', help='write the wall time into the report')

    search = commands.add_parser('full-search', parents=[common],
                                 help='build the missing stages and sieve every candidate')
    search.add_argument('--resume', action='store_true', help='continue from the checkpoint')
    search.add_argument('--timings', action='store_true', help='write the wall time into the report')

    commands.add_parser('validate-data', parents=[common], help='validate the ingested classification')

    ingest = commands.add_parser('ingest', parents=[common], help='store the [36,18,8] classification')
    ingest.add_argument('source', type=Path)
    ingest.add_argument('--note', default='', help='provenance note, for instance where the file came from')

    commands.add_parser('worker', parents=[common], help='start a celery worker pool of width --jobs')
    return parser.parse_args(argv)


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_env().with_overrides(
        data_dir=args.data,
        checkpoint=args.checkpoint,
        jobs=args.jobs,
        budget_enum=args.budget_enum,
        threshold=args.threshold,
        blocks=args.blocks,
        de_filter=args.de_filter,
        stage_order=args.stage_order,
        log_level=args.log_level,
    )


def _print_messages(messages: Sequence[StageMessage]) -> int:
    if messages:
        print(messages_str(messages))
    return EXIT_OK if report_error_free(list(messages)) else EXIT_VERIFICATION


def _save_stage(paths: PipelinePaths, stage: str, codes: Sequence[LinearCode], witnesses: Sequence[dict]):
    records = [CodeRecord.from_code(code, provenance=Provenance.PIPELINE, note=stage) for code in codes]
    save_codes(records, paths.store(stage))
    write_json_lines(paths.witnesses(stage), witnesses)
    logger.info('%s: wrote %s codes to %s', stage, len(records), paths.store(stage))


def _load_stage(paths: PipelinePaths, stage: str) -> list[CodeRecord]:
    if not paths.store(stage).exists():
        raise MissingDataError(f'{paths.store(stage)} not found; run the {stage} stage first')
    return load_codes(paths.store(stage))


def _load_candidates(paths: PipelinePaths, stage: str) -> list[CandidateL]:
    """ The members of a stage store with the b3/b2 provenance from its witness sidecar when present. """
    sidecar = {}
    if paths.witnesses(stage).exists():
        sidecar = {entry['code']: entry for entry in read_json_lines(paths.witnesses(stage))}
    candidates = []
    for record in _load_stage(paths, stage):
        entry = sidecar.get(record.name, {})
        candidates.append(CandidateL(record.name, record.code(), entry.get('b3', ''), entry.get('b2', ''),
                                     source=entry.get('source', '')))
    return candidates


def _run_ag(config: RunConfig, paths: PipelinePaths) -> list[StageMessage]:
    result = build_AG(config)
    witnesses = [{'code': f'M{i}', 'witness': str(match.witness)}
                 for i, match in enumerate(result.subcodes.matches, start=1)]
    _save_stage(paths, 'AG', result.members, witnesses)
    return result.messages


def _run_c36(config: RunConfig, paths: PipelinePaths) -> list[StageMessage]:
    result = build_C36(load_classification(config.data_dir), config)
    _save_stage(paths, 'C36', result.codes, [entry.witness() for entry in result.entries])
    return result.messages


def _run_l(config: RunConfig, paths: PipelinePaths) -> list[StageMessage]:
    ag = [record.code() for record in _load_stage(paths, 'AG')]
    c36 = [record.code() for record in _load_stage(paths, 'C36')]
    result = build_L(ag, c36, config)
    _save_stage(paths, 'L', [m.code for m in result.members], [m.witness() for m in result.members])
    return result.messages


def _run_lprime(config: RunConfig, paths: PipelinePaths) -> list[StageMessage]:
    result = refine_Lprime(_load_candidates(paths, 'L'), config)
    _save_stage(paths, 'Lprime', [m.code for m in result.members], [m.witness() for m in result.members])
    return result.messages


STAGE_RUNNERS = {'AG': _run_ag, 'C36': _run_c36, 'L': _run_l, 'Lprime': _run_lprime}


def _mindist(args: argparse.Namespace) -> int:
    for record in load_codes(args.codefile):
        code = record.code()
        if args.below is None:
            print(f'{code_summary(code)} d={minimum_weight(code)}')
            continue
        word = min_weight_below(code, args.below)
        if word is None:
            print(f'{code_summary(code)} none')
        else:
            print(f'{code_summary(code)} weight={word.weight} {word_str(word.bits, code.n)}')
    return EXIT_OK


def _g_invariant(code: LinearCode) -> Optional[StageMessage]:
    if code.n % 6:
        return StageMessage.error(f'length {code.n} is not a multiple of 6', code.name)
    if not is_automorphism(code, standard_g(code.n // 6)):
        return StageMessage.error('not invariant under the standard order-6 permutation', code.name)
    return None


def _fixed_code(args: argparse.Namespace) -> int:
    messages = []
    for record in load_codes(args.codefile):
        code = record.code()
        problem = _g_invariant(code)
        if problem:
            messages.append(problem)
            continue
        fixed = block_project(block_constant_code(code), BlockMap.PI12)
        image = block_project(code, BlockMap.PHI)
        text = f'C(g) -> [{fixed.n},{fixed.k}], phi(C) -> [{image.n},{image.k}]'
        if 2 * code.k == code.n:
            text += ', identity ' + ('holds' if fixed_projection_identity(code) else 'fails')
        messages.append(StageMessage.info(text, code.name))
    return _print_messages(messages)


def _decompose(args: argparse.Namespace) -> int:
    messages = []
    for record in load_codes(args.codefile):
        code = record.code()
        problem = _g_invariant(code)
        if problem:
            messages.append(problem)
            continue
        blocks = code.n // 6
        split = huffman_check(code, standard_g(blocks) ** 2)
        messages.append(StageMessage.info(f'C(g^2) has dimension {split.fixed.k}, E(g^2) has dimension '
                                          f'{split.even.k}, direct={split.direct}', code.name))
        module = socle(code_intersection(code, v2_space(blocks)))
        for index, summand in enumerate(decompose_socle(module), start=1):
            messages.append(StageMessage.info(f'socle summand {index} generated by {summand.generator}', code.name))
    return _print_messages(messages)


def _sieve(args: argparse.Namespace, config: RunConfig) -> int:
    records = load_codes(args.codefile)
    if args.name:
        records = [record for record in records if record.name == args.name]
        if not records:
            raise MissingDataError(f'no record named {args.name} in {args.codefile}')
    states = [sieve_candidate(record.code(), config, record.name) for record in records]
    report = SearchReport.from_states(config.config_hash(), states)
    print(render_report(report, args.timings), end='')
    return EXIT_OK


def _full_search(args: argparse.Namespace, config: RunConfig, paths: PipelinePaths) -> int:
    for stage in STAGES:
        if paths.store(stage).exists():
            logger.info('%s: reusing %s', stage, paths.store(stage))
            continue
        if _print_messages(STAGE_RUNNERS[stage](config, paths)) != EXIT_OK:
            return EXIT_VERIFICATION
    candidates = [(record.name, record.code()) for record in _load_stage(paths, 'Lprime')]
    report = full_search(candidates, config, resume=args.resume)
    text = render_report(report, args.timings)
    paths.root.mkdir(parents=True, exist_ok=True)
    paths.report.write_text(text, encoding='utf-8')
    print(text, end='')
    return EXIT_OK


def _validate_data(config: RunConfig) -> int:
    records = load_classification(config.data_dir)
    return _print_messages(validate_classification(records))


def _ingest(args: argparse.Namespace, config: RunConfig) -> int:
    records = load_codes(args.source)
    messages = validate_classification(records)
    stored = [CodeRecord(r.name, r.n, r.k, r.rows, Provenance.INGESTED, args.note or r.note) for r in records]
    save_codes(stored, Path(config.data_dir) / CLASSIFICATION_FILE)
    messages.append(StageMessage.info(f'stored in {Path(config.data_dir) / CLASSIFICATION_FILE}', 'ingest'))
    return _print_messages(messages)


def _worker(config: RunConfig) -> int:
    if not config.redis_uri:
        logger.error('a worker needs a broker; set REDIS_URI')
        return EXIT_USAGE
    app = create_app(config)
    app.worker_main(['worker', f'--concurrency={config.jobs}', f'--loglevel={config.log_level}'])
    return EXIT_OK


def dispatch(args: argparse.Namespace, config: RunConfig) -> int:
    """ Runs one subcommand and returns its exit status. """
    paths = PipelinePaths(config.data_dir)
    if args.command == 'verify-lemmas':
        return _print_messages(run_all(config.seed))
    if args.command == 'mindist':
        return _mindist(args)
    if args.command == 'fixed-code':
        return _fixed_code(args)
    if args.command == 'decompose':
        return _decompose(args)
    if args.command in ('build-ag', 'build-c36', 'build-l', 'refine-lprime'):
        stage = {'build-ag': 'AG', 'build-c36': 'C36', 'build-l': 'L', 'refine-lprime': 'Lprime'}[args.command]
        return _print_messages(STAGE_RUNNERS[stage](config, paths))
    if args.command == 'sieve':
        return _sieve(args, config)
    if args.command == 'full-search':
        return _full_search(args, config, paths)
    if args.command == 'validate-data':
        return _validate_data(config)
    if args.command == 'ingest':
        return _ingest(args, config)
    if args.command == 'worker':
        return _worker(config)
    raise ValueError(f'unknown command {args.command}')


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        config = _config(args)
    except ValueError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
    configure_logging(config.log_level)

    try:
        return dispatch(args, config)
    except MissingDataError as e:
        logger.error('%s', e)
        return EXIT_MISSING_DATA
    except SearchSuspended as e:
        logger.warning('search suspended: %s', e)
        return EXIT_SUSPENDED
    except Extremal72Error as e:
        logger.error('%s', e)
        return EXIT_VERIFICATION


if __name__ == '__main__':
    sys.exit(main())
