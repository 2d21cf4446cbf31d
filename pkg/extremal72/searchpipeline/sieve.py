""" The staged distance sieve over the class representatives of H_p.

    For a candidate L with socle F = L ∩ V_2 = P_1 ⊕ ... ⊕ P_m, every summand P_j contributes the set H'_j of
    generators z whose module keeps L doubly-even and for which L + h(z) has no word below the threshold.
    Tuples are grown one factor at a time; a tuple survives a stage when the accumulated code
    L + h(z_1) + ... + h(z_s) still has no word below the threshold. Adding generators never raises the minimum
    distance, so the staged survivors are exactly the tuples whose full code passes. """

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
import logging
import time
from typing import Optional, Sequence

from ..codes import LinearCode, classify, code_intersection, min_weight_below
from ..config import RunConfig
from ..exceptions import ContractViolation, SearchSuspended, VerificationFailure
from ..gf2linalg import EchelonBasis
from ..groupalg import DoublyEvenFilter, decompose_socle, h_p_representatives, h_rows, v2_space

logger = logging.getLogger(__name__)

SIX_STAGE_NAMES = ('P', 'T', 'Q', 'F', 'S')
PROGRESS_EVERY = 10_000


class StageOrder(Enum):
    """ Order in which the factors H'_j are multiplied in. """
    CANONICAL = "canonical"
    ASCENDING = "ascending"

    @classmethod
    def from_string(cls, value: str):
        """ Get StageOrder object from lower case `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid stage order: {value}") from e


def stage_names(factors: int) -> list[str]:
    """ Names of the stages combining 2..factors factors: P, T, Q, F, S for six factors. """
    if factors == 6:
        return list(SIX_STAGE_NAMES)
    return [f'stage-{size}' for size in range(2, factors + 1)]


def _orthogonal(rows: Sequence[int], others: Sequence[int]) -> bool:
    return all((row & other).bit_count() % 2 == 0 for row in rows for other in others)


def _passes(basis: EchelonBasis, n: int, threshold: int) -> bool:
    code = LinearCode(n, basis.to_matrix())
    return min_weight_below(code, threshold) is None


def filter_options(base: LinearCode, options: Sequence[Sequence[int]], threshold: int) -> list[int]:
    """ Indices of the options whose rows, added to `base`, keep the minimum distance at least `threshold`. """
    kept = []
    start = EchelonBasis(base.n, base.rows)
    for index, rows in enumerate(options):
        basis = start.copy()
        basis.extend(rows)
        if _passes(basis, base.n, threshold):
            kept.append(index)
    return kept


def extend_survivors(base: LinearCode, options: Sequence[Sequence[Sequence[int]]], survivors: Sequence[tuple[int, ...]],
                     threshold: int, prefilter: bool = True) -> list[tuple[int, ...]]:
    """ One sieve stage: every survivor tuple of length s is extended by every option of factor s.

    Args:
        base (LinearCode): The code L.
        options (Sequence[Sequence[Sequence[int]]]): Per factor, the generator rows of each option.
        survivors (Sequence[tuple[int, ...]]): Tuples of option indices of the previous stage.
        threshold (int): Minimum distance to keep.
        prefilter (bool): Drop extensions whose new rows are not orthogonal to the rows chosen so far.

    Returns:
        list[tuple[int, ...]]: Sorted survivors one factor longer.
    """
    kept = []
    start = EchelonBasis(base.n, base.rows)
    checked = 0
    for survivor in survivors:
        depth = len(survivor)
        chosen_rows = [row for factor, index in enumerate(survivor) for row in options[factor][index]]
        basis = start.copy()
        basis.extend(chosen_rows)
        for index, rows in enumerate(options[depth]):
            checked += 1
            if checked % PROGRESS_EVERY == 0:
                logger.info('stage %s: %s extensions checked, %s kept', depth + 1, checked, len(kept))
            if prefilter and not _orthogonal(rows, chosen_rows):
                continue
            extended = basis.copy()
            extended.extend(rows)
            if _passes(extended, base.n, threshold):
                kept.append(survivor + (index,))
    return sorted(kept)


def staged_filter(base: LinearCode, options: Sequence[Sequence[Sequence[int]]], threshold: int,
                  prefilter: bool = True) -> list[tuple[int, ...]]:
    """ Full tuples surviving every stage, without caps. """
    if not options:
        return []
    survivors = [(index,) for index in filter_options(base, options[0], threshold)]
    for _ in range(1, len(options)):
        if not survivors:
            break
        survivors = extend_survivors(base, options, survivors, threshold, prefilter)
    return survivors


def direct_filter(base: LinearCode, options: Sequence[Sequence[Sequence[int]]], threshold: int,
                  prefilter: bool = True) -> list[tuple[int, ...]]:
    """ The same tuples as `staged_filter`, by testing every element of the cartesian product. """
    kept = []
    for combination in product(*(range(len(factor)) for factor in options)):
        chosen = [options[factor][index] for factor, index in enumerate(combination)]
        if prefilter and any(not _orthogonal(chosen[i], chosen[j])
                             for i in range(len(chosen)) for j in range(i)):
            continue
        basis = EchelonBasis(base.n, base.rows)
        for rows in chosen:
            basis.extend(rows)
        if _passes(basis, base.n, threshold):
            kept.append(tuple(combination))
    return sorted(kept)


@dataclass
class SieveState:
    """ Resumable state of the sieve for one candidate.

    `h_sets[j]` holds the generators z of H'_j in decomposition order; `order` is the order the factors are
    combined in; `survivors` are tuples of indices into the reordered sets, of length `stage`. """
    key: str
    order: list[int] = field(default_factory=list)
    h_sets: list[list[int]] = field(default_factory=list)
    representative_counts: list[int] = field(default_factory=list)
    stage: int = 0
    survivors: list[tuple[int, ...]] = field(default_factory=list)
    stage_counts: dict[str, int] = field(default_factory=dict)
    found: list[list[str]] = field(default_factory=list)
    complete: bool = False

    def to_dict(self) -> dict:
        return {
            'key': self.key,
            'order': list(self.order),
            'h_sets': [list(zs) for zs in self.h_sets],
            'representative_counts': list(self.representative_counts),
            'stage': self.stage,
            'survivors': [list(s) for s in self.survivors],
            'stage_counts': dict(self.stage_counts),
            'found': [list(rows) for rows in self.found],
            'complete': self.complete,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'SieveState':
        return cls(
            key=data['key'],
            order=list(data['order']),
            h_sets=[list(zs) for zs in data['h_sets']],
            representative_counts=list(data.get('representative_counts', [])),
            stage=int(data['stage']),
            survivors=[tuple(s) for s in data['survivors']],
            stage_counts=dict(data['stage_counts']),
            found=[list(rows) for rows in data['found']],
            complete=bool(data['complete']),
        )

    @property
    def h_sizes(self) -> list[int]:
        return [len(zs) for zs in self.h_sets]

    @property
    def final_survivors(self) -> int:
        return len(self.survivors) if self.complete and self.stage == len(self.h_sets) else 0


def socle_summands(l: LinearCode, blocks: int):
    """ F = L ∩ V_2 and its decomposition into blocks/2 irreducible summands. """
    socle = code_intersection(l, v2_space(blocks))
    if socle.k != blocks:
        raise ContractViolation(f'L ∩ V_2 has dimension {socle.k}, expected {blocks}')
    return socle, decompose_socle(socle, blocks // 2)


def _check_caps(state: SieveState, config: RunConfig, started: float):
    if len(state.survivors) > config.survivor_cap:
        raise SearchSuspended(f'{state.key}: {len(state.survivors)} survivors after stage {state.stage} exceed '
                              f'the cap {config.survivor_cap}', state)
    if config.time_budget and time.monotonic() - started > config.time_budget:
        raise SearchSuspended(f'{state.key}: time budget of {config.time_budget}s spent after stage {state.stage}',
                              state)


def sieve_candidate(l: LinearCode, config: RunConfig, key: str = '', state: Optional[SieveState] = None) -> SieveState:
    """ Runs the staged sieve for one candidate L, resuming from `state` when given.

    Args:
        l (LinearCode): Candidate invariant under the standard g, with L ∩ V_2 of dimension equal to the blocks.
        config (RunConfig): Threshold, blocks, filter mode, stage order and caps.
        key (str): Name of the candidate in reports and checkpoints.
        state (Optional[SieveState]): State returned by an earlier suspended call.

    Returns:
        SieveState: Complete state; `found` lists every code L + h(z_1) + ... + h(z_m) that passed.

    Raises:
        SearchSuspended: At a stage boundary when the survivor cap or time budget is exceeded. The exception
            carries the state to resume from.
    """
    started = time.monotonic()
    blocks = config.blocks
    threshold = config.threshold
    state = state or SieveState(key or l.name or 'candidate')
    if state.complete:
        return state
    if state.stage == 0:
        socle, summands = socle_summands(l, blocks)
        mode = DoublyEvenFilter.from_string(config.de_filter)
        counts = []
        h_sets = []
        for j, summand in enumerate(summands, start=1):
            representatives = h_p_representatives(summand, socle, l, mode)
            options = [h_rows(z.bits, blocks) for z in representatives]
            kept = filter_options(l, options, threshold)
            counts.append(len(representatives))
            h_sets.append([representatives[index].bits for index in kept])
            logger.info('%s: H\'_%s keeps %s of %s representatives', state.key, j, len(kept), len(representatives))
        state.h_sets = h_sets
        state.representative_counts = counts
        if StageOrder.from_string(config.stage_order) is StageOrder.ASCENDING:
            state.order = sorted(range(len(h_sets)), key=lambda j: (len(h_sets[j]), j))
        else:
            state.order = list(range(len(h_sets)))
        state.survivors = [(index,) for index in range(len(h_sets[state.order[0]]))] if h_sets else []
        state.stage = 1
        _check_caps(state, config, started)

    options = [[h_rows(z, blocks) for z in state.h_sets[j]] for j in state.order]
    names = stage_names(len(options))
    while state.stage < len(options) and state.survivors:
        state.survivors = extend_survivors(l, options, state.survivors, threshold, config.prefilter)
        state.stage += 1
        state.stage_counts[names[state.stage - 2]] = len(state.survivors)
        logger.info('%s: stage %s keeps %s tuples', state.key, names[state.stage - 2], len(state.survivors))
        _check_caps(state, config, started)
    for name in names:
        state.stage_counts.setdefault(name, 0)
    if state.stage < len(options):
        state.survivors = []
        state.stage = len(options)

    state.found = []
    for survivor in state.survivors:
        rows = [row for factor, index in enumerate(survivor) for row in options[factor][index]]
        code = l.extended(rows, name=f'{state.key}-extension')
        flags = classify(code)
        if 2 * code.k != code.n or not flags.self_dual or not flags.doubly_even:
            raise VerificationFailure(f'{state.key}: surviving tuple {survivor} does not give a self-dual '
                                      'doubly-even code')
        if min_weight_below(code, threshold) is not None:
            raise VerificationFailure(f'{state.key}: surviving tuple {survivor} has a word below {threshold}')
        logger.warning('%s: tuple %s gives a self-dual doubly-even code with minimum distance at least %s',
                       state.key, survivor, threshold)
        state.found.append(code.to_strings())
    state.complete = True
    return state
