""" The construction stages ahead of the sieve: the Golay codes AG around F ⊗ <(1,1)>, the [36,18,8] codes C36
    around F ⊗ <(1,1,1)>, their sums L, and the refinement to pairs (L, g) with g the standard order-6
    permutation. """

from dataclasses import dataclass, field
import logging
from typing import Optional, Sequence

from ..codedata import CodeRecord, code_F, golay24, order3_eligible
from ..codes import (BlockMap, LinearCode, block_embed, classify, code_intersection, code_sum, min_weight_below,
                     replicate, weight_enumerator)
from ..config import RunConfig
from ..config.loaders import reference_counts
from ..equivalence import (GroupDescription, SubcodeSearch, automorphism_group, canonical_key, canonical_pair_key,
                           code_orbit, subcodes_equivalent_to)
from ..exceptions import BudgetExceeded, VerificationFailure
from ..groupalg import v2_space
from ..helpers.messaging import StageMessage
from ..perms import (Permutation, bar_g36, conjugator, fixed_subcode, is_automorphism, normalize_commuting,
                     permute_code, standard_g)

logger = logging.getLogger(__name__)

GOLAY_OCTADS = 759


def _compare_count(name: str, stage: str, found: int, config: RunConfig) -> StageMessage:
    """ Info when `found` matches the published count, warning otherwise. Only full-size runs are compared. """
    if config.blocks != 12 or config.threshold != 16:
        return StageMessage.info(f'{found} {name}', stage)
    expected = reference_counts()[name]
    if found != expected:
        logger.warning('%s: found %s %s, the published count is %s', stage, found, name, expected)
        return StageMessage.warning(f'found {found} {name}, the published count is {expected}', stage)
    return StageMessage.info(f'{found} {name}, as published', stage)


@dataclass
class AGResult:
    """ AG: the Golay codes containing P24 = F ⊗ <(1,1)>, as the orbit of one of them under AF = Aut(P24). """
    pattern: LinearCode
    subcodes: SubcodeSearch
    af: GroupDescription
    members: list[LinearCode]
    messages: list[StageMessage] = field(default_factory=list)


def build_AG(config: RunConfig) -> AGResult:
    # pylint: disable-msg=invalid-name
    """ Finds the subcodes M_1..M_m of the Golay code equivalent to P24, maps the Golay code along each witness to
        G_i containing P24, and takes the orbit of G_1 under Aut(P24).

    Args:
        config (RunConfig): Caps and budgets.

    Returns:
        AGResult: Members sorted by echelon rows.
    """
    stage = 'AG'
    golay = golay24()
    pattern = replicate(code_F(), 2)
    aut_golay = automorphism_group(golay, config.budget_enum)
    logger.info('%s: Aut(G24) has order %s', stage, aut_golay.order)
    search = subcodes_equivalent_to(golay, pattern, symmetry=aut_golay, node_cap=config.node_cap,
                                    budget=config.budget_enum)
    search.require_complete(stage)
    if not search.matches:
        raise VerificationFailure('the Golay code has no subcode equivalent to F ⊗ <(1,1)>')
    messages = [StageMessage.info(f'{len(search.matches)} subcodes of G24 equivalent to F ⊗ <(1,1)>', stage)]

    first_orbit = code_orbit(search.matches[0].code, aut_golay, config.orbit_cap)
    found = set(search.codes)
    if not first_orbit <= found:
        raise VerificationFailure('the Aut(G24)-orbit of M_1 has members the subcode search missed')
    messages.append(StageMessage.info(f'orbit of M_1 under Aut(G24) has {len(first_orbit)} members', stage))

    af = automorphism_group(pattern, config.budget_enum)
    golay_images = [permute_code(golay, match.witness) for match in search.matches]
    members = code_orbit(golay_images[0], af, config.orbit_cap)
    for index, image in enumerate(golay_images, start=1):
        if image not in members:
            raise VerificationFailure(f'G_{index} is not in the AF-orbit of G_1')
    for member in members:
        flags = classify(member)
        if member.k != 12 or not (flags.self_dual and flags.doubly_even) or not pattern.is_subcode_of(member):
            raise VerificationFailure('an AG member is not a self-dual doubly-even [24,12] code containing P24')
        if weight_enumerator(member, config.budget_enum)[8] != GOLAY_OCTADS:
            raise VerificationFailure('an AG member does not have 759 words of weight 8')
    messages.append(StageMessage.info(f'|AF| = {af.order}, |AG| = {len(members)}', stage))
    logger.info('%s: |AF| = %s, |AG| = %s', stage, af.order, len(members))
    ordered = sorted(members, key=lambda c: c.rows)
    ordered = [LinearCode(c.n, c.gen, f'AG{i}') for i, c in enumerate(ordered, start=1)]
    return AGResult(pattern, search, af, ordered, messages)


@dataclass(frozen=True)
class C36Entry:
    """ One output code D_(i,j)k with the permutations that produced it: h^-1 e h = g36, N^l = P36, r = l s. """
    code: LinearCode
    source: str
    e: Permutation
    h: Permutation
    l: Permutation
    r: Permutation

    def witness(self) -> dict:
        return {'code': self.code.name, 'source': self.source, 'e': str(self.e), 'h': str(self.h),
                'l': str(self.l), 'r': str(self.r)}


@dataclass
class C36Result:
    eligible: list[str]
    entries: list[C36Entry]
    messages: list[StageMessage] = field(default_factory=list)

    @property
    def codes(self) -> list[LinearCode]:
        return [entry.code for entry in self.entries]


def build_C36(classification: Sequence[CodeRecord], config: RunConfig) -> C36Result:
    # pylint: disable-msg=invalid-name
    """ For every classified code D with a fixed-point-free automorphism e of order 3 (up to conjugacy in Aut(D)),
        moves e to g36 and aligns every subcode fixed word by word by g36 and equivalent to P36 = F ⊗ <(1,1,1)>
        onto P36 with a permutation commuting with g36.

    Args:
        classification (Sequence[CodeRecord]): The validated [36,18,8] codes.
        config (RunConfig): Caps and budgets.

    Returns:
        C36Result: Output codes with their witnesses, in input order.
    """
    stage = 'C36'
    g36 = bar_g36(12)
    pattern = replicate(code_F(), 3)
    eligible = []
    entries: list[C36Entry] = []
    seen: set[LinearCode] = set()
    for record, representatives in order3_eligible(classification, config.group_cap, config.budget_enum):
        code = record.code()
        eligible.append(record.name)
        for j, e in enumerate(representatives, start=1):
            h = conjugator(e, g36)
            moved = permute_code(code, h)
            if not is_automorphism(moved, g36):
                raise VerificationFailure(f'{record.name}: g36 is not an automorphism after conjugating e_{j}')
            search = subcodes_equivalent_to(moved, pattern, word_fix=g36, node_cap=config.node_cap,
                                            budget=config.budget_enum)
            search.require_complete(f'{stage} {record.name} e_{j}')
            for k, match in enumerate(search.matches, start=1):
                r = normalize_commuting(match.witness, pattern)
                aligned = permute_code(moved, r, name=f'{record.name}.{j}.{k}')
                if not is_automorphism(aligned, g36) or not pattern.is_subcode_of(aligned):
                    raise VerificationFailure(f'{aligned.name}: alignment lost g36 or the pattern subcode')
                if aligned in seen:
                    continue
                seen.add(aligned)
                entries.append(C36Entry(aligned, record.name, e, h, match.witness, r))
        logger.info('%s: %s gives %s aligned codes so far', stage, record.name, len(entries))
    messages = [_compare_count('eligible_36', stage, len(eligible), config),
                StageMessage.info(f'{len(entries)} aligned [36,18,8] codes', stage)]
    return C36Result(eligible, entries, messages)


@dataclass(frozen=True)
class CandidateL:
    """ A [72,24] candidate L = pi24^-1(B3) + pi36^-1(B2). For members of L' `automorphism` is the standard g
        and `conjugator` moved the original automorphism onto it. """
    key: str
    code: LinearCode
    b3: str = ''
    b2: str = ''
    automorphism: Optional[Permutation] = None
    conjugator: Optional[Permutation] = None
    source: str = ''

    def witness(self) -> dict:
        return {'code': self.key, 'b3': self.b3, 'b2': self.b2, 'source': self.source,
                'conjugator': str(self.conjugator) if self.conjugator else None}


@dataclass
class LResult:
    members: list[CandidateL]
    sums_formed: int
    messages: list[StageMessage] = field(default_factory=list)


def validate_candidate(code: LinearCode, threshold: int):
    """ [72,24], self-orthogonal, doubly-even and no word below the threshold; raises `VerificationFailure`. """
    flags = classify(code)
    if code.k != 24 or not flags.self_orthogonal or not flags.doubly_even:
        raise VerificationFailure(f'{code.name}: expected a self-orthogonal doubly-even [72,24] code, got '
                                  f'[{code.n},{code.k}] with {flags}')
    witness = min_weight_below(code, threshold)
    if witness is not None:
        raise VerificationFailure(f'{code.name}: word of weight {witness.weight} below {threshold}')


def build_L(ag: Sequence[LinearCode], c36: Sequence[LinearCode], config: RunConfig) -> LResult:
    # pylint: disable-msg=invalid-name
    """ Forms every sum pi24^-1(B3) + pi36^-1(B2), keeps one code per equivalence class and validates it. """
    stage = 'L'
    by_key: dict[bytes, CandidateL] = {}
    formed = 0
    for b3 in ag:
        lifted3 = block_embed(b3, BlockMap.PI24)
        for b2 in c36:
            formed += 1
            total = code_sum(lifted3, block_embed(b2, BlockMap.PI36))
            key = canonical_key(total, config.budget_enum)
            if key not in by_key:
                by_key[key] = CandidateL('', total, b3.name or '', b2.name or '')
        logger.info('%s: %s sums formed, %s classes so far', stage, formed, len(by_key))
    members = []
    for index, key in enumerate(sorted(by_key), start=1):
        candidate = by_key[key]
        name = f'L{index}'
        code = LinearCode(candidate.code.n, candidate.code.gen, name)
        validate_candidate(code, config.threshold)
        members.append(CandidateL(name, code, candidate.b3, candidate.b2))
    messages = [StageMessage.info(f'{formed} sums formed', stage), _compare_count('L', stage, len(members), config)]
    return LResult(members, formed, messages)


def splits_into_fixed(code: LinearCode, a: Permutation) -> bool:
    """ Whether code = code(a^2) + code(a^3). """
    return code_sum(fixed_subcode(code, a ** 2), fixed_subcode(code, a ** 3)) == code


@dataclass
class LprimeResult:
    members: list[CandidateL]
    messages: list[StageMessage] = field(default_factory=list)


def refine_Lprime(l_set: Sequence[CandidateL], config: RunConfig) -> LprimeResult:
    # pylint: disable-msg=invalid-name
    """ For every L, the fixed-point-free automorphisms a of order 6 (up to conjugacy in Aut(L)) with
        L = L(a^2) + L(a^3), each moved onto the standard g; pairs equivalent under permutations preserving g
        are kept once. """
    stage = 'Lprime'
    g = standard_g(12)
    v2 = v2_space(12)
    by_key: dict[bytes, CandidateL] = {}
    messages = []
    for candidate in l_set:
        group = automorphism_group(candidate.code, config.budget_enum)
        try:
            representatives = group.conjugacy_representatives(6, 72, config.group_cap)
        except BudgetExceeded:
            logger.error('%s: Aut(%s) has order %s, above the group cap %s', stage, candidate.key, group.order,
                         config.group_cap)
            raise
        kept = 0
        for a in representatives:
            if a.cycle_type() != {6: 12} or not splits_into_fixed(candidate.code, a):
                continue
            h = conjugator(a, g)
            moved = permute_code(candidate.code, h)
            if not is_automorphism(moved, g) or not splits_into_fixed(moved, g):
                raise VerificationFailure(f'{candidate.key}: conjugation to g failed')
            key = canonical_pair_key(moved, g, config.budget_enum)
            kept += 1
            if key not in by_key:
                by_key[key] = CandidateL('', moved, candidate.b3, candidate.b2, g, h, candidate.key)
        logger.info('%s: Aut(%s) of order %s gives %s admissible automorphisms', stage, candidate.key, group.order,
                    kept)
    members = []
    for index, key in enumerate(sorted(by_key), start=1):
        found = by_key[key]
        name = f'Lp{index}'
        code = LinearCode(found.code.n, found.code.gen, name)
        socle_dim = code_intersection(code, v2).k
        if socle_dim != 12:
            messages.append(StageMessage.error(f'{name}: L ∩ V_2 has dimension {socle_dim}, expected 12', stage))
        members.append(CandidateL(name, code, found.b3, found.b2, g, found.conjugator, found.source))
    messages.append(_compare_count('Lprime', stage, len(members), config))
    return LprimeResult(members, messages)
