""" Exhaustive checks of the structural facts the search relies on, run on small instances where brute force
    is cheap. Each check reports a `StageMessage`; `run_all` is what `verify-lemmas` prints. """

import logging
from functools import reduce
from itertools import combinations, product
from typing import Callable

import numpy as np

from .codedata import code_F, golay24, golay_standard_g
from .codes import (BlockMap, LinearCode, block_embed, block_project, classify, code_intersection, code_sum,
                    fixed_projection_identity, minimum_weight, no_overcode_check, weight_enumerator)
from .gf2linalg import BitVector, EchelonBasis
from .groupalg import (BLOCK_PATTERNS, DoublyEvenFilter, F1, F2, ONE, ONE_PLUS_G3, Idempotent, apply_bits,
                       block_solutions, block_solutions_bruteforce, class_of, count_irreducibles, count_type2,
                       cyclic_module, cyclic_span, enumerate_submodules_bruteforce, h_p_representatives,
                       h_p_solution_space, ideal_structure_check, in_v2_bits, k_space_rows, keeps_doubly_even,
                       project_idempotent, socle, socle_complement, spread, type2_per_socle, type2_with_socle,
                       v2_space)
from .helpers.messaging import StageMessage
from .perms import act_bits, bar_g24, bar_g36, huffman_check, standard_g

logger = logging.getLogger(__name__)

STAGE = 'lemmas'


def _expect(condition: bool, text: str) -> StageMessage:
    if condition:
        return StageMessage.info(text, STAGE)
    return StageMessage.error(f'failed: {text}', STAGE)


def check_idempotents() -> list[StageMessage]:
    return [
        _expect(F1.is_idempotent() and F2.is_idempotent(), 'f1 and f2 are idempotents'),
        _expect(F1 + F2 == ONE, 'f1 + f2 = 1'),
        _expect((F1 * F2).coeffs == 0, 'f1 f2 = 0'),
    ]


def check_block_tables() -> list[StageMessage]:
    messages = []
    for name in BLOCK_PATTERNS:
        table = sorted(z.bits for z in block_solutions(name))
        scanned = sorted(z.bits for z in block_solutions_bruteforce(name))
        messages.append(_expect(table == scanned and len(table) == 4,
                                f'block pattern {name} has exactly the four listed solutions'))
    return messages


def check_solution_classes(blocks: int = 2) -> list[StageMessage]:
    """ For the socle s = <B...B, C...C>: the solutions of z(1+g^3) = B...B form a coset of K of size 4^blocks,
        and split into 2^(2 blocks - dim s) classes z + s. """
    n = 6 * blocks
    v = BitVector(n, spread(BLOCK_PATTERNS['B'], blocks))
    s = LinearCode.from_rows(n, [spread(BLOCK_PATTERNS['B'], blocks), spread(BLOCK_PATTERNS['C'], blocks)])
    space = h_p_solution_space(v)
    kernel = LinearCode.from_rows(n, space.kernel)
    solutions = [space.particular ^ word for word in kernel.words()]
    valid = all(in_v2_bits(z, blocks) and apply_bits(z, ONE_PLUS_G3, blocks) == v.bits for z in solutions)
    classes = {frozenset(w.bits for w in class_of(BitVector(n, z), s)) for z in solutions}
    complement = socle_complement(s)
    return [
        _expect(valid and len(set(solutions)) == 4 ** blocks,
                f'{4 ** blocks} solutions of z(1+g^3) = v at {blocks} blocks'),
        _expect(len(classes) == 2 ** (2 * blocks - s.k) == 1 << len(complement),
                f'solutions fall into {2 ** (2 * blocks - s.k)} classes modulo the socle'),
    ]


def constructed_socle(blocks: int = 12) -> LinearCode:
    """ A socle of dimension `blocks`: one irreducible <B B, C C> on each consecutive pair of blocks. """
    rows = []
    for pair in range(blocks // 2):
        for name in ('B', 'C'):
            rows.append(spread(BLOCK_PATTERNS[name], 2) << (12 * pair))
    return LinearCode.from_rows(6 * blocks, rows, name='socle')


def check_quotient_counts(blocks: int = 12) -> list[StageMessage]:
    """ Class size and class count of H_p over a constructed socle, and the doubly-even representative bound. """
    s = constructed_socle(blocks)
    p = cyclic_module(BitVector(s.n, s.rows[0]))
    space = h_p_solution_space(p.generator)
    complement = socle_complement(s)
    spanned = EchelonBasis(s.n, s.rows)
    spanned.extend(complement)
    representatives = h_p_representatives(p, s, s, DoublyEvenFilter.SOCLE)
    bound = 1 << (blocks - 1)
    return [
        _expect(space.dim == 2 * blocks and spanned.dim == space.dim,
                f'H_p has dimension {2 * blocks} and the socle plus its complement span K'),
        _expect(s.k == blocks and 1 << len(complement) == 1 << (space.dim - s.k),
                f'classes of size {1 << s.k}, {1 << len(complement)} of them'),
        _expect(len(representatives) <= bound,
                f'{len(representatives)} doubly-even class representatives, at most {bound}'),
    ]


def check_submodule_counts(blocks: int = 2) -> list[StageMessage]:
    """ Counts of irreducible and type-II cyclic submodules of V_2 against the closed formulas. """
    entries = enumerate_submodules_bruteforce(v2_space(blocks))
    irreducibles = [entry.space for entry in entries if entry.irreducible]
    type2 = [entry.space for entry in entries if entry.type2]
    messages = [
        _expect(len(irreducibles) == count_irreducibles(blocks),
                f'{count_irreducibles(blocks)} irreducible submodules at {blocks} blocks'),
        _expect(len(type2) == count_type2(blocks),
                f'{count_type2(blocks)} type-II cyclic submodules at {blocks} blocks'),
    ]
    per_socle = {len(type2_with_socle(v2_space(blocks), p)) for p in irreducibles}
    messages.append(_expect(per_socle == {type2_per_socle(blocks)},
                            f'each irreducible is the socle of {type2_per_socle(blocks)} type-II modules'))
    return messages


def check_cyclic_modules(blocks: int = 2) -> list[StageMessage]:
    """ Every nonzero v in V_2 generates a module of type I (dimension 2) or II (dimension 4). """
    dims = {cyclic_module(BitVector(6 * blocks, word)).dim for word in v2_space(blocks).words() if word}
    return [_expect(dims == {2, 4}, 'cyclic modules in V_2 have dimension 2 or 4')]


def check_type2_sums(blocks: int = 2) -> list[StageMessage]:
    """ Two distinct type-II modules with the same socle span a module of dimension 6 whose socle has dimension 4.
        With different socles their sum is direct and its socle is the sum of the two socles. """
    type2 = [entry for entry in enumerate_submodules_bruteforce(v2_space(blocks)) if entry.type2]
    same = different = True
    same_pairs = different_pairs = 0
    for first, second in combinations(type2, 2):
        total = code_sum(first.space, second.space)
        total_socle = socle(total).code
        if first.socle == second.socle:
            same_pairs += 1
            same &= total.k == 6 and total_socle.k == 4
        else:
            different_pairs += 1
            different &= (total.k == 8 and code_intersection(first.space, second.space).k == 0
                          and total_socle == code_sum(first.socle, second.socle))
    return [
        _expect(same and same_pairs > 0, f'{same_pairs} same-socle pairs have a sum of dimension 6 with socle 4'),
        _expect(different and different_pairs > 0,
                f'{different_pairs} pairs with different socles are direct with additive socles'),
    ]


def check_socle_decompositions(blocks: int = 2) -> list[StageMessage]:
    """ A module M with dim M = 2 dim soc(M) is q_1 ⊕ ... ⊕ q_r for every splitting of soc(M) into irreducibles
        p_i and every choice of type-II q_i ⊆ M with socle p_i. """
    entries = enumerate_submodules_bruteforce(v2_space(blocks))
    irreducibles = [entry.space for entry in entries if entry.irreducible]
    type2 = [entry for entry in entries if entry.type2]
    ok = True
    checked = 0
    for module in (entry for entry in entries if entry.space.k and entry.space.k == 2 * entry.socle.k):
        r = module.socle.k // 2
        inside = [p for p in irreducibles if p.is_subcode_of(module.socle)]
        for parts in combinations(inside, r):
            if reduce(code_sum, parts) != module.socle:
                continue
            choices = [[q.space for q in type2 if q.socle == p and q.space.is_subcode_of(module.space)]
                       for p in parts]
            ok &= all(choices)
            for qs in product(*choices):
                checked += 1
                ok &= reduce(code_sum, qs) == module.space and sum(q.k for q in qs) == module.space.k
    return [_expect(ok and checked > 0, f'{checked} choices of type-II summands rebuild their module')]


def check_class_invariance(blocks: int = 12, samples: int = 100, seed: int = 0) -> list[StageMessage]:
    """ Whether z F_2<g> keeps the code doubly-even depends only on the class z + soc. """
    rng = np.random.default_rng(seed)
    s = constructed_socle(blocks)
    p = cyclic_module(BitVector(s.n, s.rows[0]))
    z0 = h_p_solution_space(p.generator).particular
    k_rows = k_space_rows(blocks)
    ok = True
    for _ in range(samples):
        z = z0 ^ _random_combination(rng, k_rows)
        shift = _random_combination(rng, s.rows)
        ok &= keeps_doubly_even(z, s.rows, blocks) == keeps_doubly_even(z ^ shift, s.rows, blocks)
    return [_expect(ok, f'doubly-even test agrees on z and z + s for {samples} random pairs')]


def _random_combination(rng: np.random.Generator, rows) -> int:
    word = 0
    for row, take in zip(rows, rng.integers(0, 2, len(rows))):
        if take:
            word ^= row
    return word


def split_matches_idempotents(code: LinearCode) -> bool:
    """ C = C(g^2) ⊕ E(g^2) with C f1 = C(g^2) and C f2 = E(g^2), for a g-invariant code of length 6m. """
    h = standard_g(code.n // 6) ** 2
    split = huffman_check(code, h)
    return (split.direct
            and project_idempotent(code, Idempotent.F1).code == split.fixed
            and project_idempotent(code, Idempotent.F2).code == split.even)


def pair_code(blocks: int = 12) -> LinearCode:
    """ The self-dual code spanned by e_i + e_(i+3) in every block: C(g^2) has dimension `blocks`. """
    rows = [(1 | 1 << 3) << (6 * b + i) for b in range(blocks) for i in range(3)]
    return LinearCode.from_rows(6 * blocks, rows, name='pairs')


def check_huffman(blocks: int = 12, samples: int = 20, seed: int = 0) -> list[StageMessage]:
    """ C = C(g^2) ⊕ E(g^2), and f1, f2 project onto the two parts, on random g-invariant codes, the moved
        Golay code and the pair code. """
    rng = np.random.default_rng(seed)
    n = 6 * blocks
    ok = True
    for _ in range(samples):
        count = int(rng.integers(1, 4))
        rows = [int.from_bytes(rng.bytes(blocks), 'little') & ((1 << n) - 1) for _ in range(count)]
        ok &= split_matches_idempotents(cyclic_span(n, rows))
    pairs = pair_code(blocks)
    split = huffman_check(pairs, standard_g(blocks) ** 2)
    return [
        _expect(ok, f'C = C(g^2) + E(g^2) = C f1 + C f2 on {samples} random g-invariant codes'),
        _expect(split_matches_idempotents(golay_standard_g()), 'the split holds on the moved Golay code'),
        _expect(split_matches_idempotents(pairs) and (split.fixed.k, split.even.k) == (blocks, 2 * blocks),
                f'self-dual pair code splits as ({blocks}, {2 * blocks})'),
    ]


def check_block_maps(blocks: int = 3) -> list[StageMessage]:
    """ The projections intertwine g with the block permutations of the short codes. """
    n = 6 * blocks
    g = standard_g(blocks)
    ok = True
    for kind, short in ((BlockMap.PI24, bar_g24(blocks)), (BlockMap.PI36, bar_g36(blocks))):
        for position in range(kind.short_length(blocks)):
            word = block_embed(BitVector(kind.short_length(blocks), 1 << position), kind)
            image = block_project(BitVector(n, act_bits(word.bits, g)), kind)
            ok &= image.bits == act_bits(1 << position, short)
    return [_expect(ok, 'pi24 and pi36 intertwine g with the short block permutations')]


def check_fixed_projection(blocks: int = 3) -> list[StageMessage]:
    """ phi(C) and pi12(C(g)) are dual for a self-dual g-invariant code. """
    code = pair_code(blocks)
    return [_expect(classify(code).self_dual and fixed_projection_identity(code),
                    'phi(C) and pi12(C(g)) are dual for a self-dual g-invariant code')]


def check_reference_codes() -> list[StageMessage]:
    golay = golay24()
    f = code_F()
    f_flags = classify(f)
    return [
        _expect(golay.k == 12 and weight_enumerator(golay)[8] == 759, 'Golay code is [24,12,8] with 759 octads'),
        _expect(f_flags.self_dual and minimum_weight(f) == 4, 'F is a self-dual [12,6,4] code'),
        _expect(no_overcode_check(f, 4), 'every word outside F gives a word of weight below 4'),
    ]


def check_ideal_structure() -> list[StageMessage]:
    return ideal_structure_check().messages


CHECKS: dict[str, Callable[[], list[StageMessage]]] = {
    'idempotents': check_idempotents,
    'ideal': check_ideal_structure,
    'block-tables': check_block_tables,
    'solution-classes': check_solution_classes,
    'quotient-counts': check_quotient_counts,
    'submodule-counts': check_submodule_counts,
    'cyclic-modules': check_cyclic_modules,
    'type2-sums': check_type2_sums,
    'socle-decompositions': check_socle_decompositions,
    'class-invariance': check_class_invariance,
    'huffman': check_huffman,
    'block-maps': check_block_maps,
    'fixed-projection': check_fixed_projection,
    'reference-codes': check_reference_codes,
}


def run_all(seed: int = 0) -> list[StageMessage]:
    """ Runs every check in `CHECKS` and returns their messages in order. """
    messages = []
    for name, check in CHECKS.items():
        logger.info('running check %s', name)
        found = check_huffman(seed=seed) if check is check_huffman else check()
        messages.extend(found)
    return messages

