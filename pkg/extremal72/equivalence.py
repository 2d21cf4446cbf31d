""" Permutation equivalence of binary codes, automorphism groups, canonical dedupe keys, orbits of codes and the
    search for subcodes equivalent to a given pattern.

    A code is turned into a coloured incidence graph: one vertex per coordinate, one vertex per codeword of the
    lowest weight layers that together span the code, a word joined to the coordinates of its support. The
    layers are chosen by a rule that only depends on the weight distribution, so equivalent codes give
    isomorphic graphs and nauty's canonical labelling decides equivalence. """

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
import logging
from typing import Iterable, Iterator, Optional

import pynauty
from sympy.combinatorics import Permutation as SymPermutation, PermutationGroup

from .codes import DEFAULT_ENUM_BUDGET, LinearCode, weight_enumerator, words_of_weight
from .exceptions import BudgetExceeded, ContractViolation, DimensionError, IncompleteSearch, VerificationFailure
from .gf2linalg import EchelonBasis, set_bit_indices
from .perms import Permutation, act_bits, fixed_subcode, is_automorphism, permute_code

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 1 << 20
DEFAULT_GROUP_CAP = 10 ** 6
DEFAULT_ORBIT_CAP = 200_000
DEFAULT_NODE_CAP = 5 * 10 ** 7


@dataclass(frozen=True)
class _CodeGraph:
    graph: pynauty.Graph
    header: bytes
    n: int


def _spanning_layers(c: LinearCode, budget: int, vertex_cap: int) -> list[tuple[int, list[int]]]:
    """ Lowest weight layers (weight, words) whose union spans `c`. """
    if c.k == 0:
        return []
    distribution = weight_enumerator(c, budget)
    basis = EchelonBasis(c.n)
    layers = []
    total = 0
    for weight, count in enumerate(distribution):
        if weight == 0 or count == 0:
            continue
        total += count
        if total > vertex_cap:
            raise BudgetExceeded('incidence graph vertices', total, vertex_cap)
        words = sorted(words_of_weight(c, [weight], budget))
        layers.append((weight, words))
        basis.extend(words)
        if basis.dim == c.k:
            break
    return layers


def _code_graph(c: LinearCode, g: Optional[Permutation] = None, budget: int = DEFAULT_ENUM_BUDGET,
                vertex_cap: int = DEFAULT_VERTEX_CAP) -> _CodeGraph:
    """ Coloured incidence graph of `c`; with `g`, arcs i -> g(i) between coordinates are added. """
    layers = _spanning_layers(c, budget, vertex_cap)
    n = c.n
    vertex_count = n + sum(len(words) for _, words in layers)
    graph = pynauty.Graph(vertex_count, directed=g is not None)
    coloring = [set(range(n))]
    index = n
    for _, words in layers:
        cell = set()
        for word in words:
            graph.connect_vertex(index, list(set_bit_indices(word)))
            cell.add(index)
            index += 1
        coloring.append(cell)
    if g is not None:
        if g.n != n:
            raise DimensionError(f'permutation degree {g.n} differs from code length {n}')
        for i, image in enumerate(g.images):
            if image != i:
                graph.connect_vertex(i, [image])
    graph.set_vertex_coloring(coloring)
    shape = ','.join(f'{weight}x{len(words)}' for weight, words in layers)
    marker = 'g' if g is not None else '-'
    return _CodeGraph(graph, f'{n}:{c.k}:{marker}:{shape}|'.encode('ascii'), n)


def canonical_key(c: LinearCode, budget: int = DEFAULT_ENUM_BUDGET) -> bytes:
    """ Bytes equal for two codes exactly when they are permutation equivalent. """
    code_graph = _code_graph(c, budget=budget)
    return code_graph.header + pynauty.certificate(code_graph.graph)


def canonical_pair_key(c: LinearCode, g: Permutation, budget: int = DEFAULT_ENUM_BUDGET) -> bytes:
    """ Key of the pair (c, g) under simultaneous relabelling: equal keys iff some p has c^p = c' and
        p^-1 g p = g'. """
    code_graph = _code_graph(c, g, budget=budget)
    return code_graph.header + pynauty.certificate(code_graph.graph)


@dataclass(frozen=True)
class EquivalenceWitness:
    """ `perm` maps the source code onto the target code. """
    perm: Permutation
    source: str = ''
    target: str = ''


def _labelling_map(a: _CodeGraph, b: _CodeGraph) -> Permutation:
    lab_a = pynauty.canon_label(a.graph)
    lab_b = pynauty.canon_label(b.graph)
    images = [0] * a.n
    for i in range(a.n):
        if lab_a[i] >= a.n or lab_b[i] >= b.n:
            raise VerificationFailure('canonical labelling did not keep the coordinate cell first')
        images[lab_a[i]] = lab_b[i]
    return Permutation(tuple(images))


def is_equivalent(a: LinearCode, b: LinearCode, budget: int = DEFAULT_ENUM_BUDGET) -> Optional[EquivalenceWitness]:
    """ A witness permutation p with a^p = b, or None when the codes are not equivalent.

    Args:
        a (LinearCode): Source code.
        b (LinearCode): Target code of the same length.
        budget (int): Enumeration budget for the weight layers.

    Returns:
        Optional[EquivalenceWitness]: Verified witness, None on a certificate mismatch.
    """
    if a.n != b.n:
        raise DimensionError(f'length mismatch: {a.n} vs {b.n}')
    if a.k != b.k:
        return None
    if a == b:
        return EquivalenceWitness(Permutation.identity(a.n), a.name or '', b.name or '')
    graph_a = _code_graph(a, budget=budget)
    graph_b = _code_graph(b, budget=budget)
    if graph_a.header != graph_b.header:
        return None
    if pynauty.certificate(graph_a.graph) != pynauty.certificate(graph_b.graph):
        return None
    perm = _labelling_map(graph_a, graph_b)
    for candidate in (perm, perm.inverse()):
        if permute_code(a, candidate) == b:
            return EquivalenceWitness(candidate, a.name or '', b.name or '')
    raise VerificationFailure('equal certificates but the labelling map does not carry one code onto the other')


def _to_sympy(p: Permutation) -> SymPermutation:
    return SymPermutation(list(p.images))


def _from_sympy(p: SymPermutation, degree: int) -> Permutation:
    images = list(p.array_form)
    images += range(len(images), degree)
    return Permutation(tuple(images))


@dataclass(frozen=True)
class GroupDescription:
    """ Permutation group of degree `degree` given by generators, with its exact order. """
    generators: tuple[Permutation, ...]
    order: int
    degree: int

    @classmethod
    def trivial(cls, degree: int) -> 'GroupDescription':
        return cls((), 1, degree)

    @classmethod
    def from_generators(cls, degree: int, generators: Iterable[Permutation]) -> 'GroupDescription':
        generators = tuple(p for p in generators if not p.is_identity())
        if any(p.n != degree for p in generators):
            raise DimensionError(f'generator degree differs from {degree}')
        if not generators:
            return cls.trivial(degree)
        order = int(PermutationGroup([_to_sympy(p) for p in generators]).order())
        return cls(generators, order, degree)

    @cached_property
    def sympy_group(self) -> PermutationGroup:
        if not self.generators:
            return PermutationGroup([SymPermutation(list(range(self.degree)))])
        return PermutationGroup([_to_sympy(p) for p in self.generators])

    def contains(self, p: Permutation) -> bool:
        return p.is_identity() or self.sympy_group.contains(_to_sympy(p))

    def elements(self, cap: int = DEFAULT_GROUP_CAP) -> Iterator[Permutation]:
        """ Every element; refused above `cap`. """
        if self.order > cap:
            raise BudgetExceeded('group element enumeration', self.order, cap)
        for element in self.sympy_group.generate():
            yield _from_sympy(element, self.degree)

    def elements_of(self, order: int, moved_points: Optional[int] = None,
                    cap: int = DEFAULT_GROUP_CAP) -> list[Permutation]:
        """ Elements of the given order (and number of moved points), sorted by image tuple. """
        found = [p for p in self.elements(cap)
                 if p.order == order and (moved_points is None or p.moved_points == moved_points)]
        return sorted(found, key=lambda p: p.images)

    def conjugacy_representatives(self, order: int, moved_points: Optional[int] = None,
                                  cap: int = DEFAULT_GROUP_CAP) -> list[Permutation]:
        """ One element of every conjugacy class of the group whose members have the given order and
            number of moved points. The smallest image tuple of each class is returned. """
        representatives = []
        covered: set[tuple[int, ...]] = set()
        for candidate in self.elements_of(order, moved_points, cap):
            if candidate.images in covered:
                continue
            representatives.append(candidate)
            for member in self.sympy_group.conjugacy_class(_to_sympy(candidate)):
                covered.add(_from_sympy(member, self.degree).images)
        logger.debug('%s conjugacy classes of order %s moving %s points', len(representatives), order, moved_points)
        return representatives


def automorphism_group(c: LinearCode, budget: int = DEFAULT_ENUM_BUDGET,
                       vertex_cap: int = DEFAULT_VERTEX_CAP) -> GroupDescription:
    """ Aut(c) from nauty's generators restricted to the coordinate cell; the order is recomputed exactly by
        Schreier-Sims. """
    code_graph = _code_graph(c, budget=budget, vertex_cap=vertex_cap)
    generators, _, _, _, _ = pynauty.autgrp(code_graph.graph)
    perms = []
    for generator in generators:
        images = tuple(generator[:c.n])
        if any(image >= c.n for image in images):
            raise VerificationFailure('automorphism does not preserve the coordinate cell')
        perm = Permutation(images)
        if not is_automorphism(c, perm):
            raise VerificationFailure(f'generator {perm} does not stabilize the code')
        perms.append(perm)
    group = GroupDescription.from_generators(c.n, perms)
    logger.debug('automorphism group of %r has order %s', c, group.order)
    return group


def automorphisms_bruteforce(c: LinearCode, max_n: int = 12) -> list[Permutation]:
    """ Every automorphism by backtracking over coordinate images, pruned by the spanning weight layers.
        Independent of nauty; only for short codes. """
    if c.n > max_n:
        raise BudgetExceeded('brute-force automorphism length', c.n, max_n)
    words = sorted(word for _, layer in _spanning_layers(c, DEFAULT_ENUM_BUDGET, DEFAULT_VERTEX_CAP)
                   for word in layer)
    word_set = set(words)
    found = []
    images = [0] * c.n
    used = [False] * c.n

    def consistent(depth: int) -> bool:
        # every word must still have a possible image agreeing on the coordinates fixed so far
        for word in words:
            target_bits = 0
            mask = 0
            for i in range(depth + 1):
                mask |= 1 << images[i]
                if (word >> i) & 1:
                    target_bits |= 1 << images[i]
            if not any(other & mask == target_bits for other in word_set):
                return False
        return True

    def extend(depth: int):
        if depth == c.n:
            perm = Permutation(tuple(images))
            if is_automorphism(c, perm):
                found.append(perm)
            return
        for image in range(c.n):
            if used[image]:
                continue
            images[depth] = image
            used[image] = True
            if consistent(depth):
                extend(depth + 1)
            used[image] = False

    extend(0)
    return found


def code_orbit(c: LinearCode, group: GroupDescription, cap: int = DEFAULT_ORBIT_CAP) -> set[LinearCode]:
    """ The orbit of `c` under the group, by breadth-first closure under its generators. """
    if group.degree != c.n:
        raise DimensionError(f'group degree {group.degree} differs from code length {c.n}')
    orbit = {c}
    queue = deque([c])
    while queue:
        current = queue.popleft()
        for generator in group.generators:
            image = permute_code(current, generator)
            if image in orbit:
                continue
            orbit.add(image)
            if len(orbit) > cap:
                raise BudgetExceeded('code orbit size', len(orbit), cap)
            queue.append(image)
    if group.order % len(orbit):
        raise VerificationFailure(f'orbit size {len(orbit)} does not divide group order {group.order}')
    return orbit


def word_orbit_representatives(words: Iterable[int], group: GroupDescription,
                               cap: int = DEFAULT_ORBIT_CAP) -> list[int]:
    """ Least word of every orbit of the group on a set of words closed under it. """
    remaining = set(words)
    representatives = []
    while remaining:
        start = min(remaining)
        representatives.append(start)
        orbit = {start}
        queue = deque([start])
        while queue:
            word = queue.popleft()
            for generator in group.generators:
                image = act_bits(word, generator)
                if image not in orbit:
                    if image not in remaining:
                        raise ContractViolation('word set is not closed under the group')
                    orbit.add(image)
                    if len(orbit) > cap:
                        raise BudgetExceeded('word orbit size', len(orbit), cap)
                    queue.append(image)
        remaining -= orbit
    return representatives


@dataclass(frozen=True)
class SubcodeMatch:
    """ A subcode of the host with `witness` mapping it onto the pattern. """
    code: LinearCode
    witness: Permutation


@dataclass
class SubcodeSearch:
    """ Result of `subcodes_equivalent_to`; `incomplete` is set when the node cap stopped the search. """
    matches: list[SubcodeMatch] = field(default_factory=list)
    incomplete: bool = False
    nodes: int = 0

    @property
    def codes(self) -> list[LinearCode]:
        return [match.code for match in self.matches]

    def require_complete(self, what: str):
        if self.incomplete:
            raise IncompleteSearch(f'{what}: subcode search stopped after {self.nodes} nodes')


def pattern_basis(pattern: LinearCode, max_dim: int = 20) -> list[int]:
    """ Greedy basis of lowest-weight words, ties broken by integer value. """
    if pattern.k > max_dim:
        raise BudgetExceeded('pattern dimension', pattern.k, max_dim)
    basis = EchelonBasis(pattern.n)
    chosen = []
    for word in sorted((w for w in pattern.words() if w), key=lambda w: (w.bit_count(), w)):
        if basis.add(word):
            chosen.append(word)
            if len(chosen) == pattern.k:
                break
    return chosen


def _column_values(rows: list[int], n: int) -> list[int]:
    values = [0] * n
    for i, row in enumerate(rows):
        for c in set_bit_indices(row):
            values[c] |= 1 << i
    return values


def _column_witness(rows: list[int], pattern_rows: list[int], n: int) -> Permutation:
    """ p with rows[i]^p = pattern_rows[i] for every i, pairing coordinates with equal columns. """
    buckets: dict[int, list[int]] = defaultdict(list)
    for coordinate, value in enumerate(_column_values(pattern_rows, n)):
        buckets[value].append(coordinate)
    for bucket in buckets.values():
        bucket.reverse()
    images = [buckets[value].pop() for value in _column_values(rows, n)]
    return Permutation(tuple(images))


def subcodes_equivalent_to(host: LinearCode, pattern: LinearCode, word_fix: Optional[Permutation] = None,
                           symmetry: Optional[GroupDescription] = None, node_cap: int = DEFAULT_NODE_CAP,
                           budget: int = DEFAULT_ENUM_BUDGET) -> SubcodeSearch:
    """ Every subcode of `host` equivalent to `pattern`, each with a witness mapping it onto `pattern`.

    A subcode S with S^p = pattern has the basis b_i = q_i^(p^-1) for the greedy basis q_i of the pattern;
    those b_i are host words of the same weights whose k x n matrix has the same multiset of columns as the
    pattern's. Ordered tuples are built row by row and pruned as soon as the column multiset of a prefix
    disagrees with the pattern's.

    Args:
        host (LinearCode): Code to search in.
        pattern (LinearCode): Code the subcodes must be equivalent to.
        word_fix (Optional[Permutation]): Restrict to subcodes fixed word by word by this permutation.
        symmetry (Optional[GroupDescription]): Automorphisms of the (restricted) host; the first basis word is
            then taken up to the group and the result is closed under it.
        node_cap (int): Backtracking nodes before the search gives up and reports itself incomplete.
        budget (int): Enumeration budget for host words.

    Returns:
        SubcodeSearch: Matches sorted by echelon rows.
    """
    if host.n != pattern.n:
        raise DimensionError(f'length mismatch: {host.n} vs {pattern.n}')
    if pattern.k > host.k:
        raise ContractViolation(f'pattern dimension {pattern.k} exceeds host dimension {host.k}')
    if word_fix is not None:
        host = fixed_subcode(host, word_fix)
        logger.debug('restricted host to its %s-dimensional fixed subcode', host.k)
    if symmetry is not None and not all(is_automorphism(host, p) for p in symmetry.generators):
        raise ContractViolation('symmetry group does not stabilize the host')
    search = SubcodeSearch()
    if pattern.k == 0:
        search.matches.append(SubcodeMatch(LinearCode.zero(host.n), Permutation.identity(host.n)))
        return search
    if pattern.k > host.k:
        return search
    n = host.n
    basis = pattern_basis(pattern)
    targets = []
    for depth in range(1, len(basis) + 1):
        targets.append(sorted(_column_values(basis[:depth], n)))
    pool = words_of_weight(host, {row.bit_count() for row in basis}, budget)
    by_weight: dict[int, list[int]] = defaultdict(list)
    for word in sorted(pool):
        by_weight[word.bit_count()].append(word)
    first_choices = by_weight[basis[0].bit_count()]
    if symmetry is not None:
        first_choices = word_orbit_representatives(first_choices, symmetry)

    found: dict[LinearCode, Permutation] = {}
    chosen: list[int] = []

    def extend(depth: int, columns: list[int]) -> bool:
        search.nodes += 1
        if search.nodes > node_cap:
            search.incomplete = True
            return False
        if depth == len(basis):
            code = LinearCode.from_rows(n, chosen)
            if code not in found:
                witness = _column_witness(chosen, basis, n)
                if permute_code(code, witness) != pattern:
                    raise VerificationFailure('column pairing does not map the subcode onto the pattern')
                found[code] = witness
            return True
        candidates = first_choices if depth == 0 else by_weight[basis[depth].bit_count()]
        bit = 1 << depth
        for word in candidates:
            extended = [value | bit if (word >> c) & 1 else value for c, value in enumerate(columns)]
            if sorted(extended) != targets[depth]:
                continue
            chosen.append(word)
            keep_going = extend(depth + 1, extended)
            chosen.pop()
            if not keep_going:
                return False
        return True

    extend(0, [0] * n)
    if symmetry is not None:
        queue = deque(found.items())
        while queue:
            code, witness = queue.popleft()
            for generator in symmetry.generators:
                image = permute_code(code, generator)
                if image not in found:
                    found[image] = generator.inverse() * witness
                    queue.append((image, found[image]))
    search.matches = [SubcodeMatch(code, found[code]) for code in sorted(found, key=lambda c: c.rows)]
    if search.incomplete:
        logger.warning('subcode search stopped at the node cap %s with %s subcodes found', node_cap, len(found))
    else:
        logger.info('found %s subcodes equivalent to %r in %s nodes', len(found), pattern, search.nodes)
    return search


def subspaces(c: LinearCode, k: int) -> Iterator[LinearCode]:
    """ Every k-dimensional subcode of `c`, through echelon forms in the coordinates of c's basis. """
    rows = c.rows
    h = len(rows)
    if not 0 <= k <= h:
        return

    def combine(mask: int) -> int:
        word = 0
        for i in set_bit_indices(mask):
            word ^= rows[i]
        return word

    def pick(start: int, pivots: list[int]):
        if len(pivots) == k:
            yield from fill(pivots)
            return
        for p in range(start, h):
            yield from pick(p + 1, pivots + [p])

    def fill(pivots: list[int]):
        pivot_set = set(pivots)
        free = [[col for col in range(p + 1, h) if col not in pivot_set] for p in pivots]
        total = sum(len(f) for f in free)
        for assignment in range(1 << total):
            masks = []
            offset = 0
            for pivot, columns in zip(pivots, free):
                mask = 1 << pivot
                for j, col in enumerate(columns):
                    if (assignment >> (offset + j)) & 1:
                        mask |= 1 << col
                offset += len(columns)
                masks.append(mask)
            yield LinearCode.from_rows(c.n, (combine(mask) for mask in masks))

    yield from pick(0, [])
