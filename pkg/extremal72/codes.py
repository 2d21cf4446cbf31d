""" Binary linear codes: duals, classification flags, distance queries, weight enumerators, replication, the
    block maps between lengths 6m, 2m, 3m and m, and self-dual closure. """

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
import logging
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .exceptions import BudgetExceeded, ContractViolation, DimensionError, StructuralError
from .gf2linalg import (BitMatrix, BitVector, eliminate, echelon_rows, full_mask, kernel,
                        reduce_against, subset_xors, sum_and_intersection)

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BUDGET = 1 << 28
FULL_ENUMERATION_DIM = 16
TABLE_DIM = 16
LIMB_BITS = 64

RowLike = Union[int, BitVector, str]


@dataclass(frozen=True, eq=False)
class LinearCode:
    """ Subspace of F_2^n held by its reduced echelon generator matrix. Equal codes compare equal and hash
        equally regardless of the generators they were built from. """
    n: int
    gen: BitMatrix
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.gen.n_cols != self.n:
            raise DimensionError(f'generator width {self.gen.n_cols} differs from length {self.n}')
        object.__setattr__(self, 'gen', BitMatrix(self.n, echelon_rows(self.n, self.gen.rows)))

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[RowLike], name: Optional[str] = None) -> 'LinearCode':
        """ Code spanned by rows given as packed integers, `BitVector`s or 0/1 strings. """
        packed = []
        for row in rows:
            if isinstance(row, BitVector):
                if row.length != n:
                    raise DimensionError(f'row length {row.length} differs from {n}')
                packed.append(row.bits)
            elif isinstance(row, str):
                vector = BitVector.from_string(row)
                if vector.length != n:
                    raise DimensionError(f'row length {vector.length} differs from {n}')
                packed.append(vector.bits)
            else:
                packed.append(int(row))
        return cls(n, BitMatrix(n, tuple(packed)), name)

    @classmethod
    def zero(cls, n: int) -> 'LinearCode':
        return cls(n, BitMatrix(n, ()))

    @classmethod
    def full(cls, n: int) -> 'LinearCode':
        return cls(n, BitMatrix.identity(n))

    @property
    def k(self) -> int:
        return len(self.gen.rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return self.gen.rows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        """ 0-based pivot bits of the echelon rows. """
        return tuple((row & -row).bit_length() - 1 for row in self.gen.rows)

    @cached_property
    def key(self) -> tuple[int, tuple[int, ...]]:
        """ Hashable identity of the subspace (not of its equivalence class). """
        return (self.n, self.gen.rows)

    def reduce(self, vector: int) -> int:
        return reduce_against(vector, self.gen.rows, self.pivots)

    def contains(self, vector: Union[int, BitVector]) -> bool:
        if isinstance(vector, BitVector):
            if vector.length != self.n:
                raise DimensionError(f'vector length {vector.length} differs from {self.n}')
            vector = vector.bits
        return self.reduce(vector) == 0

    __contains__ = contains

    def is_subcode_of(self, other: 'LinearCode') -> bool:
        if other.n != self.n:
            raise DimensionError(f'length mismatch: {self.n} vs {other.n}')
        return all(other.contains(row) for row in self.rows)

    def extended(self, rows: Iterable[int], name: Optional[str] = None) -> 'LinearCode':
        """ Code spanned by this code and `rows`. """
        return LinearCode(self.n, BitMatrix(self.n, self.rows + tuple(rows)), name)

    def words(self) -> Iterator[int]:
        """ Every codeword as an integer; only sensible for small dimension. """
        yield from subset_xors(self.rows)

    def vectors(self) -> list[BitVector]:
        return self.gen.vectors()

    def to_strings(self) -> list[str]:
        return self.gen.to_strings()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        label = f' {self.name}' if self.name else ''
        return f'<LinearCode{label} [{self.n},{self.k}]>'


@dataclass(frozen=True)
class CodeFlags:
    """ Classification flags of a code. """
    self_orthogonal: bool
    self_dual: bool
    doubly_even: bool
    extremal_bound: int


def extremal_bound(n: int) -> int:
    """ Upper bound 4*floor(n/24)+4 on the minimum distance of a self-dual doubly-even code of length n. """
    return 4 * (n // 24) + 4


def is_self_orthogonal(c: LinearCode) -> bool:
    rows = c.rows
    for i, row in enumerate(rows):
        if row.bit_count() & 1:
            return False
        for other in rows[i + 1:]:
            if (row & other).bit_count() & 1:
                return False
    return True


def classify(c: LinearCode) -> CodeFlags:
    """ Self-orthogonality, self-duality and doubly-evenness from the generators alone. A self-orthogonal code
        with generators of weight divisible by 4 is doubly-even, and a doubly-even code is self-orthogonal. """
    self_orthogonal = is_self_orthogonal(c)
    doubly_even = self_orthogonal and all(row.bit_count() % 4 == 0 for row in c.rows)
    return CodeFlags(
        self_orthogonal=self_orthogonal,
        self_dual=self_orthogonal and 2 * c.k == c.n,
        doubly_even=doubly_even,
        extremal_bound=extremal_bound(c.n),
    )


def dual(c: LinearCode) -> LinearCode:
    """ The dual code under the Euclidean inner product. """
    name = f'{c.name}-dual' if c.name else None
    return LinearCode(c.n, kernel(c.gen), name)


def code_sum(a: LinearCode, b: LinearCode) -> LinearCode:
    total, _ = sum_and_intersection(a.gen, b.gen)
    return LinearCode(a.n, total)


def code_intersection(a: LinearCode, b: LinearCode) -> LinearCode:
    _, meet = sum_and_intersection(a.gen, b.gen)
    return LinearCode(a.n, meet)


# Bulk enumeration. Words are split into 64-bit limbs so popcounts run through numpy.

def _limb_count(n: int) -> int:
    return (n + LIMB_BITS - 1) // LIMB_BITS


def _to_limbs(value: int, limbs: int) -> np.ndarray:
    mask = full_mask(LIMB_BITS)
    return np.array([(value >> (LIMB_BITS * i)) & mask for i in range(limbs)], dtype=np.uint64)


def _from_limbs(row: np.ndarray) -> int:
    return sum(int(limb) << (LIMB_BITS * i) for i, limb in enumerate(row))


def _subset_table(rows: Sequence[int], limbs: int) -> np.ndarray:
    table = np.zeros((1, limbs), dtype=np.uint64)
    for row in rows:
        table = np.concatenate([table, table ^ _to_limbs(row, limbs)])
    return table


def _word_chunks(c: LinearCode) -> Iterator[np.ndarray]:
    """ Yields arrays of shape (N, limbs) that together hold each codeword exactly once. """
    limbs = _limb_count(c.n)
    low = c.rows[:TABLE_DIM]
    high = c.rows[TABLE_DIM:]
    table = _subset_table(low, limbs)
    for offset in subset_xors(high):
        yield table ^ _to_limbs(offset, limbs) if offset else table


def _chunk_weights(chunk: np.ndarray) -> np.ndarray:
    return np.bitwise_count(chunk).sum(axis=1, dtype=np.int64)


def _check_budget(c: LinearCode, budget: int, what: str):
    if c.k >= 63 or (1 << c.k) > budget:
        raise BudgetExceeded(what, 1 << c.k, budget)


def weight_enumerator(c: LinearCode, budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
    """ Weight distribution A_0..A_n by full enumeration.

    Args:
        c (LinearCode): Code to enumerate.
        budget (int): Largest number of codewords that may be enumerated.

    Returns:
        list[int]: counts indexed by weight.
    """
    _check_budget(c, budget, f'weight enumerator of [{c.n},{c.k}]')
    counts = np.zeros(c.n + 1, dtype=np.int64)
    for chunk in _word_chunks(c):
        counts += np.bincount(_chunk_weights(chunk), minlength=c.n + 1)
    return [int(count) for count in counts]


def words_of_weight(c: LinearCode, weights: Iterable[int], budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
    """ Sorted list of codewords whose weight is in `weights`. """
    _check_budget(c, budget, f'word listing of [{c.n},{c.k}]')
    wanted = np.array(sorted(set(weights)), dtype=np.int64)
    found: list[int] = []
    for chunk in _word_chunks(c):
        hits = np.flatnonzero(np.isin(_chunk_weights(chunk), wanted))
        found.extend(_from_limbs(chunk[i]) for i in hits)
    return sorted(found)


def _enumerate_below(c: LinearCode, t: int) -> Optional[int]:
    for chunk in _word_chunks(c):
        weights = _chunk_weights(chunk)
        hits = np.flatnonzero((weights > 0) & (weights < t))
        if hits.size:
            return _from_limbs(chunk[hits[0]])
    return None


@dataclass(frozen=True)
class _InformationSet:
    rows: tuple[int, ...]
    own: int


def _information_sets(c: LinearCode) -> list[_InformationSet]:
    """ Systematic generator matrices on information sets chosen as disjoint as the code allows. `own` counts
        the pivots not covered by an earlier set. """
    used: set[int] = set()
    sets = []
    while len(used) < c.n:
        order = [col for col in range(c.n) if col not in used] + sorted(used)
        rows, pivots = eliminate(c.rows, order)
        own = sum(1 for pivot in pivots if pivot not in used)
        if own == 0:
            break
        sets.append(_InformationSet(tuple(rows), own))
        used.update(pivots)
    return sets


def _combination_xors(rows: Sequence[int], size: int) -> Iterator[int]:
    """ XOR of every `size`-subset of `rows`. """
    count = len(rows)
    if size == 1:
        yield from rows
        return

    def walk(start: int, depth: int, acc: int) -> Iterator[int]:
        if depth == 1:
            for i in range(start, count):
                yield acc ^ rows[i]
            return
        for i in range(start, count - depth + 1):
            yield from walk(i + 1, depth - 1, acc ^ rows[i])

    yield from walk(0, size, 0)


def _information_set_search(c: LinearCode, limit: int, first_only: bool) -> Optional[int]:
    """ Brouwer-Zimmermann enumeration. Returns a word of weight below `limit` (the first one found when
        `first_only`, otherwise one of least weight), or None once the lower bound reaches `limit`. """
    sets = _information_sets(c)
    k = c.k
    best = None
    for size in range(1, k + 1):
        for info in sets:
            for word in _combination_xors(info.rows, size):
                weight = word.bit_count()
                if weight < limit:
                    best = word
                    if first_only:
                        return best
                    limit = weight
        bound = sum(max(0, size + 1 - (k - info.own)) for info in sets)
        if bound >= limit:
            logger.debug('[%s,%s] search stopped at combination size %s with bound %s', c.n, k, size, bound)
            break
    return best


def min_weight_below(c: LinearCode, t: int) -> Optional[BitVector]:
    """ Some nonzero codeword of weight below `t`, or None when the minimum distance is at least `t`.

    Args:
        c (LinearCode): Code to query.
        t (int): Threshold, positive.

    Returns:
        Optional[BitVector]: A witness verified to lie in `c`, or None.
    """
    if t <= 0:
        raise ValueError(f'threshold must be positive, got {t}')
    if c.k == 0:
        return None
    if c.k <= FULL_ENUMERATION_DIM:
        word = _enumerate_below(c, t)
    else:
        word = _information_set_search(c, t, first_only=True)
    if word is None:
        return None
    if not c.contains(word):
        raise AssertionError('distance witness is not a codeword')
    return BitVector(c.n, word)


def minimum_weight(c: LinearCode) -> int:
    """ Exact minimum distance; 0 for the zero code. """
    if c.k == 0:
        return 0
    if c.k <= FULL_ENUMERATION_DIM:
        weights = weight_enumerator(c)
        return next(w for w in range(1, c.n + 1) if weights[w])
    word = _information_set_search(c, c.n + 1, first_only=False)
    return word.bit_count()


# Replication and block maps.

def replicate_bits(bits: int, n: int, m: int) -> int:
    """ Replaces every coordinate of a length-n word by m consecutive copies. """
    block = full_mask(m)
    out = 0
    for i in range(n):
        if (bits >> i) & 1:
            out |= block << (i * m)
    return out


def replicate(c: LinearCode, m: int) -> LinearCode:
    """ The code c ⊗ <1...1> with m ones per coordinate. """
    if m <= 0:
        raise ValueError(f'replication factor must be positive, got {m}')
    name = f'{c.name}x{m}' if c.name else None
    return LinearCode.from_rows(c.n * m, (replicate_bits(row, c.n, m) for row in c.rows), name)


class BlockMap(Enum):
    """ Maps between F_2^(6m) and the shorter spaces indexed by blocks. """
    PI12 = "pi12"
    PI24 = "pi24"
    PI36 = "pi36"
    PHI = "phi"

    @classmethod
    def from_string(cls, value: str):
        """ Get BlockMap object from lower case `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid block map: {value}") from e

    def short_length(self, blocks: int) -> int:
        return {BlockMap.PI12: 1, BlockMap.PI24: 2, BlockMap.PI36: 3, BlockMap.PHI: 1}[self] * blocks


def _blocks_of(length: int, per_block: int) -> int:
    if length % per_block:
        raise DimensionError(f'length {length} is not a multiple of {per_block}')
    return length // per_block


def embed_bits(bits: int, kind: BlockMap, blocks: int) -> int:
    """ Left inverse partner of `project_bits`: spreads a short word over 6-blocks. """
    out = 0
    for b in range(blocks):
        base = 6 * b
        if kind in (BlockMap.PI12, BlockMap.PHI):
            if (bits >> b) & 1:
                out |= 0b111111 << base
        elif kind is BlockMap.PI24:
            for half in range(2):
                if (bits >> (2 * b + half)) & 1:
                    out |= 0b010101 << (base + half)
        else:
            for third in range(3):
                if (bits >> (3 * b + third)) & 1:
                    out |= 0b001001 << (base + third)
    return out


def _orbit(base: int, offsets: Sequence[int]) -> tuple[int, ...]:
    return tuple(base + offset + 1 for offset in offsets)


def project_bits(bits: int, kind: BlockMap, blocks: int) -> int:
    """ Projects a word of length 6*blocks. Raises `StructuralError` naming the first orbit on which the word
        is not constant, except for phi which sums each block. """
    out = 0
    for b in range(blocks):
        base = 6 * b
        block = (bits >> base) & 0b111111
        if kind is BlockMap.PHI:
            out |= (block.bit_count() & 1) << b
        elif kind is BlockMap.PI12:
            if block not in (0, 0b111111):
                raise StructuralError('word is not constant on a block', _orbit(base, range(6)))
            out |= (block & 1) << b
        elif kind is BlockMap.PI24:
            for half in range(2):
                part = (block >> half) & 0b010101
                if part not in (0, 0b010101):
                    raise StructuralError('word is not constant on a g^2-orbit',
                                          _orbit(base, (half, half + 2, half + 4)))
                out |= (part & 1) << (2 * b + half)
        else:
            for third in range(3):
                part = (block >> third) & 0b001001
                if part not in (0, 0b001001):
                    raise StructuralError('word is not constant on a g^3-orbit', _orbit(base, (third, third + 3)))
                out |= (part & 1) << (3 * b + third)
    return out


def block_embed(c: Union[LinearCode, BitVector], pattern: Union[BlockMap, str]) -> Union[LinearCode, BitVector]:
    """ pi24^-1 / pi36^-1: spreads a code or vector of length 2m or 3m over length 6m. """
    kind = BlockMap.from_string(pattern) if isinstance(pattern, str) else pattern
    if kind not in (BlockMap.PI24, BlockMap.PI36):
        raise ValueError(f'{kind.value} has no embedding here; use pi24 or pi36')
    per_block = 2 if kind is BlockMap.PI24 else 3
    if isinstance(c, BitVector):
        blocks = _blocks_of(c.length, per_block)
        return BitVector(6 * blocks, embed_bits(c.bits, kind, blocks))
    blocks = _blocks_of(c.n, per_block)
    return LinearCode.from_rows(6 * blocks, (embed_bits(row, kind, blocks) for row in c.rows))


def block_project(c: Union[LinearCode, BitVector], kind: Union[BlockMap, str]) -> Union[LinearCode, BitVector]:
    """ Applies pi12, pi24, pi36 or phi to a code or vector of length 6m. For codes, checking the generators is
        enough since orbit constancy is linear. """
    kind = BlockMap.from_string(kind) if isinstance(kind, str) else kind
    if isinstance(c, BitVector):
        blocks = _blocks_of(c.length, 6)
        return BitVector(kind.short_length(blocks), project_bits(c.bits, kind, blocks))
    blocks = _blocks_of(c.n, 6)
    return LinearCode.from_rows(kind.short_length(blocks), (project_bits(row, kind, blocks) for row in c.rows))


def block_constant_code(c: LinearCode) -> LinearCode:
    """ c ∩ {words constant on every 6-block}, i.e. the subcode fixed by the standard order-6 permutation. """
    blocks = _blocks_of(c.n, 6)
    constant = BitMatrix(c.n, tuple(0b111111 << (6 * b) for b in range(blocks)))
    _, meet = sum_and_intersection(c.gen, constant)
    return LinearCode(c.n, meet)


def fixed_projection_identity(c: LinearCode) -> bool:
    """ For a self-dual code invariant under the standard order-6 permutation: phi(C) is self-orthogonal and
        pi12(C(g)) equals phi(C)^perp. """
    image = block_project(c, BlockMap.PHI)
    fixed = block_project(block_constant_code(c), BlockMap.PI12)
    return is_self_orthogonal(image) and fixed == dual(image)


def no_overcode_check(c: LinearCode, t: int) -> bool:
    """ True when every v outside `c` gives <c, v> a nonzero word of weight below `t`, i.e. every nonzero coset
        of `c` has a word of weight below `t`. Exhaustive over F_2^n via syndromes, so n must be small. """
    if c.n > 24:
        raise BudgetExceeded('coset scan', 1 << c.n, 1 << 24)
    parity = dual(c).rows
    lightest: dict[int, int] = {}
    for v in range(1, 1 << c.n):
        syndrome = 0
        for j, row in enumerate(parity):
            syndrome |= ((row & v).bit_count() & 1) << j
        if syndrome and v.bit_count() < lightest.get(syndrome, c.n + 1):
            lightest[syndrome] = v.bit_count()
    cosets = (1 << (c.n - c.k)) - 1
    return len(lightest) == cosets and all(weight < t for weight in lightest.values())


def selfdual_closure(c: LinearCode) -> LinearCode:
    """ Extends a self-orthogonal code to a self-dual one by repeatedly adjoining the first echelon row of
        (c + <1>)^perp that is not yet in c.

    Args:
        c (LinearCode): A self-orthogonal code of even length.

    Returns:
        LinearCode: A self-dual code containing `c`; the choice is deterministic.
    """
    if c.n % 2:
        raise ContractViolation(f'no self-dual code has odd length {c.n}')
    if not is_self_orthogonal(c):
        raise ContractViolation('selfdual_closure needs a self-orthogonal code')
    current = c
    ones = full_mask(c.n)
    while 2 * current.k < c.n:
        candidates = dual(current.extended([ones]))
        nxt = next(row for row in candidates.rows if not current.contains(row))
        current = current.extended([nxt])
    return LinearCode(c.n, current.gen, f'{c.name}-closure' if c.name else None)
