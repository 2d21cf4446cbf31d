""" Bit-packed linear algebra over GF(2).

    Vectors are Python integers: coordinate i (1-based) lives in bit i-1. Reduced row echelon forms sweep the
    columns from coordinate 1 upward, so two matrices span the same space exactly when their echelon rows are
    equal, which makes echelon rows usable as dedupe keys. """

from dataclasses import dataclass
import logging
from typing import Iterable, Iterator, Optional, Sequence

from .exceptions import DimensionError

logger = logging.getLogger(__name__)


def set_bit_indices(x: int) -> Iterator[int]:
    """ Iterate over the 0-based indices of bits set to 1 in `x`, in ascending order. """
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def full_mask(length: int) -> int:
    """ Integer with the lowest `length` bits set. """
    return (1 << length) - 1


@dataclass(frozen=True, slots=True)
class BitVector:
    """ Vector of F_2^length stored as a packed integer. """
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length <= 0:
            raise DimensionError(f'BitVector length must be positive, got {self.length}')
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f'bits {self.bits:#x} do not fit in length {self.length}')

    @classmethod
    def zero(cls, length: int) -> 'BitVector':
        """ The zero vector. """
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> 'BitVector':
        """ The all-ones vector. """
        return cls(length, full_mask(length))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> 'BitVector':
        """ Vector with ones exactly at the given 1-based coordinates. """
        bits = 0
        for i in indices:
            if not 1 <= i <= length:
                raise DimensionError(f'coordinate {i} outside 1..{length}')
            bits |= 1 << (i - 1)
        return cls(length, bits)

    @classmethod
    def from_string(cls, text: str) -> 'BitVector':
        """ Parses a string of 0/1 characters, first character is coordinate 1. Spaces and commas are ignored. """
        cleaned = text.replace(' ', '').replace(',', '').strip('[]')
        if not cleaned or set(cleaned) - {'0', '1'}:
            raise ValueError(f'Invalid bit string: "{text}"')
        bits = 0
        for i, char in enumerate(cleaned):
            if char == '1':
                bits |= 1 << i
        return cls(len(cleaned), bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """ 1-based coordinates of the nonzero entries. """
        return tuple(i + 1 for i in set_bit_indices(self.bits))

    def dot(self, other: 'BitVector') -> int:
        """ Euclidean inner product mod 2. """
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def _check(self, other: 'BitVector'):
        if self.length != other.length:
            raise DimensionError(f'length mismatch: {self.length} vs {other.length}')

    def __add__(self, other: 'BitVector') -> 'BitVector':
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def __and__(self, other: 'BitVector') -> 'BitVector':
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f'coordinate {i} outside 1..{self.length}')
        return (self.bits >> (i - 1)) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return ''.join('1' if (self.bits >> i) & 1 else '0' for i in range(self.length))


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """ Ordered list of packed rows of width `n_cols`. Rows are kept as integers; `vectors()` wraps them. """
    n_cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n_cols <= 0:
            raise DimensionError(f'BitMatrix needs a positive column count, got {self.n_cols}')
        limit = 1 << self.n_cols
        for row in self.rows:
            if row < 0 or row >= limit:
                raise DimensionError(f'row {row:#x} does not fit in {self.n_cols} columns')

    @classmethod
    def from_vectors(cls, n_cols: int, vectors: Iterable[BitVector]) -> 'BitMatrix':
        rows = []
        for vector in vectors:
            if vector.length != n_cols:
                raise DimensionError(f'row length {vector.length} differs from {n_cols}')
            rows.append(vector.bits)
        return cls(n_cols, tuple(rows))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> 'BitMatrix':
        """ Builds a matrix from 0/1 strings of equal length. """
        vectors = [BitVector.from_string(line) for line in lines]
        if not vectors:
            raise DimensionError('cannot infer the width of an empty matrix')
        return cls.from_vectors(vectors[0].length, vectors)

    @classmethod
    def identity(cls, n: int) -> 'BitMatrix':
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.n_cols, row) for row in self.rows]

    def to_strings(self) -> list[str]:
        return [str(vector) for vector in self.vectors()]

    def __len__(self) -> int:
        return len(self.rows)


def eliminate(rows: Iterable[int], order: Sequence[int]) -> tuple[list[int], list[int]]:
    """ Gauss-Jordan elimination choosing pivot columns (0-based bits) in `order`. Returns (rows, pivot bits)
        with row i reduced on pivot i and zero on every other pivot. """
    pending = [row for row in rows if row]
    reduced: list[int] = []
    pivots: list[int] = []
    for col in order:
        bit = 1 << col
        index = next((i for i, row in enumerate(pending) if row & bit), None)
        if index is None:
            continue
        pivot_row = pending.pop(index)
        pending = [row ^ pivot_row if row & bit else row for row in pending]
        reduced = [row ^ pivot_row if row & bit else row for row in reduced]
        reduced.append(pivot_row)
        pivots.append(col)
        pending = [row for row in pending if row]
        if not pending:
            break
    return reduced, pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """ Reduced row echelon form.

    Args:
        m (BitMatrix): Matrix to reduce.

    Returns:
        tuple[BitMatrix, int, list[int]]: The echelon matrix (zero rows dropped), its rank and the strictly
        increasing 1-based pivot columns.
    """
    rows, pivots = eliminate(m.rows, range(m.n_cols))
    return BitMatrix(m.n_cols, tuple(rows)), len(rows), [p + 1 for p in pivots]


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def echelon_rows(n_cols: int, rows: Iterable[int]) -> tuple[int, ...]:
    """ Canonical echelon rows of the span of `rows`. """
    reduced, _ = eliminate(rows, range(n_cols))
    return tuple(reduced)


def kernel(m: BitMatrix) -> BitMatrix:
    """ Basis, in reduced echelon form, of {x : m x^T = 0}. """
    echelon, _, pivots = rref(m)
    pivot_bits = [p - 1 for p in pivots]
    pivot_set = set(pivot_bits)
    basis = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        x = 1 << free
        for row, pivot in zip(echelon.rows, pivot_bits):
            if (row >> free) & 1:
                x |= 1 << pivot
        basis.append(x)
    return BitMatrix(m.n_cols, echelon_rows(m.n_cols, basis))


def reduce_against(vector: int, echelon: Sequence[int], pivots: Sequence[int]) -> int:
    """ Reduces `vector` by fully reduced echelon rows with 0-based pivot bits `pivots`. """
    for row, pivot in zip(echelon, pivots):
        if (vector >> pivot) & 1:
            vector ^= row
    return vector


def contains(m: BitMatrix, vector: BitVector) -> bool:
    """ Whether `vector` lies in the row space of `m`. """
    if vector.length != m.n_cols:
        raise DimensionError(f'vector length {vector.length} differs from {m.n_cols}')
    echelon, _, pivots = rref(m)
    return reduce_against(vector.bits, echelon.rows, [p - 1 for p in pivots]) == 0


def sum_and_intersection(a: BitMatrix, b: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """ Sum and intersection of two row spaces by Zassenhaus elimination.

    Rows [a | a] and [b | 0] are reduced over the doubled width, pivots taken on the left half first. Rows whose
    left half vanishes carry a basis of the intersection in their right half.

    Args:
        a (BitMatrix): First space.
        b (BitMatrix): Second space, same width.

    Returns:
        tuple[BitMatrix, BitMatrix]: (a + b, a ∩ b), both in reduced echelon form.
    """
    if a.n_cols != b.n_cols:
        raise DimensionError(f'width mismatch: {a.n_cols} vs {b.n_cols}')
    n = a.n_cols
    combined = [row | (row << n) for row in a.rows] + list(b.rows)
    reduced, _ = eliminate(combined, range(2 * n))
    low = full_mask(n)
    total = [row & low for row in reduced if row & low]
    meet = [row >> n for row in reduced if not row & low]
    return BitMatrix(n, echelon_rows(n, total)), BitMatrix(n, echelon_rows(n, meet))


def span_elements(m: BitMatrix) -> list[int]:
    """ Every element of the row space, meant for oracles on spaces of small dimension. """
    echelon, _, _ = rref(m)
    elements = [0]
    for row in echelon.rows:
        elements += [element ^ row for element in elements]
    return elements


def subset_xors(rows: Sequence[int]) -> list[int]:
    """ XOR of every subset of `rows`, subset s at index s (bit j of s selects rows[j]). """
    table = [0]
    for row in rows:
        table += [entry ^ row for entry in table]
    return table


class EchelonBasis:
    """ Incrementally maintained reduced echelon basis, used when a sieve appends a few rows at a time to a
        fixed base code. """

    def __init__(self, n_cols: int, rows: Iterable[int] = ()):
        self.n_cols = n_cols
        self._rows: list[int] = []
        self._pivots: list[int] = []
        for row in rows:
            self.add(row)

    def copy(self) -> 'EchelonBasis':
        clone = EchelonBasis(self.n_cols)
        clone._rows = list(self._rows)
        clone._pivots = list(self._pivots)
        return clone

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[int, ...]:
        """ Rows sorted by pivot, i.e. canonical echelon form. """
        return tuple(row for _, row in sorted(zip(self._pivots, self._rows)))

    def reduce(self, vector: int) -> int:
        return reduce_against(vector, self._rows, self._pivots)

    def __contains__(self, vector: int) -> bool:
        return self.reduce(vector) == 0

    def add(self, vector: int) -> bool:
        """ Adds `vector` to the span; returns False when it was already in it. """
        vector = self.reduce(vector)
        if not vector:
            return False
        pivot = (vector & -vector).bit_length() - 1
        self._rows = [row ^ vector if (row >> pivot) & 1 else row for row in self._rows]
        self._rows.append(vector)
        self._pivots.append(pivot)
        return True

    def extend(self, vectors: Iterable[int]) -> int:
        """ Adds every vector, returns how many increased the dimension. """
        return sum(1 for vector in vectors if self.add(vector))

    def to_matrix(self) -> BitMatrix:
        return BitMatrix(self.n_cols, self.rows)


def independent(rows: Iterable[int], n_cols: Optional[int] = None) -> bool:
    """ Whether the given rows are linearly independent. """
    rows = list(rows)
    basis = EchelonBasis(n_cols or max((row.bit_length() for row in rows), default=1))
    return all(basis.add(row) for row in rows)
