""" Coordinate permutations: action on vectors and codes, cycle types, fixed and even-orbit subcodes, Huffman
    splitting, conjugators, the standard order-6 permutation and the lift of degree-36 permutations to degree
    72 that respects the g^3-pairs.

    Permutations are image tuples on 0-based points and print in 1-based cycle notation. Composition is left to
    right, (pq)(i) = q(p(i)), so acting with p then q equals acting with pq. """

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import lcm
import logging
import re
from typing import Iterable, Optional, Sequence

from .codes import LinearCode, code_intersection, dual
from .exceptions import ContractViolation, DimensionError, StructuralError
from .gf2linalg import BitMatrix, BitVector, set_bit_indices

logger = logging.getLogger(__name__)

ALLOWED_PRIME_TYPES_72 = ('2-(36,0)', '3-(24,0)', '5-(14,2)')
_CYCLE_RE = re.compile(r'\(([^()]*)\)')


@dataclass(frozen=True)
class Permutation:
    """ Bijection of {1..n} stored as 0-based images. """
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f'not a permutation: {self.images}')

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> 'Permutation':
        """ Builds a permutation of degree `n` from 1-based cycles. """
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= n:
                    raise DimensionError(f'point {point} outside 1..{n}')
                if point in seen:
                    raise ValueError(f'point {point} appears in two cycles')
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> 'Permutation':
        """ Parses cycle notation such as "(1,2,3)(4,5)"; "()" is the identity. """
        stripped = text.replace(' ', '')
        if _CYCLE_RE.sub('', stripped):
            raise ValueError(f'Invalid cycle notation: "{text}"')
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            if body:
                cycles.append([int(point) for point in body.split(',')])
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """ Image of a 1-based point. """
        return self.images[point - 1] + 1

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        if other.n != self.n:
            raise DimensionError(f'degree mismatch: {self.n} vs {other.n}')
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> 'Permutation':
        inverse = [0] * self.n
        for i, image in enumerate(self.images):
            inverse[image] = i
        return Permutation(tuple(inverse))

    def __pow__(self, exponent: int) -> 'Permutation':
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.n)
        for _ in range(abs(exponent) % self.order):
            result = result * base
        return result

    def conjugate(self, by: 'Permutation') -> 'Permutation':
        """ by^-1 * self * by. """
        return by.inverse() * self * by

    def commutes_with(self, other: 'Permutation') -> bool:
        return self * other == other * self

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """ All cycles, fixed points included, as 1-based tuples starting at their least point, sorted by that
            point. """
        seen = [False] * self.n
        cycles = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point + 1)
                point = self.images[point]
            cycles.append(tuple(cycle))
        return tuple(cycles)

    @cached_property
    def order(self) -> int:
        return lcm(*(len(cycle) for cycle in self.cycles)) if self.cycles else 1

    @property
    def moved_points(self) -> int:
        """ Number of points not fixed (the degree of the permutation). """
        return sum(1 for i, image in enumerate(self.images) if i != image)

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def cycle_type(self) -> Counter:
        """ Multiset of cycle lengths, fixed points counted as 1-cycles. """
        return Counter(len(cycle) for cycle in self.cycles)

    def __str__(self) -> str:
        moved = [cycle for cycle in self.cycles if len(cycle) > 1]
        if not moved:
            return '()'
        return ''.join('(' + ','.join(str(point) for point in cycle) + ')' for cycle in moved)


def act_bits(bits: int, p: Permutation) -> int:
    """ Moves bit i to bit p(i). """
    out = 0
    images = p.images
    for i in set_bit_indices(bits):
        out |= 1 << images[i]
    return out


def act(v: BitVector, p: Permutation) -> BitVector:
    """ v^p: the entry at coordinate i moves to coordinate p(i). """
    if v.length != p.n:
        raise DimensionError(f'vector length {v.length} differs from degree {p.n}')
    return BitVector(v.length, act_bits(v.bits, p))


def permute_code(c: LinearCode, p: Permutation, name: Optional[str] = None) -> LinearCode:
    """ The code c^p. """
    if c.n != p.n:
        raise DimensionError(f'code length {c.n} differs from degree {p.n}')
    return LinearCode.from_rows(c.n, (act_bits(row, p) for row in c.rows), name or c.name)


def is_automorphism(c: LinearCode, p: Permutation) -> bool:
    return c.n == p.n and all(c.contains(act_bits(row, p)) for row in c.rows)


def _is_prime(value: int) -> bool:
    return value >= 2 and all(value % d for d in range(2, int(value ** 0.5) + 1))


def prime_type_tag(p: Permutation) -> Optional[str]:
    """ "p-(c,f)" for a permutation of prime order p with c p-cycles and f fixed points, else None. """
    if not _is_prime(p.order):
        return None
    lengths = p.cycle_type()
    return f'{p.order}-({lengths[p.order]},{lengths[1]})'


def validate_prime_type(p: Permutation) -> Optional[str]:
    """ The tag of a prime-order permutation when admissible. At degree 72 only the types allowed for an
        automorphism of a [72,36,16] code pass. """
    tag = prime_type_tag(p)
    if tag is None:
        logger.debug('permutation of order %s is not of prime order', p.order)
        return None
    if p.n == 72 and tag not in ALLOWED_PRIME_TYPES_72:
        logger.debug('prime type %s is not admissible at length 72', tag)
        return None
    return tag


def validate_order6(g: Permutation) -> list[str]:
    """ Problems that prevent `g` from being an order-6 automorphism of a [72,36,16] code; empty when valid. """
    problems = []
    if g.order != 6:
        problems.append(f'order is {g.order}, not 6')
        return problems
    if g.cycle_type() != Counter({6: g.n // 6}) or g.n % 6:
        problems.append(f'cycle type {dict(g.cycle_type())} is not fixed-point-free 6-cycles')
    if g.n == 72:
        for power, expected in ((2, '3-(24,0)'), (3, '2-(36,0)')):
            tag = validate_prime_type(g ** power)
            if tag != expected:
                problems.append(f'g^{power} has type {tag}, expected {expected}')
    return problems


def standard_g(blocks: int = 12) -> Permutation:
    """ (1,2,3,4,5,6)(7,...,12)... on 6*blocks points. """
    return Permutation.from_cycles(6 * blocks, (tuple(range(6 * b + 1, 6 * b + 7)) for b in range(blocks)))


def bar_g24(blocks: int = 12) -> Permutation:
    """ (1,2)(3,4)... on 2*blocks points. """
    return Permutation.from_cycles(2 * blocks, ((2 * b + 1, 2 * b + 2) for b in range(blocks)))


def bar_g36(blocks: int = 12) -> Permutation:
    """ (1,2,3)(4,5,6)... on 3*blocks points. """
    return Permutation.from_cycles(3 * blocks, ((3 * b + 1, 3 * b + 2, 3 * b + 3) for b in range(blocks)))


def orbit_constant_space(h: Permutation) -> BitMatrix:
    """ Basis of the words constant on every orbit of `h`: one orbit indicator per cycle. """
    rows = []
    for cycle in h.cycles:
        row = 0
        for point in cycle:
            row |= 1 << (point - 1)
        rows.append(row)
    return BitMatrix(h.n, tuple(rows))


def fixed_subcode(c: LinearCode, h: Permutation) -> LinearCode:
    """ C(h): the words of `c` fixed by `h`, computed as c ∩ (orbit-constant space). """
    if c.n != h.n:
        raise DimensionError(f'code length {c.n} differs from degree {h.n}')
    return code_intersection(c, LinearCode(c.n, orbit_constant_space(h)))


def even_orbit_subcode(c: LinearCode, h: Permutation) -> LinearCode:
    """ E(h): the words of `c` with even weight on every orbit of the odd-order permutation `h`. """
    if c.n != h.n:
        raise DimensionError(f'code length {c.n} differs from degree {h.n}')
    if h.order % 2 == 0:
        raise ContractViolation(f'even-orbit subcode needs odd order, got {h.order}')
    return code_intersection(c, dual(LinearCode(c.n, orbit_constant_space(h))))


@dataclass(frozen=True)
class HuffmanSplit:
    """ C = C(h) ⊕ E(h) for an odd-order automorphism h. """
    fixed: LinearCode
    even: LinearCode
    direct: bool


def huffman_check(c: LinearCode, h: Permutation) -> HuffmanSplit:
    """ Computes C(h) and E(h) and whether they form a direct sum equal to `c`. """
    if h.order % 2 == 0:
        raise ContractViolation(f'Huffman decomposition needs odd order, got {h.order}')
    if not is_automorphism(c, h):
        raise ContractViolation('h is not an automorphism of the code')
    fixed = fixed_subcode(c, h)
    even = even_orbit_subcode(c, h)
    direct = code_intersection(fixed, even).k == 0 and fixed.k + even.k == c.k
    return HuffmanSplit(fixed, even, direct)


def _sorted_cycles(p: Permutation) -> list[tuple[int, ...]]:
    return sorted(p.cycles, key=lambda cycle: (len(cycle), cycle[0]))


def conjugator(a: Permutation, b: Permutation) -> Optional[Permutation]:
    """ Some p with p^-1 a p = b, or None when the cycle types differ.

    Cycles of both permutations are sorted by (length, least point), each read from its least point, and the
    i-th cycle of `a` is mapped pointwise onto the i-th cycle of `b`.
    """
    if a.n != b.n:
        raise DimensionError(f'degree mismatch: {a.n} vs {b.n}')
    if a.cycle_type() != b.cycle_type():
        return None
    images = [0] * a.n
    for source, target in zip(_sorted_cycles(a), _sorted_cycles(b)):
        for x, y in zip(source, target):
            images[x - 1] = y - 1
    p = Permutation(tuple(images))
    if a.conjugate(p) != b:
        raise AssertionError('conjugator failed verification')
    return p


def normalize_commuting(l: Permutation, pattern_code: Optional[LinearCode] = None) -> Permutation:
    """ Adjusts `l` so that it commutes with the standard order-3 permutation of degree 3m.

    l^-1 g36 l must preserve every triple {3b-2, 3b-1, 3b} and act on it as g36 or as g36^-1. On the triples
    where it acts as the inverse, l is followed by the swap (3b-1, 3b). The swaps fix every word that is
    constant on triples, so the result still maps the same subcode onto `pattern_code`.

    Args:
        l (Permutation): Permutation of degree 3m.
        pattern_code (Optional[LinearCode]): Code that must be fixed by the swaps, usually F ⊗ <(1,1,1)>.

    Returns:
        Permutation: r = l s with r^-1 g36 r = g36.
    """
    if l.n % 3:
        raise DimensionError(f'degree {l.n} is not a multiple of 3')
    blocks = l.n // 3
    g36 = bar_g36(blocks)
    conjugated = g36.conjugate(l)
    if conjugated == g36:
        return l
    swaps = []
    for b in range(blocks):
        first, second, third = 3 * b, 3 * b + 1, 3 * b + 2
        images = (conjugated.images[first], conjugated.images[second], conjugated.images[third])
        if images == (second, third, first):
            continue
        if images == (third, first, second):
            swaps.append((second + 1, third + 1))
            continue
        raise StructuralError('conjugate of g36 neither fixes nor inverts a triple', (first + 1, second + 1, third + 1))
    s = Permutation.from_cycles(l.n, swaps)
    if pattern_code is not None and permute_code(pattern_code, s) != pattern_code:
        raise StructuralError('triple swap does not fix the pattern code')
    result = l * s
    if g36.conjugate(result) != g36:
        raise AssertionError('normalized permutation does not commute with g36')
    return result


def pair_coordinates(j: int, half: int) -> int:
    """ 1-based coordinate of half `half` of pair j, where pair 3b-2+r is {6b-5+r, 6b-2+r}. """
    b, r = divmod(j - 1, 3)
    return 6 * b + r + 1 + 3 * half


def lift36_to_72(t_bar: Permutation) -> Permutation:
    """ Lifts a permutation of degree 3m to degree 6m through the pair structure of g^3.

    Pair j goes to pair t_bar(j), and the halves are swapped according to a vector delta solved along each
    g36-orbit so that the lift commutes with the standard g whenever t_bar commutes with g36. The lift of
    g36 is g itself.
    """
    if t_bar.n % 3:
        raise DimensionError(f'degree {t_bar.n} is not a multiple of 3')
    degree = t_bar.n
    g36 = bar_g36(degree // 3)

    def g_flip(j: int) -> int:
        return 1 if j % 3 == 0 else 0

    delta = [0] * (degree + 1)
    for b in range(degree // 3):
        j = 3 * b + 1
        delta[j] = 0
        for _ in range(2):
            nxt = g36(j)
            delta[nxt] = delta[j] ^ g_flip(t_bar(j)) ^ g_flip(j)
            j = nxt
    images = [0] * (2 * degree)
    for j in range(1, degree + 1):
        for half in range(2):
            source = pair_coordinates(j, half)
            target = pair_coordinates(t_bar(j), half ^ delta[j])
            images[source - 1] = target - 1
    return Permutation(tuple(images))
