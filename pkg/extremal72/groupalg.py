""" The group algebra F_2<g> of the cyclic group of order 6 acting on words of length 6m block by block.

    g acts inside each 6-block as the cycle (1,2,3,4,5,6), so v^(g^i) is a rotation of every block by i
    places. V_2 is the space of words of even weight on every g^2-orbit; its g^3-fixed part K holds every
    socle; cyclic submodules of V_2 are of type I (dimension 2, g^3-fixed) or type II (dimension 4). """

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
import logging
from typing import Iterable, Optional, Union

from .codes import LinearCode, code_intersection, code_sum
from .exceptions import BudgetExceeded, ContractViolation, DimensionError
from .gf2linalg import BitVector, EchelonBasis, set_bit_indices, subset_xors
from .helpers.messaging import StageMessage

logger = logging.getLogger(__name__)

BLOCK = 6
EVEN_G2_PAIR = (0b000101, 0b010100)
G3_ORBITS = (0b001001, 0b010010, 0b100100)
K_BLOCK_BASIS = (0b011011, 0b110110)


def _bits(pattern: str) -> int:
    return BitVector.from_string(pattern).bits


BLOCK_PATTERNS: dict[str, int] = {
    'A': _bits('000000'),
    'B': _bits('110110'),
    'C': _bits('011011'),
    'D': _bits('101101'),
}

BLOCK_SOLUTIONS: dict[str, tuple[int, ...]] = {
    'A': tuple(_bits(z) for z in ('000000', '110110', '011011', '101101')),
    'B': tuple(_bits(z) for z in ('100010', '010100', '111001', '001111')),
    'C': tuple(_bits(z) for z in ('010001', '001010', '111100', '100111')),
    'D': tuple(_bits(z) for z in ('101000', '000101', '011110', '110011')),
}


def blocks_of(length: int) -> int:
    if length % BLOCK:
        raise DimensionError(f'length {length} is not a multiple of {BLOCK}')
    return length // BLOCK


def spread(pattern: int, blocks: int) -> int:
    """ Repeats a 6-bit pattern in every block. """
    out = 0
    for b in range(blocks):
        out |= pattern << (BLOCK * b)
    return out


def rotate_bits(bits: int, power: int, blocks: int) -> int:
    """ v^(g^power): every block rotated so that coordinate 1 moves to coordinate 1+power. """
    i = power % BLOCK
    if i == 0:
        return bits
    low = spread((1 << (BLOCK - i)) - 1, blocks)
    high = spread(((1 << i) - 1) << (BLOCK - i), blocks)
    return ((bits & low) << i) | ((bits & high) >> (BLOCK - i))


def in_v2_bits(bits: int, blocks: int) -> bool:
    """ Even weight on every g^2-orbit {1,3,5}, {2,4,6} of every block. """
    folded = bits ^ (bits >> 2) ^ (bits >> 4)
    return folded & spread(0b000011, blocks) == 0


def g3_fixed_bits(bits: int, blocks: int) -> bool:
    return rotate_bits(bits, 3, blocks) == bits


@dataclass(frozen=True)
class AlgebraElement:
    """ Element sum a_i g^i of F_2<g>; bit i of `coeffs` is a_i. """
    coeffs: int

    def __post_init__(self):
        if not 0 <= self.coeffs < 1 << BLOCK:
            raise ValueError(f'coefficients {self.coeffs:#x} outside 6 bits')

    @classmethod
    def from_exponents(cls, *exponents: int) -> 'AlgebraElement':
        coeffs = 0
        for exponent in exponents:
            coeffs ^= 1 << (exponent % BLOCK)
        return cls(coeffs)

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        return AlgebraElement(self.coeffs ^ other.coeffs)

    def __mul__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        product = 0
        for i in set_bit_indices(self.coeffs):
            for j in set_bit_indices(other.coeffs):
                product ^= 1 << ((i + j) % BLOCK)
        return AlgebraElement(product)

    def is_idempotent(self) -> bool:
        return self * self == self

    def exponents(self) -> tuple[int, ...]:
        return tuple(set_bit_indices(self.coeffs))

    def as_vector(self) -> BitVector:
        """ The element as a word of length 6, the identification under which F_2<g> is the one-block space. """
        return BitVector(BLOCK, self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        terms = []
        for i in self.exponents():
            terms.append('1' if i == 0 else 'g' if i == 1 else f'g^{i}')
        return '+'.join(terms)


ONE = AlgebraElement.from_exponents(0)
F1 = AlgebraElement.from_exponents(0, 2, 4)
F2 = AlgebraElement.from_exponents(2, 4)
ONE_PLUS_G3 = AlgebraElement.from_exponents(0, 3)


def algebra_elements() -> list[AlgebraElement]:
    """ All 64 elements of F_2<g>. """
    return [AlgebraElement(coeffs) for coeffs in range(1 << BLOCK)]


def apply_bits(bits: int, a: AlgebraElement, blocks: int) -> int:
    out = 0
    for i in a.exponents():
        out ^= rotate_bits(bits, i, blocks)
    return out


def apply(v: BitVector, a: AlgebraElement) -> BitVector:
    """ v * (sum a_i g^i) = sum a_i v^(g^i). """
    blocks = blocks_of(v.length)
    return BitVector(v.length, apply_bits(v.bits, a, blocks))


class Idempotent(Enum):
    """ The central orthogonal idempotents f1 = 1+g^2+g^4 and f2 = g^2+g^4. """
    F1 = "f1"
    F2 = "f2"

    @classmethod
    def from_string(cls, value: str):
        """ Get Idempotent object from lower case `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid idempotent: {value}") from e

    @property
    def element(self) -> AlgebraElement:
        return F1 if self is Idempotent.F1 else F2


class ModuleType(Enum):
    """ Cyclic submodules of V_2: type I irreducible of dimension 2, type II indecomposable of dimension 4. """
    I = "I"
    II = "II"

    @classmethod
    def from_string(cls, value: str):
        """ Get ModuleType object from `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid module type: {value}") from e


@dataclass(frozen=True)
class SubmoduleSpace:
    """ Subspace of F_2^(6m) seen as a candidate F_2<g>-submodule. """
    code: LinearCode

    @classmethod
    def from_rows(cls, length: int, rows: Iterable[int]) -> 'SubmoduleSpace':
        return cls(LinearCode.from_rows(length, rows))

    @property
    def blocks(self) -> int:
        return blocks_of(self.code.n)

    @property
    def dim(self) -> int:
        return self.code.k

    @property
    def rows(self) -> tuple[int, ...]:
        return self.code.rows

    @cached_property
    def g_invariant(self) -> bool:
        return is_invariant(self.code)

    @cached_property
    def in_v2(self) -> bool:
        return all(in_v2_bits(row, self.blocks) for row in self.rows)

    def contains(self, vector: Union[int, BitVector]) -> bool:
        return self.code.contains(vector)


SpaceLike = Union[LinearCode, SubmoduleSpace]


def _code_of(space: SpaceLike) -> LinearCode:
    return space.code if isinstance(space, SubmoduleSpace) else space


def is_invariant(c: SpaceLike, power: int = 1) -> bool:
    """ Whether the code is closed under g^power. """
    code = _code_of(c)
    blocks = blocks_of(code.n)
    return all(code.contains(rotate_bits(row, power, blocks)) for row in code.rows)


def cyclic_span(length: int, rows: Iterable[int], power: int = 1) -> LinearCode:
    """ Smallest g^power-invariant space containing `rows`. """
    blocks = blocks_of(length)
    generators = []
    for row in rows:
        generators.extend(rotate_bits(row, power * i, blocks) for i in range(BLOCK))
    return LinearCode.from_rows(length, generators)


def v1_space(blocks: int) -> LinearCode:
    """ V_1 = V f1: words constant on every g^2-orbit. """
    rows = []
    for b in range(blocks):
        rows += [0b010101 << (BLOCK * b), 0b101010 << (BLOCK * b)]
    return LinearCode.from_rows(BLOCK * blocks, rows)


def v2_space(blocks: int) -> LinearCode:
    """ V_2 = V f2, spanned by a+b and b+c for every g^2-orbit {a, b, c}. """
    rows = []
    for b in range(blocks):
        for pattern in (0b000101, 0b010100, 0b001010, 0b101000):
            rows.append(pattern << (BLOCK * b))
    return LinearCode.from_rows(BLOCK * blocks, rows)


def g3_fixed_space(blocks: int) -> LinearCode:
    """ V(g^3): words constant on the pairs {i, i+3}. """
    rows = [orbit << (BLOCK * b) for b in range(blocks) for orbit in G3_ORBITS]
    return LinearCode.from_rows(BLOCK * blocks, rows)


def k_space_rows(blocks: int) -> list[int]:
    """ Basis of K = V_2(g^3): the words [0,1,1,0,1,1] and [1,1,0,1,1,0] in every block. """
    return [pattern << (BLOCK * b) for b in range(blocks) for pattern in K_BLOCK_BASIS]


def project_idempotent(space: SpaceLike, which: Union[Idempotent, str]) -> SubmoduleSpace:
    """ The image W f of a g-invariant space under f1 or f2.

    Args:
        space (SpaceLike): A g-invariant space.
        which (Union[Idempotent, str]): "f1" or "f2".

    Returns:
        SubmoduleSpace: W f1 = W(g^2) or W f2 = E(g^2) ∩ W.
    """
    idempotent = Idempotent.from_string(which) if isinstance(which, str) else which
    code = _code_of(space)
    if not is_invariant(code):
        raise ContractViolation('idempotent projection needs a g-invariant space')
    blocks = blocks_of(code.n)
    image = [apply_bits(row, idempotent.element, blocks) for row in code.rows]
    return SubmoduleSpace(LinearCode.from_rows(code.n, image))


@dataclass(frozen=True)
class CyclicModule:
    """ The submodule v F_2<g> generated by a nonzero v in V_2. """
    generator: BitVector
    module_type: ModuleType
    space: SubmoduleSpace
    socle: SubmoduleSpace = field(compare=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def elements(self) -> list[BitVector]:
        return [BitVector(self.generator.length, word) for word in self.space.code.words()]


def cyclic_module(v: BitVector) -> CyclicModule:
    """ Cyclic module generated by `v`, typed I when v is g^3-fixed and II otherwise. """
    blocks = blocks_of(v.length)
    if v.is_zero():
        raise ContractViolation('cyclic module of the zero vector')
    if not in_v2_bits(v.bits, blocks):
        raise ContractViolation(f'{v} is not in V_2')
    span = SubmoduleSpace(cyclic_span(v.length, [v.bits]))
    if g3_fixed_bits(v.bits, blocks):
        if span.dim != 2:
            raise AssertionError(f'type I module of dimension {span.dim}')
        return CyclicModule(v, ModuleType.I, span, span)
    if span.dim != 4:
        raise AssertionError(f'type II module of dimension {span.dim}')
    socle_rows = [apply_bits(row, ONE_PLUS_G3, blocks) for row in span.rows]
    return CyclicModule(v, ModuleType.II, span, SubmoduleSpace.from_rows(v.length, socle_rows))


def socle(m: SpaceLike) -> SubmoduleSpace:
    """ soc(M) = M(g^3), the kernel of multiplication by 1+g^3 on M. """
    code = _code_of(m)
    blocks = blocks_of(code.n)
    if not is_invariant(code):
        raise ContractViolation('socle needs a g-invariant space')
    if not all(in_v2_bits(row, blocks) for row in code.rows):
        raise ContractViolation('socle needs a subspace of V_2')
    return SubmoduleSpace(code_intersection(code, g3_fixed_space(blocks)))


def socle_of_E(c2: LinearCode, c3: LinearCode) -> SubmoduleSpace:
    """ (C(g^2) + C(g^3)) ∩ V_2, the socle of E(g^2) when C is self-dual.

    Args:
        c2 (LinearCode): Code whose words are all g^2-fixed.
        c3 (LinearCode): Code whose words are all g^3-fixed.

    Returns:
        SubmoduleSpace: The intersection with V_2.
    """
    if c2.n != c3.n:
        raise DimensionError(f'length mismatch: {c2.n} vs {c3.n}')
    blocks = blocks_of(c2.n)
    if any(rotate_bits(row, 2, blocks) != row for row in c2.rows):
        raise ContractViolation('first code has a word not fixed by g^2')
    if any(rotate_bits(row, 3, blocks) != row for row in c3.rows):
        raise ContractViolation('second code has a word not fixed by g^3')
    return SubmoduleSpace(code_intersection(code_sum(c2, c3), v2_space(blocks)))


def decompose_socle(s: SpaceLike, m: Optional[int] = None) -> list[CyclicModule]:
    """ Splits a socle into type-I summands. Greedy: the lowest echelon row not yet in the running sum
        generates the next summand.

    Args:
        s (SpaceLike): g-invariant subspace of K = V_2(g^3).
        m (Optional[int]): Expected number of summands; dim s must equal 2m.

    Returns:
        list[CyclicModule]: Irreducible modules whose direct sum is `s`.
    """
    code = _code_of(s)
    blocks = blocks_of(code.n)
    if code.k % 2:
        raise ContractViolation(f'socle dimension {code.k} is odd')
    if m is not None and code.k != 2 * m:
        raise ContractViolation(f'socle dimension {code.k} differs from 2*{m}')
    if not is_invariant(code):
        raise ContractViolation('socle is not g-invariant')
    if not all(in_v2_bits(row, blocks) and g3_fixed_bits(row, blocks) for row in code.rows):
        raise ContractViolation('socle has a word outside V_2(g^3)')
    running = EchelonBasis(code.n)
    summands = []
    for row in code.rows:
        if row in running:
            continue
        module = cyclic_module(BitVector(code.n, row))
        if running.extend(module.space.rows) != 2:
            raise AssertionError('socle summands are not independent')
        summands.append(module)
    return summands


def block_pattern_name(block: int) -> str:
    """ A, B, C or D for a 6-bit block of a g^3-fixed word of V_2. """
    for name, pattern in BLOCK_PATTERNS.items():
        if pattern == block:
            return name
    raise ContractViolation(f'block {BitVector(BLOCK, block)} is not one of the patterns A-D')


def block_solutions(v_block: Union[str, int, BitVector]) -> tuple[BitVector, ...]:
    """ The four z in one block with z(1+g^3) = v_block and even weight on both g^2-orbits. """
    if isinstance(v_block, BitVector):
        v_block = v_block.bits
    name = v_block if isinstance(v_block, str) else block_pattern_name(v_block)
    if name not in BLOCK_SOLUTIONS:
        raise ContractViolation(f'unknown block pattern {name}')
    return tuple(BitVector(BLOCK, z) for z in BLOCK_SOLUTIONS[name])


def block_solutions_bruteforce(v_block: Union[str, int, BitVector]) -> tuple[BitVector, ...]:
    """ Same set as `block_solutions` by scanning all 64 words of one block. """
    if isinstance(v_block, BitVector):
        v_block = v_block.bits
    target = BLOCK_PATTERNS[v_block] if isinstance(v_block, str) else v_block
    found = [z for z in range(1 << BLOCK) if in_v2_bits(z, 1) and apply_bits(z, ONE_PLUS_G3, 1) == target]
    return tuple(BitVector(BLOCK, z) for z in found)


@dataclass(frozen=True)
class SolutionSpace:
    """ {z in V_2 : z(1+g^3) = v} = particular + span(kernel). """
    length: int
    particular: int
    kernel: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.kernel)

    def size(self) -> int:
        return 1 << self.dim


def h_p_solution_space(v: BitVector) -> SolutionSpace:
    """ Particular solution taken blockwise from the first listed block solution, plus K. """
    blocks = blocks_of(v.length)
    particular = 0
    for b in range(blocks):
        block = (v.bits >> (BLOCK * b)) & 0b111111
        particular |= BLOCK_SOLUTIONS[block_pattern_name(block)][0] << (BLOCK * b)
    return SolutionSpace(v.length, particular, tuple(k_space_rows(blocks)))


def socle_complement(s: SpaceLike) -> list[int]:
    """ Complement U of the socle inside K, taken greedily from K's basis in order. """
    code = _code_of(s)
    running = EchelonBasis(code.n, code.rows)
    return [row for row in k_space_rows(blocks_of(code.n)) if running.add(row)]


def class_of(z: BitVector, s: SpaceLike) -> list[BitVector]:
    """ The class z + soc of a solution z: all generators giving the same soc + h. """
    return [BitVector(z.length, z.bits ^ word) for word in _code_of(s).words()]


class DoublyEvenFilter(Enum):
    """ Which code the adjoined module must keep doubly-even: the current L (ambient) or only the socle. """
    AMBIENT = "ambient"
    SOCLE = "socle"

    @classmethod
    def from_string(cls, value: str):
        """ Get DoublyEvenFilter object from lower case `str`. """
        try:
            return cls(value)
        except ValueError as e:
            raise ValueError(f"Invalid doubly-even filter: {value}") from e


def module_rows(z: int, blocks: int) -> list[int]:
    """ z, zg, zg^2, zg^3: a spanning set of z F_2<g>. """
    return [rotate_bits(z, i, blocks) for i in range(4)]


def h_rows(z: int, blocks: int) -> list[int]:
    """ z, zg^2: a basis of the irreducible F_2<g^2>-module h generated by z. """
    return [z, rotate_bits(z, 2, blocks)]


def keeps_doubly_even(z: int, rows: Iterable[int], blocks: int) -> bool:
    """ Whether <rows, z F_2<g>> is doubly-even, given that `rows` span a g-invariant doubly-even code. """
    generated = module_rows(z, blocks)
    if any(word.bit_count() % 4 for word in generated):
        return False
    for i, word in enumerate(generated):
        for other in generated[i + 1:]:
            if (word & other).bit_count() & 1:
                return False
    return all((z & row).bit_count() % 2 == 0 for row in rows)


def h_p_representatives(p: CyclicModule, socle_space: SpaceLike, ambient_code: LinearCode,
                        mode: Union[DoublyEvenFilter, str] = DoublyEvenFilter.AMBIENT) -> list[BitVector]:
    """ Representatives of the classes of H_p whose module keeps the code doubly-even.

    The generators z with z(1+g^3) = p.generator form a coset of K; classes are the cosets of the socle
    inside it, represented by z0 + span(U) for the greedy complement U.

    Args:
        p (CyclicModule): Type-I summand of the socle.
        socle_space (SpaceLike): The socle, of dimension equal to the block count.
        ambient_code (LinearCode): The current L, self-orthogonal and doubly-even.
        mode (Union[DoublyEvenFilter, str]): Check against L ("ambient") or only the socle ("socle").

    Returns:
        list[BitVector]: Representatives in a fixed order.
    """
    mode = DoublyEvenFilter.from_string(mode) if isinstance(mode, str) else mode
    s = _code_of(socle_space)
    blocks = blocks_of(s.n)
    if p.module_type is not ModuleType.I:
        raise ContractViolation('H_p is defined for irreducible (type I) modules')
    if s.k != blocks:
        raise ContractViolation(f'socle dimension {s.k} differs from {blocks}')
    if not p.space.code.is_subcode_of(s):
        raise ContractViolation('p is not contained in the socle')
    solution = h_p_solution_space(p.generator)
    complement = socle_complement(s)
    rows = ambient_code.rows if mode is DoublyEvenFilter.AMBIENT else s.rows
    representatives = []
    for offset in subset_xors(complement):
        z = solution.particular ^ offset
        if keeps_doubly_even(z, rows, blocks):
            representatives.append(BitVector(s.n, z))
    logger.debug('%s of %s class representatives keep the code doubly-even',
                 len(representatives), 1 << len(complement))
    return representatives


# Brute-force oracles for small spaces.

def count_irreducibles(m: int) -> int:
    """ Irreducible submodules of a socle of dimension 2m: (2^(2m)-1)/3. """
    return (4 ** m - 1) // 3


def count_type2(m: int) -> int:
    """ Type-II cyclic submodules of a module of dimension 4m with socle of dimension 2m. """
    return (16 ** m - 4 ** m) // 12


def type2_per_socle(m: int) -> int:
    return 4 ** (m - 1)


@dataclass(frozen=True)
class SubmoduleEntry:
    """ One invariant subspace found by `enumerate_submodules_bruteforce`. """
    space: LinearCode
    irreducible: bool
    cyclic: bool
    socle: LinearCode

    @property
    def type2(self) -> bool:
        return self.cyclic and self.space.k == 4 and self.socle.k == 2


def enumerate_submodules_bruteforce(space: SpaceLike, power: int = 1, max_dim: int = 8) -> list[SubmoduleEntry]:
    """ Every g^power-invariant subspace of `space`, built as sums of cyclic submodules.

    Args:
        space (SpaceLike): A g^power-invariant space of dimension at most `max_dim`.
        power (int): 1 for F_2<g>-submodules, 2 for F_2<g^2>-submodules, 3 for F_2<g^3>-submodules.
        max_dim (int): Refuse larger spaces.

    Returns:
        list[SubmoduleEntry]: Sorted by dimension then echelon rows.
    """
    code = _code_of(space)
    if code.k > max_dim:
        raise BudgetExceeded('submodule enumeration dimension', code.k, max_dim)
    if not is_invariant(code, power):
        raise ContractViolation(f'space is not invariant under g^{power}')
    blocks = blocks_of(code.n)
    cyclic: dict[LinearCode, None] = {}
    for word in code.words():
        if word:
            cyclic.setdefault(cyclic_span(code.n, [word], power), None)
    zero = LinearCode.zero(code.n)
    lattice = {zero: None}
    frontier = [zero]
    while frontier:
        current = frontier.pop()
        for module in cyclic:
            total = code_sum(current, module)
            if total not in lattice:
                lattice[total] = None
                frontier.append(total)
    fixed = g3_fixed_space(blocks)
    members = sorted(lattice, key=lambda c: (c.k, c.rows))
    entries = []
    for member in members:
        minimal = member.k > 0 and not any(
            0 < other.k < member.k and other.is_subcode_of(member) for other in members)
        entries.append(SubmoduleEntry(member, minimal, member in cyclic, code_intersection(member, fixed)))
    return entries


def type2_with_socle(space: SpaceLike, p: SpaceLike) -> list[LinearCode]:
    """ Type-II cyclic submodules of `space` whose socle is `p`. """
    target = _code_of(p)
    return [entry.space for entry in enumerate_submodules_bruteforce(space) if entry.type2 and entry.socle == target]


@dataclass
class IdealStructureReport:
    """ Result of the exhaustive check of the ideal (f2) of F_2<g>. """
    ideal_dim: int = 0
    ideal_elements: int = 0
    proper_subideals: int = 0
    irreducible_g2_submodules: int = 0
    messages: list[StageMessage] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(message.severity.value != 'error' for message in self.messages)


def ideal_structure_check() -> IdealStructureReport:
    """ Enumerates the ideal I = (f2) of F_2<g> (one block) and checks that it is 4-dimensional, has a single
        proper nonzero subideal J = I(1+g^3) with J(1+g^3) = 0, and exactly 5 irreducible F_2<g^2>-submodules;
        the four besides J are mapped onto J by 1+g^3 and complementing J. """
    report = IdealStructureReport()
    ideal = LinearCode.from_rows(BLOCK, (apply_bits(1 << i, F2, 1) for i in range(BLOCK)))
    report.ideal_dim = ideal.k
    report.ideal_elements = len(list(ideal.words()))

    def expect(condition: bool, text: str):
        report.messages.append(StageMessage.info(text, 'ideal') if condition
                               else StageMessage.error(f'failed: {text}', 'ideal'))

    expect(ideal.k == 4 and report.ideal_elements == 16, 'ideal (f2) has dimension 4 and 16 elements')
    subideals = [entry.space for entry in enumerate_submodules_bruteforce(ideal) if 0 < entry.space.k < ideal.k]
    report.proper_subideals = len(subideals)
    expected_j = LinearCode.from_rows(BLOCK, (apply_bits(row, ONE_PLUS_G3, 1) for row in ideal.rows))
    expect(subideals == [expected_j], 'the only proper subideal is J = I(1+g^3)')
    expect(expected_j.k == 2 and all(apply_bits(row, ONE_PLUS_G3, 1) == 0 for row in expected_j.rows),
           'J has dimension 2 and J(1+g^3) = 0')
    irreducibles = [entry.space for entry in enumerate_submodules_bruteforce(ideal, power=2) if entry.irreducible]
    report.irreducible_g2_submodules = len(irreducibles)
    expect(len(irreducibles) == 5 and expected_j in irreducibles,
           'exactly 5 irreducible F2<g^2>-submodules, J among them')
    others = [module for module in irreducibles if module != expected_j]
    for index, module in enumerate(others, start=1):
        image = LinearCode.from_rows(BLOCK, (apply_bits(row, ONE_PLUS_G3, 1) for row in module.rows))
        complementary = code_intersection(module, expected_j).k == 0 and code_sum(module, expected_j) == ideal
        expect(image == expected_j and complementary, f'irreducible {index} maps onto J and complements it')
    return report
