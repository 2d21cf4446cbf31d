import pytest

from extremal72.codes import LinearCode, code_intersection, code_sum
from extremal72.exceptions import ContractViolation
from extremal72.gf2linalg import BitVector
from extremal72.groupalg import (BLOCK_PATTERNS, F1, F2, K_BLOCK_BASIS, ONE, ONE_PLUS_G3, AlgebraElement,
                                 DoublyEvenFilter, ModuleType, algebra_elements, apply, block_solutions,
                                 block_solutions_bruteforce, class_of, count_irreducibles, count_type2, cyclic_module,
                                 decompose_socle, enumerate_submodules_bruteforce, g3_fixed_space, h_p_representatives,
                                 ideal_structure_check, in_v2_bits, is_invariant, k_space_rows, project_idempotent,
                                 rotate_bits, socle, socle_of_E, spread, type2_per_socle, type2_with_socle, v1_space,
                                 v2_space)


def full_space(blocks: int) -> LinearCode:
    return LinearCode.from_rows(6 * blocks, [1 << i for i in range(6 * blocks)])


def k_space(blocks: int) -> LinearCode:
    return LinearCode.from_rows(6 * blocks, k_space_rows(blocks))


def test_rotation_moves_every_block():
    assert rotate_bits(0b000001, 1, 1) == 0b000010
    assert rotate_bits(0b100000, 1, 1) == 0b000001
    assert rotate_bits(0b100000_000001, 1, 2) == 0b000001_000010
    assert rotate_bits(0b101010, 6, 1) == 0b101010


def test_v2_membership():
    assert in_v2_bits(0b000101, 1)
    assert not in_v2_bits(0b000001, 1)
    assert in_v2_bits(0b000101 << 6, 2)


def test_algebra_idempotents():
    idempotents = {a for a in algebra_elements() if a.is_idempotent()}
    assert idempotents == {AlgebraElement(0), ONE, F1, F2}
    assert F1 + F2 == ONE
    assert (F1 * F2).coeffs == 0
    assert str(F1) == '1+g^2+g^4'
    assert apply(BitVector.from_string('100000'), ONE_PLUS_G3) == BitVector.from_string('100100')


def test_v1_and_v2_split_the_space():
    v1, v2 = v1_space(2), v2_space(2)
    assert (v1.k, v2.k) == (4, 8)
    assert code_sum(v1, v2) == full_space(2)
    assert code_intersection(v1, v2).k == 0


def test_idempotent_projections():
    assert project_idempotent(full_space(1), 'f1').code == v1_space(1)
    assert project_idempotent(full_space(1), 'f2').code == v2_space(1)
    with pytest.raises(ContractViolation):
        project_idempotent(LinearCode.from_rows(6, ['100000']), 'f1')


def test_cyclic_module_types():
    type1 = cyclic_module(BitVector(6, K_BLOCK_BASIS[0]))
    assert type1.module_type is ModuleType.I
    assert type1.dim == 2
    assert type1.socle == type1.space

    type2 = cyclic_module(BitVector(6, 0b000101))
    assert type2.module_type is ModuleType.II
    assert type2.dim == 4
    assert type2.socle.dim == 2
    assert socle(type2.space).code == type2.socle.code
    assert len(type2.elements) == 16


def test_cyclic_module_rejects_bad_generators():
    with pytest.raises(ContractViolation):
        cyclic_module(BitVector(6, 0))
    with pytest.raises(ContractViolation):
        cyclic_module(BitVector(6, 0b000001))


def test_block_solution_tables():
    for name, pattern in BLOCK_PATTERNS.items():
        table = sorted(z.bits for z in block_solutions(name))
        assert table == sorted(z.bits for z in block_solutions_bruteforce(name))
        for z in block_solutions(pattern):
            assert apply(z, ONE_PLUS_G3).bits == pattern


def test_module_counts():
    assert [count_irreducibles(m) for m in (1, 2)] == [1, 5]
    assert [count_type2(m) for m in (1, 2)] == [1, 20]
    assert type2_per_socle(2) == 4


def test_submodule_lattice_of_one_block():
    lattice = enumerate_submodules_bruteforce(v2_space(1))
    assert [entry.space.k for entry in lattice] == [0, 2, 4]
    assert lattice[1].space == k_space(1)


def test_submodule_counts_of_two_blocks():
    entries = enumerate_submodules_bruteforce(v2_space(2))
    irreducibles = [entry.space for entry in entries if entry.irreducible]
    assert len(irreducibles) == count_irreducibles(2)
    assert sum(entry.type2 for entry in entries) == count_type2(2)
    for p in irreducibles:
        assert len(type2_with_socle(v2_space(2), p)) == type2_per_socle(2)


def test_ideal_structure():
    report = ideal_structure_check()
    assert report.ok
    assert (report.ideal_dim, report.ideal_elements) == (4, 16)
    assert report.proper_subideals == 1
    assert report.irreducible_g2_submodules == 5


def test_socle_of_e():
    s = socle_of_E(v1_space(1), g3_fixed_space(1))
    assert s.code == k_space(1)
    with pytest.raises(ContractViolation):
        socle_of_E(LinearCode.from_rows(6, ['100000']), g3_fixed_space(1))


def test_decompose_socle():
    summands = decompose_socle(k_space(2), m=2)
    assert len(summands) == 2
    assert all(module.module_type is ModuleType.I for module in summands)
    total = code_sum(summands[0].space.code, summands[1].space.code)
    assert total == k_space(2)
    with pytest.raises(ContractViolation):
        decompose_socle(k_space(2), m=3)
    with pytest.raises(ContractViolation):
        decompose_socle(LinearCode.from_rows(12, [K_BLOCK_BASIS[0]]))


def test_h_p_representatives_solve_the_socle_equation():
    bb = spread(BLOCK_PATTERNS['B'], 2)
    cc = spread(BLOCK_PATTERNS['C'], 2)
    s = LinearCode.from_rows(12, [bb, cc])
    assert is_invariant(s)
    p = cyclic_module(BitVector(12, bb))
    representatives = h_p_representatives(p, s, s, DoublyEvenFilter.SOCLE)
    assert len(representatives) <= 4
    for z in representatives:
        assert in_v2_bits(z.bits, 2)
        assert apply(z, ONE_PLUS_G3) == p.generator
        assert len(class_of(z, s)) == 4


def test_h_p_needs_a_type1_module():
    type2 = cyclic_module(BitVector(12, 0b000101))
    with pytest.raises(ContractViolation):
        h_p_representatives(type2, k_space(2), k_space(2))
