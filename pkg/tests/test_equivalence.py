import pytest

from extremal72.codes import LinearCode
from extremal72.equivalence import (GroupDescription, automorphism_group, automorphisms_bruteforce, canonical_key,
                                    canonical_pair_key, code_orbit, is_equivalent, subcodes_equivalent_to, subspaces,
                                    word_orbit_representatives)
from extremal72.exceptions import ContractViolation, IncompleteSearch
from extremal72.perms import Permutation, permute_code, standard_g

PAIRS_8 = ('11000000', '00110000', '00001100', '00000011')
SPLIT_PATTERN = ('11110000', '00001111')


def s3() -> GroupDescription:
    return GroupDescription.from_generators(3, [Permutation.parse('(1,2)', 3), Permutation.parse('(1,2,3)', 3)])


def test_canonical_key_is_permutation_invariant(hamming8, random_permutation):
    key = canonical_key(hamming8)
    for _ in range(5):
        assert canonical_key(permute_code(hamming8, random_permutation(8))) == key
    assert canonical_key(LinearCode.from_rows(8, PAIRS_8)) != key


def test_is_equivalent_returns_a_checked_witness(hamming8, random_permutation):
    moved = permute_code(hamming8, random_permutation(8))
    witness = is_equivalent(hamming8, moved)
    assert witness is not None
    assert permute_code(hamming8, witness.perm) == moved
    assert is_equivalent(hamming8, LinearCode.from_rows(8, PAIRS_8)) is None


def test_pair_key_tracks_the_permutation(random_permutation):
    g = standard_g(2)
    code = LinearCode.from_rows(12, ['110110110110', '011011011011'])
    p = random_permutation(12)
    assert canonical_pair_key(code, g) == canonical_pair_key(permute_code(code, p), g.conjugate(p))


def test_automorphism_group_of_e8(hamming8):
    group = automorphism_group(hamming8)
    assert group.order == 1344
    brute = automorphisms_bruteforce(hamming8)
    assert len(brute) == 1344
    assert all(group.contains(p) for p in brute[:50])


def test_automorphism_group_of_golay(golay):
    assert automorphism_group(golay).order == 244823040


def test_group_description_of_s3():
    group = s3()
    assert group.order == 6
    assert len(list(group.elements())) == 6
    assert len(group.elements_of(2)) == 3
    assert len(group.conjugacy_representatives(2)) == 1
    assert group.contains(Permutation.parse('(1,3)', 3))
    assert GroupDescription.trivial(3).order == 1


def test_code_orbit():
    orbit = code_orbit(LinearCode.from_rows(3, ['110']), s3())
    assert len(orbit) == 3


def test_word_orbit_representatives():
    assert word_orbit_representatives([0b001, 0b010, 0b100, 0b011, 0b101, 0b110], s3()) == [0b001, 0b011]
    with pytest.raises(ContractViolation):
        word_orbit_representatives([0b001, 0b010], s3())


def test_subcodes_equivalent_to(hamming8):
    pattern = LinearCode.from_rows(8, SPLIT_PATTERN)
    plain = subcodes_equivalent_to(hamming8, pattern)
    assert not plain.incomplete
    assert len(plain.matches) == 7
    for match in plain.matches:
        assert match.code.is_subcode_of(hamming8)
        assert permute_code(match.code, match.witness) == pattern

    symmetric = subcodes_equivalent_to(hamming8, pattern, symmetry=automorphism_group(hamming8))
    assert symmetric.codes == plain.codes


def test_subcode_search_node_cap(hamming8):
    search = subcodes_equivalent_to(hamming8, LinearCode.from_rows(8, SPLIT_PATTERN), node_cap=2)
    assert search.incomplete
    with pytest.raises(IncompleteSearch):
        search.require_complete('split subcodes')


def test_subspaces_count():
    space = LinearCode.from_rows(4, ['1000', '0100', '0010'])
    two_dimensional = list(subspaces(space, 2))
    assert len(two_dimensional) == 7
    assert len(set(two_dimensional)) == 7


@pytest.mark.parametrize('fixture', ['code_f', pytest.param('golay', marks=pytest.mark.slow)])
def test_witness_is_sound_over_many_moves(request, fixture, random_permutation):
    code = request.getfixturevalue(fixture)
    for _ in range(100):
        moved = permute_code(code, random_permutation(code.n))
        witness = is_equivalent(code, moved)
        assert witness is not None
        assert permute_code(code, witness.perm) == moved


def test_canonical_key_of_f_is_stable(code_f, random_permutation):
    key = canonical_key(code_f)
    assert all(canonical_key(permute_code(code_f, random_permutation(12))) == key for _ in range(1000))


@pytest.mark.slow
def test_automorphism_group_of_f_against_brute_force(code_f):
    group = automorphism_group(code_f)
    brute = automorphisms_bruteforce(code_f)
    assert group.order == len(brute) == 23040
    assert all(group.contains(p) for p in brute[::97])
