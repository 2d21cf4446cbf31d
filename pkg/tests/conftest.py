""" Shared fixtures: the reference codes, a seeded generator, small g-invariant codes and a constructed socle. """

import random

import pytest

from extremal72.codedata import code_F, golay24, golay_standard_g
from extremal72.codes import LinearCode, code_sum
from extremal72.groupalg import cyclic_span
from extremal72.oracles import constructed_socle
from extremal72.perms import Permutation, fixed_subcode, standard_g

HAMMING_8 = ('11110000', '00111100', '00001111', '01010101')


@pytest.fixture(scope='session')
def code_f() -> LinearCode:
    return code_F()


@pytest.fixture(scope='session')
def golay() -> LinearCode:
    return golay24()


@pytest.fixture(scope='session')
def golay_g() -> LinearCode:
    """ The Golay code with the standard g on four blocks as an automorphism. """
    return golay_standard_g()


@pytest.fixture(scope='session')
def golay_l(golay_g) -> LinearCode:
    """ C(g^2) + C(g^3) of the moved Golay code. """
    g = standard_g(4)
    return code_sum(fixed_subcode(golay_g, g ** 2), fixed_subcode(golay_g, g ** 3))


@pytest.fixture(scope='session')
def hamming8() -> LinearCode:
    """ The extended Hamming [8,4,4] code. """
    return LinearCode.from_rows(8, HAMMING_8, name='e8')


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def invariant_codes(rng) -> list[LinearCode]:
    """ Codes of length 24 spanned by the g-orbits of a few random words. """
    return [cyclic_span(24, [rng.getrandbits(24) for _ in range(rng.randint(1, 3))]) for _ in range(6)]


@pytest.fixture(scope='session')
def socle_12() -> LinearCode:
    """ A g-invariant socle of dimension 12 at length 72. """
    return constructed_socle(12)


@pytest.fixture
def random_permutation(rng):
    """ Draws uniformly random permutations of a given degree from the seeded generator. """

    def draw(n: int) -> Permutation:
        images = list(range(n))
        rng.shuffle(images)
        return Permutation(tuple(images))

    return draw
