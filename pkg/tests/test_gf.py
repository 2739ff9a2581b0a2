import itertools

import pytest

from soclelab.errors import InputError
from soclelab.gf import Field, field_make, is_prime, _poly_is_irreducible

ALL_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


@pytest.mark.parametrize("p,e", ALL_Q)
def test_field_axioms_full_enumeration(p, e):
    f = field_make(p, e)
    elements = list(f.elements())
    assert len(elements) == p**e
    assert len(set(elements)) == p**e
    for a in elements:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a != 0:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in itertools.product(elements, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    for a, b, c in itertools.product(elements, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_prime_field_basics():
    f2 = field_make(2)
    assert list(f2.elements()) == [0, 1]
    assert f2.add(1, 1) == 0  # characteristic 2
    f3 = field_make(3)
    assert len(list(f3.elements())) == 3
    assert f3.inv(2) == 2  # 2*2 = 4 = 1 mod 3


def test_f4_default_modulus_is_the_unique_irreducible_quadratic():
    # oracle: scan all monic quadratics over F_2 for irreducibility
    irreducible = [
        (c0, c1, 1)
        for c0 in (0, 1)
        for c1 in (0, 1)
        if _poly_is_irreducible((c0, c1, 1), 2)
    ]
    assert irreducible == [(1, 1, 1)]  # x^2 + x + 1
    f4 = field_make(2, 2)
    assert f4.modulus == (1, 1, 1)
    assert len(list(f4.elements())) == 4


def test_f4_square_of_generator():
    # x * x reduces to x + 1 modulo x^2 + x + 1; codes: x = 2, x + 1 = 3
    f4 = field_make(2, 2)
    assert f4.mul(2, 2) == 3
    assert f4.coeffs(3) == (1, 1)


def test_frobenius_is_field_automorphism():
    f9 = field_make(3, 2)
    for a in f9.elements():
        for b in f9.elements():
            assert f9.frobenius(f9.add(a, b)) == f9.add(f9.frobenius(a), f9.frobenius(b))
            assert f9.frobenius(f9.mul(a, b)) == f9.mul(f9.frobenius(a), f9.frobenius(b))
    # order 2 over the prime field
    for a in f9.elements():
        assert f9.frobenius(f9.frobenius(a)) == a


def test_construction_errors():
    with pytest.raises(InputError):
        field_make(4)  # not prime
    with pytest.raises(InputError):
        field_make(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(InputError):
        field_make(2, 4)  # q = 16 over the default bound
    f3 = field_make(3)
    with pytest.raises(InputError):
        f3.inv(0)


def test_bound_is_configurable():
    f16 = field_make(2, 4, max_q=16)
    assert len(list(f16.elements())) == 16
    for a in f16.nonzero():
        assert f16.mul(a, f16.inv(a)) == 1


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_json_round_trip():
    for p, e in ALL_Q:
        f = field_make(p, e)
        again = Field.from_json(f.to_json())
        assert again == f


def test_gf2_flag():
    assert field_make(2).is_gf2
    assert not field_make(2, 2).is_gf2
    assert not field_make(3).is_gf2
