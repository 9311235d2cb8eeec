import random

import pytest

from g2lpoly.errors import BadWitness, InexactDivision, NonResidue
from g2lpoly.modarith import Fp, Fp2, QuadOrder, find_nonsquare, legendre, sqrt_mod_p

from _util import SMALL_PRIMES, fp2_elements


def test_legendre_examples():
    assert legendre(1, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(14, 7) == 0


def test_legendre_multiplicative():
    rng = random.Random(1)
    for _ in range(300):
        p = rng.choice(SMALL_PRIMES)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_legendre_rejects_bad_modulus():
    from g2lpoly.errors import NotOddPrime

    with pytest.raises(NotOddPrime):
        legendre(3, 8)
    with pytest.raises(NotOddPrime):
        legendre(3, 1)


def test_sqrt_examples():
    assert sqrt_mod_p(2, 7, 3) == 3
    assert sqrt_mod_p(0, 13, 2) == 0
    assert sqrt_mod_p(4, 13, 2) == 2


def test_sqrt_random_roundtrip():
    rng = random.Random(2)
    for _ in range(1000):
        p = rng.choice(SMALL_PRIMES + (101, 257, 65537, 105269))
        a = rng.randrange(p)
        s = find_nonsquare(p, rng)
        x = sqrt_mod_p(a * a % p, p, s)
        assert x * x % p == a * a % p
        assert x <= p - x  # deterministic tie-break: smaller representative


def test_sqrt_errors():
    with pytest.raises(NonResidue):
        sqrt_mod_p(3, 7, 5)
    with pytest.raises(BadWitness):
        sqrt_mod_p(2, 7, 2)  # 2 is a square mod 7
    with pytest.raises(BadWitness):
        sqrt_mod_p(3, 13, None)  # p = 1 mod 4 needs a witness


def test_find_nonsquare():
    rng = random.Random(3)
    assert find_nonsquare(3, rng) == 2
    for _ in range(50):
        p = rng.choice(SMALL_PRIMES)
        s = find_nonsquare(p, rng)
        assert pow(s, (p - 1) // 2, p) == p - 1
    assert find_nonsquare(7, rng) in (3, 5, 6)


def test_fp2_defining_relation():
    F = Fp2(3, 1, 0)  # z^2 + 1
    assert F.mul((0, 1), (0, 1)) == (2, 0)  # z*z = -1


def test_fp2_frobenius_is_conjugation():
    F = Fp2(7, 1, 0)
    rng = random.Random(4)
    for _ in range(50):
        c0, c1 = rng.randrange(7), rng.randrange(7)
        assert F.frobenius((c0, c1)) == (c0, (-c1) % 7)


def test_fp2_inverse_of_z_over_f9():
    F = Fp2(3, 1, 0)
    # brute force: the unique element with z*w = 1 is 2z
    hits = [w for w in fp2_elements(3) if F.mul((0, 1), w) == (1, 0)]
    assert hits == [(0, 2)]
    assert F.inv((0, 1)) == (0, 2)


def test_fp2_field_axioms_random():
    rng = random.Random(5)
    for _ in range(40):
        p = rng.choice(SMALL_PRIMES)
        while True:
            u0, u1 = rng.randrange(p), rng.randrange(p)
            if legendre(u1 * u1 - 4 * u0, p) == -1:
                break
        F = Fp2(p, u0, u1)
        x, y, z = F.random(rng), F.random(rng), F.random(rng)
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.mul(x, y) == F.mul(y, x)
        if not F.is_zero(x):
            assert F.mul(x, F.inv(x)) == F.one
        # Frobenius has order dividing 2 and x^(p^2) = x
        assert F.frobenius(F.frobenius(x)) == x
        assert F.pow(x, F.q) == x
        # it is a ring morphism
        assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))


def test_fp2_frobenius_fixes_exactly_fp():
    F = Fp2(5, 2, 1)
    fixed = [x for x in fp2_elements(5) if F.frobenius(x) == x]
    assert sorted(fixed) == [(c, 0) for c in range(5)]


def test_fp2_division_by_zero():
    F = Fp2(3, 1, 0)
    with pytest.raises(ZeroDivisionError):
        F.inv((0, 0))


def test_fp2_sqrt_random():
    rng = random.Random(6)
    for p, u0, u1 in ((5, 2, 0), (13, 2, 0), (101, 2, 0)):
        F = Fp2(p, u0, u1)
        for _ in range(25):
            x = F.random(rng)
            sq = F.mul(x, x)
            r = F.sqrt(sq, rng)
            assert F.mul(r, r) == sq


def test_order_reduce_lift_section():
    o = QuadOrder(2, 0, 5)
    for x in fp2_elements(5):
        assert o.reduce(o.lift(x)) == x


def test_order_reduce_example():
    o = QuadOrder(2, 0, 5)
    assert o.reduce((3, 7)) == (3, 2)


def test_order_exact_division():
    o = QuadOrder(2, 0, 5)
    assert o.exact_div_pk((25, 50), 2) == (1, 2)
    with pytest.raises(InexactDivision):
        o.exact_div_pk((25, 51), 2)


def test_order_reduction_is_ring_morphism():
    rng = random.Random(7)
    o = QuadOrder(3, 2, 7)  # z^2 + 2z + 3, irreducible mod 7
    for _ in range(100):
        x = (rng.randrange(-(10**9), 10**9), rng.randrange(-(10**9), 10**9))
        y = (rng.randrange(-(10**9), 10**9), rng.randrange(-(10**9), 10**9))
        K = o.kappa
        assert o.reduce(o.mul(x, y)) == K.mul(o.reduce(x), o.reduce(y))
        assert o.reduce(o.add(x, y)) == K.add(o.reduce(x), o.reduce(y))


def test_order_conjugation_fixes_integers():
    o = QuadOrder(1, 1, 11)
    assert o.conj((9, 0)) == (9, 0)
    x = (5, 7)
    n = o.mul(x, o.conj(x))
    assert n[1] == 0  # norms are rational integers


def test_fp_field_interface():
    F = Fp(13)
    rng = random.Random(8)
    x = F.random(rng)
    if x:
        assert F.mul(x, F.inv(x)) == 1
    assert F.sqrt(4, rng) in (2, 11)
    assert F.q == 13
