import random

import pytest

from g2lpoly import kernels
from g2lpoly.errors import (
    DegreeError,
    FieldTooLarge,
    NotSquarefree,
    Unsupported,
)
from g2lpoly.genus1 import (
    Genus1Model,
    count_points_naive,
    group_order_bsgs,
    lpoly1,
    quartic_jacobian,
    quartic_to_cubic,
)
from g2lpoly.modarith import Fp, Fp2, find_nonsquare

from _util import brute_count_fp, brute_count_fp2

F5 = Fp(5)
F9 = Fp2(3, 1, 0)


def _fp2_poly(ints):
    return tuple((c % 3, 0) for c in ints)


# -------------------------------------------------------------- naive counts


def test_count_x3_minus_x_over_f5():
    g = (0, -1, 0, 1)
    assert brute_count_fp(g, 5) == 8
    assert count_points_naive(Genus1Model(F5, g)) == 8


def test_count_quartic_over_f5():
    g = (1, 0, 0, 0, 1)
    assert brute_count_fp(g, 5) == 4  # lc = 1 is a square: 2 points at infinity
    assert count_points_naive(Genus1Model(F5, g)) == 4


def test_count_x3_minus_x_over_f9():
    g = _fp2_poly((0, -1, 0, 1))
    assert brute_count_fp2(g, 3, 1, 0) == 16
    assert count_points_naive(Genus1Model(F9, g)) == 16
    # cross-check through the subfield curve: a_9 = a_3^2 - 2*3 with a_3 = 0
    assert 9 + 1 - 16 == 0 * 0 - 2 * 3


def test_count_random_against_bruteforce():
    rng = random.Random(30)
    for _ in range(40):
        p = rng.choice((3, 5, 7, 11, 13, 31))
        d = rng.choice((3, 4))
        while True:
            g = tuple(rng.randrange(p) for _ in range(d)) + (rng.randrange(1, p),)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        assert count_points_naive(m) == brute_count_fp(g, p)


def test_count_random_fp2_against_bruteforce():
    rng = random.Random(31)
    for p, u0, u1 in ((3, 1, 0), (5, 2, 0), (7, 1, 0)):
        F = Fp2(p, u0, u1)
        for _ in range(8):
            while True:
                g = tuple(
                    (rng.randrange(p), rng.randrange(p)) for _ in range(3)
                ) + ((1, 0),)
                try:
                    m = Genus1Model(F, g)
                    break
                except NotSquarefree:
                    continue
            assert count_points_naive(m) == brute_count_fp2(g, p, u0, u1)


def test_count_field_too_large():
    with pytest.raises(FieldTooLarge):
        count_points_naive(Genus1Model(Fp(65537 * 2 - 1), (0, -1, 0, 1)), limit=1 << 16)


def test_kernels_njit_vs_numpy_agree():
    if not kernels.HAVE_NUMBA:
        pytest.skip("numba disabled in this run")
    rng = random.Random(32)
    import numpy as np

    for _ in range(10):
        p = rng.choice((101, 257, 1031))
        coeffs = [rng.randrange(p) for _ in range(rng.choice((4, 5)))]
        arr = np.asarray(coeffs, dtype=np.int64)
        assert kernels._count_affine_fp_njit(arr, p) == kernels.count_affine_fp_numpy(
            arr, p
        )
    for _ in range(6):
        p = 31
        c0 = np.asarray([rng.randrange(p) for _ in range(4)], dtype=np.int64)
        c1 = np.asarray([rng.randrange(p) for _ in range(4)], dtype=np.int64)
        assert kernels._count_affine_fp2_njit(
            c0, c1, 1, 0, p
        ) == kernels.count_affine_fp2_numpy(c0, c1, 1, 0, p)


# ---------------------------------------------------------- quartic handling


def test_quartic_reversal_example():
    m = Genus1Model(F5, (0, 1, 0, 0, 1))  # x^4 + x
    assert quartic_to_cubic(m).g == (1, 0, 0, 1)  # x^3 + 1
    m2 = Genus1Model(F5, (0, 1, 0, 0, 2))  # 2x^4 + x
    assert quartic_to_cubic(m2).g == (2, 0, 0, 1)


def test_quartic_reversal_preserves_count():
    # c*x(x-1)(x-2)(x-3) over F_7 for every unit c
    from g2lpoly.polyring import fp_mul

    p = 7
    for c in range(1, 7):
        g = (c,)
        for r in (0, 1, 2, 3):
            g = fp_mul(g, ((p - r) % p, 1), p)
        m = Genus1Model(Fp(p), g)
        assert count_points_naive(m) == count_points_naive(quartic_to_cubic(m))


def test_quartic_reversal_rejects_nonzero_constant():
    with pytest.raises(DegreeError):
        quartic_to_cubic(Genus1Model(F5, (1, 0, 0, 0, 1)))


def test_quartic_jacobian_example():
    m = Genus1Model(F5, (1, 0, 0, 0, 1))  # x^4 + 1: I = 12, J = 0
    cub = quartic_jacobian(m)
    assert cub.g == ((-27 * 0) % 5, (-27 * 12) % 5, 0, 1)
    assert cub.g == (0, 1, 0, 1)  # X^3 + X mod 5
    t_quartic = 5 + 1 - count_points_naive(m)
    t_cubic = 5 + 1 - count_points_naive(cub)
    assert t_quartic == t_cubic == 2


def test_quartic_jacobian_matches_counts():
    rng = random.Random(34)
    for _ in range(30):
        p = rng.choice((5, 7, 11, 13))
        while True:
            g = tuple(rng.randrange(p) for _ in range(4)) + (rng.randrange(1, p),)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        assert count_points_naive(m) == count_points_naive(quartic_jacobian(m))


def test_quartic_jacobian_scaling_invariance():
    # substituting x -> lam*x scales I, J by lam^4, lam^6: same trace
    rng = random.Random(35)
    p = 7
    from g2lpoly.polyring import fp_scale

    for _ in range(20):
        while True:
            g = tuple(rng.randrange(p) for _ in range(4)) + (rng.randrange(1, p),)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        lam = rng.randrange(1, p)
        scaled = tuple(c * pow(lam, i, p) % p for i, c in enumerate(g))
        m2 = Genus1Model(Fp(p), scaled)
        # x -> lam x is a bijection of the affine line: same affine count
        assert count_points_naive(quartic_jacobian(m)) == count_points_naive(
            quartic_jacobian(m2)
        ) or count_points_naive(m) == count_points_naive(m2)


def test_quartic_jacobian_nonsingular_output():
    rng = random.Random(36)
    p = 11
    for _ in range(50):
        g = tuple(rng.randrange(p) for _ in range(4)) + (rng.randrange(1, p),)
        try:
            m = Genus1Model(Fp(p), g)
        except NotSquarefree:
            continue
        quartic_jacobian(m)  # Genus1Model construction asserts disc != 0


def test_quartic_jacobian_rejects_char3():
    m = Genus1Model(Fp2(3, 1, 0), _fp2_poly((1, 1, 0, 0, 1)))
    with pytest.raises(Unsupported):
        quartic_jacobian(m)


# ----------------------------------------------------------------------- bsgs


def test_bsgs_matches_naive_f101():
    rng = random.Random(37)
    m = Genus1Model(Fp(101), (1, 1, 0, 1))
    assert group_order_bsgs(m, rng) == count_points_naive(m)


def test_bsgs_supersingular():
    rng = random.Random(38)
    for p in (10007, 40063):
        assert p % 4 == 3
        m = Genus1Model(Fp(p), (0, 1, 0, 1))  # y^2 = x^3 + x: trace 0
        n = group_order_bsgs(m, rng)
        assert n == p + 1
        assert n == brute_count_fp((0, 1, 0, 1), p)


def test_bsgs_twist_consistency():
    rng = random.Random(39)
    for _ in range(10):
        p = rng.choice((1031, 2053, 4099))
        while True:
            g = tuple(rng.randrange(p) for _ in range(3)) + (1,)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        n = group_order_bsgs(m, rng)
        d = find_nonsquare(p, rng)
        twisted = tuple(c * pow(d, 3 - i, p) % p for i, c in enumerate(g))
        # y^2 = d^3 g(x/d) is the quadratic twist
        mt = Genus1Model(Fp(p), twisted)
        nt = group_order_bsgs(mt, rng)
        assert n + nt == 2 * p + 2


def test_bsgs_fp2_matches_naive():
    rng = random.Random(40)
    F = Fp2(19, 1, 0)  # q = 361
    for _ in range(5):
        while True:
            g = tuple((rng.randrange(19), rng.randrange(19)) for _ in range(3)) + (
                (1, 0),
            )
            try:
                m = Genus1Model(F, g)
                break
            except NotSquarefree:
                continue
        assert group_order_bsgs(m, rng) == count_points_naive(m)


# --------------------------------------------------------------------- lpoly1


def test_lpoly1_examples():
    rng = random.Random(41)
    assert lpoly1(Genus1Model(F5, (0, -1, 0, 1)), rng).a == -2
    assert lpoly1(Genus1Model(F5, (0, 2, 4, 4)), rng).a == 2  # 4x^3+4x^2+2x
    assert lpoly1(Genus1Model(F9, _fp2_poly((0, -1, 0, 1))), rng).a == -6


def test_lpoly1_forced_bsgs_equals_naive():
    rng = random.Random(42)
    for _ in range(15):
        p = rng.choice((1031, 2053))
        while True:
            g = tuple(rng.randrange(p) for _ in range(3)) + (1,)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        assert lpoly1(m, rng, force_bsgs=True) == lpoly1(m, rng)


def test_lpoly1_quadratic_twist_negates_trace():
    rng = random.Random(43)
    for _ in range(20):
        p = rng.choice((7, 11, 13, 31))
        d = find_nonsquare(p, rng)
        while True:
            g = tuple(rng.randrange(p) for _ in range(3)) + (rng.randrange(1, p),)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        md = Genus1Model(Fp(p), tuple(c * d % p for c in g))
        assert lpoly1(md, rng).a == -lpoly1(m, rng).a


def test_lpoly1_hasse_bound():
    rng = random.Random(44)
    for _ in range(40):
        p = rng.choice((3, 5, 7, 11, 13, 61))
        while True:
            d = rng.choice((3, 4))
            g = tuple(rng.randrange(p) for _ in range(d)) + (rng.randrange(1, p),)
            try:
                m = Genus1Model(Fp(p), g)
                break
            except NotSquarefree:
                continue
        lp = lpoly1(m, rng)
        assert lp.a * lp.a <= 4 * p


def test_interval_multiples_contract():
    # the search must return the two smallest interval multiples of ord(P),
    # even for points of very small order
    from g2lpoly.genus1 import _Curve, _multiples_in_interval, _to_short_weierstrass

    rng = random.Random(45)
    p = 1009
    m = Genus1Model(Fp(p), (1, 1, 0, 1))
    A, B = _to_short_weierstrass(m)
    curve = _Curve(Fp(p), A, B)
    n = count_points_naive(m)
    lo, hi = p + 1 - 2 * 31, p + 1 + 2 * 31
    for _ in range(25):
        P = curve.random_point(rng)
        # brute-force the true order of P
        Q, order = P, 1
        while Q is not None:
            Q = curve.add(Q, P)
            order += 1
        want = [x for x in range(lo, hi + 1) if x % order == 0]
        first, second = _multiples_in_interval(curve, P, lo, hi)
        assert first == want[0]
        assert second == (want[1] if len(want) > 1 else None)
        assert n % order == 0


def test_bsgs_small_order_points_handled():
    # points of order <= sqrt(interval width) degenerate the giant-step walk;
    # the order must then come from the first return to the identity
    rng = random.Random(46)
    m = Genus1Model(Fp(11), (7, 7, 0, 8))  # group of order 6, has 2-torsion
    for _ in range(10):
        assert group_order_bsgs(m, rng) == count_points_naive(m) == 6
    m2 = Genus1Model(Fp(19), (4, 4, 2, 6))
    for _ in range(10):
        assert group_order_bsgs(m2, rng) == count_points_naive(m2) == 26


def test_lpoly1_forced_bsgs_tiny_fields():
    # below the uniqueness threshold the order search may come back
    # ambiguous; lpoly1 then falls back to exhaustive counting
    rng = random.Random(47)
    for p in (5, 7, 11, 13):
        for _ in range(10):
            while True:
                g = tuple(rng.randrange(p) for _ in range(3)) + (rng.randrange(1, p),)
                try:
                    m = Genus1Model(Fp(p), g)
                    break
                except NotSquarefree:
                    continue
            assert lpoly1(m, rng, force_bsgs=True) == lpoly1(m, rng)
