"""L-polynomials of genus 1 curves y^2 = g(x) over F_p and F_{p^2}.

Small fields are counted exhaustively through the kernels module; larger
fields go through baby-step/giant-step order-finding on the curve and its
quadratic twist.  Quartic models are reduced to cubics first, either by
reversal (when g(0) = 0) or through the classical quartic invariants.
"""

import math
import random
from dataclasses import dataclass

from . import kernels
from .errors import (
    AmbiguousOrder,
    DegreeError,
    FieldTooLarge,
    HasseViolation,
    NotSquarefree,
    Unsupported,
)
from .modarith import Fp2
from .polyring import fp2_disc, fp2_trim, fp_disc, fp_trim

DEFAULT_NAIVE_LIMIT = 1 << 16


@dataclass(frozen=True)
class Genus1Model:
    """A squarefree cubic or quartic y^2 = g(x) over F_p or F_{p^2}."""

    field: object  # Fp or Fp2
    g: tuple

    def __post_init__(self):
        F = self.field
        if isinstance(F, Fp2):
            g = fp2_trim(self.g, F)
            d = len(g) - 1
            if d not in (3, 4):
                raise DegreeError(f"genus 1 model needs degree 3 or 4, got {d}")
            if F.is_zero(fp2_disc(g, F)):
                raise NotSquarefree("singular genus 1 model")
        else:
            g = fp_trim(self.g, F.p)
            d = len(g) - 1
            if d not in (3, 4):
                raise DegreeError(f"genus 1 model needs degree 3 or 4, got {d}")
            if fp_disc(g, F.p) == 0:
                raise NotSquarefree("singular genus 1 model")
        object.__setattr__(self, "g", g)

    @property
    def degree(self):
        return len(self.g) - 1


@dataclass(frozen=True)
class LPoly1:
    """1 - a*T + q*T^2 for a genus 1 curve over a field of size q."""

    a: int
    q: int

    def __post_init__(self):
        if self.a * self.a > 4 * self.q:
            raise HasseViolation(f"|{self.a}| > 2*sqrt({self.q})")


def count_points_naive(model: Genus1Model, limit: int = DEFAULT_NAIVE_LIMIT) -> int:
    """Points on the smooth projective model, by exhaustive character sums.

    Counts sum_x (1 + chi(g(x))) plus the points at infinity: one for a
    cubic; for a quartic, two if lc(g) is a square and none otherwise.
    """
    F = model.field
    if F.q > limit:
        raise FieldTooLarge(f"field size {F.q} exceeds the naive limit {limit}")
    if isinstance(F, Fp2):
        affine = kernels.count_affine_fp2(model.g, F.u0, F.u1, F.p)
    else:
        affine = kernels.count_affine_fp(model.g, F.p)
    if model.degree == 3:
        return affine + 1
    return affine + (2 if F.is_square(model.g[-1]) else 0)


def quartic_to_cubic(model: Genus1Model) -> Genus1Model:
    """Reverse a quartic with a root at 0 into a cubic with the same count.

    (x, y) -> (1/x, y/x^2) identifies the two smooth models away from the
    swapped places, and the swapped places pair up exactly, so the
    L-polynomials agree.
    """
    F = model.field
    if model.degree != 4:
        raise DegreeError("reversal expects a quartic")
    if not F.is_zero(model.g[0]):
        raise DegreeError("reversal expects g(0) = 0")
    # x^4 g(1/x): the vanishing constant term makes this a cubic
    return Genus1Model(F, tuple(reversed(model.g[1:])))


def quartic_jacobian(model: Genus1Model) -> Genus1Model:
    """Cubic model Y^2 = X^3 - 27I X - 27J from the classical quartic
    invariants I, J; the trace is preserved.

    Unsupported in characteristic 3, where the -27 coefficients collapse.
    """
    F = model.field
    if model.degree != 4:
        raise DegreeError("quartic invariants expect a quartic")
    if F.p == 3:
        raise Unsupported("quartic invariants degenerate in characteristic 3")
    e, d, c, b, a = model.g
    mul = F.mul
    i_inv = F.add(
        F.sub(F.smul(12, mul(a, e)), F.smul(3, mul(b, d))), mul(c, c)
    )
    j_inv = F.add(
        F.add(F.smul(72, mul(mul(a, c), e)), F.smul(9, mul(mul(b, c), d))),
        F.add(
            F.add(F.smul(-27, mul(a, mul(d, d))), F.smul(-27, mul(mul(b, b), e))),
            F.smul(-2, mul(c, mul(c, c))),
        ),
    )
    cubic = (F.smul(-27, j_inv), F.smul(-27, i_inv), F.zero, F.one)
    return Genus1Model(F, cubic)


# ---------------------------------------------------------------------------
# elliptic curve group arithmetic for BSGS (short Weierstrass, char > 3)
# ---------------------------------------------------------------------------


class _Curve:
    """y^2 = x^3 + Ax + B with affine points; None is the identity."""

    __slots__ = ("F", "A", "B")

    def __init__(self, F, A, B):
        self.F = F
        self.A = A
        self.B = B

    def neg(self, P):
        if P is None:
            return None
        return (P[0], self.F.neg(P[1]))

    def add(self, P, Q):
        F = self.F
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if F.is_zero(F.add(y1, y2)):
                return None
            num = F.add(F.smul(3, F.mul(x1, x1)), self.A)
            lam = F.mul(num, F.inv(F.smul(2, y1)))
        else:
            lam = F.mul(F.sub(y2, y1), F.inv(F.sub(x2, x1)))
        x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def mul(self, k, P):
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def random_point(self, rng):
        F = self.F
        while True:
            x = F.random(rng)
            rhs = F.add(F.mul(x, F.add(F.mul(x, x), self.A)), self.B)
            if F.is_zero(rhs):
                return (x, F.zero)
            if F.is_square(rhs):
                return (x, F.sqrt(rhs, rng))


def _to_short_weierstrass(model: Genus1Model):
    """Point-count-preserving change of a cubic model to y^2 = x^3 + Ax + B."""
    F = model.field
    if F.p == 3:
        raise Unsupported("short Weierstrass form needs characteristic > 3")
    c0, c1, c2, c3 = model.g
    # scale to a monic cubic: X = c3 x, Y = c3 y
    b2 = c2
    b1 = F.mul(c1, c3)
    b0 = F.mul(c0, F.mul(c3, c3))
    # depress: X -> X - b2/3
    inv3 = F.inv(F.from_int(3))
    t = F.mul(b2, inv3)
    A = F.sub(b1, F.mul(b2, t))
    B = F.add(F.sub(b0, F.mul(b1, t)), F.smul(2, F.mul(t, F.mul(t, t))))
    return A, B


def _multiples_in_interval(curve: _Curve, P, lo: int, hi: int):
    """The two smallest m in [lo, hi] with m*P = identity (the second may be
    None), by baby-step/giant-step over the interval.

    All such m are the multiples of ord(P) in the interval, so the smallest
    two are ord(P) apart; keeping only those bounds the memory even when the
    point order is tiny.
    """
    width = hi - lo + 1
    s = math.isqrt(width) + 1
    baby = {}
    Q = None
    for j in range(s):
        baby[Q] = j
        Q = curve.add(Q, P)
        if Q is None:
            # first return to the identity: ord(P) = j + 1, no search needed
            d = j + 1
            first = lo + (-lo) % d
            if first > hi:
                return None, None
            return first, first + d if first + d <= hi else None
    giant = Q  # s * P; ord(P) > s, so the baby points are distinct
    T = curve.mul(lo, P)
    first = second = None
    for i in range(width // s + 2):
        for m in (
            lo + i * s - baby[T] if T in baby else None,
            lo + i * s + baby[curve.neg(T)] if T is not None and curve.neg(T) in baby else None,
        ):
            if m is None or not lo <= m <= hi or m == first or m == second:
                continue
            if first is None or m < first:
                first, second = m, first
            elif second is None or m < second:
                second = m
        T = curve.add(T, giant)
    return first, second


def _crt_candidates(de, dt, target, lo, hi):
    """(count, smallest) for x in [lo, hi] with x = 0 (mod de) and
    x = target (mod dt); count never enumerates the solutions."""
    g = math.gcd(de, dt)
    if target % g:
        return 0, None
    l = de // g * dt
    # x = de * k with de*k = target mod dt
    dt_g = dt // g
    k0 = (target // g) * pow(de // g, -1, dt_g) % dt_g
    x0 = de * k0
    first = x0 + ((lo - x0 + l - 1) // l) * l
    if first > hi:
        return 0, None
    return (hi - first) // l + 1, first


def group_order_bsgs(model: Genus1Model, rng=None, max_points: int = 48) -> int:
    """#E(F_q) by interleaved order-finding on the curve and its twist.

    Random points on each side contribute their order (recovered from the
    multiples of the point killed inside the Hasse interval) to a pair of
    moduli; the order is pinned once a unique candidate N in the interval
    satisfies N = 0 mod d_E and 2q + 2 - N = 0 mod d_twist.  Uniqueness is
    guaranteed for the field sizes this is used at (q > 229).
    """
    if rng is None:
        rng = random.Random()
    F = model.field
    q = F.q
    if model.degree != 3:
        raise DegreeError("group order search expects a cubic model")
    A, B = _to_short_weierstrass(model)
    d = F.random_nonsquare(rng)
    d2 = F.mul(d, d)
    curves = (
        _Curve(F, A, B),
        _Curve(F, F.mul(A, d2), F.mul(B, F.mul(d2, d))),
    )
    t0 = math.isqrt(4 * q)
    lo, hi = q + 1 - t0, q + 1 + t0
    target = 2 * q + 2
    mods = [1, 1]
    for trial in range(max_points):
        side = trial % 2
        curve = curves[side]
        P = curve.random_point(rng)
        first, second = _multiples_in_interval(curve, P, lo, hi)
        if first is None:
            raise AmbiguousOrder("point order has no multiple in the interval")
        if second is None:
            return first if side == 0 else target - first
        order = second - first
        mods[side] = mods[side] * order // math.gcd(mods[side], order)
        count, smallest = _crt_candidates(mods[0], mods[1], target, lo, hi)
        if count == 1:
            return smallest
        if count == 0:
            raise AmbiguousOrder("inconsistent order residues")
    raise AmbiguousOrder(f"order not pinned after {max_points} points")


def lpoly1(
    model: Genus1Model,
    rng=None,
    naive_limit: int = DEFAULT_NAIVE_LIMIT,
    force_bsgs: bool = False,
) -> LPoly1:
    """Trace of Frobenius for the model, dispatching on field size.

    Exhaustive counting below naive_limit, otherwise BSGS on a cubic model;
    quartics reach the cubic by reversal when g(0) = 0 and through the
    quartic invariants otherwise.  force_bsgs reroutes small fields to BSGS
    for cross-checking.
    """
    F = model.field
    q = F.q
    if not force_bsgs and q <= naive_limit:
        n = count_points_naive(model, naive_limit)
    else:
        try:
            cubic = model
            if model.degree == 4:
                if F.is_zero(model.g[0]):
                    cubic = quartic_to_cubic(model)
                else:
                    cubic = quartic_jacobian(model)
            n = group_order_bsgs(cubic, rng)
        except (AmbiguousOrder, Unsupported):
            # characteristic 3 only reaches here under force_bsgs; those
            # fields sit far below the naive threshold anyway
            if q > DEFAULT_NAIVE_LIMIT:
                raise
            n = count_points_naive(model)
    return LPoly1(q + 1 - n, q)
