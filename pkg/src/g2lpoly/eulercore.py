"""Degree-4 local L-polynomials of genus 2 curves at odd primes where the
Jacobian keeps good reduction.

Each reduction type descends into the inner clusters with substitutions
x -> p*x + r followed by exact division, until the reduced cubic becomes
separable; the genus 1 factors found there multiply out to the answer.
"""

import random
from dataclasses import dataclass

from .clusterclassify import ClusterType, PNormalized, p_normalize, which_type
from .errors import (
    BadWitness,
    DegreeError,
    HasseViolation,
    InexactDivision,
    NotAlmostGood,
    NotSquarefree,
)
from .genus1 import DEFAULT_NAIVE_LIMIT, Genus1Model, lpoly1
from .modarith import Fp, QuadOrder, find_nonsquare, legendre, sqrt_mod_p
from .polyring import (
    complete_square,
    deg,
    disc,
    fp_disc,
    fp_divmod,
    fp_gcd_k,
    fp_mul,
    fp_taylor_shift,
    fp2_disc,
    fp2_gcd_k,
    order_embed,
    order_reduce,
    order_shift_scale,
    reduce_mod,
    shift_scale,
    trim,
    vp,
)


@dataclass(frozen=True)
class LPoly2:
    """1 + a1*T + a2*T^2 + p*a1*T^3 + p^2*T^4."""

    a1: int
    a2: int
    p: int

    def coefficients(self):
        return (1, self.a1, self.a2, self.p * self.a1, self.p * self.p)


@dataclass
class EulerInput:
    """A curve y^2 + h(x) y = f(x) (h optional) and an odd prime p."""

    f: tuple
    p: int
    h: tuple | None = None
    nonsquare: int | None = None
    max_iters: int | None = None


@dataclass
class RunStats:
    """Loop-iteration diagnostics; counts equal the cluster depths."""

    cluster_type: ClusterType | None = None
    loop_iters: tuple = ()
    normalize_v: int = 0


def validate_lpoly2(lp: LPoly2) -> bool:
    """Weil/functional-equation gate: both quadratic factors of the quartic
    must have real trace of absolute value at most 2*sqrt(p)."""
    p, a1, a2 = lp.p, lp.a1, lp.a2
    if a1 * a1 > 16 * p:
        return False
    if abs(a2) > 6 * p:
        return False
    # traces s1, s2 solve s^2 + a1 s + (a2 - 2p) = 0
    if a1 * a1 - 4 * (a2 - 2 * p) < 0:
        return False
    c = 2 * p + a2  # c >= |2 a1| sqrt(p) puts both traces in [-2 sqrt p, 2 sqrt p]
    if c < 0 or c * c < 4 * a1 * a1 * p:
        return False
    return True


def _lp2_from_traces(t1: int, t2: int, p: int) -> LPoly2:
    return LPoly2(-(t1 + t2), t1 * t2 + 2 * p, p)


def _lp2_over_fp2(t: int, p: int) -> LPoly2:
    # L(E/F_{p^2}, T^2) = 1 - t T^2 + p^2 T^4
    return LPoly2(0, -t, p)


def _count_opts(kw):
    return {
        "rng": kw.get("rng"),
        "naive_limit": kw.get("naive_limit", DEFAULT_NAIVE_LIMIT),
        "force_bsgs": kw.get("force_bsgs", False),
    }


def _default_max_iters(ftilde, p):
    d = disc(ftilde)
    if d == 0:
        raise NotSquarefree("discriminant vanishes")
    return vp(d, p) + 1


def _descend_to_cubic(ftilde, r0: int, p: int, max_iters: int):
    """The recentering loop: substitute x -> p*x + r, divide by p^3, and stop
    when the reduced cubic is separable.  Returns (cubic mod p, iterations)."""
    f = ftilde
    r = r0
    for i in range(1, max_iters + 1):
        try:
            f = shift_scale(f, 1, r, 3, p)
        except InexactDivision as exc:
            raise NotAlmostGood("cluster descent hit an inexact division") from exc
        gbar = reduce_mod(f, p)
        if deg(gbar) != 3:
            raise NotAlmostGood("descent cubic lost its degree")
        if fp_disc(gbar, p) != 0:
            return gbar, i
        g3 = fp_gcd_k(gbar, 3, p)
        if deg(g3) != 1:
            raise NotAlmostGood("inseparable cubic without a triple root")
        r = (p - g3[0]) % p
    raise NotAlmostGood(f"descent exceeded {max_iters} iterations")


def euler_type1(nf: PNormalized, max_iters: int | None = None, **kw):
    """Type 1: one loose triple cluster.

    The separable quartic part of f mod p gives the first curve; the descent
    into the depth-n cluster gives the second.
    """
    p = nf.p
    ftilde = nf.ftilde()
    fbar = reduce_mod(ftilde, p)
    g = fp_gcd_k(fbar, 3, p)
    if deg(g) != 1:
        raise NotAlmostGood("type 1 needs a unique triple root")
    rbar = (p - g[0]) % p
    shifted = fp_taylor_shift(fbar, rbar, p)
    if len(shifted) != 7 or shifted[0] != 0 or shifted[1] != 0:
        raise NotAlmostGood("triple root fails to recenter")
    quartic = shifted[2:]
    if max_iters is None:
        max_iters = _default_max_iters(ftilde, p)
    opts = _count_opts(kw)
    try:
        e1 = Genus1Model(Fp(p), quartic)
    except (NotSquarefree, DegreeError) as exc:
        raise NotAlmostGood("type 1 quartic is singular") from exc
    l1 = lpoly1(e1, **opts)
    g2bar, iters = _descend_to_cubic(ftilde, rbar, p, max_iters)
    l2 = lpoly1(Genus1Model(Fp(p), g2bar), **opts)
    return _lp2_from_traces(l1.a, l2.a, p), RunStats(ClusterType.T1, (iters,), nf.v)


def euler_type2a(nf: PNormalized, s: int, max_iters: int | None = None, **kw):
    """Type 2a: two rational triple clusters, centers from the quadratic
    formula (s supplies the square root)."""
    p = nf.p
    if legendre(s, p) != -1:
        raise BadWitness(f"{s} is not a nonsquare mod {p}")
    ftilde = nf.ftilde()
    fbar = reduce_mod(ftilde, p)
    u = fp_gcd_k(fbar, 3, p)
    if deg(u) != 2:
        raise NotAlmostGood("type 2a needs a quadratic kernel")
    delta = fp_disc(u, p)
    if legendre(delta, p) != 1:
        raise NotAlmostGood("type 2a kernel must split over F_p")
    root = sqrt_mod_p(delta, p, s)
    inv2 = (p + 1) // 2
    u1 = u[1] * pow(u[2], p - 2, p) % p  # monic normalization
    r1 = (-u1 + root) * inv2 % p
    r2 = (-u1 - root) * inv2 % p
    if r1 > r2:
        r1, r2 = r2, r1  # smaller center first; the product is symmetric
    if max_iters is None:
        max_iters = _default_max_iters(ftilde, p)
    opts = _count_opts(kw)
    g1bar, it1 = _descend_to_cubic(ftilde, r1, p, max_iters)
    g2bar, it2 = _descend_to_cubic(ftilde, r2, p, max_iters)
    l1 = lpoly1(Genus1Model(Fp(p), g1bar), **opts)
    l2 = lpoly1(Genus1Model(Fp(p), g2bar), **opts)
    return (
        _lp2_from_traces(l1.a, l2.a, p),
        RunStats(ClusterType.T2A, (it1, it2), nf.v),
    )


def euler_type2b(
    nf: PNormalized,
    max_iters: int | None = None,
    use_conjugate: bool = False,
    **kw,
):
    """Type 2b: Frobenius-conjugate triple clusters.

    The descent runs over the order Z[z]/(u) with u the canonical lift of the
    irreducible quadratic kernel, starting from the center z (or its
    conjugate; both give the same answer).  The single curve lives over
    F_{p^2} and contributes 1 - a T^2 + p^2 T^4.
    """
    p = nf.p
    ftilde = nf.ftilde()
    fbar = reduce_mod(ftilde, p)
    u = fp_gcd_k(fbar, 3, p)
    if deg(u) != 2 or legendre(fp_disc(u, p), p) != -1:
        raise NotAlmostGood("type 2b needs an irreducible quadratic kernel")
    order = QuadOrder(u[0], u[1], p)
    kappa = order.kappa
    if max_iters is None:
        max_iters = _default_max_iters(ftilde, p)
    fhat = order_embed(ftilde, order)
    r = order.lift(kappa.frobenius(kappa.gen)) if use_conjugate else order.gen
    for i in range(1, max_iters + 1):
        try:
            fhat = order_shift_scale(fhat, r, 3, order)
        except InexactDivision as exc:
            raise NotAlmostGood("cluster descent hit an inexact division") from exc
        gbar = order_reduce(fhat, order)
        if len(gbar) - 1 != 3:
            raise NotAlmostGood("descent cubic lost its degree")
        if not kappa.is_zero(fp2_disc(gbar, kappa)):
            l1 = lpoly1(Genus1Model(kappa, gbar), **_count_opts(kw))
            return _lp2_over_fp2(l1.a, p), RunStats(ClusterType.T2B, (i,), nf.v)
        g3 = fp2_gcd_k(gbar, 3, kappa)
        if len(g3) - 1 != 1:
            raise NotAlmostGood("inseparable cubic without a triple root")
        r = order.lift(kappa.neg(g3[0]))
    raise NotAlmostGood(f"descent exceeded {max_iters} iterations")


def euler_type4(nf: PNormalized, max_iters: int | None = None, **kw):
    """Type 4: nested clusters under a quintuple root.

    The outer loop divides by p^5 while the five inner roots stay together;
    once only a triple cluster remains, its separable cofactor is the first
    curve and an ordinary depth-3 descent finds the second.
    """
    p = nf.p
    ftilde = nf.ftilde()
    fbar = reduce_mod(ftilde, p)
    g5 = fp_gcd_k(fbar, 5, p)
    if deg(g5) != 1:
        raise NotAlmostGood("type 4 needs a quintuple root")
    r = (p - g5[0]) % p
    if max_iters is None:
        max_iters = _default_max_iters(ftilde, p)
    opts = _count_opts(kw)
    sbar = None
    outer = 0
    for _ in range(max_iters):
        try:
            ftilde = shift_scale(ftilde, 1, r, 5, p)
        except InexactDivision as exc:
            raise NotAlmostGood("cluster descent hit an inexact division") from exc
        outer += 1
        fbar = reduce_mod(ftilde, p)
        if deg(fbar) != 5:
            raise NotAlmostGood("descent quintic lost its degree")
        g3 = fp_gcd_k(fbar, 3, p)
        if deg(g3) == 1:
            sbar = (p - g3[0]) % p
            break
        if deg(g3) != 3:
            raise NotAlmostGood(f"type 4 kernel of degree {deg(g3)}")
        g5 = fp_gcd_k(fbar, 5, p)
        if deg(g5) != 1:
            raise NotAlmostGood("quintuple root dissolved mid-descent")
        r = (p - g5[0]) % p
    if sbar is None:
        raise NotAlmostGood(f"descent exceeded {max_iters} iterations")
    square = fp_mul((p - sbar, 1), (p - sbar, 1), p)
    cubic, rem = fp_divmod(fbar, square, p)
    if rem or deg(cubic) != 3:
        raise NotAlmostGood("residual triple cluster has the wrong shape")
    try:
        e1 = Genus1Model(Fp(p), cubic)
    except NotSquarefree as exc:
        raise NotAlmostGood("type 4 cubic is singular") from exc
    l1 = lpoly1(e1, **opts)
    g2bar, inner = _descend_to_cubic(ftilde, sbar, p, max_iters)
    l2 = lpoly1(Genus1Model(Fp(p), g2bar), **opts)
    return (
        _lp2_from_traces(l1.a, l2.a, p),
        RunStats(ClusterType.T4, (outer, inner), nf.v),
    )


def euler_factor_with_stats(inp: EulerInput, rng=None, **kw):
    """euler_factor plus loop-iteration diagnostics."""
    if rng is None:
        rng = random.Random()
    p = inp.p
    f = trim(inp.f)
    if inp.h is not None and trim(inp.h):
        model = complete_square(f, trim(inp.h))
    else:
        model = f
        if deg(model) not in (5, 6):
            raise DegreeError(f"curve model must have degree 5 or 6, got {deg(model)}")
    nf = p_normalize(model, p)
    typ = which_type(nf)
    kw.setdefault("rng", rng)
    max_iters = inp.max_iters
    if typ is ClusterType.T1:
        lp, stats = euler_type1(nf, max_iters, **kw)
    elif typ is ClusterType.T2A:
        s = inp.nonsquare
        if s is None:
            s = find_nonsquare(p, rng)
        lp, stats = euler_type2a(nf, s, max_iters, **kw)
    elif typ is ClusterType.T2B:
        lp, stats = euler_type2b(nf, max_iters, **kw)
    else:
        lp, stats = euler_type4(nf, max_iters, **kw)
    if not validate_lpoly2(lp):
        raise HasseViolation(f"Weil bounds fail for {lp}")
    return lp, stats


def euler_factor(inp: EulerInput, rng=None, **kw) -> LPoly2:
    """The main entry point: normalize, classify, and dispatch.

    The nonsquare witness is only needed for type 2a; when absent it is
    drawn from rng (Las Vegas, output-identical to the deterministic path).
    GoodReduction propagates so batch callers can reroute those primes.
    """
    return euler_factor_with_stats(inp, rng, **kw)[0]
