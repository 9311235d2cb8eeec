"""Dense polynomial arithmetic of degree <= 6 over Z, F_p, F_{p^2}, and orders.

Polynomials are little-endian coefficient tuples with no trailing zeros:
index i holds the coefficient of x^i, and the zero polynomial is ().  Over
F_{p^2} and over an order the coefficients are (c0, c1) pairs.
"""

from itertools import product as _cartesian

from .errors import DegreeError, InexactDivision, NotSquarefree
from .modarith import Fp2, QuadOrder

# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def deg(f) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


def poly_add(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim(a + b for a, b in zip(f, g))


def poly_sub(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim(a - b for a, b in zip(f, g))


def poly_mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def poly_scale(f, c):
    if c == 0:
        return ()
    return tuple(a * c for a in f)


def poly_eval(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_derivative(f):
    return trim(i * c for i, c in enumerate(f) if i >= 1)


def taylor_shift(f, r):
    """f(x + r), by Horner in the shifted variable."""
    acc = ()
    for c in reversed(f):
        shifted = (0,) + acc  # x * acc
        acc = poly_add(shifted, poly_add(poly_scale(acc, r), (c,)))
    return acc


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def min_vp(f, p: int) -> int:
    """Minimum p-adic valuation over the nonzero coefficients."""
    return min(vp(c, p) for c in f if c != 0)


def poly_divide_exact_pk(f, p: int, k: int):
    """f / p^k with every coefficient division checked."""
    if k == 0:
        return tuple(f)
    d = p**k
    out = []
    for c in f:
        q, r = divmod(c, d)
        if r:
            raise InexactDivision(f"coefficient {c} not divisible by {p}^{k}")
        out.append(q)
    return trim(out)


def shift_scale(f, e: int, r: int, k: int, p: int):
    """f(p^e x + r) / p^k, with the division verified coefficient-wise."""
    g = taylor_shift(f, r) if r else tuple(f)
    if e:
        pe = p**e
        g = tuple(c * pe**i for i, c in enumerate(g))
    return poly_divide_exact_pk(g, p, k)


def reduce_mod(f, p: int):
    """Reduction Z[x] -> F_p[x]; the degree may drop."""
    return trim(c % p for c in f)


def lift(fbar):
    """Lift F_p[x] -> Z[x] using the representatives already stored."""
    return tuple(fbar)


def reverse6(f):
    """x^6 * f(1/x) for f of degree 5: trades the root at infinity for 0."""
    if deg(f) != 5:
        raise DegreeError("reversal expects a quintic")
    return trim((0,) + tuple(reversed(f)))


def complete_square(f, h):
    """4f + h^2: the curve y^2 + h(x)y = f(x) rewritten as Y^2 = 4f + h^2.

    Away from 2 the two models are isomorphic, so every odd-p Euler factor
    is preserved.  The result must be a squarefree sextic or quintic.
    """
    F = poly_add(poly_scale(f, 4), poly_mul(h, h))
    if deg(F) not in (5, 6):
        raise DegreeError(f"4f + h^2 has degree {deg(F)}, need 5 or 6")
    if disc(F) == 0:
        raise NotSquarefree("4f + h^2 has a repeated root")
    return F


# ---------------------------------------------------------------------------
# discriminants
# ---------------------------------------------------------------------------

_SIGN = {2: -1, 3: -1, 4: 1, 5: 1, 6: -1}  # (-1)^(d(d-1)/2)


def _disc_closed(f):
    d = deg(f)
    if d == 2:
        c, b, a = f
        return b * b - 4 * a * c
    if d == 3:
        d0, c, b, a = f
        return (
            18 * a * b * c * d0
            - 4 * b**3 * d0
            + b * b * c * c
            - 4 * a * c**3
            - 27 * a * a * d0 * d0
        )
    # d == 4
    e, d0, c, b, a = f
    return (
        256 * a**3 * e**3
        - 192 * a * a * b * d0 * e * e
        - 128 * a * a * c * c * e * e
        + 144 * a * a * c * d0 * d0 * e
        - 27 * a * a * d0**4
        + 144 * a * b * b * c * e * e
        - 6 * a * b * b * d0 * d0 * e
        - 80 * a * b * c * c * d0 * e
        + 18 * a * b * c * d0**3
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d0 * d0
        - 27 * b**4 * e * e
        + 18 * b**3 * c * d0 * e
        - 4 * b**3 * d0**3
        - 4 * b * b * c**3 * e
        + b * b * c * c * d0 * d0
    )


def _bareiss_det(m):
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = len(m)
    m = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _sylvester_resultant(f, g):
    """Res(f, g) over Z via the Sylvester determinant."""
    m, n = deg(f), deg(g)
    size = m + n
    fb = list(reversed(f))
    gb = list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([0] * i + fb + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gb + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def disc(f):
    """Discriminant of an integer polynomial of degree 2..6.

    Closed forms for degrees 2-4, Sylvester resultant for 5-6; both carry
    the conventional sign (-1)^(d(d-1)/2) Res(f, f')/lc(f).
    """
    d = deg(f)
    if d not in (2, 3, 4, 5, 6):
        raise DegreeError(f"discriminant needs degree 2..6, got {d}")
    if d <= 4:
        return _disc_closed(f)
    res = _sylvester_resultant(f, poly_derivative(f))
    q, r = divmod(_SIGN[d] * res, f[-1])
    assert r == 0, "Res(f, f') is always divisible by lc(f)"
    return q


def fp_disc(fbar, p: int):
    """Discriminant over F_p: the integer formula commutes with reduction."""
    return disc(fbar) % p


# ---------------------------------------------------------------------------
# F_p polynomials (int coefficients in [0, p))
# ---------------------------------------------------------------------------


def fp_trim(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def fp_add(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return fp_trim([a + b for a, b in zip(f, g)], p)


def fp_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return fp_trim(out, p)


def fp_scale(f, c, p):
    c %= p
    if c == 0:
        return ()
    return tuple(a * c % p for a in f)


def fp_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def fp_derivative(f, p):
    return fp_trim([i * c for i, c in enumerate(f) if i >= 1], p)


def fp_monic(f, p):
    if not f:
        return ()
    inv = pow(f[-1], p - 2, p)
    return tuple(c * inv % p for c in f)


def fp_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = deg(g)
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lead % p
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return trim(q), tuple(f)


def fp_gcd(f, g, p):
    """Monic gcd over F_p."""
    f, g = fp_trim(f, p), fp_trim(g, p)
    while g:
        f, g = g, fp_divmod(f, g, p)[1]
    return fp_monic(f, p)


def fp_taylor_shift(f, r, p):
    acc = ()
    for c in reversed(f):
        shifted = (0,) + acc
        acc = fp_add(shifted, fp_add(fp_scale(acc, r, p), (c % p,), p), p)
    return acc


def _fp_irreducibles(d, p):
    """Monic irreducible polynomials of degree d over F_p, d <= 3 (root test)."""
    assert d <= 3, "irreducibility by root-testing only holds through degree 3"
    for tail in _cartesian(range(p), repeat=d):
        g = tail + (1,)
        if d == 1 or all(fp_eval(g, x, p) for x in range(p)):
            yield g


def _fp_multiplicity(f, g, p):
    v = 0
    while True:
        q, r = fp_divmod(f, g, p)
        if r:
            return v, f
        v += 1
        f = q


def _fp_gcd_k_exhaustive(f, k, p):
    """gcd_k by direct divisibility tests; the oracle route, any p."""
    out = (1,)
    d = deg(f)
    for gdeg in range(1, d // k + 1):
        for g in _fp_irreducibles(gdeg, p):
            v, _ = _fp_multiplicity(f, g, p)
            if v >= k:
                for _ in range(v - k + 1):
                    out = fp_mul(out, g, p)
    return out


def fp_gcd_k(f, k: int, p: int):
    """The multiplicity-k kernel: product of g^(v_g(f)-k+1) over monic
    irreducible g with g^k | f, returned monic.

    Uses gcd(f, f', ..., f^(k-1)) when p > deg f; for p <= deg f the
    derivative trick fails and divisibility is tested exhaustively.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    f = fp_trim(f, p)
    if not f:
        raise ValueError("gcd_k of the zero polynomial")
    d = deg(f)
    if k == 1:
        return fp_monic(f, p)
    if k > d:
        return (1,)
    if p <= d:
        return _fp_gcd_k_exhaustive(f, k, p)
    g = f
    h = f
    for _ in range(k - 1):
        h = fp_derivative(h, p)
        g = fp_gcd(g, h, p)
    return g


def fp_squarefree_part(f, p: int):
    """Distinct irreducible factors times the leading coefficient."""
    f = fp_trim(f, p)
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    d = deg(f)
    if d <= 0:
        return f
    if p > d:
        g = fp_gcd(f, fp_derivative(f, p), p)
        q, r = fp_divmod(f, g, p)
        assert not r
        return q
    # small characteristic: strip repeated factors directly (they have
    # degree <= d // 2, so the root test suffices)
    out = f
    for gdeg in range(1, d // 2 + 1):
        for g in _fp_irreducibles(gdeg, p):
            v, _ = _fp_multiplicity(out, g, p)
            for _ in range(v - 1):
                out, r = fp_divmod(out, g, p)
                assert not r
    return out


def fp_is_squarefree(f, p: int) -> bool:
    return deg(fp_gcd(f, fp_derivative(f, p), p)) == 0


# ---------------------------------------------------------------------------
# F_{p^2} polynomials (coefficients are (c0, c1) pairs; field object passed in)
# ---------------------------------------------------------------------------


def fp2_trim(f, F: Fp2):
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return tuple(f)


def fp2_add(f, g, F: Fp2):
    n = max(len(f), len(g))
    f = list(f) + [F.zero] * (n - len(f))
    g = list(g) + [F.zero] * (n - len(g))
    return fp2_trim([F.add(a, b) for a, b in zip(f, g)], F)


def fp2_mul(f, g, F: Fp2):
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return fp2_trim(out, F)


def fp2_scale(f, c, F: Fp2):
    if F.is_zero(c):
        return ()
    return tuple(F.mul(a, c) for a in f)


def fp2_eval(f, x, F: Fp2):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def fp2_derivative(f, F: Fp2):
    return fp2_trim([F.smul(i, c) for i, c in enumerate(f) if i >= 1], F)


def fp2_monic(f, F: Fp2):
    if not f:
        return ()
    inv = F.inv(f[-1])
    return tuple(F.mul(c, inv) for c in f)


def fp2_divmod(f, g, F: Fp2):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = F.mul(f[-1], inv_lead)
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = F.sub(f[k + i], F.mul(c, b))
        while f and F.is_zero(f[-1]):
            f.pop()
    return fp2_trim(q, F), tuple(f)


def fp2_gcd(f, g, F: Fp2):
    f, g = fp2_trim(f, F), fp2_trim(g, F)
    while g:
        f, g = g, fp2_divmod(f, g, F)[1]
    return fp2_monic(f, F)


def fp2_from_fp(fbar, F: Fp2):
    """Embed an F_p[x] polynomial into F_{p^2}[x]."""
    return tuple(F.from_int(c) for c in fbar)


def _fp2_elements(F: Fp2):
    for c1 in range(F.p):
        for c0 in range(F.p):
            yield (c0, c1)


def _fp2_irreducibles(d, F: Fp2):
    assert d <= 3
    for tail in _cartesian(list(_fp2_elements(F)), repeat=d):
        g = tail + (F.one,)
        if d == 1 or all(
            not F.is_zero(fp2_eval(g, x, F)) for x in _fp2_elements(F)
        ):
            yield g


def _fp2_multiplicity(f, g, F):
    v = 0
    while True:
        q, r = fp2_divmod(f, g, F)
        if r:
            return v
        v += 1
        f = q


def fp2_gcd_k(f, k: int, F: Fp2):
    """gcd_k over F_{p^2}; same contract and branch structure as fp_gcd_k."""
    if k <= 0:
        raise ValueError("k must be positive")
    f = fp2_trim(f, F)
    if not f:
        raise ValueError("gcd_k of the zero polynomial")
    d = len(f) - 1
    if k == 1:
        return fp2_monic(f, F)
    if k > d:
        return (F.one,)
    if F.p <= d:
        out = (F.one,)
        for gdeg in range(1, d // k + 1):
            for g in _fp2_irreducibles(gdeg, F):
                v = _fp2_multiplicity(f, g, F)
                if v >= k:
                    for _ in range(v - k + 1):
                        out = fp2_mul(out, g, F)
        return out
    g = f
    h = f
    for _ in range(k - 1):
        h = fp2_derivative(h, F)
        g = fp2_gcd(g, h, F)
    return g


def fp2_disc(g, F: Fp2):
    """Discriminant over F_{p^2}, degrees 2-4 (all the pipeline needs)."""
    d = len(fp2_trim(g, F)) - 1
    if d not in (2, 3, 4):
        raise DegreeError(f"F_p^2 discriminant supports degree 2..4, got {d}")
    mul, sub, smul = F.mul, F.sub, F.smul
    if d == 2:
        c, b, a = g
        return sub(mul(b, b), smul(4, mul(a, c)))
    if d == 3:
        d0, c, b, a = g
        t1 = smul(18, mul(mul(a, b), mul(c, d0)))
        t2 = smul(4, mul(mul(b, b), mul(b, d0)))
        t3 = mul(mul(b, b), mul(c, c))
        t4 = smul(4, mul(a, mul(c, mul(c, c))))
        t5 = smul(27, mul(mul(a, a), mul(d0, d0)))
        return sub(sub(F.add(sub(t1, t2), t3), t4), t5)
    e, d0, c, b, a = g
    a2, b2, c2, d2, e2 = mul(a, a), mul(b, b), mul(c, c), mul(d0, d0), mul(e, e)
    terms = [
        smul(256, mul(mul(a2, a), mul(e2, e))),
        smul(-192, mul(mul(a2, b), mul(d0, e2))),
        smul(-128, mul(mul(a2, c2), e2)),
        smul(144, mul(mul(a2, c), mul(d2, e))),
        smul(-27, mul(a2, mul(d2, d2))),
        smul(144, mul(mul(a, b2), mul(c, e2))),
        smul(-6, mul(mul(a, b2), mul(d2, e))),
        smul(-80, mul(mul(a, b), mul(mul(c2, d0), e))),
        smul(18, mul(mul(a, b), mul(c, mul(d0, d2)))),
        smul(16, mul(a, mul(mul(c2, c2), e))),
        smul(-4, mul(a, mul(mul(c2, c), d2))),
        smul(-27, mul(mul(b2, b2), e2)),
        smul(18, mul(mul(b2, b), mul(c, mul(d0, e)))),
        smul(-4, mul(mul(b2, b), mul(d0, d2))),
        smul(-4, mul(b2, mul(mul(c2, c), e))),
        mul(b2, mul(c2, d2)),
    ]
    acc = F.zero
    for t in terms:
        acc = F.add(acc, t)
    return acc


def fp2_is_squarefree(g, F: Fp2) -> bool:
    return len(fp2_gcd(g, fp2_derivative(g, F), F)) - 1 == 0


# ---------------------------------------------------------------------------
# polynomials over a quadratic order (coefficients are big-int pairs)
# ---------------------------------------------------------------------------


def order_embed(f, order: QuadOrder):
    """Embed Z[x] into O[x]."""
    return tuple((c, 0) for c in f)


def order_poly_mul(f, g, order: QuadOrder):
    if not f or not g:
        return ()
    out = [(0, 0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = order.add(out[i + j], order.mul(a, b))
    return tuple(out)


def order_poly_conj(f, order: QuadOrder):
    return tuple(order.conj(c) for c in f)


def order_shift_scale(f, r, k: int, order: QuadOrder):
    """f(p x + r) / p^k over O, divisions checked coordinate-wise."""
    p = order.p
    acc = []
    for c in reversed(f):
        shifted = [(0, 0)] + [order.smul(p, a) for a in acc]
        racc = [order.mul(a, r) for a in acc] + [(0, 0)]
        acc = [order.add(x, y) for x, y in zip(shifted, racc)]
        acc[0] = order.add(acc[0], c)
    return tuple(order.exact_div_pk(c, k) for c in acc)


def order_reduce(f, order: QuadOrder):
    """Reduce O[x] -> kappa[x]; the degree may drop."""
    return fp2_trim([order.reduce(c) for c in f], order.kappa)
