"""Exact arithmetic over Z, F_p, F_{p^2} = F_p[z]/(ubar), and orders Z[z]/(u).

Elements of F_p are plain ints reduced to [0, p), with the modulus carried
alongside.  Elements of the quadratic extension and of the order are (c0, c1)
pairs of ints giving coordinates with respect to the basis {1, z}.
"""

from .errors import BadWitness, InexactDivision, NonResidue, NotOddPrime


def check_odd_prime_modulus(p):
    """Reject moduli that are structurally wrong (primality itself is trusted)."""
    if p < 3 or p % 2 == 0:
        raise NotOddPrime(f"modulus {p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    check_odd_prime_modulus(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int, s: int | None = None) -> int:
    """Square root of a mod p, by Tonelli-Shanks for p = 1 mod 4.

    Returns the smaller of the two roots, i.e. the representative in
    [0, (p-1)/2].  The witness s must be a quadratic nonresidue; it is only
    consumed when p = 1 mod 4 but is validated whenever supplied.
    """
    check_odd_prime_modulus(p)
    a %= p
    if s is not None:
        if legendre(s, p) != -1:
            raise BadWitness(f"{s} is not a nonsquare mod {p}")
    if a == 0:
        return 0
    if legendre(a, p) == -1:
        raise NonResidue(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        if s is None:
            raise BadWitness("a nonsquare witness is required when p = 1 mod 4")
        q, e = p - 1, 0
        while q % 2 == 0:
            q //= 2
            e += 1
        z = pow(s, q, p)  # generator of the 2-Sylow subgroup
        x = pow(a, (q + 1) // 2, p)
        b = pow(a, q, p)
        r = e
        while b != 1:
            m, t = 0, b
            while t != 1:
                t = t * t % p
                m += 1
            c = pow(z, 1 << (r - m - 1), p)
            x = x * c % p
            z = c * c % p
            b = b * z % p
            r = m
    return min(x, p - x)


def find_nonsquare(p: int, rng) -> int:
    """Random quadratic nonresidue mod p; Las Vegas, expected two draws."""
    check_odd_prime_modulus(p)
    while True:
        s = rng.randrange(1, p)
        if legendre(s, p) == -1:
            return s


class Fp:
    """Prime field context.  Elements are plain ints in [0, p)."""

    __slots__ = ("p", "q", "_nonsquare")

    def __init__(self, p: int):
        check_odd_prime_modulus(p)
        self.p = p
        self.q = p
        self._nonsquare = None

    def __repr__(self):
        return f"Fp({self.p})"

    def __eq__(self, other):
        return isinstance(other, Fp) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def sqr(self, a):
        return a * a % self.p

    def smul(self, n, a):
        return n * a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def frobenius(self, a):
        return a

    def is_square(self, a):
        return legendre(a, self.p) >= 0

    def sqrt(self, a, rng=None):
        s = None
        if self.p % 4 == 1:
            if self._nonsquare is None:
                if rng is None:
                    raise BadWitness("rng needed to find a nonsquare witness")
                self._nonsquare = find_nonsquare(self.p, rng)
            s = self._nonsquare
        return sqrt_mod_p(a, self.p, s)

    def random(self, rng):
        return rng.randrange(self.p)

    def random_nonsquare(self, rng):
        return find_nonsquare(self.p, rng)


class Fp2:
    """F_p[z]/(z^2 + u1*z + u0) with the modulus irreducible mod p.

    Elements are (c0, c1) tuples of ints in [0, p).  The Frobenius map swaps
    the two roots of the modulus: z -> -u1 - z.
    """

    __slots__ = ("p", "u0", "u1", "q", "_nonsquare")

    def __init__(self, p: int, u0: int, u1: int):
        check_odd_prime_modulus(p)
        u0 %= p
        u1 %= p
        if legendre((u1 * u1 - 4 * u0) % p, p) != -1:
            raise ValueError(f"z^2 + {u1}z + {u0} is reducible mod {p}")
        self.p = p
        self.u0 = u0
        self.u1 = u1
        self.q = p * p
        self._nonsquare = None

    def __repr__(self):
        return f"Fp2(p={self.p}, ubar=z^2+{self.u1}z+{self.u0})"

    def __eq__(self, other):
        return (
            isinstance(other, Fp2)
            and (other.p, other.u0, other.u1) == (self.p, self.u0, self.u1)
        )

    def __hash__(self):
        return hash(("Fp2", self.p, self.u0, self.u1))

    @property
    def zero(self):
        return (0, 0)

    @property
    def one(self):
        return (1, 0)

    @property
    def gen(self):
        return (0, 1)

    def from_int(self, n):
        return (n % self.p, 0)

    def is_zero(self, a):
        return a == (0, 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        p = self.p
        return (-a[0] % p, -a[1] % p)

    def mul(self, a, b):
        p = self.p
        t = a[1] * b[1]
        return (
            (a[0] * b[0] - self.u0 * t) % p,
            (a[0] * b[1] + a[1] * b[0] - self.u1 * t) % p,
        )

    def sqr(self, a):
        return self.mul(a, a)

    def smul(self, n, a):
        p = self.p
        return (n * a[0] % p, n * a[1] % p)

    def norm(self, a):
        """Norm to F_p: a * frobenius(a)."""
        c0, c1 = a
        return (c0 * c0 - self.u1 * c0 * c1 + self.u0 * c1 * c1) % self.p

    def frobenius(self, a):
        p = self.p
        return ((a[0] - self.u1 * a[1]) % p, -a[1] % p)

    def inv(self, a):
        n = self.norm(a)
        if n == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        ninv = pow(n, self.p - 2, self.p)
        c = self.frobenius(a)
        return (c[0] * ninv % self.p, c[1] * ninv % self.p)

    def pow(self, a, e):
        result = (1, 0)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_square(self, a):
        # chi_q(a) = chi_p(Norm(a)); 0 counts as a square here
        return legendre(self.norm(a), self.p) >= 0

    def sqrt(self, a, rng=None):
        """Square root in F_{p^2} via Tonelli-Shanks on the full group."""
        if a == (0, 0):
            return (0, 0)
        if legendre(self.norm(a), self.p) == -1:
            raise NonResidue(f"{a} is not a square in {self!r}")
        if self._nonsquare is None:
            if rng is None:
                raise BadWitness("rng needed to find a nonsquare witness")
            self._nonsquare = self.random_nonsquare(rng)
        q, e = self.q - 1, 0
        while q % 2 == 0:
            q //= 2
            e += 1
        z = self.pow(self._nonsquare, q)
        x = self.pow(a, (q + 1) // 2)
        b = self.pow(a, q)
        r = e
        while b != (1, 0):
            m, t = 0, b
            while t != (1, 0):
                t = self.mul(t, t)
                m += 1
            c = z
            for _ in range(r - m - 1):
                c = self.mul(c, c)
            x = self.mul(x, c)
            z = self.mul(c, c)
            b = self.mul(b, z)
            r = m
        return x

    def random(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def random_nonsquare(self, rng):
        while True:
            a = self.random(rng)
            if legendre(self.norm(a), self.p) == -1:
                return a


class QuadOrder:
    """The ring O = Z[z]/(z^2 + u1*z + u0), with residue field F_{p^2}.

    Requires the reduction of the modulus to be irreducible mod p, so that
    O/pO is the field kappa = F_p[z]/(ubar).  Elements are (a0, a1) pairs of
    arbitrary-precision ints.
    """

    __slots__ = ("u0", "u1", "p", "kappa")

    def __init__(self, u0: int, u1: int, p: int):
        self.kappa = Fp2(p, u0 % p, u1 % p)  # validates irreducibility mod p
        self.u0 = u0
        self.u1 = u1
        self.p = p

    def __repr__(self):
        return f"QuadOrder(z^2+{self.u1}z+{self.u0}, p={self.p})"

    @property
    def zero(self):
        return (0, 0)

    @property
    def one(self):
        return (1, 0)

    @property
    def gen(self):
        return (0, 1)

    def from_int(self, n):
        return (n, 0)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        t = a[1] * b[1]
        return (a[0] * b[0] - self.u0 * t, a[0] * b[1] + a[1] * b[0] - self.u1 * t)

    def smul(self, n, a):
        return (n * a[0], n * a[1])

    def conj(self, a):
        return (a[0] - self.u1 * a[1], -a[1])

    def exact_div_pk(self, a, k: int):
        """Divide both coordinates by p^k, insisting the division is exact."""
        d = self.p**k
        q0, r0 = divmod(a[0], d)
        q1, r1 = divmod(a[1], d)
        if r0 or r1:
            raise InexactDivision(f"{a} is not divisible by {self.p}^{k}")
        return (q0, q1)

    def reduce(self, a):
        """The reduction map onto kappa = O/pO."""
        return (a[0] % self.p, a[1] % self.p)

    def lift(self, abar):
        """Section of the reduction map using representatives in [0, p)."""
        return (abar[0] % self.p, abar[1] % self.p)
