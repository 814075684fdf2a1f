"""Prime-field arithmetic and evaluation-point selection.

Every code in this package works over GF(p) for a prime p. The construction
needs evaluation points whose ``mu``-th powers are pairwise distinct, which
is what :func:`select_modulus` and :func:`select_points` arrange.
"""

from dataclasses import dataclass
from math import gcd

# int64 accumulation stays exact for products below 2**48 summed a few
# thousand times; keep the modulus well under that.
MAX_MODULUS = 1 << 24


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n):
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def distinct_power_count(p, mu):
    """Number of distinct ``mu``-th powers taken by the nonzero residues mod p."""
    return (p - 1) // gcd(mu, p - 1)


def select_modulus(n_inner, mu, min_p=2):
    """Smallest usable prime for ``n_inner`` points with distinct ``mu``-th powers.

    When gcd(mu, p-1) = 1 the power map is a bijection of GF(p)* and any
    ``n_inner`` nonzero residues work. Otherwise (always the case for even
    ``mu`` and odd p) the scan continues until the image of the power map is
    large enough to hold ``n_inner`` distinct values.
    """
    if n_inner < 1 or mu < 1 or min_p < 2:
        raise ValueError("need n_inner >= 1, mu >= 1, min_p >= 2")
    # GF(2) has a single nonzero element and no room for the construction.
    p = next_prime(max(min_p, n_inner + 1, 3))
    while distinct_power_count(p, mu) < n_inner:
        p = next_prime(p + 1)
    return p


def select_points(p, count, mu):
    """Pick ``count`` nonzero residues of GF(p) with distinct ``mu``-th powers.

    Returns ``1..count`` when the power map is injective, otherwise scans
    ``1..p-1`` greedily keeping a residue iff its power is new.
    """
    if gcd(mu, p - 1) == 1 and p - 1 >= count:
        return tuple(range(1, count + 1))
    seen = set()
    points = []
    for x in range(1, p):
        y = pow(x, mu, p)
        if y not in seen:
            seen.add(y)
            points.append(x)
            if len(points) == count:
                return tuple(points)
    raise ValueError(
        f"GF({p}) has only {len(points)} residues with distinct {mu}-th powers, "
        f"{count} needed")


@dataclass(frozen=True)
class FieldSpec:
    """A prime modulus plus the evaluation points alpha_1..alpha_n."""

    modulus: int
    points: tuple
    mu: int = 1

    def __post_init__(self):
        p = self.modulus
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus {p} exceeds supported maximum {MAX_MODULUS}")
        object.__setattr__(self, "points", tuple(int(x) for x in self.points))
        if any(not 0 < x < p for x in self.points):
            raise ValueError("points must be nonzero residues")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")
        powers = [pow(x, self.mu, p) for x in self.points]
        if len(set(powers)) != len(powers):
            raise ValueError(f"{self.mu}-th powers of the points are not distinct")

    @classmethod
    def build(cls, count, mu, modulus=None, min_p=2):
        """Choose a modulus (unless pinned) and ``count`` admissible points."""
        if modulus is None:
            modulus = select_modulus(count, mu, min_p)
        elif not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        return cls(modulus, select_points(modulus, count, mu), mu)

    @property
    def p(self):
        return self.modulus

    def point(self, i):
        """alpha_i for a 1-based index."""
        return self.points[i - 1]

    def power(self, i, e):
        return pow(self.points[i - 1], e, self.modulus)

    # scalar arithmetic
    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def inv(self, a):
        return inv(a, self.modulus)

    def pow(self, a, e):
        return power(a, e, self.modulus)


def inv(a, p):
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def power(a, e, p):
    """Square-and-multiply exponentiation, ``a**e mod p``."""
    if e < 0:
        return power(inv(a, p), -e, p)
    result = 1
    a %= p
    while e:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result % p


def field_arith(a, b, op, p):
    if op == "add":
        return (a + b) % p
    if op == "sub":
        return (a - b) % p
    if op == "mul":
        return a * b % p
    if op == "inv":
        return inv(a, p)
    if op == "pow":
        return power(a, b, p)
    raise ValueError(f"unknown op {op!r}")
