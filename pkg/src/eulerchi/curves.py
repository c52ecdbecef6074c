"""Exact elliptic-curve arithmetic over Q and F_l.

Curves are integral Weierstrass models [a1, a2, a3, a4, a6]. Everything here
is exact big-integer / Fraction arithmetic: standard invariants, per-prime
minimal models (via the c4/c6 reconstruction), naive point counting over F_l,
a reduction-based bound on rational p-torsion, and the set of primes where
the j-invariant is non-integral.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime, primerange

from .errors import BadReduction, CutoffExceeded, EulerchiError

POINT_COUNT_CUTOFF = 10 ** 6


class ReductionType(str, enum.Enum):
    GOOD = "good"
    SPLIT = "split-multiplicative"
    NONSPLIT = "nonsplit-multiplicative"
    ADDITIVE = "additive"

    def is_multiplicative(self) -> bool:
        return self in (ReductionType.SPLIT, ReductionType.NONSPLIT)


@dataclass(frozen=True)
class CurveModel:
    """Integral Weierstrass model with cached standard invariants."""

    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @classmethod
    def from_ainvs(cls, label: str, ainvs) -> "CurveModel":
        if len(ainvs) != 5:
            raise EulerchiError(f"expected 5 a-invariants, got {len(ainvs)}")
        return cls(label, *(int(a) for a in ainvs))

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> int:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> int:
        return (self.a1 ** 2 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 ** 2 - self.a4 ** 2)

    @property
    def c4(self) -> int:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.discriminant)

    def __post_init__(self):
        if self.discriminant == 0:
            raise EulerchiError(f"{self.label}: singular model (discriminant 0)")
        assert 1728 * self.discriminant == self.c4 ** 3 - self.c6 ** 2

    def rst_transform(self, r: int, s: int, t: int) -> "CurveModel":
        """Coordinate change x -> x + r, y -> y + s*x + t (unimodular, u = 1)."""
        a1, a2, a3, a4, a6 = self.ainvs
        return CurveModel(
            self.label,
            a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
        )

    def scale(self, u: int) -> "CurveModel":
        """The model with a_i multiplied by u^i (inverse of dividing by u)."""
        a1, a2, a3, a4, a6 = self.ainvs
        return CurveModel(self.label, a1 * u, a2 * u ** 2, a3 * u ** 3,
                          a4 * u ** 4, a6 * u ** 6)


@dataclass(frozen=True)
class ArithmeticInputs:
    """Externally supplied invariants: rank, v_p(#Sha[p]), v_p(R_p).

    These are input data, not computed quantities; every field must say where
    it came from.
    """

    rank: int
    sha_p_valuation: int
    regulator_p_valuation: int
    provenance: str

    def __post_init__(self):
        if self.rank < 0 or self.sha_p_valuation < 0:
            raise EulerchiError("rank and Sha valuation must be non-negative")
        if not self.provenance.strip():
            raise EulerchiError("arithmetic inputs require a provenance string")


@dataclass(frozen=True)
class LocalData:
    """Per-prime reduction data for a minimal-at-l model."""

    prime: int
    reduction: ReductionType
    kodaira: str
    tamagawa: int
    a_l: int
    conductor_exponent: int
    point_count: int | None = None  # #E~(F_l), good reduction only

    def __post_init__(self):
        if self.reduction is ReductionType.GOOD and self.point_count is not None:
            assert self.point_count == self.prime + 1 - self.a_l


def valuation_int(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer (used pervasively by Tate's algorithm)."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- minimal models ----------------------------------------------------------

def curve_from_c4c6(c4: int, c6: int, label: str = "") -> CurveModel | None:
    """Reduced integral model with invariants (c4, c6), or None if none exists.

    Tries the twelve candidate values of b2 mod 12 and keeps the first that
    yields integral a-invariants reproducing (c4, c6) exactly (this encodes
    the Kraus conditions at 2 and 3 without casework).
    """
    if (c4 ** 3 - c6 ** 2) % 1728 != 0 or c4 ** 3 == c6 ** 2:
        return None
    for b2 in range(-5, 7):
        if (b2 * b2 - c4) % 24 != 0:
            continue
        b4 = (b2 * b2 - c4) // 24
        num = -b2 ** 3 + 36 * b2 * b4 - c6
        if num % 216 != 0:
            continue
        b6 = num // 216
        a1 = b2 % 2
        if (b2 - a1) % 4 != 0:
            continue
        a2 = (b2 - a1) // 4
        a3 = b6 % 2
        if (b6 - a3) % 4 != 0:
            continue
        a6 = (b6 - a3) // 4
        if (b4 - a1 * a3) % 2 != 0:
            continue
        a4 = (b4 - a1 * a3) // 2
        E = CurveModel(label, a1, a2, a3, a4, a6)
        if E.c4 == c4 and E.c6 == c6:
            return E
    return None


@lru_cache(maxsize=None)
def minimal_model_at(E: CurveModel, l: int) -> CurveModel:
    """A model of E that is minimal at l (v_l of the discriminant minimal).

    Repeatedly divides (c4, c6) by (l^4, l^6) while an integral model with the
    reduced invariants exists. Only valuations at l change.
    """
    while True:
        c4, c6, disc = E.c4, E.c6, E.discriminant
        if valuation_int(disc, l) < 12:
            return E
        if c4 != 0 and valuation_int(c4, l) < 4:
            return E
        if c6 != 0 and valuation_int(c6, l) < 6:
            return E
        reduced = curve_from_c4c6(c4 // l ** 4, c6 // l ** 6, E.label)
        if reduced is None:
            return E
        E = reduced


@lru_cache(maxsize=None)
def bad_primes(E: CurveModel) -> tuple[int, ...]:
    """Primes of bad reduction: support of the minimal discriminant."""
    out = []
    for l in sorted(factorint(abs(E.discriminant))):
        if valuation_int(minimal_model_at(E, l).discriminant, l) > 0:
            out.append(l)
    return tuple(out)


# -- point counting ----------------------------------------------------------

def _affine_count(E: CurveModel, l: int) -> int:
    a1, a2, a3, a4, a6 = E.ainvs
    if l == 2:
        return sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0
        )
    # number of y with y^2 + (a1 x + a3) y = f(x) equals the number of square
    # roots of the completed square d(x) = (a1 x + a3)^2 + 4 f(x)
    nroots = [0] * l
    nroots[0] = 1
    for z in range(1, (l + 1) // 2):
        nroots[z * z % l] = 2
    count = 0
    for x in range(l):
        fx = ((x * x + a2 * x + a4) * x + a6) % l
        h = (a1 * x + a3) % l
        count += nroots[(h * h + 4 * fx) % l]
    return count


@lru_cache(maxsize=None)
def count_points(E: CurveModel, l: int, cutoff: int = POINT_COUNT_CUTOFF) -> tuple[int, int]:
    """(#E~(F_l), a_l) for a prime of good reduction, by naive enumeration."""
    if not isprime(l):
        raise EulerchiError(f"{l} is not prime")
    if l > cutoff:
        raise CutoffExceeded(f"point counting at {l} exceeds cutoff {cutoff}")
    Em = minimal_model_at(E, l)
    if Em.discriminant % l == 0:
        raise BadReduction(f"{E.label} has bad reduction at {l}")
    count = _affine_count(Em, l) + 1
    a_l = l + 1 - count
    assert a_l * a_l <= 4 * l, f"Hasse bound violated at {l}: a_l = {a_l}"
    return count, a_l


def good_ordinary_at(E: CurveModel, p: int) -> bool:
    """Good reduction at p with a_p not divisible by p."""
    if minimal_model_at(E, p).discriminant % p == 0:
        return False
    _, a_p = count_points(E, p)
    return a_p % p != 0


def torsion_p_part(E: CurveModel, p: int) -> tuple[int, bool]:
    """Upper bound for v_p(#E(Q)[p]) from reductions at ten good primes.

    Torsion injects into E~(F_l) for good l not in {2, p}, so
    v_p(gcd of the counts) bounds v_p of the rational torsion order. The
    bound is certified exact when it is 0.
    """
    counts = []
    for l in primerange(3, 10 ** 4):
        if l == p or E.discriminant % l == 0:
            continue
        try:
            counts.append(count_points(E, l)[0])
        except BadReduction:
            continue
        if len(counts) == 10:
            break
    g = 0
    for c in counts:
        g = gcd(g, c)
    bound = valuation_int(g, p)
    return bound, bound == 0


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def j_nonintegral_primes(E: CurveModel) -> frozenset[int]:
    """Primes l with v_l(j) < 0, i.e. where E lacks potentially good reduction."""
    den = E.j_invariant.denominator
    if den == 1:
        return frozenset()
    return frozenset(factorint(den))
