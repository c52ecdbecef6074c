"""Fixed-precision p-adic arithmetic.

Numbers are stored as p^v * u with the unit part u kept modulo p^N, where N
is the number of significant p-adic digits the value actually carries.
Zero is represented by an infinite valuation (`INF`), not by a sentinel
exponent, so that a genuinely vanishing quantity stays distinguishable from
one that is merely small.

Only p >= 5 is supported; that is all the rest of the package needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EulerchiError, OrdinarityError

INF = math.inf


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision: p-adic digits and power-series truncation degree."""

    digits: int = 20
    series_degree: int = 64

    def __post_init__(self):
        if self.digits < 4:
            raise ValueError("need at least 4 p-adic digits")
        if self.series_degree < 2 * self.digits:
            raise ValueError("series truncation degree must be >= 2 * digits")


DEFAULT_PRECISION = PrecisionConfig()


def valuation(x, p: int):
    """p-adic valuation of an integer or Fraction; INF for x == 0."""
    if p < 5:
        raise ValueError("only primes p >= 5 are supported")
    if isinstance(x, Fraction):
        if x == 0:
            return INF
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    if x == 0:
        return INF
    x = abs(int(x))
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicNumber:
    """A p-adic number p^v * u known to N significant digits (u mod p^N)."""

    p: int
    v: int | float  # INF marks zero
    unit: int       # in [1, p^N), coprime to p; 0 iff the value is zero
    N: int

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, N: int = DEFAULT_PRECISION.digits) -> "PadicNumber":
        return cls(p, INF, 0, N)

    @classmethod
    def one(cls, p: int, N: int = DEFAULT_PRECISION.digits) -> "PadicNumber":
        return cls(p, 0, 1, N)

    @classmethod
    def from_rational(cls, x, p: int, N: int = DEFAULT_PRECISION.digits) -> "PadicNumber":
        """Exact embedding of an integer or Fraction, to N digits."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        v = valuation(x, p)
        num = x.numerator
        den = x.denominator
        vnum = valuation(num, p)
        if vnum is not INF and vnum > 0:
            num //= p ** vnum
        vden = valuation(den, p)
        if vden > 0:
            den //= p ** vden
        m = p ** N
        u = (num % m) * pow(den, -1, m) % m
        return cls(p, v, u, N)

    def __post_init__(self):
        if self.v is INF:
            if self.unit != 0:
                raise ValueError("zero must have unit part 0")
        else:
            if self.unit % self.p == 0:
                raise ValueError("unit part must be coprime to p")

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return self.v is INF

    def is_unit(self) -> bool:
        return self.v == 0

    def norm(self) -> Fraction:
        """|x|_p = p^(-v); 0 for the zero value."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(1, self.p ** self.v) if self.v >= 0 else Fraction(self.p ** (-self.v))

    def unit_residue(self, digits: int) -> int:
        """The unit part modulo p^digits (digits <= N)."""
        if digits > self.N:
            raise EulerchiError(f"requested {digits} digits, only {self.N} carried")
        return self.unit % self.p ** digits

    def lift(self) -> int:
        """Integer representative p^v * u for values with v >= 0."""
        if self.is_zero():
            return 0
        if self.v < 0:
            raise EulerchiError("no integer lift: negative valuation")
        return self.p ** self.v * self.unit

    def congruent_to(self, other: "PadicNumber", digits: int | None = None) -> bool:
        """Equality of valuations and of unit parts to the given digit count."""
        if self.p != other.p:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.v != other.v:
            return False
        k = min(self.N, other.N) if digits is None else digits
        return self.unit_residue(k) == other.unit_residue(k)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "PadicNumber"):
        if not isinstance(other, PadicNumber):
            raise TypeError(f"cannot combine PadicNumber with {type(other).__name__}")
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return PadicNumber.zero(self.p, min(self.N, other.N))
        N = min(self.N, other.N)
        u = self.unit * other.unit % self.p ** N
        return PadicNumber(self.p, self.v + other.v, u, N)

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        m = min(self.v, other.v)
        # digits to which the shifted sum is known
        K = min(self.N + self.v - m, other.N + other.v - m)
        mod = self.p ** K
        s = (self.p ** (self.v - m) * self.unit + self.p ** (other.v - m) * other.unit) % mod
        if s == 0:
            # cancellation below working precision: exact zero as far as we know
            return PadicNumber.zero(self.p, K)
        t = valuation(s, self.p)
        if t >= K:
            return PadicNumber.zero(self.p, K)
        return PadicNumber(self.p, m + t, (s // self.p ** t) % self.p ** (K - t), K - t)

    def __neg__(self) -> "PadicNumber":
        if self.is_zero():
            return self
        return PadicNumber(self.p, self.v, (-self.unit) % self.p ** self.N, self.N)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def invert(self) -> "PadicNumber":
        if self.is_zero():
            raise ZeroDivisionError("p-adic division by zero")
        m = self.p ** self.N
        return PadicNumber(self.p, -self.v, pow(self.unit, -1, m), self.N)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        self._check_compatible(other)
        return self * other.invert()

    def __pow__(self, k: int) -> "PadicNumber":
        if k < 0:
            return self.invert() ** (-k)
        if self.is_zero():
            return PadicNumber.zero(self.p, self.N) if k else PadicNumber.one(self.p, self.N)
        u = pow(self.unit, k, self.p ** self.N)
        return PadicNumber(self.p, self.v * k, u, self.N)

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.N}+)"
        return f"{self.p}^{self.v}*{self.unit} (mod {self.p}^{self.N})"


def teichmuller(l: int, p: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> PadicNumber:
    """Teichmueller lift: the unique (p-1)-st root of unity congruent to l mod p.

    Computed by iterating x -> x^p, which gains one digit per step.
    """
    if l % p == 0:
        raise EulerchiError(f"{l} is divisible by {p}: no Teichmueller lift")
    N = cfg.digits
    m = p ** N
    x = l % m
    for _ in range(N + 1):
        nxt = pow(x, p, m)
        if nxt == x:
            break
        x = nxt
    assert pow(x, p, m) == x, "Teichmueller iteration failed to converge"
    return PadicNumber(p, 0, x, N)


def padic_log(x: PadicNumber) -> PadicNumber:
    """p-adic logarithm of x with x = 1 mod p, via sum (-1)^(k+1) (x-1)^k / k.

    log(xy) = log(x) + log(y) holds to working precision on 1 + pZp.
    """
    p, N = x.p, x.N
    if x.is_zero() or x.v != 0 or x.unit % p != 1:
        raise EulerchiError("padic_log requires x = 1 mod p")
    t0 = (x.unit - 1) % p ** N
    if t0 == 0:
        return PadicNumber.zero(p, N)
    vt = valuation(t0, p)
    # k terms, each with v(t^k/k) >= k*vt - log_p(k); a few guard digits cover
    # the k! style denominators
    kmax = 1
    while kmax * vt - math.floor(math.log(kmax, p)) < N + 1:
        kmax += 1
    guard = math.ceil(math.log(kmax, p)) + 2
    W = N + guard
    mod = p ** W
    t = t0 % mod
    acc = 0
    power = 1
    for k in range(1, kmax + 1):
        power = power * t % mod
        e = valuation(k, p)
        kk = k // p ** e
        term = power // p ** e * pow(kk, -1, mod) % mod
        acc = (acc - term if k % 2 == 0 else acc + term) % mod
    acc %= p ** N
    if acc == 0:
        return PadicNumber.zero(p, N)
    v = valuation(acc, p)
    return PadicNumber(p, v, (acc // p ** v) % p ** (N - v), N - v)


def unit_frobenius_root(a_p: int, p: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> PadicNumber:
    """The unit root of X^2 - a_p X + p, by Hensel lifting from X = a_p mod p.

    Exists exactly when p does not divide a_p (the ordinary case).
    """
    if a_p % p == 0:
        raise OrdinarityError(f"a_p = {a_p} is divisible by {p}: no unit root")
    N = cfg.digits
    m = p ** N
    x = a_p % p
    for _ in range(N.bit_length() + 2):
        fx = (x * x - a_p * x + p) % m
        dfx = (2 * x - a_p) % m
        x = (x - fx * pow(dfx, -1, m)) % m
    assert (x * x - a_p * x + p) % m == 0, "Hensel iteration failed"
    assert x % p != 0
    return PadicNumber(p, 0, x, N)
