"""Fixed-precision p-adic integers.

A value is the truncation of a p-adic expansion to K digits, stored
little-endian. Ring operations are exact modulo p**K; the order, min and
max are digitwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .order import Order, compare_vectors

DEFAULT_K = 32


class PrecisionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PadicInt:
    p: int
    K: int
    digits: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.K < 1:
            raise ValueError("precision K must be at least 1")
        digits = tuple(self.digits)
        if len(digits) != self.K:
            raise ValueError(f"expected {self.K} digits, got {len(digits)}")
        if any(not 0 <= d < self.p for d in digits):
            raise ValueError(f"digits must lie in 0..{self.p - 1}")
        object.__setattr__(self, "digits", digits)

    @property
    def modulus(self) -> int:
        return self.p ** self.K

    def to_int(self) -> int:
        """Residue in [0, p**K)."""
        v = 0
        for d in reversed(self.digits):
            v = v * self.p + d
        return v

    def to_signed(self) -> int:
        """Residue in [-(p**K)//2, p**K//2), handy for printing small negatives."""
        v = self.to_int()
        return v - self.modulus if v >= (self.modulus + 1) // 2 else v

    def __str__(self) -> str:
        return format_padic(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)


def from_int(n: int, p: int, K: int = DEFAULT_K) -> PadicInt:
    m = n % (p ** K)
    digits = []
    for _ in range(K):
        m, d = divmod(m, p)
        digits.append(d)
    return PadicInt(p, K, tuple(digits))


def from_digits(digits: Iterable[int], p: int, K: int = None) -> PadicInt:
    digits = tuple(digits)
    if K is None:
        K = len(digits)
    if len(digits) < K:
        digits = digits + (0,) * (K - len(digits))
    return PadicInt(p, K, digits)


def from_rational(q, p: int, K: int = DEFAULT_K) -> PadicInt:
    """Truncated expansion of a rational with denominator prime to p.

    Solves b*x = a (mod p**K); e.g. -1/3 at p=2 gives digits 1,0,1,0,...
    """
    q = Fraction(q)
    a, b = q.numerator, q.denominator
    if b % p == 0:
        raise ValueError(f"{q} is not a {p}-adic integer")
    mod = p ** K
    return from_int(a * pow(b, -1, mod), p, K)


def zero(p: int, K: int = DEFAULT_K) -> PadicInt:
    return PadicInt(p, K, (0,) * K)


def one(p: int, K: int = DEFAULT_K) -> PadicInt:
    return from_int(1, p, K)


def n_max(p: int, K: int = DEFAULT_K) -> PadicInt:
    """The all-(p-1) expansion, i.e. -1."""
    return PadicInt(p, K, (p - 1,) * K)


def _check(x: PadicInt, y: PadicInt):
    if (x.p, x.K) != (y.p, y.K):
        raise PrecisionMismatch(f"cannot combine p={x.p},K={x.K} with p={y.p},K={y.K}")


def add(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return from_int(x.to_int() + y.to_int(), x.p, x.K)


def sub(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return from_int(x.to_int() - y.to_int(), x.p, x.K)


def mul(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return from_int(x.to_int() * y.to_int(), x.p, x.K)


def neg(x: PadicInt) -> PadicInt:
    return from_int(-x.to_int(), x.p, x.K)


def is_unit(x: PadicInt) -> bool:
    return x.digits[0] != 0


def inverse(x: PadicInt) -> PadicInt:
    if not is_unit(x):
        raise ZeroDivisionError(f"{x} is not invertible mod {x.p}^{x.K}")
    return from_int(pow(x.to_int(), -1, x.modulus), x.p, x.K)


def divide(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return mul(x, inverse(y))


def leq(x: PadicInt, y: PadicInt) -> Order:
    _check(x, y)
    return compare_vectors(x.digits, y.digits)


def pmin(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return PadicInt(x.p, x.K, tuple(map(min, x.digits, y.digits)))


def pmax(x: PadicInt, y: PadicInt) -> PadicInt:
    _check(x, y)
    return PadicInt(x.p, x.K, tuple(map(max, x.digits, y.digits)))


def post_succ(x: PadicInt) -> PadicInt:
    return PadicInt(x.p, x.K, tuple((d + 1) % x.p for d in x.digits))


def complement(x: PadicInt) -> PadicInt:
    """N_max - x, computed digitwise (no borrows can occur)."""
    return PadicInt(x.p, x.K, tuple(x.p - 1 - d for d in x.digits))


@dataclass(frozen=True)
class PadicNormValue:
    value: Fraction
    saturated: bool = False


def valuation(x: PadicInt):
    """Index of the first nonzero digit, or None for the all-zero truncation."""
    for i, d in enumerate(x.digits):
        if d:
            return i
    return None


def norm(x: PadicInt) -> PadicNormValue:
    L = valuation(x)
    if L is None:
        return PadicNormValue(Fraction(0), True)
    return PadicNormValue(Fraction(1, x.p ** L))


def is_natural(x: PadicInt) -> bool:
    """Whether the truncation is read as an ordinary natural number:
    every digit above index K//2 is zero."""
    return all(d == 0 for d in x.digits[x.K // 2 + 1:])


def format_padic(x: PadicInt) -> str:
    return f"{x.p}:{x.K}:" + ",".join(map(str, x.digits))


def parse_padic(text: str, p: int = None, K: int = None) -> PadicInt:
    """Read "p:K:d0,d1,..." (missing high digits are zero).

    When p and K are given, a bare integer or rational like "-1/3" is also accepted.
    """
    text = text.strip()
    parts = text.split(":")
    if len(parts) == 3:
        pp, kk = int(parts[0]), int(parts[1])
        if (p is not None and p != pp) or (K is not None and K != kk):
            raise PrecisionMismatch(f"{text} does not match p={p}, K={K}")
        digits = [int(d) for d in parts[2].split(",") if d.strip()]
        if len(digits) > kk:
            raise ValueError(f"too many digits for K={kk}")
        return from_digits(digits, pp, kk)
    if p is None or K is None:
        raise ValueError(f"expected p:K:digits, got {text!r}")
    return from_rational(Fraction(text), p, K)
