"""Fixed-precision arithmetic in Z_p.

Elements of ``Z/p^N`` stand in for p-adic integers known to ``N`` digits.
Residues are plain Python ints, so ``p**N`` never overflows.  Most of the
package works on raw residues for speed; :class:`PadicInt` is the scalar
type of the public API.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .exceptions import (
    MismatchError,
    NonUnit,
    NotASquare,
    PrecisionExhausted,
    UnsupportedPrime,
)

DEFAULT_PRECISION = 16


def is_prime(n: int) -> bool:
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


def vp(x: int, p: int, N: int) -> int | None:
    """Valuation of the residue ``x`` mod ``p**N``; None if it is 0 mod p**N."""
    x %= p**N
    if x == 0:
        return None
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


@functools.total_ordering
@dataclass(frozen=True)
class NormValue:
    """The p-adic absolute value ``p**-exponent``.

    ``exponent=None`` means the quantity is below precision, i.e. it cannot be
    told apart from zero.  Ordering follows the size of the norm, so
    ``NormValue(0) > NormValue(3) > NormValue(None)``.
    """

    exponent: int | None

    @classmethod
    def exact(cls, k: int) -> NormValue:
        return cls(k)

    @classmethod
    def below(cls) -> NormValue:
        return cls(None)

    @property
    def below_precision(self) -> bool:
        return self.exponent is None

    def _key(self):
        return float("-inf") if self.exponent is None else -self.exponent

    def __lt__(self, other: NormValue) -> bool:
        return self._key() < other._key()

    def __mul__(self, other: NormValue) -> NormValue:
        if self.exponent is None or other.exponent is None:
            return NormValue(None)
        return NormValue(self.exponent + other.exponent)

    def __str__(self):
        return "below_precision" if self.exponent is None else f"p^-{self.exponent}"

    def to_json(self):
        if self.exponent is None:
            return {"kind": "below_precision"}
        return {"kind": "exact", "k": self.exponent}


def norm_of_valuation(v: int | None) -> NormValue:
    return NormValue(v)


@dataclass(frozen=True)
class PadicInt:
    """A residue class mod ``prime**precision``."""

    prime: int
    precision: int
    residue: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def _coerce(self, other) -> int:
        if isinstance(other, PadicInt):
            if other.prime != self.prime or other.precision != self.precision:
                raise MismatchError(
                    f"Z/{self.prime}^{self.precision} vs Z/{other.prime}^{other.precision}"
                )
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, r: int) -> PadicInt:
        return PadicInt(self.prime, self.precision, r)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pow__(self, e: int):
        if e < 0:
            return inv_unit(self) ** (-e)
        return self._new(pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        if isinstance(other, PadicInt):
            return (self.prime, self.precision, self.residue) == (
                other.prime,
                other.precision,
                other.residue,
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.precision, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.prime}^{self.precision})"


def padic(x: int, p: int, N: int = DEFAULT_PRECISION) -> PadicInt:
    return PadicInt(p, N, x)


def valuation(x: PadicInt) -> int | None:
    """Largest k with p**k | x, or None when x is 0 mod p**N."""
    return vp(x.residue, x.prime, x.precision)


def norm(x: PadicInt) -> NormValue:
    return NormValue(valuation(x))


def arith(x: PadicInt, y: PadicInt | None, op: str) -> PadicInt:
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def inv_mod(x: int, p: int, N: int) -> int:
    if x % p == 0:
        raise NonUnit(f"{x} is not a unit mod {p}")
    return pow(x, -1, p**N)


def inv_unit(x: PadicInt) -> PadicInt:
    return x._new(inv_mod(x.residue, x.prime, x.precision))


def _require_odd(p: int):
    if p == 2:
        raise UnsupportedPrime("square classes are only handled for odd p")


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_square_mod(x: int, p: int, N: int) -> bool:
    _require_odd(p)
    v = vp(x, p, N)
    if v is None:
        raise PrecisionExhausted(f"{x} is 0 mod {p}^{N}")
    return v % 2 == 0 and legendre(x // p**v, p) == 1


def is_square(x: PadicInt) -> bool:
    return is_square_mod(x.residue, x.prime, x.precision)


def _root_mod_p(w: int, p: int) -> int:
    # p is small in this package, a linear scan is enough
    w %= p
    for r in range(1, p):
        if r * r % p == w:
            return r
    raise NotASquare(f"{w} is not a square mod {p}")


def _hensel_sqrt_unit(w: int, p: int, n: int) -> int:
    """Square root of the unit ``w`` mod ``p**n``; the smaller of +-y."""
    q = p**n
    y = _root_mod_p(w, p)
    # Newton iteration doubles the number of correct digits each round
    k = 1
    while k < n:
        k = min(2 * k, n)
        qk = p**k
        y = (y - (y * y - w) * pow(2 * y, -1, qk)) % qk
    y %= q
    assert (y * y - w) % q == 0
    return min(y, q - y)


def sqrt_mod(x: int, p: int, N: int) -> int:
    _require_odd(p)
    if not is_square_mod(x, p, N):
        raise NotASquare(f"{x} is not a square in Z_{p}")
    q = p**N
    x %= q
    v = vp(x, p, N)
    half = v // 2
    rest = N - v
    w = x // p**v
    y = _hensel_sqrt_unit(w % p**rest, p, rest)
    return (p**half * y) % q


def sqrt(x: PadicInt) -> PadicInt:
    """A canonical square root, found mod p and then Hensel lifted."""
    return x._new(sqrt_mod(x.residue, x.prime, x.precision))


@functools.lru_cache(maxsize=None)
def nonresidue_int(p: int) -> int:
    _require_odd(p)
    for u in range(2, p):
        if legendre(u, p) == -1:
            return u
    raise AssertionError("unreachable for odd p")


def nonresidue(p: int, N: int = DEFAULT_PRECISION) -> PadicInt:
    """Smallest positive quadratic non-residue, as a unit of Z/p^N."""
    return PadicInt(p, N, nonresidue_int(p))


def two_squares_mod(u: int, p: int, N: int) -> tuple[int, int]:
    _require_odd(p)
    if u % p == 0:
        raise NonUnit("two_squares needs a unit")
    q = p**N
    for x in range(p):
        r = (u - x * x) % p
        if r and legendre(r, p) == 1:
            y = sqrt_mod(u - x * x, p, N)
            assert (x * x + y * y - u) % q == 0
            return x, y
    raise AssertionError("every unit is a sum of two squares for odd p")


def two_squares(u: PadicInt) -> tuple[PadicInt, PadicInt]:
    """Write a unit as x**2 + y**2, lifting in the unit coordinate y."""
    x, y = two_squares_mod(u.residue, u.prime, u.precision)
    return u._new(x), u._new(y)
