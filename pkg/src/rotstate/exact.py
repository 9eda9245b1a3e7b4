"""Exact real numbers built from square roots of rationals.

Two representations live here:

``SignedSqrtRational``
    a single value ``sign * sqrt(radicand)``.  Wigner symbols take values of
    this form, so it is the codomain of everything in :mod:`rotstate.wigner`.

``Surd``
    a finite sum ``sum_r c_r * sqrt(r)`` with rational ``c_r`` and distinct
    squarefree integers ``r``.  This is the field Q(sqrt 2, sqrt 3, ...) and
    is closed under +, -, *, /.  Square roots of distinct squarefree integers
    are linearly independent over Q, so the canonical form decides equality
    exactly; the sign of a nonzero element is decided exactly by recursive
    elimination of one prime at a time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["SignedSqrtRational", "Surd", "as_surd", "split_square"]

_SMALL_PRIMES: list[int] = []


def _small_primes(limit: int = 1000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _SMALL_PRIMES.extend(i for i, flag in enumerate(sieve) if flag)
    return _SMALL_PRIMES


@lru_cache(maxsize=65536)
def split_square(n: int) -> tuple[int, int]:
    """Return ``(k, r)`` with ``n == k*k*r`` and ``r`` squarefree."""
    if n < 0:
        raise ValueError("split_square needs a non-negative integer")
    if n == 0:
        return 0, 1
    k, r = 1, 1
    rest = n
    for p in _small_primes():
        if p * p > rest:
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                r *= p
    if rest > 1:
        s = math.isqrt(rest)
        if s * s == rest:
            k *= s
        elif rest < _small_primes()[-1] ** 2:
            r *= rest
        else:
            # cofactor with large prime factors; rare for the arguments used here
            from sympy import factorint

            for p, e in factorint(rest).items():
                k *= p ** (e // 2)
                if e % 2:
                    r *= p
    return k, r


def _smallest_prime_factor(n: int) -> int:
    for p in _small_primes():
        if p * p > n:
            return n
        if n % p == 0:
            return p
    from sympy import factorint

    return min(factorint(n))


def _sqrt_to_float(q: Fraction) -> float:
    """Correctly rounded (to within one ulp) float of sqrt(q)."""
    if q == 0:
        return 0.0
    p, d = q.numerator, q.denominator
    # scale so the integer square root carries ~80 significant bits
    shift = max(0, 80 - (p.bit_length() - d.bit_length()) // 2)
    root = math.isqrt((p << (2 * shift)) // d)
    return float(Fraction(root, 1 << shift))


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


@dataclass(frozen=True)
class SignedSqrtRational:
    """The exact value ``sign * sqrt(radicand)``.

    ``radicand`` is a non-negative ``Fraction`` (always in lowest terms) and
    ``sign`` is -1, 0 or +1 with ``sign == 0`` exactly when the radicand is 0.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self):
        r = _to_fraction(self.radicand)
        object.__setattr__(self, "radicand", r)
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if r < 0:
            raise ValueError("radicand must be non-negative")
        if (self.sign == 0) != (r == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")

    @classmethod
    def zero(cls) -> "SignedSqrtRational":
        return cls(0, Fraction(0))

    @classmethod
    def from_rational(cls, q) -> "SignedSqrtRational":
        q = _to_fraction(q)
        return cls((q > 0) - (q < 0), q * q)

    @classmethod
    def from_parts(cls, coeff, radicand) -> "SignedSqrtRational":
        """``coeff * sqrt(radicand)`` for rationals coeff and radicand >= 0."""
        coeff, radicand = _to_fraction(coeff), _to_fraction(radicand)
        if coeff == 0 or radicand == 0:
            return cls.zero()
        return cls(1 if coeff > 0 else -1, coeff * coeff * radicand)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __float__(self) -> float:
        return self.sign * _sqrt_to_float(self.radicand)

    def __neg__(self) -> "SignedSqrtRational":
        return SignedSqrtRational(-self.sign, self.radicand)

    def __mul__(self, other):
        if isinstance(other, SignedSqrtRational):
            return SignedSqrtRational(self.sign * other.sign, self.radicand * other.radicand)
        if isinstance(other, (int, Fraction)):
            return self * SignedSqrtRational.from_rational(other)
        return NotImplemented

    __rmul__ = __mul__

    def square(self) -> Fraction:
        return self.radicand

    def to_surd(self) -> "Surd":
        return Surd.sqrt(self.radicand) * self.sign

    def rational_parts(self) -> tuple[Fraction, Fraction]:
        """Return ``(c, s)`` with value ``c*sqrt(s)``, ``s`` = squarefree num/den."""
        if self.sign == 0:
            return Fraction(0), Fraction(1)
        kp, rp = split_square(self.radicand.numerator)
        kq, rq = split_square(self.radicand.denominator)
        return Fraction(self.sign * kp, kq), Fraction(rp, rq)

    def __str__(self) -> str:
        c, s = self.rational_parts()
        if c == 0:
            return "0"
        if s == 1:
            return str(c)
        return f"{c}*sqrt({s})"

    def to_json(self) -> dict:
        return {"sign": self.sign, "num": str(self.radicand.numerator), "den": str(self.radicand.denominator)}

    @classmethod
    def from_json(cls, obj: dict) -> "SignedSqrtRational":
        return cls(int(obj["sign"]), Fraction(int(obj["num"]), int(obj["den"])))


def _mul_terms(a: tuple, b: tuple) -> dict:
    out: dict[int, Fraction] = {}
    for r1, c1 in a:
        for r2, c2 in b:
            g = math.gcd(r1, r2)
            r = (r1 // g) * (r2 // g)
            out[r] = out.get(r, 0) + c1 * c2 * g
    return out


class Surd:
    """Element of Q(sqrt 2, sqrt 3, sqrt 5, ...), stored as ``{r: c_r}``.

    Immutable and hashable.  Arithmetic with ``int`` and ``Fraction`` is
    supported; mixing with ``float`` is deliberately not (convert first).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for r, c in items:
                c = _to_fraction(c)
                if c != 0:
                    if r <= 0:
                        raise ValueError("radicands must be positive squarefree integers")
                    clean[r] = clean.get(r, 0) + c
        self._terms = tuple(sorted((r, c) for r, c in clean.items() if c != 0))
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Surd":
        return cls({1: _to_fraction(q)})

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """Exact square root of a non-negative rational."""
        q = _to_fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        kp, rp = split_square(q.numerator)
        kq, rq = split_square(q.denominator)
        # sqrt(kp^2 rp / (kq^2 rq)) = kp/(kq rq) * sqrt(rp rq)
        return cls({rp * rq: Fraction(kp, kq * rq)})

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(r == 1 for r, _ in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, Surd):
            return x
        if isinstance(x, SignedSqrtRational):
            return x.to_surd()
        if isinstance(x, (int, Fraction)):
            return Surd.rational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self._terms)
        for r, c in o._terms:
            d[r] = d.get(r, 0) + c
        return Surd(d)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: -c for r, c in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(_mul_terms(self._terms, o._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def _split(self, p: int) -> tuple["Surd", "Surd"]:
        """Write self as ``a + b*sqrt(p)`` with a, b free of sqrt(p)."""
        a, b = {}, {}
        for r, c in self._terms:
            if r % p == 0:
                b[r // p] = c
            else:
                a[r] = c
        return Surd(a), Surd(b)

    def _pivot_prime(self) -> int | None:
        irr = [r for r, _ in self._terms if r != 1]
        if not irr:
            return None
        return _smallest_prime_factor(max(irr))

    def inverse(self) -> "Surd":
        if self.is_zero():
            raise ZeroDivisionError("Surd division by zero")
        p = self._pivot_prime()
        if p is None:
            return Surd.rational(1 / self.rational_value())
        a, b = self._split(p)
        if b.is_zero():
            return a.inverse()
        # 1/(a + b sqrt p) = (a - b sqrt p) / (a^2 - p b^2)
        conj = a - b * Surd({p: 1})
        norm = a * a - b * b * p
        return conj * norm.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Surd.rational(1)
        for _ in range(k):
            out = out * self
        return out

    # ordering -----------------------------------------------------------
    def sign(self) -> int:
        if self.is_zero():
            return 0
        p = self._pivot_prime()
        if p is None:
            return 1 if self._terms[0][1] > 0 else -1
        a, b = self._split(p)
        sa, sb = a.sign(), b.sign()
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        # opposite signs: compare |a| with |b| sqrt(p)
        return sa if (a * a - b * b * p).sign() > 0 else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # conversion ---------------------------------------------------------
    def __float__(self) -> float:
        return math.fsum(float(c) * math.sqrt(r) for r, c in self._terms)

    def to_signed_sqrt(self) -> SignedSqrtRational:
        """Convert a zero or single-term value; raises for genuine sums."""
        if self.is_zero():
            return SignedSqrtRational.zero()
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not of the form s*sqrt(q)")
        r, c = self._terms[0]
        return SignedSqrtRational.from_parts(c, r)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in self._terms:
            s = str(abs(c)) if r == 1 else (f"sqrt({r})" if abs(c) == 1 else f"{abs(c)}*sqrt({r})")
            parts.append(("-" if c < 0 else "+", s))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sgn, s in parts[1:]:
            out += f" {sgn} {s}"
        return out

    def __repr__(self) -> str:
        return f"Surd({str(self)!r})"

    _TERM = re.compile(
        r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(?:sqrt\(\s*(\d+(?:/\d+)?)\s*\))?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "Surd":
        """Inverse of ``str``; also accepts ``a*sqrt(p/q)`` terms."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        pos, total = 0, cls()
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse exact number {text!r}")
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                coeff = -coeff
            term = cls.sqrt(Fraction(m.group(3))) * coeff if m.group(3) else cls.rational(coeff)
            total = total + term
            pos = m.end()
        return total

    def to_json(self):
        return {"exact": str(self), "value": float(self)}


def as_surd(x) -> Surd:
    """Coerce ints, Fractions, SignedSqrtRationals and Surds to ``Surd``."""
    s = Surd._coerce(x)
    if s is None:
        raise TypeError(f"cannot represent {x!r} exactly")
    return s


_small_primes()  # build the table at import so later reads never mutate it
