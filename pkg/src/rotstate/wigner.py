"""Exact Clebsch-Gordan coefficients, Wigner 3-j and 6-j symbols.

All angular momenta are carried as :class:`HalfInt` (twice the value is
stored, so 1/2, 3/2, ... are exact).  Symbols are evaluated with the
single-sum Racah formulas over exact big-integer factorials and returned as
:class:`~rotstate.exact.SignedSqrtRational` under the Condon-Shortley phase
convention.

>>> from fractions import Fraction
>>> str(three_j(Fraction(1, 2), Fraction(1, 2), 0, Fraction(1, 2), Fraction(-1, 2), 0))
'1*sqrt(1/2)'
>>> str(six_j(1, 1, 1, 1, 1, 1))
'1/6'
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DomainError
from .exact import SignedSqrtRational, Surd

__all__ = [
    "HalfInt",
    "half",
    "triangle_ok",
    "three_j",
    "clebsch_gordan",
    "six_j",
    "six_j_via_3j_sum",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-odd-integer, stored as ``twice_value``."""

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int):
            raise TypeError("twice_value must be an int")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __float__(self) -> float:
        return self.twice_value / 2

    def __str__(self) -> str:
        return str(self.value)


def half(x) -> HalfInt:
    """Coerce ``x`` (HalfInt, int, Fraction, float or "3/2") to a HalfInt."""
    if isinstance(x, HalfInt):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an angular momentum")
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, int):
        return HalfInt(2 * x)
    if isinstance(x, Rational):
        t = 2 * Fraction(x)
        if t.denominator != 1:
            raise DomainError(f"{x} is not a multiple of 1/2")
        return HalfInt(int(t))
    if isinstance(x, float):
        t = 2 * x
        if t != int(t):
            raise DomainError(f"{x} is not a multiple of 1/2")
        return HalfInt(int(t))
    raise TypeError(f"cannot interpret {x!r} as a half-integer")


_fact_table = [1]
_fact_lock = threading.Lock()


def _factorial(k: int) -> int:
    if k < 0:
        raise ValueError("negative factorial argument")
    if k >= len(_fact_table):
        with _fact_lock:
            # appends only; readers never see a partially written entry
            while len(_fact_table) <= k:
                _fact_table.append(_fact_table[-1] * len(_fact_table))
    return _fact_table[k]


def _triangle_twice(a: int, b: int, c: int) -> bool:
    return abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def triangle_ok(j1, j2, j3) -> bool:
    """True iff |j1-j2| <= j3 <= j1+j2 and j1+j2+j3 is an integer."""
    a, b, c = (half(x).twice_value for x in (j1, j2, j3))
    if min(a, b, c) < 0:
        raise DomainError("angular momentum magnitudes must be non-negative")
    return _triangle_twice(a, b, c)


def _check_projection(tj: int, tm: int) -> None:
    if tj < 0:
        raise DomainError("angular momentum magnitudes must be non-negative")
    if abs(tm) > tj or (tj - tm) % 2:
        raise DomainError(f"invalid projection m={Fraction(tm, 2)} for j={Fraction(tj, 2)}")


@lru_cache(maxsize=None)
def _three_j_twice(t1: int, t2: int, t3: int, u1: int, u2: int, u3: int) -> SignedSqrtRational:
    if u1 + u2 + u3 != 0 or not _triangle_twice(t1, t2, t3):
        return SignedSqrtRational.zero()
    # every combination below is an integer once the selection rules hold
    j1p = (t1 + u1) // 2
    j1m = (t1 - u1) // 2
    j2p = (t2 + u2) // 2
    j2m = (t2 - u2) // 2
    j3p = (t3 + u3) // 2
    j3m = (t3 - u3) // 2
    a = (t1 + t2 - t3) // 2
    b = (t1 - t2 + t3) // 2
    c = (-t1 + t2 + t3) // 2
    d = (t1 + t2 + t3) // 2 + 1
    x1 = (t3 - t2 + u1) // 2  # j3 - j2 + m1
    x2 = (t3 - t1 - u2) // 2  # j3 - j1 - m2
    kmin = max(0, -x1, -x2)
    kmax = min(a, j1m, j2p)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            _factorial(k)
            * _factorial(x1 + k)
            * _factorial(x2 + k)
            * _factorial(a - k)
            * _factorial(j1m - k)
            * _factorial(j2p - k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return SignedSqrtRational.zero()
    pre = Fraction(_factorial(a) * _factorial(b) * _factorial(c), _factorial(d))
    pre *= (
        _factorial(j1p) * _factorial(j1m) * _factorial(j2p)
        * _factorial(j2m) * _factorial(j3p) * _factorial(j3m)
    )
    phase = -1 if ((t1 - t2 - u3) // 2) % 2 else 1
    sign = phase * (1 if total > 0 else -1)
    return SignedSqrtRational(sign, pre * total * total)


def three_j(j1, j2, j3, m1, m2, m3) -> SignedSqrtRational:
    """Wigner 3-j symbol ``(j1 j2 j3; m1 m2 m3)``.

    Zero when ``m1+m2+m3 != 0`` or the triangle rule fails.  Raises
    :class:`DomainError` for a projection outside ``-j..j`` or with the wrong
    parity.
    """
    ts = [half(x).twice_value for x in (j1, j2, j3)]
    us = [half(x).twice_value for x in (m1, m2, m3)]
    for tj, tm in zip(ts, us):
        _check_projection(tj, tm)
    return _three_j_twice(*ts, *us)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> SignedSqrtRational:
    """Clebsch-Gordan coefficient ``<j1 m1 j2 m2 | J M>``.

    Uses ``<j1 m1 j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (j1 j2 J; m1 m2 -M)``,
    which for ``j1 == j2`` reduces to the familiar ``(-1)^M`` prefactor.
    """
    t1, t2, tJ = (half(x).twice_value for x in (j1, j2, J))
    u1, u2, uM = (half(x).twice_value for x in (m1, m2, M))
    for tj, tm in ((t1, u1), (t2, u2), (tJ, uM)):
        _check_projection(tj, tm)
    w = _three_j_twice(t1, t2, tJ, u1, u2, -uM)
    if w.is_zero():
        return w
    phase = -1 if ((t1 - t2 + uM) // 2) % 2 else 1
    return SignedSqrtRational(phase * w.sign, w.radicand * (tJ + 1))


def _delta_sq(a: int, b: int, c: int) -> Fraction:
    # triangle coefficient squared, arguments in twice-units
    return Fraction(
        _factorial((a + b - c) // 2) * _factorial((a - b + c) // 2) * _factorial((-a + b + c) // 2),
        _factorial((a + b + c) // 2 + 1),
    )


@lru_cache(maxsize=None)
def _six_j_twice(a: int, b: int, c: int, d: int, e: int, f: int) -> SignedSqrtRational:
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(_triangle_twice(*t) for t in triads):
        return SignedSqrtRational.zero()
    lows = [sum(t) // 2 for t in triads]
    highs = [(a + b + d + e) // 2, (a + c + d + f) // 2, (b + c + e + f) // 2]
    total = Fraction(0)
    for t in range(max(lows), min(highs) + 1):
        den = 1
        for lo in lows:
            den *= _factorial(t - lo)
        for hi in highs:
            den *= _factorial(hi - t)
        total += Fraction((-1 if t % 2 else 1) * _factorial(t + 1), den)
    if total == 0:
        return SignedSqrtRational.zero()
    rad = total * total
    for tr in triads:
        rad *= _delta_sq(*tr)
    return SignedSqrtRational(1 if total > 0 else -1, rad)


def six_j(j1, j2, j3, j4, j5, j6) -> SignedSqrtRational:
    """Wigner 6-j symbol ``{j1 j2 j3; j4 j5 j6}``.

    The sign is taken from the exact Racah sum and the magnitude is stored
    squared, so the result is lossless.  Zero when any of the triads
    (j1 j2 j3), (j1 j5 j6), (j4 j2 j6), (j4 j5 j3) violates the triangle rule.
    """
    ts = [half(x).twice_value for x in (j1, j2, j3, j4, j5, j6)]
    if min(ts) < 0:
        raise DomainError("angular momentum magnitudes must be non-negative")
    return _six_j_twice(*ts)


def six_j_via_3j_sum(j, J, K) -> SignedSqrtRational:
    """``sqrt((2J+1)(2K+1)) * {j j J; j j K}`` as a sum over four 3-j symbols.

    Evaluates the six-fold projection sum literally, using the selection rules
    of the first and third symbols to fix ``m3`` and ``m6``, with phase
    ``(-1)^(j+m1)(-1)^(j+m2)(-1)^(J+m3)(-1)^(j+m4)(-1)^(j+m5)(-1)^(K+m6)``.
    This is an independent route to the theta-matrix entries.
    """
    tj, tJ, tK = (half(x).twice_value for x in (j, J, K))
    if tj < 0 or tJ % 2 or tK % 2 or not (0 <= tJ <= 2 * tj) or not (0 <= tK <= 2 * tj):
        raise DomainError("need j >= 0 and integers 0 <= J, K <= 2j")
    ms = range(-tj, tj + 1, 2)
    acc = Surd()
    for u1 in ms:
        for u2 in ms:
            u3 = -u1 - u2
            if abs(u3) > tJ:
                continue
            for u4 in ms:
                u6 = u4 + u2
                if abs(u6) > tK:
                    continue
                for u5 in ms:
                    w1 = _three_j_twice(tj, tj, tJ, u1, u2, u3)
                    w2 = _three_j_twice(tj, tj, tK, -u1, u5, -u6)
                    w3 = _three_j_twice(tj, tj, tK, -u4, -u2, u6)
                    w4 = _three_j_twice(tj, tj, tJ, u4, -u5, -u3)
                    prod = w1 * w2 * w3 * w4
                    if prod.is_zero():
                        continue
                    twice_phase = 4 * tj + tJ + tK + u1 + u2 + u3 + u4 + u5 + u6
                    phase = -1 if (twice_phase // 2) % 2 else 1
                    acc = acc + prod.to_surd() * phase
    value = acc * Surd.sqrt((tJ + 1) * (tK + 1))
    return value.to_signed_sqrt()
