"""Parameter space of rotationally invariant operators on N x N systems.

An invariant operator is ``rho = (1/N) sum_J alpha_J / sqrt(2J+1) P_J`` with
``J = 0 .. 2j`` and ``N = 2j + 1``.  The partial time reversal acts on the
parameters as the matrix ``Theta_JK = sqrt((2J+1)(2K+1)) {j j J; j j K}``.

Exact values are carried as :class:`~rotstate.exact.Surd`; float inputs
switch a vector to float mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational, Real

import numpy as np

from .errors import DomainError
from .exact import SignedSqrtRational, Surd
from .wigner import six_j

__all__ = [
    "AlphaVector",
    "ThetaMatrix",
    "theta_matrix",
    "theta_row0",
    "theta_row1",
    "apply_theta",
    "theta_eigenvectors",
    "singlet_alpha",
    "max_entropy_alpha",
    "werner_alpha",
    "norm_weights",
]


def _check_n(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def norm_weights(n: int) -> tuple[Surd, ...]:
    """Exact weights ``sqrt(2J+1)/N`` of the trace functional."""
    return tuple(Surd.sqrt(Fraction(2 * J + 1, n * n)) for J in range(n))


def _coerce_component(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, SignedSqrtRational):
        return x.to_surd()
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Surd.rational(x)
    if isinstance(x, np.integer):
        return Surd.rational(int(x))
    if isinstance(x, Rational):
        return Surd.rational(Fraction(x))
    if isinstance(x, Real):
        return float(x)
    raise TypeError(f"cannot use {x!r} as a parameter component")


@dataclass(frozen=True)
class AlphaVector:
    """Full-length parameter vector ``(alpha_0, ..., alpha_2j)``.

    Components are all :class:`Surd` (exact mode) or all ``float``.
    """

    n: int
    components: tuple

    def __post_init__(self):
        _check_n(self.n)
        comps = tuple(_coerce_component(c) for c in self.components)
        if len(comps) != self.n:
            raise DomainError(f"expected {self.n} components, got {len(comps)}")
        if not all(isinstance(c, Surd) for c in comps):
            comps = tuple(float(c) for c in comps)
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, values) -> "AlphaVector":
        values = tuple(values)
        return cls(len(values), values)

    @property
    def exact(self) -> bool:
        return isinstance(self.components[0], Surd)

    def __len__(self):
        return self.n

    def __getitem__(self, J):
        return self.components[J]

    def __iter__(self):
        return iter(self.components)

    def as_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.components])

    def to_float(self) -> "AlphaVector":
        return AlphaVector(self.n, tuple(float(c) for c in self.components))

    def trace(self):
        """Value of ``sum_J sqrt(2J+1)/N alpha_J`` (the trace of rho)."""
        if self.exact:
            return sum((w * a for w, a in zip(norm_weights(self.n), self.components)), Surd())
        return float(np.dot([float(w) for w in norm_weights(self.n)], self.as_array()))

    def is_state(self, tol: float = 1e-10) -> bool:
        """Non-negative components and unit trace (exact when exact)."""
        if self.exact:
            return all(c.sign() >= 0 for c in self.components) and self.trace() == 1
        arr = self.as_array()
        return bool(np.all(arr >= -tol) and abs(self.trace() - 1.0) <= tol)

    def reduced(self) -> tuple:
        """Drop ``alpha_2j``; inverse of :meth:`from_reduced`."""
        return self.components[:-1]

    @classmethod
    def from_reduced(cls, n: int, coords) -> "AlphaVector":
        """Lift ``(alpha_0, ..., alpha_{2j-1})`` using unit trace."""
        n = _check_n(n)
        coords = tuple(_coerce_component(c) for c in coords)
        if len(coords) != n - 1:
            raise DomainError(f"expected {n - 1} reduced coordinates, got {len(coords)}")
        w = norm_weights(n)
        if all(isinstance(c, Surd) for c in coords):
            rest = Surd.rational(1) - sum((wi * c for wi, c in zip(w, coords)), Surd())
            return cls(n, coords + (rest / w[-1],))
        fc = [float(c) for c in coords]
        fw = [float(x) for x in w]
        last = (1.0 - float(np.dot(fw[:-1], fc))) / fw[-1]
        return cls(n, tuple(fc) + (last,))

    def to_json(self) -> dict:
        if self.exact:
            alpha = [_surd_to_json(c) for c in self.components]
        else:
            alpha = list(self.components)
        return {"n": self.n, "alpha": alpha}

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaVector":
        return cls(int(obj["n"]), tuple(_surd_from_json(a) for a in obj["alpha"]))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _surd_to_json(s: Surd):
    # single-term values use the wigner exact triple; sums list their terms
    if len(s.terms) <= 1:
        return s.to_signed_sqrt().to_json()
    return {"terms": [SignedSqrtRational.from_parts(c, r).to_json() for r, c in s.terms]}


def _surd_from_json(obj):
    if isinstance(obj, (int, float)):
        return obj
    if "terms" in obj:
        return sum((SignedSqrtRational.from_json(t).to_surd() for t in obj["terms"]), Surd())
    return SignedSqrtRational.from_json(obj).to_surd()


@dataclass(frozen=True)
class ThetaMatrix:
    """``N x N`` matrix of the partial time reversal on parameter space."""

    n: int
    entries: tuple  # rows of SignedSqrtRational
    _surds: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_surds", tuple(tuple(e.to_surd() for e in row) for row in self.entries))

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array([[float(e) for e in row] for row in self.entries])
        a.setflags(write=False)
        return a

    def surd(self, J: int, K: int) -> Surd:
        return self._surds[J][K]

    def exact_product(self, other: "ThetaMatrix | None" = None) -> list[list[Surd]]:
        other = self if other is None else other
        n = self.n
        return [
            [sum((self._surds[J][L] * other._surds[L][K] for L in range(n)), Surd()) for K in range(n)]
            for J in range(n)
        ]

    def is_symmetric(self) -> bool:
        return all(self.entries[J][K] == self.entries[K][J] for J in range(self.n) for K in range(J))

    def is_involution(self) -> bool:
        sq = self.exact_product()
        return all(sq[J][K] == (1 if J == K else 0) for J in range(self.n) for K in range(self.n))

    def trace(self) -> Surd:
        return sum((self._surds[J][J] for J in range(self.n)), Surd())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "matrix": self.array.tolist(),
            "exact": [[e.to_json() for e in row] for row in self.entries],
        }


@lru_cache(maxsize=None)
def theta_matrix(n: int) -> ThetaMatrix:
    """Exact Theta for local dimension ``n`` from 6-j symbols."""
    n = _check_n(n)
    j = Fraction(n - 1, 2)
    rows = []
    for J in range(n):
        row = []
        for K in range(n):
            w = six_j(j, j, J, j, j, K)
            row.append(w * SignedSqrtRational.from_parts(1, (2 * J + 1) * (2 * K + 1)))
        rows.append(tuple(row))
    return ThetaMatrix(n, tuple(rows))


def _check_J(n: int, J: int) -> None:
    if not isinstance(J, (int, np.integer)) or not 0 <= J <= n - 1:
        raise DomainError(f"J must be an integer in 0..{n - 1}, got {J!r}")


def theta_row0(n: int, J: int) -> SignedSqrtRational:
    """Closed form ``Theta_J0 = sqrt(2J+1)/N (-1)^(2j+J)``."""
    n = _check_n(n)
    _check_J(n, J)
    sign = -1 if (n - 1 + J) % 2 else 1
    return SignedSqrtRational.from_parts(Fraction(sign, n), 2 * J + 1)


def theta_row1(n: int, J: int) -> SignedSqrtRational:
    """Closed form of ``Theta_J1``."""
    n = _check_n(n)
    _check_J(n, J)
    sign = -1 if (n + J) % 2 else 1
    coeff = Fraction((n - 1) * (n + 1) - 2 * J * (J + 1), n * (n - 1) * (n + 1))
    return SignedSqrtRational.from_parts(sign * coeff, 3 * (2 * J + 1))


def apply_theta(theta: ThetaMatrix, alpha: AlphaVector) -> AlphaVector:
    """Parameters of the partially time-reversed operator."""
    if theta.n != alpha.n:
        raise DomainError(f"dimension mismatch: Theta is {theta.n}, alpha is {alpha.n}")
    if alpha.exact:
        out = tuple(
            sum((theta.surd(J, K) * alpha[K] for K in range(alpha.n)), Surd()) for J in range(alpha.n)
        )
        return AlphaVector(alpha.n, out)
    return AlphaVector(alpha.n, tuple(theta.array @ alpha.as_array()))


def theta_eigenvectors(theta: ThetaMatrix) -> list[tuple[AlphaVector, int]]:
    """Eigenvectors ``alpha^(L)_J = (-1)^J Theta_JL`` with eigenvalue ``(-1)^L``."""
    n = theta.n
    out = []
    for L in range(n):
        vec = tuple(theta.surd(J, L) * (-1 if J % 2 else 1) for J in range(n))
        out.append((AlphaVector(n, vec), -1 if L % 2 else 1))
    return out


def singlet_alpha(n: int) -> AlphaVector:
    n = _check_n(n)
    return AlphaVector(n, (n,) + (0,) * (n - 1))


def max_entropy_alpha(n: int) -> AlphaVector:
    """Parameters of ``I/N^2``: ``alpha_J = sqrt(2J+1)/N``."""
    n = _check_n(n)
    return AlphaVector(n, norm_weights(n))


def werner_alpha(n: int, lam) -> AlphaVector:
    """Werner state with parameter ``lam`` in [-1, 1] embedded in parameter space.

    Exact when ``lam`` is an int or Fraction.
    """
    n = _check_n(n)
    exact = isinstance(lam, (int, Fraction)) and not isinstance(lam, bool)
    if not exact:
        lam = float(lam)
    if not -1 <= lam <= 1:
        raise DomainError(f"Werner parameter must lie in [-1, 1], got {lam}")
    comps = []
    for J in range(n):
        sign = -1 if (n - 1 + J) % 2 else 1
        if exact:
            bracket = Fraction(n) - lam + sign * (n * Fraction(lam) - 1)
            comps.append(Surd.sqrt(2 * J + 1) * Fraction(bracket, n * n - 1))
        else:
            bracket = n - lam + sign * (n * lam - 1)
            comps.append(np.sqrt(2 * J + 1) * bracket / (n * n - 1))
    return AlphaVector(n, tuple(comps))
