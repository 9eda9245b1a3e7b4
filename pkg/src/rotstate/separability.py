"""Entanglement criteria and classification of invariant states.

Decisions on exact parameter vectors are made exactly.  Float vectors use a
tolerance of ``1e-12`` on each inequality, with boundary points counted as
PPT and as separable (closed sets).
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import dense
from .errors import DomainError
from .exact import Surd
from .invariant import AlphaVector, apply_theta, theta_matrix

__all__ = [
    "Classification",
    "CriteriaReport",
    "is_ppt",
    "classify",
    "witness_expectation",
    "phi_map_check",
    "phi_map",
    "reduction_criterion",
    "negativity_trace_norm",
    "cross_norm",
    "criteria_report",
]

TOL = 1e-12
STATE_TOL = 1e-10


class Classification(str, enum.Enum):
    NOT_A_STATE = "NotAState"
    SEPARABLE = "Separable"
    BOUND_ENTANGLED_PPT = "BoundEntangledPPT"
    NPT_ENTANGLED = "NPTEntangled"
    PPT_UNKNOWN = "PPTUnknown"

    def __str__(self):
        return self.value


def _nonneg(x, tol: float) -> bool:
    if isinstance(x, Surd):
        return x.sign() >= 0
    return x >= -tol


def _require_state(alpha: AlphaVector, state_tol: float) -> None:
    if not alpha.is_state(state_tol):
        raise DomainError(f"{alpha} is not a state")


def is_ppt(alpha: AlphaVector, tol: float = TOL, state_tol: float = STATE_TOL) -> bool:
    """True iff every component of ``Theta alpha`` is non-negative."""
    _require_state(alpha, state_tol)
    return all(_nonneg(c, tol) for c in apply_theta(theta_matrix(alpha.n), alpha))


def _prism_margin(alpha: AlphaVector):
    # alpha_2 - alpha_0/sqrt(5); non-negative on the separable side
    if alpha.exact:
        return alpha[2] - alpha[0] / Surd.sqrt(5)
    return alpha[2] - alpha[0] / np.sqrt(5)


def classify(alpha: AlphaVector, tol: float = TOL, state_tol: float = STATE_TOL) -> Classification:
    """Place ``alpha`` in the partition separable / bound entangled / NPT.

    For ``n <= 3`` PPT is equivalent to separability; for ``n == 4`` the
    separable set is the PPT cube cut by ``alpha_2 >= alpha_0/sqrt(5)``; for
    ``n >= 5`` PPT states are reported as ``PPT_UNKNOWN``.
    """
    if not alpha.is_state(state_tol):
        return Classification.NOT_A_STATE
    if not is_ppt(alpha, tol, state_tol):
        return Classification.NPT_ENTANGLED
    if alpha.n <= 3:
        return Classification.SEPARABLE
    if alpha.n == 4:
        if _nonneg(_prism_margin(alpha), tol):
            return Classification.SEPARABLE
        return Classification.BOUND_ENTANGLED_PPT
    return Classification.PPT_UNKNOWN


def witness_expectation(alpha: AlphaVector, state_tol: float = STATE_TOL):
    """``tr{(P_2 - P_0) rho} = (sqrt(5) alpha_2 - alpha_0)/N`` for ``n == 4``."""
    if alpha.n != 4:
        raise DomainError("the witness P_2 - P_0 is defined for n = 4")
    _require_state(alpha, state_tol)
    if alpha.exact:
        return (Surd.sqrt(5) * alpha[2] - alpha[0]) * Fraction(1, 4)
    return (np.sqrt(5) * alpha[2] - alpha[0]) / 4


def _phi_kraus():
    kraus = [(1.0, dense.tensor_operator(4, 2, M)) for M in range(-2, 3)]
    kraus.append((-1.0, dense.tensor_operator(4, 0, 0)))
    return kraus


def phi_map(rho: np.ndarray) -> np.ndarray:
    """``(I x Phi) rho`` with ``Phi B = sum_M T_2M B T_2M^dag - T_00 B T_00^dag``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (16, 16):
        raise DomainError(f"Phi acts on 4 x 4 systems; got operator of shape {rho.shape}")
    return dense.local_map(rho, _phi_kraus())


def phi_map_check(rho: np.ndarray, tol: float = dense.POSITIVITY_TOL) -> bool:
    """True iff ``(I x Phi) rho`` is positive semidefinite up to ``-tol``."""
    out = phi_map(rho)
    out = (out + out.conj().T) / 2
    return bool(np.linalg.eigvalsh(out)[0] >= -tol)


def reduction_criterion(alpha: AlphaVector, tol: float = TOL, state_tol: float = STATE_TOL) -> bool:
    """True iff ``alpha_J <= sqrt(2J+1)`` for every J."""
    _require_state(alpha, state_tol)
    if alpha.exact:
        return all(a <= Surd.sqrt(2 * J + 1) for J, a in enumerate(alpha))
    return all(a <= np.sqrt(2 * J + 1) + tol for J, a in enumerate(alpha))


def _weighted_abs_sum(alpha: AlphaVector, vec):
    n = alpha.n
    if alpha.exact:
        return sum((Surd.sqrt(Fraction(2 * J + 1, n * n)) * abs(v) for J, v in enumerate(vec)), Surd())
    return float(sum(np.sqrt(2 * J + 1) / n * abs(v) for J, v in enumerate(vec)))


def negativity_trace_norm(alpha: AlphaVector, state_tol: float = STATE_TOL):
    """``||theta_2 rho||_1 = sum_J sqrt(2J+1)/N |(Theta alpha)_J|``; 1 iff PPT."""
    _require_state(alpha, state_tol)
    return _weighted_abs_sum(alpha, apply_theta(theta_matrix(alpha.n), alpha))


def cross_norm(alpha: AlphaVector, state_tol: float = STATE_TOL):
    """Cross-norm (realignment) value ``sum_J sqrt(2J+1)/N |sum_K Theta_JK (-1)^K alpha_K|``."""
    _require_state(alpha, state_tol)
    signed = AlphaVector(alpha.n, tuple(a if K % 2 == 0 else -a for K, a in enumerate(alpha)))
    return _weighted_abs_sum(alpha, apply_theta(theta_matrix(alpha.n), signed))


@dataclass(frozen=True)
class CriteriaReport:
    classification: Classification
    ppt: bool
    prism_inequality: bool | None
    witness_value: float | None
    reduction_ok: bool
    cross_norm: float
    negativity_trace_norm: float

    def to_json(self) -> dict:
        out = asdict(self)
        out["classification"] = self.classification.value
        return out


def criteria_report(alpha: AlphaVector, tol: float = TOL, state_tol: float = STATE_TOL) -> CriteriaReport:
    """Evaluate every criterion on a valid state."""
    cls = classify(alpha, tol, state_tol)
    if cls is Classification.NOT_A_STATE:
        raise DomainError(f"{alpha} is not a state")
    prism = witness = None
    if alpha.n == 4:
        prism = _nonneg(_prism_margin(alpha), tol)
        witness = float(witness_expectation(alpha, state_tol))
    return CriteriaReport(
        classification=cls,
        ppt=is_ppt(alpha, tol, state_tol),
        prism_inequality=prism,
        witness_value=witness,
        reduction_ok=reduction_criterion(alpha, tol, state_tol),
        cross_norm=float(cross_norm(alpha, state_tol)),
        negativity_trace_norm=float(negativity_trace_norm(alpha, state_tol)),
    )
