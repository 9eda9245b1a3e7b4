"""Dense-matrix realisation of the operators and maps on N x N systems.

Operators on the product space are plain complex ``(N*N, N*N)`` numpy arrays
in the basis ``|j m1> (x) |j m2>`` with ``m`` running ``+j, ..., -j`` in each
factor (row index ``i`` <-> ``m = j - i``).  Local states are length-``N``
complex vectors in the same ordering.

Everything here is brute force and serves as ground truth for the
parameter-space formulas in :mod:`rotstate.invariant` and
:mod:`rotstate.separability`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .invariant import AlphaVector, _check_n
from .wigner import clebsch_gordan, three_j

__all__ = [
    "spin_matrices",
    "rotation",
    "v_matrix",
    "coupled_basis",
    "projector",
    "partial_transpose",
    "partial_time_reversal",
    "partial_trace",
    "theta_from_trace",
    "tensor_operator",
    "q_operator",
    "flip",
    "invariant_operator",
    "twirl",
    "alpha_functionals",
    "time_reversal_local",
    "quadrupole_sandwich",
    "quadrupole_sandwich_closed_form",
    "local_map",
    "trace_norm",
    "realignment_map",
    "random_pure_state",
    "random_invariant_alpha",
    "operator_to_json",
    "operator_from_json",
]

POSITIVITY_TOL = 1e-10


def _local_dim(op: np.ndarray) -> int:
    d = op.shape[0]
    n = int(round(np.sqrt(d)))
    if op.shape != (d, d) or n * n != d:
        raise DomainError(f"expected a square (N^2 x N^2) operator, got shape {op.shape}")
    return n


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _twice_m(n: int) -> list[int]:
    return [n - 1 - 2 * i for i in range(n)]


@lru_cache(maxsize=None)
def spin_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-j matrices ``(j1, j2, j3)`` with ``j = (n-1)/2``."""
    n = _check_n(n)
    j = (n - 1) / 2
    m = j - np.arange(n)
    jp = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        jp[i - 1, i] = np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    jm = jp.conj().T
    j1 = (jp + jm) / 2
    j2 = (jp - jm) / 2j
    j3 = np.diag(m).astype(complex)
    return _frozen(j1), _frozen(j2), _frozen(j3)


def rotation(n: int, axis_angle) -> np.ndarray:
    """``D = exp(-i n.j)`` for the rotation about ``axis_angle`` by its length."""
    vec = np.asarray(axis_angle, dtype=float)
    if vec.shape != (3,) or not np.all(np.isfinite(vec)):
        raise DomainError("axis_angle must be a finite 3-vector")
    js = spin_matrices(n)
    gen = vec[0] * js[0] + vec[1] * js[1] + vec[2] * js[2]
    # Hermitian generator: exponentiate through its eigendecomposition
    w, U = np.linalg.eigh(gen)
    return (U * np.exp(-1j * w)) @ U.conj().T


@lru_cache(maxsize=None)
def v_matrix(n: int) -> np.ndarray:
    """The pi-rotation about the 2-axis, ``<m'|V|m> = (-1)^(j-m) delta_{m',-m}``."""
    n = _check_n(n)
    V = np.zeros((n, n))
    for i in range(n):  # i = j - m
        V[n - 1 - i, i] = -1.0 if i % 2 else 1.0
    return _frozen(V)


@lru_cache(maxsize=None)
def coupled_basis(n: int) -> tuple[tuple[int, int, np.ndarray], ...]:
    """All ``(J, M, |J M>)`` with ``|J M> = sum <j m1 j m2|J M> |m1 m2>``."""
    n = _check_n(n)
    j = Fraction(n - 1, 2)
    tm = _twice_m(n)
    out = []
    for J in range(n):
        for M in range(J, -J - 1, -1):
            vec = np.zeros(n * n)
            for a, t1 in enumerate(tm):
                for b, t2 in enumerate(tm):
                    if t1 + t2 != 2 * M:
                        continue
                    vec[a * n + b] = float(clebsch_gordan(j, Fraction(t1, 2), j, Fraction(t2, 2), J, M))
            out.append((J, M, _frozen(vec)))
    return tuple(out)


@lru_cache(maxsize=None)
def projector(n: int, J: int) -> np.ndarray:
    """``P_J = sum_M |J M><J M|``."""
    n = _check_n(n)
    if not isinstance(J, (int, np.integer)) or not 0 <= J <= n - 1:
        raise DomainError(f"J must be an integer in 0..{n - 1}")
    P = np.zeros((n * n, n * n), dtype=complex)
    for JJ, _, vec in coupled_basis(n):
        if JJ == J:
            P += np.outer(vec, vec)
    return _frozen(P)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second tensor factor."""
    n = _local_dim(rho)
    return rho.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)


def partial_time_reversal(rho: np.ndarray) -> np.ndarray:
    """``(I x V) T_2(rho) (I x V)^dagger``."""
    n = _local_dim(rho)
    IV = np.kron(np.eye(n), v_matrix(n))
    return IV @ partial_transpose(rho) @ IV.conj().T


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced operator on factor ``keep`` (0 or 1)."""
    n = _local_dim(rho)
    r = rho.reshape(n, n, n, n)
    if keep == 0:
        return np.einsum("ajbj->ab", r)
    if keep == 1:
        return np.einsum("iaib->ab", r)
    raise DomainError("keep must be 0 or 1")


def theta_from_trace(n: int) -> np.ndarray:
    """Theta from ``tr{P_J theta_2(P_K)} / sqrt((2J+1)(2K+1))``, densely."""
    n = _check_n(n)
    out = np.empty((n, n))
    for K in range(n):
        tPK = partial_time_reversal(projector(n, K))
        for J in range(n):
            out[J, K] = np.trace(projector(n, J) @ tPK).real / np.sqrt((2 * J + 1) * (2 * K + 1))
    return out


@lru_cache(maxsize=None)
def tensor_operator(n: int, J: int, M: int) -> np.ndarray:
    """Spherical tensor ``<m|T_JM|m'> = (-1)^(j-m) sqrt(2J+1) (j j J; m -m' -M)``."""
    n = _check_n(n)
    if not 0 <= J <= n - 1 or abs(M) > J:
        raise DomainError(f"need 0 <= J <= {n - 1} and |M| <= J, got J={J}, M={M}")
    j = Fraction(n - 1, 2)
    tm = _twice_m(n)
    T = np.zeros((n, n), dtype=complex)
    for a, ta in enumerate(tm):
        for b, tb in enumerate(tm):
            if ta - tb != 2 * M:
                continue
            w = float(three_j(j, j, J, Fraction(ta, 2), Fraction(-tb, 2), -M))
            T[a, b] = (-1.0 if a % 2 else 1.0) * np.sqrt(2 * J + 1) * w
    return _frozen(T)


def q_operator(n: int, J: int) -> np.ndarray:
    """``Q_J = sum_M T_JM (x) T_JM^dagger``."""
    return sum(np.kron(tensor_operator(n, J, M), tensor_operator(n, J, M).conj().T) for M in range(-J, J + 1))


@lru_cache(maxsize=None)
def flip(n: int) -> np.ndarray:
    """Swap operator ``F|m1 m2> = |m2 m1>``."""
    n = _check_n(n)
    F = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            F[b * n + a, a * n + b] = 1.0
    return _frozen(F)


def invariant_operator(alpha: AlphaVector) -> np.ndarray:
    """``rho = (1/N) sum_J alpha_J / sqrt(2J+1) P_J``."""
    n = alpha.n
    a = alpha.as_array()
    return sum(a[J] / np.sqrt(2 * J + 1) * projector(n, J) for J in range(n)) / n


def twirl(rho: np.ndarray) -> tuple[AlphaVector, np.ndarray]:
    """Project onto the invariant operators; returns ``(alpha, Pi rho)``."""
    n = _local_dim(rho)
    weights = [np.trace(projector(n, J) @ rho).real for J in range(n)]
    alpha = AlphaVector(n, tuple(n / np.sqrt(2 * J + 1) * w for J, w in enumerate(weights)))
    proj = sum(weights[J] / (2 * J + 1) * projector(n, J) for J in range(n))
    return alpha, proj


def _check_normalized(phi: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.ndim != 1:
        raise DomainError("local states must be 1-d amplitude vectors")
    if abs(np.linalg.norm(phi) - 1.0) > tol:
        raise DomainError(f"local state is not normalized (norm {np.linalg.norm(phi)})")
    return phi


def alpha_functionals(phi1, phi2, variant: str = "T") -> AlphaVector:
    """Parameter point of the twirled product state ``|phi1 phi2>``.

    ``variant="P"`` evaluates ``N/sqrt(2J+1) <phi1 phi2|P_J|phi1 phi2>``;
    ``variant="T"`` evaluates ``N/sqrt(2J+1) sum_M |<phi1|T_JM|phi2>|^2``,
    which equals the P-form with ``phi2`` time reversed.
    """
    phi1, phi2 = _check_normalized(phi1), _check_normalized(phi2)
    n = phi1.shape[0]
    if phi2.shape[0] != n:
        raise DomainError("local states must have equal dimension")
    if variant == "P":
        psi = np.kron(phi1, phi2)
        vals = [n / np.sqrt(2 * J + 1) * np.vdot(psi, projector(n, J) @ psi).real for J in range(n)]
    elif variant == "T":
        vals = []
        for J in range(n):
            s = sum(abs(np.vdot(phi1, tensor_operator(n, J, M) @ phi2)) ** 2 for M in range(-J, J + 1))
            vals.append(n / np.sqrt(2 * J + 1) * s)
    else:
        raise DomainError(f"unknown functional variant {variant!r}; use 'P' or 'T'")
    return AlphaVector(n, tuple(vals))


def time_reversal_local(phi) -> np.ndarray:
    """Anti-unitary time reversal ``tau = V o (complex conjugation)``."""
    phi = np.asarray(phi, dtype=complex)
    return v_matrix(phi.shape[0]) @ phi.conj()


def quadrupole_sandwich(phi2) -> np.ndarray:
    """``A = 4/sqrt(5) sum_M T_2M |phi2><phi2| T_2M^dagger`` for ``n = 4``."""
    phi2 = _check_normalized(phi2)
    if phi2.shape[0] != 4:
        raise DomainError("the operator A is defined for n = 4 only")
    proj = np.outer(phi2, phi2.conj())
    return 4 / np.sqrt(5) * sum(
        tensor_operator(4, 2, M) @ proj @ tensor_operator(4, 2, M).conj().T for M in range(-2, 3)
    )


def quadrupole_sandwich_closed_form(c) -> np.ndarray:
    """Closed-form 4x4 matrix of ``A`` in the amplitudes ``c = (c1, c2, c3, c4)``."""
    c1, c2, c3, c4 = np.asarray(c, dtype=complex)
    k = np.conj
    a2 = lambda z: abs(z) ** 2  # noqa: E731
    A = np.array(
        [
            [a2(c1) + 2 * a2(c2) + 2 * a2(c3), -c1 * k(c2) + 2 * c3 * k(c4), -c1 * k(c3) - 2 * c2 * k(c4), c1 * k(c4)],
            [-k(c1) * c2 + 2 * k(c3) * c4, a2(c2) + 2 * a2(c1) + 2 * a2(c4), c2 * k(c3), -c2 * k(c4) - 2 * c1 * k(c3)],
            [-k(c1) * c3 - 2 * k(c2) * c4, k(c2) * c3, a2(c3) + 2 * a2(c4) + 2 * a2(c1), -c3 * k(c4) + 2 * c1 * k(c2)],
            [k(c1) * c4, -k(c2) * c4 - 2 * k(c1) * c3, -k(c3) * c4 + 2 * k(c1) * c2, a2(c4) + 2 * a2(c3) + 2 * a2(c2)],
        ]
    )
    return A / np.sqrt(5)


def local_map(rho: np.ndarray, kraus) -> np.ndarray:
    """Apply ``B -> sum_k s_k K_k B K_k^dagger`` to the second factor.

    ``kraus`` is an iterable of ``(s_k, K_k)`` pairs; signs ``s_k`` allow
    non-completely-positive maps.
    """
    n = _local_dim(rho)
    I = np.eye(n)
    out = np.zeros_like(rho, dtype=complex)
    for s, K in kraus:
        IK = np.kron(I, K)
        out += s * (IK @ rho @ IK.conj().T)
    return out


def trace_norm(a: np.ndarray) -> float:
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def realignment_map(rho: np.ndarray) -> np.ndarray:
    """Matrix of ``B -> sum_i C_i tr{(theta D_i) B}`` for ``rho = sum_i C_i (x) D_i``.

    Built column by column on the matrix units ``E_kl``; columns are
    row-major vectorisations.  Its trace norm is the cross norm of ``rho``.
    """
    n = _local_dim(rho)
    V = v_matrix(n)
    r = rho.reshape(n, n, n, n)  # r[a, c, b, d]: coefficient of |a><b| (x) |c><d|
    cols = []
    for k in range(n):
        for l in range(n):
            E = np.zeros((n, n))
            E[k, l] = 1.0
            # tr{(V |d><c| V^dag) E} = <c|V^dag E V|d>
            Bp = V.conj().T @ E @ V
            cols.append(np.einsum("acbd,cd->ab", r, Bp).reshape(-1))
    return np.array(cols).T


def random_pure_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector from complex standard-normal amplitudes."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_invariant_alpha(n: int, rng: np.random.Generator) -> AlphaVector:
    """Random point of the invariant state simplex (uniform weights on P_J)."""
    p = rng.dirichlet(np.ones(n))
    return AlphaVector(n, tuple(n * p[J] / np.sqrt(2 * J + 1) for J in range(n)))


def operator_to_json(op: np.ndarray) -> dict:
    n = _local_dim(op)
    return {"n": n, "re": op.real.tolist(), "im": op.imag.tolist()}


def operator_from_json(obj: dict) -> np.ndarray:
    op = np.array(obj["re"], dtype=float) + 1j * np.array(obj["im"], dtype=float)
    if _local_dim(op) != int(obj["n"]):
        raise DomainError("operator shape does not match its declared n")
    return op
