"""Named invariant checks run by ``rotstate verify``.

Each check returns ``(passed, detail)``.  Checks are evaluated in a fixed
order so reports are reproducible for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import dense, geometry, separability
from .exact import Surd
from .invariant import (
    AlphaVector,
    apply_theta,
    max_entropy_alpha,
    singlet_alpha,
    theta_eigenvectors,
    theta_matrix,
    theta_row0,
    theta_row1,
)
from .wigner import three_j, six_j_via_3j_sum

SCHEMA = "rotstate/1"

_s3, _s5 = Surd.sqrt(3), Surd.sqrt(5)
_q = Surd.rational

# reference vertex sets of the PPT and separable polytopes, reduced coordinates
REFERENCE_PPT = {
    2: {(_q(0),), (_q(1),)},
    3: {(_q(0), _q(0)), (_q(1), _q(0)), (_q(1), _s3 / 2), (_q(0), _s3 / 2)},
    4: {
        (_q(0), _q(0), _q(0)),
        (_q(1), _s3 * Fraction(3, 5), 1 / _s5),
        (_q(Fraction(2, 3)), _q(0), _q(0)),
        (_q(Fraction(2, 3)), _s3 * Fraction(2, 3), _q(0)),
        (_q(0), _s3 * Fraction(3, 5), _q(0)),
        (_q(1), _q(0), 1 / _s5),
        (_q(0), _q(0), 2 / _s5),
        (_q(0), _s3 * Fraction(2, 5), 2 / _s5),
    },
}
REFERENCE_SEPARABLE_4 = {
    v for v in REFERENCE_PPT[4] if v[0] != _q(Fraction(2, 3))
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int | None
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Report:
    n_range: tuple[int, int]
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[str]:
        return sorted({r.name for r in self.results if not r.passed})

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n_range": list(self.n_range),
            "passed": self.passed,
            "failures": self.failures,
            "checks": [r.to_json() for r in self.results],
        }


def _maxdiff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _within(diff: float, tol: float) -> tuple[bool, str]:
    return diff <= tol, f"max deviation {diff:.3e} (tol {tol:.0e})"


# --- per-n checks --------------------------------------------------------


def check_theta_symmetric(n, tol, rng):
    return theta_matrix(n).is_symmetric(), "exact"


def check_theta_involution(n, tol, rng):
    return theta_matrix(n).is_involution(), "exact"


def check_theta_trace(n, tol, rng):
    tr = theta_matrix(n).trace()
    want = n % 2
    return tr == want, f"trace {tr}, expected {want}"


def check_theta_closed_forms(n, tol, rng):
    th = theta_matrix(n)
    ok = all(th.entries[J][0] == theta_row0(n, J) and th.entries[J][1] == theta_row1(n, J) for J in range(n))
    return ok, "rows 0 and 1 exact"


def check_six_j_sum(n, tol, rng):
    if n > 6:
        return True, "skipped for n > 6"
    th = theta_matrix(n)
    j = Fraction(n - 1, 2)
    ok = all(six_j_via_3j_sum(j, J, K) == th.entries[J][K] for J in range(n) for K in range(n))
    return ok, "projection sum equals 6-j form exactly"


def check_three_j_orthogonality(n, tol, rng):
    j = Fraction(n - 1, 2)
    ms = [j - k for k in range(n)]
    for J in range(n):
        for M in range(-J, J + 1):
            total = sum(
                (2 * J + 1) * three_j(j, j, J, m1, m2, -M).square()
                for m1 in ms
                for m2 in ms
                if m1 + m2 == M
            )
            if total != 1:
                return False, f"J={J}, M={M}: sum {total}"
    return True, "exact"


def check_theta_eigenvectors(n, tol, rng):
    th = theta_matrix(n)
    for vec, lam in theta_eigenvectors(th):
        out = apply_theta(th, vec)
        if any(o != c * lam for o, c in zip(out, vec)):
            return False, f"eigen relation fails for eigenvalue {lam}"
    return True, "exact"


def check_theta_dense_oracle(n, tol, rng):
    return _within(_maxdiff(dense.theta_from_trace(n), theta_matrix(n).array), tol)


def check_projector_flip_identity(n, tol, rng):
    F = dense.flip(n)
    worst = max(
        _maxdiff(dense.partial_time_reversal(dense.projector(n, J)), dense.q_operator(n, J) @ F) for J in range(n)
    )
    return _within(worst, tol)


def check_max_entropy_fixed_point(n, tol, rng):
    a = max_entropy_alpha(n)
    return apply_theta(theta_matrix(n), a) == a, "exact"


def check_rotational_invariance(n, tol, rng):
    rho = dense.invariant_operator(dense.random_invariant_alpha(n, rng))
    N = n
    worst = 0.0
    for jk in dense.spin_matrices(n):
        Jk = np.kron(jk, np.eye(N)) + np.kron(np.eye(N), jk)
        worst = max(worst, _maxdiff(rho @ Jk, Jk @ rho))
    worst = max(worst, _maxdiff(dense.partial_trace(rho, 1), np.eye(N) / N))
    return _within(worst, tol)


def check_v_conjugation(n, tol, rng):
    V = dense.v_matrix(n)
    worst = 0.0
    for _ in range(20):
        D = dense.rotation(n, rng.normal(size=3))
        worst = max(worst, _maxdiff(V @ D.conj() @ V.conj().T, D))
    return _within(worst, tol)


def check_negativity_oracle(n, tol, rng):
    worst = 0.0
    for _ in range(20):
        a = dense.random_invariant_alpha(n, rng)
        rho = dense.invariant_operator(a)
        worst = max(worst, abs(dense.trace_norm(dense.partial_transpose(rho)) - separability.negativity_trace_norm(a)))
    return _within(worst, tol)


def check_cross_norm_oracle(n, tol, rng):
    worst = 0.0
    for _ in range(20):
        a = dense.random_invariant_alpha(n, rng)
        rho = dense.invariant_operator(a)
        worst = max(worst, abs(dense.trace_norm(dense.realignment_map(rho)) - separability.cross_norm(a)))
    return _within(worst, tol)


def check_singlet_norms(n, tol, rng):
    s = singlet_alpha(n)
    ok = separability.negativity_trace_norm(s) == n and separability.cross_norm(s) == n
    return ok, "negativity and cross norm equal N exactly"


def check_ppt_theta_symmetry(n, tol, rng):
    if n > 5:
        return True, "skipped for n > 5"
    P = geometry.ppt_polytope(n)
    Q = geometry.image_under_theta(P, n)
    if P.exact:
        return P.vertex_set() == Q.vertex_set(), "exact vertex sets"
    a, b = P.float_vertices(), Q.float_vertices()
    if len(a) != len(b):
        return False, f"{len(a)} vs {len(b)} vertices"
    worst = max(float(np.min(np.max(np.abs(b - v), axis=1))) for v in a)
    return _within(worst, tol)


def check_fixed_points_contain_center(n, tol, rng):
    if n > 5:
        return True, "skipped for n > 5"
    F = geometry.fixed_point_set(n)
    return F.contains(max_entropy_alpha(n).reduced(), tol), f"affine dimension {F.affine_dim}"


def check_ppt_vertices(n, tol, rng):
    if n not in REFERENCE_PPT:
        return True, "no reference set"
    got = geometry.ppt_polytope(n).vertex_set()
    return got == REFERENCE_PPT[n], f"{len(got)} vertices"


def check_separable_prism(n, tol, rng):
    if n != 4:
        return True, "n = 4 only"
    S = geometry.separable_polytope(4)
    ok = S.vertex_set() == REFERENCE_SEPARABLE_4
    ok = ok and all(
        separability.classify(AlphaVector.from_reduced(4, v)) is separability.Classification.SEPARABLE
        for v in S.vertices
    )
    return ok, f"{len(S.vertices)} vertices, all classify Separable"


def check_range_inequality(n, tol, rng):
    if n != 4:
        return True, "n = 4 only"
    worst = np.inf
    for _ in range(500):
        a = dense.alpha_functionals(dense.random_pure_state(4, rng), dense.random_pure_state(4, rng))
        worst = min(worst, a[2] - a[0] / np.sqrt(5))
    return worst >= -tol, f"min alpha_2 - alpha_0/sqrt(5) = {worst:.3e}"


def check_quadrupole_eigen(n, tol, rng):
    if n != 4:
        return True, "n = 4 only"
    worst = 0.0
    for _ in range(20):
        phi = dense.random_pure_state(4, rng)
        A = dense.quadrupole_sandwich(phi)
        worst = max(worst, float(np.linalg.norm(A @ phi - phi / np.sqrt(5))))
        worst = max(worst, _maxdiff(A, dense.quadrupole_sandwich_closed_form(phi)))
    return _within(worst, tol)


def check_phi_map(n, tol, rng):
    if n != 4:
        return True, "n = 4 only"
    ok = True
    for v in REFERENCE_PPT[4]:
        a = AlphaVector.from_reduced(4, v)
        expect = separability.classify(a) is separability.Classification.SEPARABLE
        ok = ok and separability.phi_map_check(dense.invariant_operator(a), tol) == expect
    return ok, "Phi positivity agrees with the prism test on all cube vertices"


CHECKS: tuple[tuple[str, Callable], ...] = (
    ("three-j-orthogonality", check_three_j_orthogonality),
    ("theta-symmetric", check_theta_symmetric),
    ("theta-involution", check_theta_involution),
    ("theta-trace", check_theta_trace),
    ("theta-closed-forms", check_theta_closed_forms),
    ("six-j-projection-sum", check_six_j_sum),
    ("theta-eigenvectors", check_theta_eigenvectors),
    ("theta-dense-oracle", check_theta_dense_oracle),
    ("appendix-a-identity", check_projector_flip_identity),
    ("max-entropy-fixed-point", check_max_entropy_fixed_point),
    ("rotational-invariance", check_rotational_invariance),
    ("v-conjugation", check_v_conjugation),
    ("negativity-oracle", check_negativity_oracle),
    ("cross-norm-oracle", check_cross_norm_oracle),
    ("singlet-norms", check_singlet_norms),
    ("ppt-theta-symmetry", check_ppt_theta_symmetry),
    ("fixed-points-contain-center", check_fixed_points_contain_center),
    ("ppt-vertices", check_ppt_vertices),
    ("separable-prism", check_separable_prism),
    ("range-inequality", check_range_inequality),
    ("quadrupole-eigen", check_quadrupole_eigen),
    ("phi-map-detection", check_phi_map),
)


def run(n_min: int, n_max: int, tol: float = 1e-10, seed: int = 0, only=None) -> Report:
    """Run every check for each ``n`` in ``n_min..n_max``."""
    if n_min < 2 or n_max < n_min:
        raise ValueError(f"invalid range {n_min}..{n_max}")
    results = []
    for n in range(n_min, n_max + 1):
        rng = np.random.default_rng([seed, n])
        for name, fn in CHECKS:
            if only is not None and name not in only:
                continue
            try:
                ok, detail = fn(n, tol, rng)
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, n, bool(ok), detail))
    return Report((n_min, n_max), tuple(results))
