from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotstate.errors import DomainError
from rotstate.exact import SignedSqrtRational, Surd
from rotstate.invariant import (
    AlphaVector,
    apply_theta,
    max_entropy_alpha,
    singlet_alpha,
    theta_eigenvectors,
    theta_matrix,
    theta_row0,
    theta_row1,
    werner_alpha,
)

s = Surd.sqrt
q = Surd.rational


def surd_matrix(th):
    return [[th.surd(J, K) for K in range(th.n)] for J in range(th.n)]


EXPECTED = {
    2: [[q(Fraction(-1, 2)), s(3) / 2], [s(3) / 2, q(Fraction(1, 2))]],
    3: [
        [q(Fraction(1, 3)), -s(3) / 3, s(5) / 3],
        [-s(3) / 3, q(Fraction(1, 2)), s(15) / 6],
        [s(5) / 3, s(15) / 6, q(Fraction(1, 6))],
    ],
    4: [
        [q(Fraction(-1, 4)), s(3) / 4, -s(5) / 4, s(7) / 4],
        [s(3) / 4, q(Fraction(-11, 20)), s(Fraction(3, 5)) / 4, s(21) * Fraction(3, 20)],
        [-s(5) / 4, s(Fraction(3, 5)) / 4, q(Fraction(3, 4)), s(Fraction(7, 5)) / 4],
        [s(7) / 4, s(21) * Fraction(3, 20), s(Fraction(7, 5)) / 4, q(Fraction(1, 20))],
    ],
}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_theta_small_n_exact(n):
    assert surd_matrix(theta_matrix(n)) == EXPECTED[n]
    ref = np.array([[float(x) for x in row] for row in EXPECTED[n]])
    assert np.max(np.abs(theta_matrix(n).array - ref)) < 1e-13


@pytest.mark.parametrize("n", range(2, 13))
def test_theta_structure(n):
    th = theta_matrix(n)
    assert th.is_symmetric()
    assert th.is_involution()
    assert th.trace() == n % 2
    for J in range(n):
        assert th.entries[J][0] == theta_row0(n, J)
        assert th.entries[J][1] == theta_row1(n, J)


def test_theta_rejects_small_n():
    with pytest.raises(DomainError):
        theta_matrix(1)
    with pytest.raises(DomainError):
        theta_row0(3, 3)


def test_theta_array_is_read_only():
    with pytest.raises(ValueError):
        theta_matrix(3).array[0, 0] = 1.0


@pytest.mark.parametrize("n", range(2, 8))
def test_eigenvectors(n):
    th = theta_matrix(n)
    for vec, lam in theta_eigenvectors(th):
        assert apply_theta(th, vec) == AlphaVector(n, tuple(c * lam for c in vec))


def test_singlet_maps_to_signed_weights():
    out = apply_theta(theta_matrix(4), singlet_alpha(4))
    assert tuple(out) == (q(-1), s(3), -s(5), s(7))


@pytest.mark.parametrize("n", range(2, 9))
def test_max_entropy_is_fixed_state(n):
    a = max_entropy_alpha(n)
    assert a.is_state()
    assert apply_theta(theta_matrix(n), a) == a


def test_alpha_vector_modes_and_validation():
    a = AlphaVector(3, (1, Fraction(1, 2), s(5)))
    assert a.exact
    b = AlphaVector(3, (1, 0.5, 2.0))
    assert not b.exact and isinstance(b[0], float)
    with pytest.raises(DomainError):
        AlphaVector(3, (1, 2))
    assert not AlphaVector(2, (3, 0)).is_state()
    assert not AlphaVector(2, (-1, 0)).is_state()


def test_lift_of_bound_entangled_vertex():
    E = AlphaVector.from_reduced(4, (Fraction(2, 3), 0, 0))
    assert E[3] == s(7) * Fraction(10, 21)  # 10/(3 sqrt 7)
    assert E.is_state()
    assert E.reduced() == (q(Fraction(2, 3)), q(0), q(0))


@settings(max_examples=50)
@given(st.integers(2, 6), st.data())
def test_reduce_lift_round_trip(n, data):
    coords = data.draw(st.lists(st.fractions(0, 2, max_denominator=20), min_size=n - 1, max_size=n - 1))
    a = AlphaVector.from_reduced(n, coords)
    assert a.trace() == 1
    assert AlphaVector.from_reduced(n, a.reduced()) == a


def test_json_round_trip():
    a = AlphaVector.from_reduced(4, (Fraction(2, 3), s(3) / 2, 0))
    assert AlphaVector.from_json(a.to_json()) == a
    f = a.to_float()
    assert AlphaVector.from_json(f.to_json()) == f


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_werner_family(n):
    # lam = 1 is the symmetric-or-antisymmetric extreme, lam = 1/N the maximally mixed state
    assert werner_alpha(n, Fraction(1, n)) == max_entropy_alpha(n)
    for lam in (-1, 0, Fraction(1, 2), 1):
        assert werner_alpha(n, lam).is_state()
    with pytest.raises(DomainError):
        werner_alpha(n, 2)


@settings(max_examples=40)
@given(st.integers(2, 7), st.lists(st.floats(0, 1), min_size=7, max_size=7))
def test_theta_preserves_trace(n, raw):
    w = np.array(raw[:n]) + 1e-3
    a = AlphaVector(n, tuple(n * w[J] / w.sum() / np.sqrt(2 * J + 1) for J in range(n)))
    assert apply_theta(theta_matrix(n), a).trace() == pytest.approx(1.0, abs=1e-12)
