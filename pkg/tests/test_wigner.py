from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational as R, sqrt
from sympy.physics.wigner import clebsch_gordan as sym_cg
from sympy.physics.wigner import wigner_3j as sym_3j
from sympy.physics.wigner import wigner_6j as sym_6j

from rotstate.errors import DomainError
from rotstate.exact import SignedSqrtRational
from rotstate.invariant import theta_matrix
from rotstate.wigner import HalfInt, clebsch_gordan, half, six_j, six_j_via_3j_sum, three_j, triangle_ok

h = Fraction(1, 2)


def ssr_to_sympy(x: SignedSqrtRational):
    return x.sign * sqrt(R(x.radicand.numerator, x.radicand.denominator))


def halves(max_twice):
    return [Fraction(t, 2) for t in range(max_twice + 1)]


def projections(j):
    return [j - k for k in range(int(2 * j) + 1)]


def test_halfint_basics():
    assert half("3/2") == HalfInt(3)
    assert half(1) == HalfInt(2)
    assert -half(h) == HalfInt(-1)
    assert str(half(1.5)) == "3/2"
    with pytest.raises(DomainError):
        half(Fraction(1, 3))
    with pytest.raises(TypeError):
        half(True)


@pytest.mark.parametrize("args,expected", [((h, h, 1), True), ((h, h, 2), False), ((1, 1, h), False), ((1, 2, 3), True)])
def test_triangle_ok(args, expected):
    assert triangle_ok(*args) is expected


def test_three_j_reference_values():
    assert three_j(h, h, 0, h, -h, 0) == SignedSqrtRational(1, Fraction(1, 2))
    assert three_j(1, 1, 0, 1, -1, 0) == SignedSqrtRational(1, Fraction(1, 3))
    assert not three_j(h, h, 1, h, h, -1).is_zero()
    assert three_j(h, h, 1, h, h, 0).is_zero()


def test_three_j_rejects_bad_projection():
    with pytest.raises(DomainError):
        three_j(1, 1, 0, 2, -2, 0)
    with pytest.raises(DomainError):
        three_j(1, 1, 0, h, -h, 0)


def test_three_j_matches_sympy_exhaustively():
    for j1, j2, j3 in product(halves(4), repeat=3):
        if not triangle_ok(j1, j2, j3):
            continue
        for m1, m2 in product(projections(j1), projections(j2)):
            m3 = -m1 - m2
            if abs(m3) > j3:
                continue
            ours = ssr_to_sympy(three_j(j1, j2, j3, m1, m2, m3))
            ref = sym_3j(*(R(x.numerator, x.denominator) for x in (j1, j2, j3, m1, m2, m3)))
            assert (ours - ref).simplify() == 0, (j1, j2, j3, m1, m2, m3)


def test_clebsch_gordan_singlet_and_sympy():
    assert clebsch_gordan(h, h, h, -h, 0, 0) == SignedSqrtRational(1, Fraction(1, 2))
    assert clebsch_gordan(h, -h, h, h, 0, 0) == SignedSqrtRational(-1, Fraction(1, 2))
    assert clebsch_gordan(1, 1, 1, 0, 2, 0).is_zero()
    for j1, j2 in product(halves(3), repeat=2):
        for J in halves(6):
            if not triangle_ok(j1, j2, J):
                continue
            for m1, m2 in product(projections(j1), projections(j2)):
                M = m1 + m2
                if abs(M) > J:
                    continue
                ours = ssr_to_sympy(clebsch_gordan(j1, m1, j2, m2, J, M))
                ref = sym_cg(*(R(x.numerator, x.denominator) for x in (j1, j2, J, m1, m2, M)))
                assert (ours - ref).simplify() == 0


def test_three_j_reflection_symmetry():
    for tj in range(0, 7):
        j = Fraction(tj, 2)
        for J in range(0, tj + 1):
            for m1, m2 in product(projections(j), repeat=2):
                m3 = -m1 - m2
                if abs(m3) > J:
                    continue
                a = three_j(j, j, J, m1, m2, m3)
                b = three_j(j, j, J, -m1, -m2, -m3)
                sign = -1 if (tj + J) % 2 else 1
                assert a == (b if sign == 1 else -b)


@pytest.mark.parametrize("tj1,tj2", [(1, 1), (2, 2), (3, 1), (4, 3), (6, 6)])
def test_three_j_orthogonality(tj1, tj2):
    j1, j2 = Fraction(tj1, 2), Fraction(tj2, 2)
    for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
        J = Fraction(tJ, 2)
        for M in projections(J):
            total = sum(
                (2 * J + 1) * three_j(j1, j2, J, m1, m2, -M).square()
                for m1 in projections(j1)
                for m2 in projections(j2)
                if m1 + m2 == M
            )
            assert total == 1


def test_six_j_reference_values():
    assert six_j(h, h, 0, h, h, 0) == SignedSqrtRational.from_rational(Fraction(-1, 2))
    assert six_j(1, 1, 1, 1, 1, 1) == SignedSqrtRational.from_rational(Fraction(1, 6))
    assert six_j(1, 1, 3, 1, 1, 1).is_zero()


def test_six_j_matches_sympy():
    vals = halves(4)
    for args in product(vals, repeat=6):
        a, b, c, d, e, f = args
        if not (triangle_ok(a, b, c) and triangle_ok(a, e, f) and triangle_ok(d, b, f) and triangle_ok(d, e, c)):
            continue
        if sum(args) > 7:  # keep the sympy reference fast
            continue
        ours = ssr_to_sympy(six_j(*args))
        ref = sym_6j(*(R(x.numerator, x.denominator) for x in args))
        assert (ours - ref).simplify() == 0, args


def test_six_j_symmetries_exhaustive():
    vals = list(range(4))
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    for top in product(vals, repeat=3):
        for bot in product(vals, repeat=3):
            w = six_j(*top, *bot)
            for p in perms:
                assert six_j(*(top[i] for i in p), *(bot[i] for i in p)) == w
            # swap upper and lower entries in two columns
            assert six_j(bot[0], bot[1], top[2], top[0], top[1], bot[2]) == w
            assert six_j(top[0], bot[1], bot[2], bot[0], top[1], top[2]) == w


@pytest.mark.parametrize(
    "j,J,K,expected",
    [
        (h, 0, 0, SignedSqrtRational.from_rational(Fraction(-1, 2))),
        (1, 0, 2, SignedSqrtRational.from_parts(Fraction(1, 3), 5)),
        (Fraction(3, 2), 1, 1, SignedSqrtRational.from_rational(Fraction(-11, 20))),
    ],
)
def test_six_j_via_3j_sum_reference(j, J, K, expected):
    assert six_j_via_3j_sum(j, J, K) == expected


def test_six_j_via_3j_sum_equals_theta_up_to_2j_5():
    for tj in range(1, 6):
        n = tj + 1
        th = theta_matrix(n)
        for J in range(n):
            for K in range(n):
                assert six_j_via_3j_sum(Fraction(tj, 2), J, K) == th.entries[J][K]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=6, max_size=6))
def test_symbols_square_to_radicand(tw):
    w = six_j(*(Fraction(t, 2) for t in tw))
    f = float(w)
    if not w.is_zero():
        assert f * f == pytest.approx(float(w.radicand), rel=1e-15)


def test_concurrent_evaluation_is_consistent():
    from concurrent.futures import ThreadPoolExecutor

    from rotstate import wigner

    args = [(Fraction(t, 2), Fraction(t, 2), J, Fraction(t, 2), Fraction(t, 2), K)
            for t in range(20, 41, 4) for J in range(0, 6) for K in range(0, 6)]
    wigner._six_j_twice.cache_clear()
    with ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda a: six_j(*a), args))
    wigner._six_j_twice.cache_clear()
    assert parallel == [six_j(*a) for a in args]
