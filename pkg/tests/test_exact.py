import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rotstate.exact import SignedSqrtRational, Surd, as_surd, split_square

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 15, 21, 35])


@st.composite
def surds(draw, max_terms=3):
    terms = draw(st.lists(st.tuples(fractions, radicands), max_size=max_terms))
    return sum((Surd.sqrt(r) * c for c, r in terms), Surd())


def test_split_square_examples():
    assert split_square(72) == (6, 2)
    assert split_square(1) == (1, 1)
    assert split_square(49) == (7, 1)
    big = 1000003**2 * 5
    assert split_square(big) == (1000003, 5)


def test_ssr_normalises_and_renders():
    x = SignedSqrtRational(1, Fraction(1, 2))
    assert str(x) == "1*sqrt(1/2)"
    assert float(x) == pytest.approx(math.sqrt(0.5), rel=1e-16)
    assert SignedSqrtRational.from_parts(Fraction(-1, 4), Fraction(3, 5)) == SignedSqrtRational(-1, Fraction(3, 80))
    assert SignedSqrtRational.zero().is_zero()


def test_ssr_json_round_trip():
    x = SignedSqrtRational(-1, Fraction(11**2, 20**2))
    obj = x.to_json()
    assert obj == {"sign": -1, "num": "121", "den": "400"}
    assert SignedSqrtRational.from_json(json.loads(json.dumps(obj))) == x


def test_ssr_float_is_correctly_rounded_for_large_radicands():
    r = Fraction(2**200 + 1, 3)
    x = SignedSqrtRational(1, r)
    assert float(x) == pytest.approx(math.sqrt(float(r)), rel=1e-15)


@given(surds(), surds())
def test_surd_field_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a / b) * b == a


@given(surds(), surds())
def test_surd_float_is_homomorphic(a, b):
    assert float(a * b) == pytest.approx(float(a) * float(b), rel=1e-9, abs=1e-9)
    assert float(a + b) == pytest.approx(float(a) + float(b), rel=1e-9, abs=1e-9)


@given(surds())
def test_surd_sign_matches_float(a):
    f = float(a)
    if abs(f) > 1e-9:
        assert a.sign() == (1 if f > 0 else -1)
    if a.is_zero():
        assert a.sign() == 0


@given(surds())
def test_surd_parse_inverts_str(a):
    assert Surd.parse(str(a)) == a


def test_surd_sign_near_cancellation():
    # 99/70 is a very close rational approximation of sqrt(2)
    x = Surd.sqrt(2) - Fraction(99, 70)
    assert x.sign() == -1
    y = Surd.sqrt(2) + Surd.sqrt(3) - Surd.sqrt(10)
    assert y.sign() == -1
    assert float(y) < 0


def test_as_surd_rejects_floats():
    assert as_surd(Fraction(1, 3)) == Surd.rational(Fraction(1, 3))
    with pytest.raises(TypeError):
        as_surd(0.5)
