import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from perfiso.cyclo import E, CycNum, CycParseError, cyc_arith, cyc_divides, cyc_galois, cyc_parse, phi

MODULI = [1, 3, 4, 5, 7, 8, 9, 12, 15]


@st.composite
def cycnums(draw, integral=False):
    n = draw(st.sampled_from(MODULI))
    coeff = st.integers(-4, 4) if integral else st.fractions(min_value=-3, max_value=3, max_denominator=4)
    coords = draw(st.lists(coeff, min_size=n, max_size=n))
    return CycNum(n, coords)


def approx(a: CycNum) -> complex:
    z = cmath.exp(2j * math.pi / a.modulus)
    return sum(float(c) * z ** i for i, c in enumerate(a.coords))


def poly_oracle(a: CycNum, b: CycNum, op: str) -> list[Fraction]:
    """a op b as coordinates in Q_N, via sympy polynomial remainder."""
    n = math.lcm(a.modulus, b.modulus)
    x = sympy.Symbol("x")
    pa = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(a.coords_in(n)))
    pb = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(b.coords_in(n)))
    expr = {"add": pa + pb, "sub": pa - pb, "mul": pa * pb}[op]
    r = sympy.Poly(sympy.rem(sympy.expand(expr), sympy.cyclotomic_poly(n, x), x), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(r.all_coeffs())]
    return coeffs + [Fraction(0)] * (phi(n) - len(coeffs))


def test_parse_rational():
    one = cyc_parse("1")
    assert one.modulus == 1 and one.coords == (1,)


def test_vanishing_root_sum():
    assert cyc_parse("E(3)+E(3)^2") == -1


def test_golden_ratio_entry():
    b5 = cyc_parse("-E(5)-E(5)^4")
    # (1 - sqrt 5)/2
    assert abs(approx(b5) - (1 - math.sqrt(5)) / 2) < 1e-12
    assert cyc_galois(b5, 2) == cyc_parse("-E(5)^2-E(5)^3")
    assert str(cyc_galois(b5, 2)) == "-E(5)^2-E(5)^3"


def test_arith_examples():
    assert cyc_arith(E(3), E(3) ** 2, "mul") == 1
    a, b = cyc_parse("-E(5)-E(5)^4"), cyc_parse("-E(5)^2-E(5)^3")
    assert cyc_arith(a, b, "add") == 1
    assert cyc_arith(a, b, "mul") == -1


def test_galois_examples():
    assert cyc_galois(E(3), -1) == E(3) ** 2
    assert cyc_galois(CycNum.rational(Fraction(2, 3)), 5) == Fraction(2, 3)
    with pytest.raises(ValueError):
        cyc_galois(E(9), 3)


def test_divides_examples():
    assert cyc_divides(3, CycNum.rational(3))
    assert not cyc_divides(2, E(3))
    x = cyc_parse("1+E(3)-2*E(3)^2")
    assert x.coords == (3, 3)
    assert cyc_divides(3, x)
    with pytest.raises(ValueError):
        cyc_divides(2, E(3) / 2)


def test_descends_to_smallest_field():
    assert E(6) == 1 + E(3)
    assert E(6).modulus == 3
    assert E(4) ** 2 == -1 and (E(4) ** 2).modulus == 1
    assert E(8) ** 2 == E(4)
    assert hash(E(8) ** 2) == hash(E(4))
    s2 = E(8) + E(8) ** 7  # sqrt 2
    assert s2 * s2 == 2 and s2.modulus == 8


def test_parse_errors():
    with pytest.raises(CycParseError) as info:
        cyc_parse("1+*E(3)")
    assert info.value.pos == 2
    with pytest.raises(CycParseError):
        cyc_parse("E(0)")
    with pytest.raises(CycParseError):
        cyc_parse("E(3")


def test_print_format():
    assert str(cyc_parse("E(5)^3+2*E(5)")) == "2*E(5)+E(5)^3"
    assert str(CycNum.rational(0)) == "0"
    assert str(cyc_parse("-1/2*E(3)")) == "-1/2*E(3)"


@given(cycnums())
def test_print_parse_fixed_point(a):
    s = str(a)
    b = cyc_parse(s)
    assert b == a and str(b) == s


@given(cycnums(), cycnums(), st.sampled_from(["add", "sub", "mul"]))
def test_arith_matches_polynomial_oracle(a, b, op):
    n = math.lcm(a.modulus, b.modulus)
    assert list(cyc_arith(a, b, op).coords_in(n)) == poly_oracle(a, b, op)


@given(cycnums(), cycnums(), cycnums())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(cycnums(), cycnums(), st.integers(1, 2520), st.integers(1, 2520))
def test_galois_is_automorphism(a, b, k, k2):
    n = math.lcm(*MODULI)
    if math.gcd(k, n) != 1 or math.gcd(k2, n) != 1:
        return
    assert cyc_galois(a * b, k) == cyc_galois(a, k) * cyc_galois(b, k)
    assert cyc_galois(a + b, k) == cyc_galois(a, k) + cyc_galois(b, k)
    assert cyc_galois(cyc_galois(a, k), k2) == cyc_galois(a, k * k2 % n)


@given(cycnums(integral=True), st.integers(1, 6))
def test_divides_then_quotient_restores(a, m):
    if cyc_divides(m, a):
        assert (a / m).is_integral()
        assert (a / m) * m == a
    assert cyc_divides(m, a * m)


@given(cycnums(), st.sampled_from([2, 3, 4, 5]))
def test_embedding_preserves_value(a, f):
    n = a.modulus * f
    b = CycNum(n, a.coords_in(n))
    assert b == a
    assert abs(approx(b) - approx(a)) < 1e-9


@given(cycnums())
def test_coordinate_count_and_value(a):
    assert len(a.coords) == phi(a.modulus)
    assert a.modulus % 4 != 2
