"""Exact arithmetic in cyclotomic fields.

Elements are stored over the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q(z)`` with ``z = exp(2 pi i / n)``, always in the smallest cyclotomic
field that contains them.  Because the power basis is an integral basis
of ``Z[z]``, integrality and divisibility are coordinate-wise tests.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import sympy

__all__ = [
    "CycNum",
    "CycParseError",
    "E",
    "cyc_parse",
    "cyc_arith",
    "cyc_galois",
    "cyc_divides",
    "phi",
]


class CycParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce a dense coefficient list modulo Phi_n (in place) and truncate."""
    poly = _cyclotomic(n)
    deg = len(poly) - 1
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            base = i - deg
            for j in range(deg):
                pj = poly[j]
                if pj:
                    vec[base + j] -= c * pj
            vec[i] = 0
    del vec[deg:]
    if len(vec) < deg:
        vec.extend([0] * (deg - len(vec)))
    return vec


@lru_cache(maxsize=None)
def _embedding(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Images of z_m^j (j < phi(m)) in the power basis of Q_n, as columns."""
    step = n // m
    cols = []
    for j in range(phi(m)):
        dense = [0] * n
        dense[step * j] = 1
        cols.append(tuple(_reduce(dense, n)))
    return tuple(cols)


@lru_cache(maxsize=None)
def _left_inverse(m: int, n: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Integer matrix L and denominator D with (L/D) * Emb(m, n) = identity."""
    cols = _embedding(m, n)
    emb = sympy.Matrix(phi(n), phi(m), lambda i, j: cols[j][i])
    left = (emb.T * emb).inv() * emb.T
    den = 1
    for entry in left:
        den = math.lcm(den, int(sympy.fraction(entry)[1]))
    rows = tuple(
        tuple(int(left[i, j] * den) for j in range(phi(n))) for i in range(phi(m))
    )
    return rows, den


@lru_cache(maxsize=None)
def _descent_candidates(n: int) -> tuple[int, ...]:
    # Q_d == Q_{d/2} for d = 2 mod 4, so those moduli never appear canonically.
    return tuple(d for d in sympy.divisors(n) if d % 4 != 2)


def _embed_num(num: tuple[int, ...], m: int, n: int) -> list[int]:
    if m == n:
        return list(num)
    out = [0] * phi(n)
    for c, col in zip(num, _embedding(m, n)):
        if c:
            for i, v in enumerate(col):
                if v:
                    out[i] += c * v
    return out


class CycNum:
    """An element of a cyclotomic field, kept in canonical reduced form.

    ``CycNum(n, coords)`` builds ``sum(coords[i] * z_n**i)``; any coordinate
    vector length up to ``n`` is accepted and reduced modulo ``Phi_n``.
    """

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, n: int, coords):
        if not isinstance(n, int) or n <= 0:
            raise ValueError(f"modulus must be a positive integer, got {n!r}")
        fracs = [Fraction(c) for c in coords]
        if len(fracs) > n:
            raise ValueError("more coordinates than the modulus allows")
        den = 1
        for f in fracs:
            den = math.lcm(den, f.denominator)
        dense = [int(f * den) for f in fracs] + [0] * (n - len(fracs))
        num = _reduce(dense, n)
        n2, num2, den2 = _canonical(n, num, den)
        self._n, self._num, self._den = n2, num2, den2
        self._hash = None

    @classmethod
    def _from_parts(cls, n: int, num, den: int, canonical: bool = False, descend: bool = True) -> CycNum:
        obj = object.__new__(cls)
        if canonical:
            obj._n, obj._num, obj._den = n, tuple(num), den
        elif descend:
            obj._n, obj._num, obj._den = _canonical(n, list(num), den)
        else:
            num, den = _strip_gcd(list(num), den)
            obj._n, obj._num, obj._den = n, tuple(num), den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> CycNum:
        q = Fraction(q)
        return cls._from_parts(1, (q.numerator,), q.denominator, canonical=True)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> CycNum:
        if n <= 0:
            raise ValueError(f"modulus must be positive, got {n}")
        dense = [0] * n
        dense[k % n] = 1
        return cls._from_parts(n, _reduce(dense, n), 1)

    # -- accessors ---------------------------------------------------------

    @property
    def modulus(self) -> int:
        return self._n

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def coords_in(self, n: int) -> tuple[Fraction, ...]:
        """Coordinates over the power basis of Q_n; n must be a multiple of the modulus."""
        if n % self._n:
            raise ValueError(f"Q_{self._n} does not embed in Q_{n}")
        return tuple(Fraction(c, self._den) for c in _embed_num(self._num, self._n, n))

    def integer_coords_in(self, n: int) -> tuple[int, ...]:
        if self._den != 1:
            raise ValueError(f"{self} is not an algebraic integer")
        if n % self._n:
            raise ValueError(f"Q_{self._n} does not embed in Q_{n}")
        return tuple(_embed_num(self._num, self._n, n))

    def is_rational(self) -> bool:
        return self._n == 1

    def is_integral(self) -> bool:
        return self._den == 1

    def is_zero(self) -> bool:
        return self._n == 1 and self._num[0] == 0

    def to_rational(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other: CycNum):
        if self._n == other._n:
            return self._n, list(self._num), list(other._num)
        n = math.lcm(self._n, other._n)
        return n, _embed_num(self._num, self._n, n), _embed_num(other._num, other._n, n)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n, a, b = self._lift(other)
        da, db = self._den, other._den
        return CycNum._from_parts(n, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum._from_parts(self._n, [-c for c in self._num], self._den, canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other._n == 1:
            q = other._num[0]
            if q == 0:
                return ZERO
            # a nonzero rational multiple stays in the same minimal field
            return CycNum._from_parts(self._n, [c * q for c in self._num], self._den * other._den, descend=False)
        if self._n == 1:
            return other * self
        n, a, b = self._lift(other)
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycNum._from_parts(n, _reduce(prod, n), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational (the only division the toolkit needs)."""
        if isinstance(other, CycNum):
            other = other.to_rational()
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("division of a cyclotomic number by zero")
        num = [c * q.denominator for c in self._num]
        den = self._den * q.numerator
        if den < 0:
            num, den = [-c for c in num], -den
        return CycNum._from_parts(self._n, num, den, descend=False)

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            raise ValueError("negative powers are not supported")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int) -> CycNum:
        """Image under z_n -> z_n^k; k must be coprime to the modulus."""
        n = self._n
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not coprime to the modulus {n}")
        if n == 1:
            return self
        dense = [0] * n
        for i, c in enumerate(self._num):
            if c:
                dense[(i * k) % n] += c
        return CycNum._from_parts(n, _reduce(dense, n), self._den)

    def conjugate(self) -> CycNum:
        return self.galois(-1)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._n == other._n and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._num, self._den))
        return self._hash

    def __str__(self) -> str:
        n = self._n
        parts = []
        for i, c in enumerate(self._num):
            if not c:
                continue
            coef = Fraction(c, self._den)
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if i == 0:
                body = str(mag)
            else:
                atom = f"E({n})" if i == 1 else f"E({n})^{i}"
                body = atom if mag == 1 else f"{mag}*{atom}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"CycNum({str(self)!r})"


def _coerce(value):
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction, Rational)):
        return CycNum.rational(value)
    return NotImplemented


def _strip_gcd(num: list[int], den: int):
    g = den
    for c in num:
        g = math.gcd(g, c)
        if g == 1:
            return num, den
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return num, den


def _canonical(n: int, num: list[int], den: int):
    """Reduce to the smallest cyclotomic field containing the element."""
    num, den = _strip_gcd(num, den)
    if n == 1:
        return 1, tuple(num), den
    if not any(num[1:]):
        return 1, (num[0],), den
    for d in _descent_candidates(n):
        if d == n:
            break
        left, lden = _left_inverse(d, n)
        x = [sum(r * c for r, c in zip(row, num) if r) for row in left]
        back = _embed_num(tuple(x), d, n)
        if all(b == c * lden for b, c in zip(back, num)):
            g = lden * den
            for c in x:
                g = math.gcd(g, c)
            x = [c // g for c in x]
            return d, tuple(x), lden * den // g
    if n % 4 == 2:
        # unreachable: Q_n always equals Q_{n/2} for n = 2 mod 4
        raise AssertionError(f"failed to descend from Q_{n}")
    return n, tuple(num), den


ZERO = CycNum._from_parts(1, (0,), 1, canonical=True)
ONE = CycNum._from_parts(1, (1,), 1, canonical=True)


def E(n: int, k: int = 1) -> CycNum:
    """The root of unity exp(2 pi i k / n)."""
    return CycNum.root_of_unity(n, k)


_TOKEN = re.compile(r"\s*(?:(E\()|(\d+)|([-+*/^)]))")


def cyc_parse(text: str) -> CycNum:
    """Parse sums of rational multiples of roots of unity, e.g. ``-E(5)-2/3*E(5)^4``."""
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise CycParseError("unexpected character", text, pos)
        kind = "E" if m.group(1) else ("int" if m.group(2) else m.group(3))
        tokens.append((kind, m.group(2), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", None, len(stripped)))
    i = 0

    def peek():
        return tokens[i][0]

    def take(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            raise CycParseError(f"expected {kind!r}, found {tok[0]!r}", text, tok[2])
        i += 1
        return tok

    def parse_uint():
        return int(take("int")[1])

    def parse_atom():
        take("E")
        pos_n = tokens[i][2]
        n = parse_uint()
        if n == 0:
            raise CycParseError("zero modulus", text, pos_n)
        take(")")
        k = 1
        if peek() == "^":
            take("^")
            k = parse_uint()
        return E(n, k)

    def parse_term(sign):
        if peek() == "E":
            return sign * parse_atom()
        num = parse_uint()
        den = 1
        if peek() == "/":
            take("/")
            pos_d = tokens[i][2]
            den = parse_uint()
            if den == 0:
                raise CycParseError("zero denominator", text, pos_d)
        q = Fraction(sign * num, den)
        if peek() == "*":
            take("*")
            return q * parse_atom()
        return CycNum.rational(q)

    if peek() == "end":
        raise CycParseError("empty expression", text, 0)
    sign = 1
    if peek() == "-":
        take("-")
        sign = -1
    total = parse_term(sign)
    while peek() in ("+", "-"):
        sign = 1 if take(peek())[0] == "+" else -1
        total = total + parse_term(sign)
    if peek() != "end":
        raise CycParseError(f"unexpected {peek()!r}", text, tokens[i][2])
    return total


def cyc_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_galois(a: CycNum, k: int) -> CycNum:
    return a.galois(k)


def cyc_divides(m: int, a: CycNum) -> bool:
    """True iff a/m is an algebraic integer; a itself must be one."""
    if m == 0:
        raise ZeroDivisionError("divisor must be nonzero")
    if not a.is_integral():
        raise ValueError(f"{a} is not an algebraic integer")
    return all(c % m == 0 for c in a._num)
