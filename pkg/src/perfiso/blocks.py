"""p-blocks from central-character residues, with defects and heights."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .cyclo import CycNum
from .table import CharTable, p_regular_classes

__all__ = [
    "Block",
    "CentralChar",
    "IntegralityError",
    "central_character",
    "block_partition",
    "block_of",
    "block_invariant_summary",
    "residue_factors",
    "regular_projector",
    "p_part",
    "p_valuation",
    "brauer_count",
]


class IntegralityError(ValueError):
    """A central character value is not an algebraic integer."""


def p_valuation(n, p: int) -> int:
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n: int, p: int) -> int:
    return p ** p_valuation(n, p)


@dataclass(frozen=True)
class CentralChar:
    chi: int
    values: tuple[CycNum, ...]


@dataclass(frozen=True)
class Block:
    """A p-block: rows of a character table plus defect and heights.

    ``heights`` and ``degrees`` are aligned with ``chars``.
    """

    prime: int
    chars: tuple[int, ...]
    defect: int
    heights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.chars)

    def height(self, chi: int) -> int:
        return self.heights[self.chars.index(chi)]

    @property
    def height_map(self) -> dict[int, int]:
        return dict(zip(self.chars, self.heights))


def central_character(t: CharTable, chi: int) -> CentralChar:
    deg = t.degrees[chi]
    values = []
    for j, c in enumerate(t.classes):
        w = t.irreducibles[chi][j] * c.size / deg
        if not w.is_integral():
            raise IntegralityError(f"omega_{chi}(K_{j}) = {w} is not an algebraic integer")
        values.append(w)
    return CentralChar(chi, tuple(values))


def _p_prime_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


@lru_cache(maxsize=None)
def residue_factors(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Monic irreducible factors of Phi_n over GF(p), lexicographically sorted.

    Each factor is given by its coefficients, leading coefficient first.
    """
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(sympy.cyclotomic_poly(n, x), x, modulus=p).factor_list()
    out = []
    for f, mult in factors:
        coeffs = tuple(int(c) % p for c in f.all_coeffs())
        lead_inv = pow(coeffs[0], -1, p)
        out.append(tuple(c * lead_inv % p for c in coeffs))
    return tuple(sorted(set(out)))


def _residue(coords: tuple[int, ...], factor: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Image of sum(coords[i] x^i) in GF(p)[x]/(factor)."""
    poly = [c % p for c in coords]
    low_first = list(reversed(factor))
    deg = len(low_first) - 1
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                poly[base + j] = (poly[base + j] - c * low_first[j]) % p
    poly = poly[:deg] + [0] * max(0, deg - len(poly))
    return tuple(poly)


def _make_block(t: CharTable, p: int, chars) -> Block:
    chars = tuple(sorted(chars))
    a = p_valuation(t.group_order, p)
    vals = [p_valuation(t.degrees[c], p) for c in chars]
    defect = a - min(vals)
    heights = tuple(v - (a - defect) for v in vals)
    return Block(p, chars, defect, heights, tuple(t.degrees[c] for c in chars))


def block_partition(t: CharTable, p: int, factor_index: int = 0) -> list[Block]:
    """Partition Irr(G) into p-blocks, ordered by least contained row.

    Two characters share a block iff their central characters agree on every
    p-regular class sum modulo the prime ideal (p, f(z)), where f is the
    ``factor_index``-th irreducible factor of the cyclotomic polynomial of
    the p'-part of the exponent over GF(p).
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if p in t.block_override:
        parts = t.block_override[p]
    else:
        n = _p_prime_part(t.exponent, p)
        factor = residue_factors(n, p)[factor_index]
        regular = p_regular_classes(t, p)
        groups: dict[tuple, list[int]] = {}
        for chi in range(len(t.irreducibles)):
            omega = central_character(t, chi).values
            sig = tuple(_residue(omega[j].integer_coords_in(n), factor, p) for j in regular)
            groups.setdefault(sig, []).append(chi)
        parts = list(groups.values())
    blocks = [_make_block(t, p, part) for part in parts]
    return sorted(blocks, key=lambda b: b.chars[0])


def block_of(t: CharTable, p: int, chi: int) -> Block:
    for b in block_partition(t, p):
        if chi in b.chars:
            return b
    raise IndexError(f"no character {chi}")


def block_invariant_summary(b: Block) -> dict:
    p = b.prime
    k_i = Counter(b.heights)
    residues = []
    for d in b.degrees:
        r = (d // p_part(d, p)) % p
        residues.append(min(r, p - r))
    return {
        "k": len(b.chars),
        "k_i": {i: k_i[i] for i in range(max(b.heights) + 1)},
        "defect": b.defect,
        "degrees": sorted(b.degrees),
        "pprime_residues_up_to_sign": sorted(residues),
    }


@lru_cache(maxsize=64)
def regular_projector(t: CharTable, b: Block) -> tuple[tuple[Fraction, ...], ...]:
    """Orthogonal projector onto the span of the block's p-regular columns.

    The span is Galois-stable, hence rational, and equals the column space of
    the decomposition matrix; the projector is Q (Q^t Q)^-1 Q^t.
    """
    vectors = []
    n = t.exponent
    for g in p_regular_classes(t, b.prime):
        coords = [t.irreducibles[chi][g].coords_in(n) for chi in b.chars]
        for j in range(len(coords[0])):
            vectors.append([c[j] for c in coords])
    k = len(b.chars)
    m = sympy.Matrix(len(vectors), k, lambda i, j: sympy.Rational(vectors[i][j].numerator, vectors[i][j].denominator))
    basis = sympy.Matrix.hstack(*m.T.columnspace())
    proj = basis * (basis.T * basis).inv() * basis.T
    return tuple(
        tuple(Fraction(int(proj[i, j].p), int(proj[i, j].q)) for j in range(k)) for i in range(k)
    )


def brauer_count(t: CharTable, b: Block) -> int:
    """l(B): the rank of the block's p-regular columns."""
    return int(sum(regular_projector(t, b)[i][i] for i in range(len(b.chars))))
