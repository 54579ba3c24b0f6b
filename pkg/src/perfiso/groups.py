"""Small finite groups as permutation closures, and isomorphism fingerprints.

A fingerprint is (order, abelian, element-order histogram).  It does not
decide isomorphism in general, but separates every pair of groups the
package needs to tell apart.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

Perm = tuple[int, ...]


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian: bool
    order_histogram: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_orders": {str(o): c for o, c in self.order_histogram},
        }


def perm_mul(a: Perm, b: Perm) -> Perm:
    """Apply b first, then a."""
    return tuple(a[i] for i in b)


def closure(gens: Iterable[Hashable], mul: Callable, identity: Hashable) -> list:
    """All elements generated by ``gens`` under ``mul`` (finite groups only)."""
    gens = list(gens)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def element_order(x, mul: Callable, identity) -> int:
    n, y = 1, x
    while y != identity:
        y = mul(x, y)
        n += 1
    return n


def fingerprint(elements: Sequence, mul: Callable, identity) -> Fingerprint:
    elements = list(elements)
    abelian = all(mul(a, b) == mul(b, a) for a in elements for b in elements)
    hist = Counter(element_order(x, mul, identity) for x in elements)
    return Fingerprint(len(elements), abelian, tuple(sorted(hist.items())))


def perm_group(gens: Sequence[Perm]) -> list[Perm]:
    n = len(gens[0])
    return closure(gens, perm_mul, tuple(range(n)))


def perm_fingerprint(elements: Sequence[Perm]) -> Fingerprint:
    n = len(next(iter(elements)))
    return fingerprint(elements, perm_mul, tuple(range(n)))


# generators for the reference groups, each acting on a small point set

def cyclic_gens(n: int) -> list[Perm]:
    return [tuple((i + 1) % n for i in range(n))]


def dihedral_gens(n: int) -> list[Perm]:
    """Symmetries of the n-gon, a group of order 2n."""
    return [tuple((i + 1) % n for i in range(n)), tuple((-i) % n for i in range(n))]


def symmetric_gens(n: int) -> list[Perm]:
    return [tuple(range(1, n)) + (0,), (1, 0) + tuple(range(2, n))]


def holomorph_cyclic_gens(n: int) -> list[Perm]:
    """x -> a*x + b on Z/n with a a unit."""
    units = [a for a in range(1, n) if _gcd(a, n) == 1]
    gens = [tuple((x + 1) % n for x in range(n))]
    gens += [tuple(a * x % n for x in range(n)) for a in units if a != 1]
    return gens


def agl2_gens(p: int) -> list[Perm]:
    """Affine maps of GF(p)^2, acting on the p^2 points."""
    pts = list(product(range(p), repeat=2))
    index = {v: i for i, v in enumerate(pts)}

    def perm(f):
        return tuple(index[f(v)] for v in pts)

    gens = [perm(lambda v: ((v[0] + 1) % p, v[1]))]
    for m in ([[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2 % p, 0], [0, 1]]):
        gens.append(perm(lambda v, m=m: ((m[0][0] * v[0] + m[0][1] * v[1]) % p,
                                         (m[1][0] * v[0] + m[1][1] * v[1]) % p)))
    return gens


def direct_product_gens(*factors: list[Perm]) -> list[Perm]:
    """Generators of the direct product acting on the disjoint union."""
    sizes = [len(f[0]) for f in factors]
    out = []
    offset = 0
    total = sum(sizes)
    for gens, size in zip(factors, sizes):
        for g in gens:
            img = list(range(total))
            for i in range(size):
                img[offset + i] = offset + g[i]
            out.append(tuple(img))
        offset += size
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


_REFERENCE = {
    "D12": lambda: dihedral_gens(6),
    "S4xC2": lambda: direct_product_gens(symmetric_gens(4), cyclic_gens(2)),
    "C2xS3xC2": lambda: direct_product_gens(cyclic_gens(2), symmetric_gens(3), cyclic_gens(2)),
    "C2xHol(C9)": lambda: direct_product_gens(cyclic_gens(2), holomorph_cyclic_gens(9)),
    "C2xAGL(2,3)": lambda: direct_product_gens(cyclic_gens(2), agl2_gens(3)),
}


@lru_cache(maxsize=None)
def reference_fingerprint(name: str) -> Fingerprint:
    """Fingerprint of a named reference group, by brute-force closure."""
    return perm_fingerprint(perm_group(_REFERENCE[name]()))


def reference_names() -> tuple[str, ...]:
    return tuple(_REFERENCE)


def identify(fp: Fingerprint) -> list[str]:
    return [name for name in _REFERENCE if reference_fingerprint(name) == fp]
