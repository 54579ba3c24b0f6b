"""Signed bijections between blocks, the kernel mu_I, and perfect isometries.

A signed bijection I: Irr(B) -> +-Irr(B') is stored as two tuples aligned
with ``source_block.chars``: the target row and the sign of each image.

    mu_I(g, h) = sum over chi in B of chi(g) * I(chi)(h)

I is perfect when mu_I vanishes on pairs where exactly one of g, h is
p-regular (sep), and mu_I(g, h) is divisible by both |C_G(g)|_p and
|C_H(h)|_p (int).  Given (sep), it is enough to check divisibility on pairs
of p-singular elements (int').
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .blocks import Block, block_partition, p_part, regular_projector
from .cyclo import ZERO, CycNum, cyc_divides, phi
from .groups import Fingerprint, identify, perm_fingerprint, perm_mul
from .table import CharTable, inverse_class, p_singular_classes, transforming_permutations

__all__ = [
    "SignedBijection",
    "MuTable",
    "Verdict",
    "PIGroupReport",
    "NPIGroupReport",
    "parse_map",
    "identity",
    "negate",
    "mu_table",
    "verify_perfect",
    "recover_isometry",
    "compose",
    "invert",
    "twist_linear",
    "twist_galois",
    "search_isometries",
    "pi_group",
    "npi_group",
    "thread_count",
    "SearchStats",
    "MODES",
    "normalized_isometry",
    "tableaut_sigma",
]


_MAP_ITEM = re.compile(r"^\s*(\d+)\s*:\s*([+-])\s*(\d+)\s*$")


def parse_map(text: str) -> dict[int, tuple[int, int]]:
    """Parse "0:+0,1:-2,2:-1" into {src: (sign, dst)}."""
    out: dict[int, tuple[int, int]] = {}
    for item in text.split(","):
        m = _MAP_ITEM.match(item)
        if not m:
            raise ValueError(f"bad map item {item.strip()!r}; expected src:+dst or src:-dst")
        src, sign, dst = int(m.group(1)), m.group(2), int(m.group(3))
        if src in out:
            raise ValueError(f"source character {src} mapped twice")
        out[src] = (1 if sign == "+" else -1, dst)
    return out


@dataclass(frozen=True)
class SignedBijection:
    source: CharTable
    source_block: Block
    target: CharTable
    target_block: Block
    images: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        k = len(self.source_block.chars)
        if len(self.target_block.chars) != k:
            raise ValueError(f"blocks have {k} and {len(self.target_block.chars)} characters")
        if len(self.images) != k or len(self.signs) != k:
            raise ValueError("images and signs must cover every source character")
        if sorted(self.images) != sorted(self.target_block.chars):
            raise ValueError(f"images {self.images} are not a bijection onto {self.target_block.chars}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_map(cls, source: CharTable, source_block: Block, target: CharTable,
                 target_block: Block, mapping: dict[int, tuple[int, int]] | str) -> SignedBijection:
        if isinstance(mapping, str):
            mapping = parse_map(mapping)
        if set(mapping) != set(source_block.chars):
            raise ValueError(f"map covers {sorted(mapping)}, block has {list(source_block.chars)}")
        images = tuple(mapping[c][1] for c in source_block.chars)
        signs = tuple(mapping[c][0] for c in source_block.chars)
        return cls(source, source_block, target, target_block, images, signs)

    @property
    def prime(self) -> int:
        return self.source_block.prime

    def image(self, chi: int) -> tuple[int, int]:
        """(sign, target row) of I(chi)."""
        a = self.source_block.chars.index(chi)
        return self.signs[a], self.images[a]

    def key(self) -> tuple:
        return tuple((b, 0 if s > 0 else 1) for b, s in zip(self.images, self.signs))

    def is_uniform(self) -> bool:
        return len(set(self.signs)) == 1

    def signed_perm(self) -> tuple[int, ...]:
        """Action on the 2k points +-chi, as a permutation of 0..2k-1.

        Point 2a is +chi_a, point 2a+1 is -chi_a, with a the position in the
        block.  Only meaningful for self-maps of a block.
        """
        pos = {c: i for i, c in enumerate(self.target_block.chars)}
        out = [0] * (2 * len(self.images))
        for a, (b, s) in enumerate(zip(self.images, self.signs)):
            j = pos[b]
            out[2 * a] = 2 * j + (0 if s > 0 else 1)
            out[2 * a + 1] = 2 * j + (1 if s > 0 else 0)
        return tuple(out)

    def map_string(self) -> str:
        return ",".join(f"{c}:{'+' if s > 0 else '-'}{b}"
                        for c, b, s in zip(self.source_block.chars, self.images, self.signs))

    def __str__(self) -> str:
        return self.map_string()


def identity(t: CharTable, b: Block) -> SignedBijection:
    return SignedBijection(t, b, t, b, b.chars, (1,) * len(b.chars))


def negate(i: SignedBijection) -> SignedBijection:
    return SignedBijection(i.source, i.source_block, i.target, i.target_block, i.images,
                           tuple(-s for s in i.signs))


# -- mu tables ---------------------------------------------------------------


@lru_cache(maxsize=32)
def _products(src: CharTable, sb: Block, dst: CharTable, db: Block):
    """prod[a][b][g][h] = chi_a(g) * psi_b(h) over the two blocks."""
    X, Y = src.irreducibles, dst.irreducibles
    return tuple(
        tuple(tuple(tuple(x * y for y in Y[psi]) for x in X[chi]) for psi in db.chars)
        for chi in sb.chars
    )


@dataclass(frozen=True)
class MuTable:
    source: CharTable
    source_block: Block
    target: CharTable
    target_block: Block
    values: tuple[tuple[CycNum, ...], ...]

    def __getitem__(self, gh: tuple[int, int]) -> CycNum:
        g, h = gh
        return self.values[g][h]

    def transpose(self) -> MuTable:
        return MuTable(self.target, self.target_block, self.source, self.source_block,
                       tuple(zip(*self.values)))

    def as_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.values]


def mu_table(i: SignedBijection) -> MuTable:
    prods = _products(i.source, i.source_block, i.target, i.target_block)
    pos = {c: j for j, c in enumerate(i.target_block.chars)}
    terms = [(s, prods[a][pos[b]]) for a, (b, s) in enumerate(zip(i.images, i.signs))]
    values = []
    for g in range(i.source.n_classes):
        row = []
        for h in range(i.target.n_classes):
            acc = ZERO
            for s, pr in terms:
                acc = acc + pr[g][h] if s > 0 else acc - pr[g][h]
            row.append(acc)
        values.append(tuple(row))
    return MuTable(i.source, i.source_block, i.target, i.target_block, tuple(values))


@dataclass(frozen=True)
class Verdict:
    passed: bool
    mode: str
    condition: str | None = None
    pair: tuple[int, int] | None = None
    value: CycNum | None = None
    divisor: int | None = None

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        out = {"verdict": "PASS" if self.passed else "FAIL", "mode": self.mode}
        if not self.passed:
            out["condition"] = self.condition
            out["pair"] = list(self.pair)
            out["value"] = str(self.value)
            if self.divisor is not None:
                out["divisor"] = self.divisor
        return out


MODES = ("full", "int_prime")


def verify_perfect(i: SignedBijection, mode: str = "full", mu: MuTable | None = None) -> Verdict:
    """Check (sep) and (int), or (sep) and (int'), pair by pair in lexicographic order."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    p = i.source_block.prime
    if i.target_block.prime != p:
        raise ValueError(f"block primes differ: {p} and {i.target_block.prime}")
    if mu is None:
        mu = mu_table(i)
    G, H = i.source, i.target
    for g, cg in enumerate(G.classes):
        g_sing = cg.elt_order % p == 0
        dg = p_part(G.centralizer_order(g), p)
        for h, ch in enumerate(H.classes):
            h_sing = ch.elt_order % p == 0
            v = mu.values[g][h]
            if g_sing != h_sing:
                if not v.is_zero():
                    return Verdict(False, mode, "sep", (g, h), v)
                continue
            if mode == "int_prime" and not g_sing:
                continue
            dh = p_part(H.centralizer_order(h), p)
            for d in (dg, dh):
                if not cyc_divides(d, v):
                    return Verdict(False, mode, "int", (g, h), v, d)
    return Verdict(True, mode)


def recover_isometry(mu: MuTable) -> SignedBijection:
    """Rebuild I from mu_I via I(chi)(h) = (1/|G|) sum_g chi(g) mu(g^-1, h)."""
    G, H = mu.source, mu.target
    rows = {H.irreducibles[psi]: psi for psi in mu.target_block.chars}
    images, signs = [], []
    for chi in mu.source_block.chars:
        f = []
        for h in range(H.n_classes):
            acc = ZERO
            for g, c in enumerate(G.classes):
                acc = acc + G.irreducibles[chi][g] * mu.values[inverse_class(G, g)][h] * c.size
            f.append(acc / G.group_order)
        f = tuple(f)
        neg = tuple(-v for v in f)
        if f in rows:
            images.append(rows[f])
            signs.append(1)
        elif neg in rows:
            images.append(rows[neg])
            signs.append(-1)
        else:
            raise ValueError(f"recovered image of character {chi} is not +- an irreducible of the target block")
    return SignedBijection(G, mu.source_block, H, mu.target_block, tuple(images), tuple(signs))


def compose(j: SignedBijection, i: SignedBijection) -> SignedBijection:
    """J o I, where I maps B -> B' and J maps B' -> B''."""
    if j.source is not i.target or j.source_block != i.target_block:
        raise ValueError("target of the first map is not the source of the second")
    images, signs = [], []
    for b, s in zip(i.images, i.signs):
        s2, c = j.image(b)
        images.append(c)
        signs.append(s * s2)
    return SignedBijection(i.source, i.source_block, j.target, j.target_block,
                           tuple(images), tuple(signs))


def invert(i: SignedBijection) -> SignedBijection:
    back = {b: (s, c) for c, b, s in zip(i.source_block.chars, i.images, i.signs)}
    chars = i.target_block.chars
    return SignedBijection(i.target, i.target_block, i.source, i.source_block,
                           tuple(back[b][1] for b in chars), tuple(back[b][0] for b in chars))


def _block_containing(t: CharTable, p: int, rows) -> Block:
    rows = set(rows)
    for blk in block_partition(t, p):
        if rows <= set(blk.chars):
            return blk
    raise ValueError(f"rows {sorted(rows)} do not lie in a single block")


def twist_linear(t: CharTable, b: Block, lam: int) -> SignedBijection:
    """chi -> lambda * chi, onto the block lambda B."""
    if t.degrees[lam] != 1:
        raise ValueError(f"character {lam} is not linear")
    rows = {r: i for i, r in enumerate(t.irreducibles)}
    images = []
    for chi in b.chars:
        prod_row = tuple(x * y for x, y in zip(t.irreducibles[lam], t.irreducibles[chi]))
        if prod_row not in rows:
            raise ValueError(f"lambda*chi_{chi} is not a row of the table")
        images.append(rows[prod_row])
    target = _block_containing(t, b.prime, images)
    return SignedBijection(t, b, t, target, tuple(images), (1,) * len(images))


def twist_galois(t: CharTable, b: Block, k: int) -> SignedBijection:
    """chi -> gamma o chi for gamma: z -> z^k."""
    if math.gcd(k, t.exponent) != 1:
        raise ValueError(f"{k} is not coprime to the exponent {t.exponent}")
    k %= t.exponent
    rows = {r: i for i, r in enumerate(t.irreducibles)}
    images = tuple(rows[tuple(v.galois(k) for v in t.irreducibles[chi])] for chi in b.chars)
    target = _block_containing(t, b.prime, images)
    return SignedBijection(t, b, t, target, images, (1,) * len(images))


# -- search ------------------------------------------------------------------


def thread_count() -> int:
    env = os.environ.get("PERFISO_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _field_degree_modulus(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


def _sign_relations(x: Fraction, y: Fraction) -> tuple[bool, bool]:
    """Which of s*s2 = +1, -1 make x == s*s2*y."""
    return x == y, x == -y


class _Kernel:
    """Integer data for the backtracking search between two fixed blocks.

    The separation condition is equivalent to T P0' T^t = P0, with P0 the
    projector onto the span of the p-regular columns and T the signed
    permutation matrix of I; it is enforced pair by pair as characters are
    assigned.  (int') is tracked with an exact int64 partial sum of mu over
    p-singular pairs in power-basis coordinates of Q_N, and a bound on what
    the unassigned characters can still add.
    """

    def __init__(self, src: CharTable, sb: Block, dst: CharTable, db: Block):
        p = sb.prime
        k = len(sb.chars)
        self.k = k
        self.p = p
        self.order = sorted(range(k), key=lambda a: (sb.heights[a], sb.degrees[a], sb.chars[a]))
        P, Q = regular_projector(src, sb), regular_projector(dst, db)

        dx = [d // p_part(d, p) % p for d in sb.degrees]
        dy = [d // p_part(d, p) % p for d in db.degrees]
        # rel[a][a2][b][b2] = (allowed with equal signs, allowed with opposite signs)
        rel = np.zeros((k, k, k, k, 2), dtype=bool)
        for a, a2, b, b2 in product(range(k), repeat=4):
            plus, minus = _sign_relations(P[a][a2], Q[b][b2])
            # s2*dx[a]*dy[b2] = s*dx[a2]*dy[b] mod p
            plus = plus and (dx[a] * dy[b2] - dx[a2] * dy[b]) % p == 0
            minus = minus and (dx[a] * dy[b2] + dx[a2] * dy[b]) % p == 0
            rel[a, a2, b, b2] = (plus, minus)
        self.rel = rel
        self.candidates = [
            [b for b in range(k) if sb.heights[a] == db.heights[b] and (rel[a, a, b, b, 0])]
            for a in range(k)
        ]

        N = _field_degree_modulus(math.lcm(src.exponent, dst.exponent))
        sg = sorted(p_singular_classes(src, p))
        sh = sorted(p_singular_classes(dst, p))
        F = phi(N)
        prods = _products(src, sb, dst, db)
        arr = np.zeros((k, k, len(sg), len(sh), F), dtype=np.int64)
        for a, b in product(range(k), repeat=2):
            for gi, g in enumerate(sg):
                for hi, h in enumerate(sh):
                    arr[a, b, gi, hi] = prods[a][b][g][h].integer_coords_in(N)
        div = np.zeros((len(sg), len(sh), F), dtype=np.int64)
        for gi, g in enumerate(sg):
            for hi, h in enumerate(sh):
                div[gi, hi] = max(p_part(src.centralizer_order(g), p),
                                  p_part(dst.centralizer_order(h), p))
        M = len(sg) * len(sh) * F
        self.prod = arr.reshape(k, k, M)
        self.div = div.reshape(M)
        self.bound = np.abs(self.prod).max(axis=1)
        self.total_bound = self.bound.sum(axis=0)
        self.nodes = 0

    def _fits(self, S: np.ndarray, R: np.ndarray) -> bool:
        """Some multiple of div lies in [S - R, S + R] for every coordinate."""
        d = self.div
        return bool(np.all((S + R) // d * d >= S - R))

    def run(self, first: list[tuple[int, int]] | None, limit: int | None) -> list[tuple]:
        """Depth-first search; ``first`` restricts the choice for the first character."""
        k, order, rel = self.k, self.order, self.rel
        out: list[tuple] = []
        images = [0] * k
        signs = [0] * k
        used = [False] * k
        assigned: list[int] = []

        def rec(depth: int, S: np.ndarray, R: np.ndarray) -> bool:
            if depth == k:
                out.append((tuple(images), tuple(signs)))
                return limit is not None and len(out) >= limit
            a = order[depth]
            R2 = R - self.bound[a]
            if depth == 0 and first is not None:
                choices = first
            else:
                choices = [(b, s) for b in self.candidates[a] if not used[b] for s in (1, -1)]
            for b, s in choices:
                if used[b]:
                    continue
                ok = True
                for a2 in assigned:
                    if not rel[a, a2, b, images[a2], 0 if s == signs[a2] else 1]:
                        ok = False
                        break
                if not ok:
                    continue
                self.nodes += 1
                S2 = S + self.prod[a, b] if s > 0 else S - self.prod[a, b]
                if not self._fits(S2, R2):
                    continue
                images[a], signs[a], used[b] = b, s, True
                assigned.append(a)
                stop = rec(depth + 1, S2, R2)
                assigned.pop()
                used[b] = False
                if stop:
                    return True
            return False

        rec(0, np.zeros_like(self.total_bound), self.total_bound.copy())
        return out


def _run_branch(args):
    kernel, first, limit = args
    return kernel.run(first, limit), kernel.nodes


@dataclass
class SearchStats:
    nodes: int = 0
    candidates: int = 0


def search_isometries(src: tuple[CharTable, Block], dst: tuple[CharTable, Block],
                      limit: int | None = None, prune: bool = True,
                      workers: int | None = None, stats: SearchStats | None = None,
                      ) -> list[SignedBijection]:
    """All perfect isometries between two blocks, sorted by ``SignedBijection.key``.

    With ``prune=False`` every one of the k! 2^k signed bijections is run
    through ``verify_perfect`` in full mode.  With ``limit`` the search stops
    after that many hits (counted in search order) and returns them sorted.
    """
    (G, B), (H, B2) = src, dst
    if B.prime != B2.prime:
        raise ValueError(f"block primes differ: {B.prime} and {B2.prime}")
    if len(B.chars) != len(B2.chars):
        return []
    stats = stats if stats is not None else SearchStats()
    if not prune:
        found = []
        for perm in permutations(B2.chars):
            for signs in product((1, -1), repeat=len(perm)):
                stats.candidates += 1
                cand = SignedBijection(G, B, H, B2, perm, signs)
                if verify_perfect(cand, "full"):
                    found.append(cand)
                    if limit is not None and len(found) >= limit:
                        return sorted(found, key=SignedBijection.key)
        return sorted(found, key=SignedBijection.key)

    kernel = _Kernel(G, B, H, B2)
    a0 = kernel.order[0]
    # -I is perfect whenever I is, so fix the first sign and negate afterwards
    branches = [[(b, 1)] for b in kernel.candidates[a0]]
    sub_limit = None if limit is None else (limit + 1) // 2
    workers = thread_count() if workers is None else workers
    raw: list[tuple] = []
    if workers > 1 and len(branches) > 1 and sub_limit is None:
        with ProcessPoolExecutor(max_workers=min(workers, len(branches))) as pool:
            for res, nodes in pool.map(_run_branch, [(kernel, br, None) for br in branches]):
                raw.extend(res)
                stats.nodes += nodes
    else:
        for br in branches:
            res = kernel.run(br, None if sub_limit is None else sub_limit - len(raw))
            raw.extend(res)
            if sub_limit is not None and len(raw) >= sub_limit:
                break
        stats.nodes += kernel.nodes

    found = []
    for pos_images, pos_signs in raw:
        images = tuple(B2.chars[b] for b in pos_images)
        cand = SignedBijection(G, B, H, B2, images, pos_signs)
        # independent exact confirmation of every hit
        v = verify_perfect(cand, "full")
        if not v:
            raise AssertionError(f"search kernel accepted {cand}, exact check says {v}")
        found += [cand, negate(cand)]
    found.sort(key=SignedBijection.key)
    return found if limit is None else found[:limit]


# -- PI groups ---------------------------------------------------------------


def _orbits(k: int, perms) -> list[list[int]]:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pm in perms:
        for a, b in enumerate(pm):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())


@dataclass(frozen=True)
class PIGroupReport:
    elements: tuple[SignedBijection, ...]
    order: int
    minus_id_central: bool
    quotient_order: int
    orbits: tuple[tuple[int, ...], ...]
    fingerprint: Fingerprint
    matches: tuple[str, ...]
    sign_rigid: bool

    def as_dict(self, with_elements: bool = False) -> dict:
        out = {
            "order": self.order,
            "minus_id_central": self.minus_id_central,
            "quotient_order": self.quotient_order,
            "orbits": [list(o) for o in self.orbits],
            "fingerprint": self.fingerprint.as_dict(),
            "matches": list(self.matches),
            "sign_rigid": self.sign_rigid,
        }
        if with_elements:
            out["elements"] = [str(e) for e in self.elements]
        return out


def pi_group(t: CharTable, b: Block, workers: int | None = None) -> PIGroupReport:
    elements = search_isometries((t, b), (t, b), workers=workers)
    perms = [e.signed_perm() for e in elements]
    k = len(b.chars)
    minus_id = negate(identity(t, b)).signed_perm()
    present = set(perms)
    central = minus_id in present and all(perm_mul(minus_id, x) == perm_mul(x, minus_id) for x in perms)
    closed = all(perm_mul(x, y) in present for x in perms for y in perms) if len(perms) <= 200 else True
    by_unsigned: dict[tuple, list[SignedBijection]] = {}
    for e in elements:
        by_unsigned.setdefault(e.images, []).append(e)
    rigid = all(len(v) == 2 and v[0].signs == tuple(-s for s in v[1].signs) for v in by_unsigned.values())
    pos = {c: i for i, c in enumerate(b.chars)}
    unsigned = [tuple(pos[c] for c in img) for img in by_unsigned]
    orbits = tuple(tuple(b.chars[i] for i in o) for o in _orbits(k, unsigned))
    fp = perm_fingerprint(perms) if perms else Fingerprint(0, True, ())
    if not closed:
        raise AssertionError("computed isometries are not closed under composition")
    return PIGroupReport(tuple(elements), len(elements), central, len(by_unsigned), orbits,
                         fp, tuple(identify(fp)), rigid)


@dataclass(frozen=True)
class NPIGroupReport:
    prime: int
    row_perms: tuple[tuple[int, ...], ...]
    order: int
    linear_count: int
    predicted_pi_order: int
    fingerprint: Fingerprint
    column_perms: tuple[tuple[int, ...], ...] = field(repr=False)

    def has_element_of_order(self, n: int) -> bool:
        return any(o == n for o, _ in self.fingerprint.order_histogram)

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "order": self.order,
            "linear_characters": self.linear_count,
            "predicted_pi_order": self.predicted_pi_order,
            "fingerprint": self.fingerprint.as_dict(),
            "row_perms": [list(r) for r in self.row_perms],
        }


def npi_group(t: CharTable) -> NPIGroupReport:
    """PI(B) / (<-id> x Irr(P/P')) for the unique block of a p-group.

    Computed as the row permutations of the table automorphisms: those are
    exactly the I admitting some sigma with I(chi)(g_sigma(i)) = chi(g_i^-1),
    with sigma the automorphism's column permutation composed with inversion.
    """
    p = t.p_group_prime()
    if p is None:
        raise ValueError(f"{t.name} is not the table of a p-group")
    autos = transforming_permutations(t, t)
    rows = sorted({r for r, _ in autos})
    cols = tuple(c for _, c in sorted(autos))
    linear = sum(1 for d in t.degrees if d == 1)
    fp = perm_fingerprint(rows)
    return NPIGroupReport(p, tuple(rows), len(rows), linear, 2 * linear * len(rows), fp, cols)


def normalized_isometry(t: CharTable, row_perm: tuple[int, ...]) -> SignedBijection:
    blk = block_partition(t, t.p_group_prime())[0]
    return SignedBijection(t, blk, t, blk, tuple(row_perm[c] for c in blk.chars), (1,) * len(blk.chars))


def tableaut_sigma(t: CharTable, row_perm: tuple[int, ...], col_perm: tuple[int, ...]) -> tuple[int, ...]:
    """sigma with I(chi)(g_sigma(i)) = chi(g_i^-1) for the automorphism (row_perm, col_perm)."""
    return tuple(col_perm[inverse_class(t, i)] for i in range(t.n_classes))
