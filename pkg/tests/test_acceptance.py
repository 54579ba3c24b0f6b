"""One test per acceptance criterion; each records a PASS/FAIL line for the run summary."""

import json
import time
from itertools import combinations, permutations

from perfiso.algebra import associativity_holds, character_constants, class_constants, osima_check
from perfiso.blocks import block_partition
from perfiso.bundled import TABLE_NAMES, bundled_table, sidecar_names, sidecar_text
from perfiso.corpus import kiyota_sample
from perfiso.cyclo import cyc_divides
from perfiso.groups import (cyclic_gens, dihedral_gens, direct_product_gens, perm_fingerprint, perm_group,
                            symmetric_gens)
from perfiso.intmat import basic_set_equiv, cartan, heights_from_decomposition, sidecar_from_dict, smith_form
from perfiso.isometry import (SignedBijection, compose, invert, mu_table, npi_group, pi_group,
                              search_isometries, verify_perfect)

from .conftest import block

LINES = []


def record(number, title, ok, seconds, limit):
    ok = ok and seconds < limit
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {seconds:7.2f}s (limit {limit:.0f}s)  {title}"
    LINES.append(line)
    print(line)
    return ok


def timed(fn):
    t0 = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - t0


def sidecar(name):
    return sidecar_from_dict(json.loads(sidecar_text(name)))


def test_criterion_01():
    def check():
        r = pi_group(*block("s3", 3))
        d12 = perm_fingerprint(perm_group(dihedral_gens(6)))
        return r.order == 12 and r.fingerprint.order_histogram == d12.order_histogram and not r.fingerprint.abelian
    ok, s = timed(check)
    assert record(1, "S3 3-block: PI order 12, D12 histogram", ok, s, 1)


def test_criterion_02():
    def check():
        t, b = block("s3", 3)
        i = SignedBijection.from_map(t, b, t, b, "0:+0,1:-2,2:-1")
        return bool(verify_perfect(i, "full")) and bool(verify_perfect(i, "int_prime"))
    ok, s = timed(check)
    assert record(2, "S3 non-uniform isometry passes full and int' modes", ok, s, 1)


def test_criterion_03():
    def check():
        a5, a4 = block("a5", 2), block("a4", 2)
        good = verify_perfect(SignedBijection.from_map(*a5, *a4, "0:-0,1:+1,2:+2,3:+3"))
        found = search_isometries(a5, a4)
        no_positive = not any(set(f.signs) == {1} for f in found)
        fails = True
        for perm in permutations(a4[1].chars):
            cand = SignedBijection(*a5, *a4, perm, (1, 1, 1, 1))
            mu00 = mu_table(cand)[0, 0]
            fails &= not verify_perfect(cand)
            fails &= cyc_divides(4, mu00 - 2) and not cyc_divides(4, mu00)
        return bool(good) and no_positive and bool(found) and fails
    ok, s = timed(check)
    assert record(3, "A5 -> A4: signed map perfect, every all-positive map fails mod 4", ok, s, 10)


def test_criterion_04():
    def check():
        d8, q8 = block("d8", 2), block("q8", 2)
        found = search_isometries(d8, q8)
        uniform = all(f.is_uniform() for f in found)
        r = pi_group(*d8)
        s4c2 = perm_fingerprint(perm_group(direct_product_gens(symmetric_gens(4), cyclic_gens(2))))
        n8, nq = npi_group(d8[0]), npi_group(q8[0])
        return (bool(found) and uniform and r.order == 48 and r.fingerprint == s4c2
                and n8.order == 6 and n8.has_element_of_order(3) and n8.row_perms == nq.row_perms)
    ok, s = timed(check)
    assert record(4, "D8 vs Q8: uniform isometries, PI(D8) ~ S4xC2, normalized group of order 6", ok, s, 30)


def test_criterion_05():
    def check():
        t, b = block("f21", 7)
        r = pi_group(t, b)
        orbit_sets = {frozenset(o) for o in r.orbits}
        preserved = all(frozenset(e.images[b.chars.index(c)] for c in o) == frozenset(o)
                        for e in r.elements for o in r.orbits)
        return r.order == 24 == 2 * 6 * (6 // 3) and sorted(map(len, orbit_sets)) == [2, 3] and preserved
    ok, s = timed(check)
    assert record(5, "F21 at p=7: PI order 24 with a 3+2 orbit split", ok, s, 30)


def test_criterion_06():
    def check():
        return pi_group(*block("c9", 3)).order == 108 and pi_group(*block("c3xc3", 3)).order == 2 * 9 * 48
    ok, s = timed(check)
    assert record(6, "C9 and C3xC3 at p=3: PI orders 108 and 864", ok, s, 300)


def test_criterion_07():
    def check():
        s4 = bundled_table("s4")
        b3, b2 = block_partition(s4, 3), block_partition(s4, 2)
        return ([sorted(b.degrees) for b in b3] == [[1, 1, 2], [3], [3]] and [b.defect for b in b3] == [1, 0, 0]
                and len(b2) == 1 and b2[0].defect == 3)
    ok, s = timed(check)
    assert record(7, "S4 block partitions at p=3 and p=2", ok, s, 1)


def test_criterion_08():
    def check():
        q = sidecar("s3_p3").matrix()
        if q != [[1, 0], [0, 1], [1, 1]]:
            return False
        divisors = smith_form(cartan(q)).divisors
        agree = True
        for name in sidecar_names():
            sc = sidecar(name)
            b = block_partition(bundled_table(sc.table), sc.p)[sc.block]
            agree &= heights_from_decomposition(sc.matrix(), b.defect, sc.p) == list(b.heights)
        return sorted(divisors) == [1, 3] and max(divisors) == 3 and agree
    ok, s = timed(check)
    assert record(8, "S3 Cartan Smith form {1,3}; heights from decomposition matrices agree", ok, s, 1)


def test_criterion_09():
    def check():
        return basic_set_equiv(sidecar("s4_p2").matrix(), sidecar("d8_p2").matrix()) is None
    ok, s = timed(check)
    assert record(9, "S4 and D8 decomposition matrices are not basic-set equivalent", ok, s, 1)


def _property_suites():
    perfect, mismatched, _ = kiyota_sample(10000, seed=1)
    ok = mismatched == 0 and perfect > 0

    s3 = block("s3", 3)
    elems = search_isometries(s3, s3)
    ok &= all(verify_perfect(compose(j, i)) for i in elems for j in elems)
    ok &= all(verify_perfect(invert(i)) for i in elems)

    for name, p in (("s3", 3), ("a4", 2), ("a5", 2), ("d8", 2), ("q8", 2), ("f21", 7), ("c9", 3),
                    ("s4", 2), ("d18", 3), ("c3", 3)):
        ok &= pi_group(*block(name, p)).sign_rigid

    for name in TABLE_NAMES:
        t = bundled_table(name)
        k = len(t.irreducibles)
        if k > 9:
            continue
        for p in t.primes:
            for r in range(1, k + 1):
                for J in combinations(range(k), r):
                    res = osima_check(t, p, J)
                    ok &= res.vanishes == res.union_of_blocks

    for name in TABLE_NAMES:
        t = bundled_table(name)
        a, b = class_constants(t), character_constants(t)
        sizes = [c.size for c in t.classes]
        ok &= associativity_holds(a) and associativity_holds(b)
        for i in range(a.n):
            for j in range(a.n):
                ok &= a.values[i][j] == a.values[j][i] and b.values[i][j] == b.values[j][i]
                ok &= sum(x * y for x, y in zip(a.values[i][j], sizes)) == sizes[i] * sizes[j]
                ok &= sum(x * y for x, y in zip(b.values[i][j], t.degrees)) == t.degrees[i] * t.degrees[j]

    for name, p in (("s3", 3), ("a4", 2), ("a5", 2), ("d8", 2)):
        blk = block(name, p)
        ok &= [i.key() for i in search_isometries(blk, blk)] == \
              [i.key() for i in search_isometries(blk, blk, prune=False)]
    return ok


def test_criterion_10():
    ok, s = timed(_property_suites)
    assert record(10, "property suites: Kiyota, closure, rigidity, Osima, constants, pruning", ok, s, 600)
