"""Regression checks over the bundled tables, run by ``perfiso corpus``."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .algebra import (associativity_holds, character_constants, class_constants, osima_check)
from .blocks import Block, block_partition
from .bundled import TABLE_NAMES, bundled_table, sidecar_names, sidecar_text
from .intmat import basic_set_equiv, cartan, heights_from_decomposition, sidecar_from_dict, smith_form
from .isometry import (SignedBijection, compose, invert, npi_group, pi_group, search_isometries,
                       verify_perfect)
from .table import CharTable


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit_seconds": self.limit, "details": self.details}


def principal(name: str, p: int) -> tuple[CharTable, Block]:
    t = bundled_table(name)
    return t, block_partition(t, p)[0]


def _c1():
    r = pi_group(*principal("s3", 3))
    ok = r.order == 12 and "D12" in r.matches
    return ok, {"order": r.order, "matches": list(r.matches)}


def _c2():
    t, b = principal("s3", 3)
    i = SignedBijection.from_map(t, b, t, b, "0:+0,1:-2,2:-1")
    full, intp = verify_perfect(i, "full"), verify_perfect(i, "int_prime")
    return full.passed and intp.passed, {"full": full.as_dict(), "int_prime": intp.as_dict()}


def _c3():
    a5, a4 = principal("a5", 2), principal("a4", 2)
    i = SignedBijection.from_map(*a5, *a4, "0:-0,1:+1,2:+2,3:+3")
    given = verify_perfect(i)
    found = search_isometries(a5, a4)
    positive = [f for f in found if all(s > 0 for s in f.signs)]
    fails = []
    for perm in permutations(a4[1].chars):
        cand = SignedBijection(*a5, *a4, perm, (1,) * len(perm))
        v = verify_perfect(cand)
        fails.append(not v.passed and v.pair == (0, 0) and v.condition == "int"
                     and v.value.to_rational() % 4 == 2)
    ok = given.passed and not positive and all(fails)
    return ok, {"given_map": given.as_dict(), "isometries": len(found), "all_positive": len(positive),
                "all_positive_candidates_failing_at_identity_mod4": sum(fails)}


def _c4():
    d8, q8 = principal("d8", 2), principal("q8", 2)
    found = search_isometries(d8, q8)
    uniform = all(f.is_uniform() for f in found)
    r = pi_group(*d8)
    nd, nq = npi_group(d8[0]), npi_group(q8[0])
    ok = (bool(found) and uniform and r.order == 48 and "S4xC2" in r.matches and nd.order == 6
          and nd.has_element_of_order(3) and nd.row_perms == nq.row_perms)
    return ok, {"d8_q8_isometries": len(found), "uniform_signs": uniform, "pi_order": r.order,
                "pi_matches": list(r.matches), "npi_order": nd.order,
                "npi_has_order_3": nd.has_element_of_order(3), "npi_equal_q8": nd.row_perms == nq.row_perms}


def _c5():
    t, b = principal("f21", 7)
    r = pi_group(t, b)
    orbit_sizes = sorted(len(o) for o in r.orbits)
    ok = r.order == 24 and orbit_sizes == [2, 3] and "C2xS3xC2" in r.matches
    return ok, {"order": r.order, "orbits": [list(o) for o in r.orbits], "matches": list(r.matches)}


def _c6():
    r9 = pi_group(*principal("c9", 3))
    r33 = pi_group(*principal("c3xc3", 3))
    n9, n33 = npi_group(bundled_table("c9")), npi_group(bundled_table("c3xc3"))
    ok = (r9.order == 108 and r33.order == 864 and n9.predicted_pi_order == 108
          and n33.predicted_pi_order == 864)
    return ok, {"c9": r9.order, "c3xc3": r33.order, "c9_from_table_automorphisms": n9.predicted_pi_order,
                "c3xc3_from_table_automorphisms": n33.predicted_pi_order}


def _c7():
    s4 = bundled_table("s4")
    b3, b2 = block_partition(s4, 3), block_partition(s4, 2)
    got3 = [(sorted(b.degrees), b.defect) for b in b3]
    ok = got3 == [([1, 1, 2], 1), ([3], 0), ([3], 0)] and len(b2) == 1 and b2[0].defect == 3
    return ok, {"s4_p3": [{"chars": list(b.chars), "defect": b.defect} for b in b3],
                "s4_p2": [{"chars": list(b.chars), "defect": b.defect} for b in b2]}


def _c8():
    q = sidecar_from_dict(json.loads(sidecar_text("s3_p3"))).matrix()
    divisors = smith_form(cartan(q)).divisors
    agree = {}
    for name in sidecar_names():
        sc = sidecar_from_dict(json.loads(sidecar_text(name)))
        blk = block_partition(bundled_table(sc.table), sc.p)[sc.block]
        agree[name] = heights_from_decomposition(sc.matrix(), blk.defect, sc.p) == list(blk.heights)
    ok = sorted(divisors) == [1, 3] and all(agree.values())
    return ok, {"s3_cartan_divisors": list(divisors), "heights_agree": agree}


def _c9():
    s4 = sidecar_from_dict(json.loads(sidecar_text("s4_p2"))).matrix()
    d8 = sidecar_from_dict(json.loads(sidecar_text("d8_p2"))).matrix()
    res = basic_set_equiv(s4, d8)
    return res is None, {"result": None if res is None else "equivalent"}


KIYOTA_PAIRS = [
    (("s3", 3), ("s3", 3)), (("s3", 3), ("s4", 3)), (("a5", 2), ("a4", 2)), (("a4", 2), ("a4", 2)),
    (("d8", 2), ("q8", 2)), (("s4", 2), ("d8", 2)), (("f21", 7), ("f21", 7)), (("c9", 3), ("c3xc3", 3)),
    (("d18", 3), ("d18", 3)), (("a5", 2), ("a5", 2)),
]


def kiyota_sample(n: int, seed: int = 0) -> tuple[int, int, list[str]]:
    """Compare the two verification modes on n random signed bijections."""
    rng = random.Random(seed)
    pairs = [(principal(*a), principal(*b)) for a, b in KIYOTA_PAIRS]
    perfect = mismatched = 0
    bad = []
    for step in range(n):
        (g, bg), (h, bh) = pairs[step % len(pairs)]
        images = list(bh.chars)
        rng.shuffle(images)
        signs = tuple(rng.choice((1, -1)) for _ in images)
        cand = SignedBijection(g, bg, h, bh, tuple(images), signs)
        full, intp = verify_perfect(cand, "full"), verify_perfect(cand, "int_prime")
        perfect += full.passed
        if full.passed != intp.passed:
            mismatched += 1
            bad.append(f"{g.name}->{h.name} {cand}")
    return perfect, mismatched, bad


def _c10(kiyota_n: int = 10000):
    details = {}
    perfect, mismatched, _ = kiyota_sample(kiyota_n)
    details["kiyota"] = {"samples": kiyota_n, "perfect": perfect, "mismatches": mismatched}
    ok = mismatched == 0

    s3 = principal("s3", 3)
    elems = search_isometries(s3, s3)
    closure = all(verify_perfect(compose(j, i)).passed for i in elems for j in elems)
    closure &= all(verify_perfect(invert(i)).passed for i in elems)
    details["s3_closure"] = closure
    ok &= closure

    rigid = {}
    for name, p in (("s3", 3), ("a4", 2), ("a5", 2), ("d8", 2), ("q8", 2), ("f21", 7), ("c9", 3), ("s4", 2)):
        rigid[name] = pi_group(*principal(name, p)).sign_rigid
    details["sign_rigidity"] = rigid
    ok &= all(rigid.values())

    osima = {}
    for name in TABLE_NAMES:
        t = bundled_table(name)
        k = len(t.irreducibles)
        if k > 9:
            continue
        good = True
        for p in t.primes:
            for r in range(1, k + 1):
                for J in combinations(range(k), r):
                    res = osima_check(t, p, J)
                    good &= res.vanishes == res.union_of_blocks
        osima[name] = good
    details["osima"] = osima
    ok &= all(osima.values())

    consts = {}
    for name in TABLE_NAMES:
        t = bundled_table(name)
        a, b = class_constants(t), character_constants(t)
        n = a.n
        sizes = [c.size for c in t.classes]
        degs = t.degrees
        good = associativity_holds(a) and associativity_holds(b)
        for i in range(n):
            for j in range(n):
                good &= a.values[i][j] == a.values[j][i] and b.values[i][j] == b.values[j][i]
                good &= sum(a.values[i][j][k] * sizes[k] for k in range(n)) == sizes[i] * sizes[j]
                good &= sum(b.values[i][j][k] * degs[k] for k in range(n)) == degs[i] * degs[j]
        consts[name] = good
    details["structure_constants"] = consts
    ok &= all(consts.values())

    agree = {}
    for name, p in (("s3", 3), ("a4", 2), ("a5", 2), ("d8", 2)):
        blk = principal(name, p)
        agree[name] = search_isometries(blk, blk) == search_isometries(blk, blk, prune=False)
    details["pruned_vs_unpruned"] = agree
    ok &= all(agree.values())
    return ok, details


CRITERIA = [
    (1, "S3 principal 3-block: PI order 12, D12 fingerprint", _c1, 1.0),
    (2, "S3 non-uniform isometry passes full and int' modes", _c2, 1.0),
    (3, "A5 -> A4 at p=2: signed map passes, no all-positive isometry", _c3, 10.0),
    (4, "D8 vs Q8: isometries, uniform signs, PI(D8) and normalized group", _c4, 30.0),
    (5, "F21 at p=7: PI order 24 with a 3+2 orbit split", _c5, 30.0),
    (6, "C9 and C3xC3 at p=3: PI orders 108 and 864", _c6, 300.0),
    (7, "S4 block partitions at p=3 and p=2", _c7, 1.0),
    (8, "Cartan Smith form of S3 and heights from decomposition matrices", _c8, 1.0),
    (9, "S4 vs D8 decomposition matrices are not basic-set equivalent", _c9, 1.0),
    (10, "property suites", _c10, 600.0),
]


def run_corpus(numbers=None) -> list[CheckResult]:
    out = []
    for number, title, fn, limit in CRITERIA:
        if numbers is not None and number not in numbers:
            continue
        t0 = time.perf_counter()
        try:
            passed, details = fn()
        except Exception as exc:  # a crash is a failed criterion, not a crashed run
            passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        out.append(CheckResult(number, title, bool(passed), time.perf_counter() - t0, limit, details))
    return out
