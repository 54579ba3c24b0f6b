from itertools import combinations

import pytest

from perfiso.blocks import (IntegralityError, block_invariant_summary, block_of, block_partition,
                            brauer_count, central_character, regular_projector, residue_factors)
from perfiso.bundled import TABLE_NAMES, bundled_table
from perfiso.cyclo import ZERO
from perfiso.table import inverse_class, p_regular_classes

from .conftest import block

CASES = [(name, p) for name in TABLE_NAMES for p in bundled_table(name).primes]


def vanishing_blocks(t, p):
    """Minimal nonempty row sets on which regular/singular column sums vanish.

    Computed by enumerating subsets, independently of central characters.
    """
    reg = set(p_regular_classes(t, p))
    X = t.irreducibles
    k = len(X)

    def vanishes(J):
        for g in reg:
            for h in range(t.n_classes):
                if h in reg:
                    continue
                acc = ZERO
                for chi in J:
                    acc = acc + X[chi][g] * X[chi][h]
                if not acc.is_zero():
                    return False
        return True

    good = [set(J) for r in range(1, k + 1) for J in combinations(range(k), r) if vanishes(J)]
    return sorted(sorted(J) for J in good if not any(o < J for o in good))


def test_central_character_examples():
    s3 = bundled_table("s3")
    assert list(central_character(s3, 0).values) == [1, 3, 2]
    omega = central_character(s3, 2).values
    assert omega[2] == -1 and omega[1] == 0


def test_central_character_integrality_guard():
    from perfiso.table import CharTable
    s3 = bundled_table("s3")
    bad = CharTable("bad", s3.group_order, s3.exponent, s3.classes,
                    s3.irreducibles[:2] + ((s3.irreducibles[2][0] * 2,) + s3.irreducibles[2][1:],))
    with pytest.raises(IntegralityError):
        central_character(bad, 2)


@pytest.mark.parametrize("name,p", [(n, p) for n, p in CASES if len(bundled_table(n).irreducibles) <= 9])
def test_partition_matches_vanishing_oracle(name, p):
    t = bundled_table(name)
    assert [list(b.chars) for b in block_partition(t, p)] == vanishing_blocks(t, p)


@pytest.mark.parametrize("name,p", CASES)
def test_partition_independent_of_residue_field(name, p):
    t = bundled_table(name)
    n = t.exponent
    while n % p == 0:
        n //= p
    ref = block_partition(t, p, 0)
    for i in range(len(residue_factors(n, p))):
        assert block_partition(t, p, i) == ref


@pytest.mark.parametrize("name,p", CASES)
def test_partition_and_heights(name, p):
    t = bundled_table(name)
    blocks = block_partition(t, p)
    rows = sorted(c for b in blocks for c in b.chars)
    assert rows == list(range(len(t.irreducibles)))
    a = 0
    while t.group_order % p ** (a + 1) == 0:
        a += 1
    for b in blocks:
        assert min(b.heights) == 0
        for chi, h in b.height_map.items():
            d = t.degrees[chi]
            assert d % p ** (a - b.defect + h) == 0 and d % p ** (a - b.defect + h + 1) != 0


@pytest.mark.parametrize("name,p", CASES)
def test_block_orthogonality(name, p):
    t = bundled_table(name)
    reg = set(p_regular_classes(t, p))
    X = t.irreducibles
    for b in block_partition(t, p):
        for g in range(t.n_classes):
            for h in range(t.n_classes):
                if (g in reg) == (h in reg):
                    continue
                hi = inverse_class(t, h)
                acc = ZERO
                for chi in b.chars:
                    acc = acc + X[chi][g] * X[chi][hi]
                assert acc.is_zero()


def test_p_group_single_block():
    for name in ("c3", "c9", "d8", "q8", "c3xc3"):
        t = bundled_table(name)
        assert len(block_partition(t, t.p_group_prime())) == 1


def test_s3_principal_3_block():
    t, b = block("s3", 3)
    assert b.chars == (0, 1, 2) and b.defect == 1 and b.heights == (0, 0, 0)


def test_s4_blocks():
    s4 = bundled_table("s4")
    b3 = block_partition(s4, 3)
    assert [b.chars for b in b3] == [(0, 1, 2), (3,), (4,)]
    assert [b.defect for b in b3] == [1, 0, 0]
    (b2,) = block_partition(s4, 2)
    assert b2.defect == 3 and b2.heights == (0, 0, 1, 0, 0)


def test_a5_blocks():
    a5 = bundled_table("a5")
    b = block_partition(a5, 2)
    assert [x.chars for x in b] == [(0, 1, 2, 3), (4,)]
    assert block_of(a5, 2, 4).defect == 0


def test_invariant_summaries():
    s = block_invariant_summary(block("s3", 3)[1])
    assert (s["k"], s["k_i"], s["defect"]) == (3, {0: 3}, 1)
    s = block_invariant_summary(block("a5", 2)[1])
    assert (s["k"], s["k_i"], s["defect"]) == (4, {0: 4}, 2)
    s = block_invariant_summary(block("s4", 3, 1)[1])
    assert (s["k"], s["k_i"], s["defect"]) == (1, {0: 1}, 0)


@pytest.mark.parametrize("name,p,l", [("s3", 3, 2), ("s4", 2, 2), ("a5", 2, 3), ("a4", 2, 3), ("d8", 2, 1),
                                      ("f21", 7, 3), ("c9", 3, 1), ("d18", 3, 2)])
def test_brauer_count(name, p, l):
    t, b = block(name, p)
    assert brauer_count(t, b) == l


@pytest.mark.parametrize("name,p", CASES)
def test_regular_projector_is_projector(name, p):
    t = bundled_table(name)
    for b in block_partition(t, p):
        P = regular_projector(t, b)
        k = len(P)
        sq = [[sum(P[i][m] * P[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
        assert sq == [list(r) for r in P]
        assert all(P[i][j] == P[j][i] for i in range(k) for j in range(k))


def test_block_override():
    import json
    from perfiso.bundled import table_text
    from perfiso.table import table_from_dict
    data = json.loads(table_text("s3"))
    data["blocks"] = {"3": [[0, 1], [2]]}
    t = table_from_dict(data)
    assert [b.chars for b in block_partition(t, 3)] == [(0, 1), (2,)]
