from itertools import combinations

import pytest

from perfiso.algebra import (StructConsts, associativity_holds, character_constants, class_constants,
                             mod_p_invariants, osima_check, tensors_equivalent,
                             verify_table_against_constants)
from perfiso.bundled import TABLE_NAMES, bundled_table
from perfiso.table import CharTable

from .realizations import brute_class_constants


def test_s3_class_constants():
    a = class_constants(bundled_table("s3")).values
    # K of transpositions is class 1; its square is 3 K_0 + 3 K_2
    assert a[1][1] == (3, 0, 3)
    assert a[0][1] == (0, 1, 0)


def test_s3_character_constants():
    b = character_constants(bundled_table("s3")).values
    assert b[2][2] == (1, 1, 1)
    assert b[1][1] == (1, 0, 0)


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_identity_rows(name):
    t = bundled_table(name)
    n = t.n_classes
    delta = tuple(tuple(int(j == k) for k in range(n)) for j in range(n))
    assert class_constants(t).values[0] == delta
    assert character_constants(t).values[0] == delta


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_counting_identities_and_symmetry(name):
    t = bundled_table(name)
    a, b = class_constants(t), character_constants(t)
    sizes = [c.size for c in t.classes]
    n = a.n
    for i in range(n):
        for j in range(n):
            assert sum(a.values[i][j][k] * sizes[k] for k in range(n)) == sizes[i] * sizes[j]
            assert sum(b.values[i][j][k] * t.degrees[k] for k in range(n)) == t.degrees[i] * t.degrees[j]
            assert a.values[i][j] == a.values[j][i]
            assert b.values[i][j] == b.values[j][i]
    assert associativity_holds(a) and associativity_holds(b)


@pytest.mark.parametrize("name", [n for n in TABLE_NAMES if n != "c3xc3"])
def test_class_constants_match_group_multiplication(name):
    t = bundled_table(name)
    brute, labels = brute_class_constants(name)
    ours = class_constants(t)
    mine = [(c.size, c.elt_order) for c in t.classes]
    assert tensors_equivalent(ours, StructConsts("class_algebra", len(brute), tuple(
        tuple(tuple(r) for r in m) for m in brute)), mine, labels) is not None


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_table_passes_against_its_constants(name):
    t = bundled_table(name)
    assert verify_table_against_constants(t, class_constants(t))
    assert verify_table_against_constants(t, character_constants(t))


def _altered_s3():
    t = bundled_table("s3")
    X = [list(r) for r in t.irreducibles]
    X[2][2] = X[2][2] + 1
    return CharTable("s3x", t.group_order, t.exponent, t.classes, tuple(tuple(r) for r in X))


def test_perturbed_table_fails():
    s3 = bundled_table("s3")
    v = verify_table_against_constants(_altered_s3(), class_constants(s3))
    assert not v.passed
    assert not verify_table_against_constants(_altered_s3(), character_constants(s3)).passed


def test_d8_table_against_q8_constants():
    d8, q8 = bundled_table("d8"), bundled_table("q8")
    assert verify_table_against_constants(d8, class_constants(q8))
    assert verify_table_against_constants(q8, class_constants(d8))
    assert verify_table_against_constants(d8, character_constants(q8))


def test_d8_q8_class_algebras():
    d8, q8 = bundled_table("d8"), bundled_table("q8")
    ad, aq = class_constants(d8), class_constants(q8)
    lab_d = [(c.size, c.elt_order) for c in d8.classes]
    lab_q = [(c.size, c.elt_order) for c in q8.classes]
    # no relabeling respects element orders, since D8 has involutions outside the center
    assert tensors_equivalent(ad, aq, lab_d, lab_q) is None
    # equal tables force equal constants
    assert ad == aq
    assert tensors_equivalent(ad, aq, [c.size for c in d8.classes], [c.size for c in q8.classes]) is not None


def test_q8_class_algebra_and_character_ring_differ_mod_2():
    q8 = bundled_table("q8")
    a, b = class_constants(q8), character_constants(q8)
    assert mod_p_invariants(a, 2) == {"idempotents": 2, "square_zero": 16}
    assert mod_p_invariants(b, 2) == {"idempotents": 2, "square_zero": 8}
    assert tensors_equivalent(a, b) is None


def test_mod_p_invariants_guard():
    with pytest.raises(ValueError):
        mod_p_invariants(class_constants(bundled_table("a5")), 13)


def test_integrality_guard():
    t = bundled_table("s3")
    X = [list(r) for r in t.irreducibles]
    X[2][1] = X[2][1] + 1
    bad = CharTable("bad", t.group_order, t.exponent, t.classes, tuple(tuple(r) for r in X))
    with pytest.raises(ValueError):
        class_constants(bad)


def test_osima_examples():
    s3 = bundled_table("s3")
    r = osima_check(s3, 3, [0, 1, 2])
    assert r.vanishes and r.union_of_blocks
    r = osima_check(s3, 3, [0])
    assert not r.vanishes and not r.union_of_blocks and r.witness == (0, 2)
    s4 = bundled_table("s4")
    r = osima_check(s4, 3, [3, 4])
    assert r.vanishes and r.union_of_blocks
    with pytest.raises(ValueError):
        osima_check(s3, 3, [])
    with pytest.raises(ValueError):
        osima_check(s3, 3, [7])


@pytest.mark.parametrize("name", [n for n in TABLE_NAMES if len(bundled_table(n).irreducibles) <= 9])
def test_osima_both_directions(name):
    t = bundled_table(name)
    k = len(t.irreducibles)
    for p in t.primes:
        for r in range(1, k + 1):
            for J in combinations(range(k), r):
                res = osima_check(t, p, J)
                assert res.vanishes == res.union_of_blocks


def test_osima_result_dict():
    d = osima_check(bundled_table("s3"), 3, [0]).as_dict()
    assert d == {"vanishing_condition": False, "union_of_blocks": False, "witness": [0, 2]}


def test_dimension_mismatch():
    v = verify_table_against_constants(bundled_table("s3"), class_constants(bundled_table("a4")))
    assert not v.passed
    with pytest.raises(ValueError):
        verify_table_against_constants(bundled_table("s3"), StructConsts("other", 3, class_constants(
            bundled_table("s3")).values))
