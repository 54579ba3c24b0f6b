import json
from collections import Counter
from math import lcm

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfiso.bundled import TABLE_NAMES, bundled_table, table_text
from perfiso.cyclo import CycNum
from perfiso.table import (OrthogonalityError, PowerMapError, TableError, inverse_class, load_table,
                           p_decompose, p_regular_classes, p_singular_classes, table_from_dict,
                           table_to_dict, transforming_permutations)

from .realizations import class_signature


def test_s3_loads():
    t = bundled_table("s3")
    assert t.n_classes == 3
    assert [c.size for c in t.classes] == [1, 3, 2]
    assert sorted(t.degrees) == [1, 1, 2]


def test_a5_a4_degrees():
    assert sorted(bundled_table("a5").degrees) == [1, 3, 3, 4, 5]
    assert sorted(bundled_table("a4").degrees) == [1, 1, 1, 3]


def test_load_from_file(tmp_path):
    path = tmp_path / "s4.json"
    path.write_text(table_text("s4"))
    t = load_table(path)
    assert t.group_order == 24 and t.degrees == (1, 1, 2, 3, 3)


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_classes_match_permutation_realization(name):
    t = bundled_table(name)
    assert Counter((c.size, c.elt_order) for c in t.classes) == class_signature(name)


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_round_trip_dict(name):
    t = bundled_table(name)
    again = table_from_dict(table_to_dict(t))
    assert again.irreducibles == t.irreducibles


def test_inverse_class_examples():
    s3 = bundled_table("s3")
    assert inverse_class(s3, 0) == 0
    assert inverse_class(s3, 1) == 1
    a5 = bundled_table("a5")
    # (12345)^-1 = (15432) is conjugate to (12345) in A5
    assert inverse_class(a5, 3) == 3
    a4 = bundled_table("a4")
    assert inverse_class(a4, 2) == 3
    f21 = bundled_table("f21")
    assert inverse_class(f21, 1) == 2 and inverse_class(f21, 3) == 4


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_inverse_involution_and_norms(name):
    t = bundled_table(name)
    for i in range(t.n_classes):
        j = inverse_class(t, i)
        assert inverse_class(t, j) == i
        assert t.classes[j].elt_order == t.classes[i].elt_order
        total = sum((row[i] * row[j] for row in t.irreducibles), CycNum.rational(0))
        assert total == t.centralizer_order(i)


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_p_decompose_parts(name):
    t = bundled_table(name)
    for p in t.primes + (5, 7, 11):
        for i, c in enumerate(t.classes):
            a, b = p_decompose(t, i, p)
            oa, ob = t.classes[a].elt_order, t.classes[b].elt_order
            assert lcm(oa, ob) == c.elt_order
            assert ob % p != 0
            assert oa == 1 or all(q == p for q in _prime_factors(oa))


def _prime_factors(n):
    out, q = set(), 2
    while n > 1:
        while n % q == 0:
            out.add(q)
            n //= q
        q += 1
    return out


def test_p_decompose_examples():
    s3 = bundled_table("s3")
    assert p_decompose(s3, 2, 3) == (2, 0)
    assert p_decompose(s3, 1, 3) == (0, 1)
    d18 = bundled_table("d18")
    # r^3 has order 3, so its 3-part is itself
    assert p_decompose(d18, 3, 3) == (3, 0)


def test_singular_classes():
    s3 = bundled_table("s3")
    assert p_singular_classes(s3, 3) == {2}
    assert p_singular_classes(s3, 2) == {1}
    assert p_singular_classes(s3, 5) == set()
    assert p_regular_classes(s3, 5) == (0, 1, 2)


def _perturbed(name, r, c, value):
    data = json.loads(table_text(name))
    data["irreducibles"][r][c] = value
    return data


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_every_single_perturbation_is_rejected(name):
    data = json.loads(table_text(name))
    for r, row in enumerate(data["irreducibles"]):
        for c, v in enumerate(row):
            bumped = _perturbed(name, r, c, f"{v}+1" if v != "0" else "1")
            with pytest.raises(TableError):
                table_from_dict(bumped)


def test_orthogonality_error_reports_pair():
    with pytest.raises(OrthogonalityError) as info:
        table_from_dict(_perturbed("s3", 2, 1, "1"))
    assert info.value.pair is not None


def test_bad_power_map_rejected():
    data = json.loads(table_text("s3"))
    data["classes"][2]["powermaps"]["2"] = 1
    with pytest.raises(PowerMapError):
        table_from_dict(data)


def test_schema_violation():
    data = json.loads(table_text("s3"))
    del data["classes"]
    with pytest.raises(TableError):
        table_from_dict(data)


def test_missing_power_map_prime():
    data = json.loads(table_text("s3"))
    del data["classes"][1]["powermaps"]["3"]
    with pytest.raises(PowerMapError):
        table_from_dict(data)


def test_identity_must_come_first():
    data = json.loads(table_text("c3"))
    data["classes"][0], data["classes"][1] = data["classes"][1], data["classes"][0]
    with pytest.raises(TableError):
        table_from_dict(data)


def test_exponent_may_be_a_multiple():
    data = json.loads(table_text("s3"))
    data["exponent"] = 12
    t = table_from_dict(data)
    assert t.irreducibles == bundled_table("s3").irreducibles


@given(st.sampled_from(["d8", "c9", "a4"]))
def test_transforming_permutations_are_automorphisms(name):
    t = bundled_table(name)
    for rows, cols in transforming_permutations(t, t):
        for r in range(len(rows)):
            for c in range(len(cols)):
                assert t.irreducibles[rows[r]][cols[c]] == t.irreducibles[r][c]


def test_automorphism_counts():
    assert len(transforming_permutations(bundled_table("d8"), bundled_table("d8"))) == 6
    assert len(transforming_permutations(bundled_table("d8"), bundled_table("q8"))) == 6
    assert len(transforming_permutations(bundled_table("c3xc3"), bundled_table("c3xc3"))) == 48
