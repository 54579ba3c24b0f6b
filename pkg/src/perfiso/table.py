"""Character tables: data model, JSON ingestion, validation and class arithmetic."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import jsonschema
import sympy

from .cyclo import CycNum, CycParseError, cyc_parse

__all__ = [
    "ClassData",
    "CharTable",
    "TableError",
    "OrthogonalityError",
    "PowerMapError",
    "TABLE_SCHEMA",
    "load_table",
    "table_from_dict",
    "validate_table",
    "inverse_class",
    "p_decompose",
    "p_singular_classes",
    "transforming_permutations",
]


class TableError(ValueError):
    """The input does not describe a valid character table."""


class OrthogonalityError(TableError):
    def __init__(self, kind: str, pair: tuple[int, int], value):
        super().__init__(f"{kind} orthogonality fails for pair {pair}: got {value}")
        self.kind = kind
        self.pair = pair


class PowerMapError(TableError):
    pass


TABLE_SCHEMA = {
    "type": "object",
    "required": ["name", "order", "exponent", "classes", "irreducibles"],
    "properties": {
        "name": {"type": "string"},
        "order": {"type": "integer", "minimum": 1},
        "exponent": {"type": "integer", "minimum": 1},
        "classes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "size", "order", "powermaps"],
                "properties": {
                    "name": {"type": "string"},
                    "size": {"type": "integer", "minimum": 1},
                    "order": {"type": "integer", "minimum": 1},
                    "powermaps": {
                        "type": "object",
                        "patternProperties": {"^[0-9]+$": {"type": "integer", "minimum": 0}},
                        "additionalProperties": False,
                    },
                },
            },
        },
        "irreducibles": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": ["string", "integer"]}},
        },
        "blocks": {
            "type": "object",
            "patternProperties": {
                "^[0-9]+$": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                }
            },
            "additionalProperties": False,
        },
    },
}


@dataclass(frozen=True)
class ClassData:
    name: str
    size: int
    elt_order: int
    power_maps: Mapping[int, int]


@dataclass(frozen=True, eq=False)
class CharTable:
    """An immutable, validated character table.

    Rows of ``irreducibles`` are characters, columns follow ``classes``.
    ``block_override`` optionally fixes the p-block partition for a prime.
    """

    name: str
    group_order: int
    exponent: int
    classes: tuple[ClassData, ...]
    irreducibles: tuple[tuple[CycNum, ...], ...]
    block_override: Mapping[int, tuple[tuple[int, ...], ...]] = field(default_factory=dict)
    identity_class: int = 0

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[self.identity_class].to_rational()) for row in self.irreducibles)

    def centralizer_order(self, i: int) -> int:
        return self.group_order // self.classes[i].size

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(sympy.primefactors(self.group_order)))

    def p_group_prime(self) -> int | None:
        """The prime p if this is the table of a nontrivial p-group."""
        ps = self.primes
        return ps[0] if len(ps) == 1 else None

    @cached_property
    def _column_index(self) -> dict[tuple[CycNum, ...], int]:
        return {col: i for i, col in enumerate(self.columns)}

    @cached_property
    def columns(self) -> tuple[tuple[CycNum, ...], ...]:
        return tuple(zip(*self.irreducibles))

    def class_power(self, i: int, e: int) -> int:
        """Class of g_i^e, composing power maps prime by prime.

        Primes not dividing |G| are coprime to o(g_i); their power is found
        as the Galois-conjugate column.
        """
        order = self.classes[i].elt_order
        e %= order
        if e == 0:
            return self.identity_class
        for q, mult in sorted(sympy.factorint(e).items()):
            for _ in range(mult):
                pm = self.classes[i].power_maps
                if q in pm:
                    i = pm[q]
                else:
                    col = tuple(v.galois(q) for v in self.columns[i])
                    if col not in self._column_index:
                        raise PowerMapError(f"no column is the image of class {i} under z -> z^{q}")
                    i = self._column_index[col]
        return i

    @cached_property
    def inverse_map(self) -> tuple[int, ...]:
        return tuple(self.class_power(i, c.elt_order - 1) for i, c in enumerate(self.classes))

    def __repr__(self) -> str:
        return f"CharTable({self.name!r}, order={self.group_order}, classes={self.n_classes})"


def inverse_class(t: CharTable, i: int) -> int:
    return t.inverse_map[i]


def p_decompose(t: CharTable, i: int, p: int) -> tuple[int, int]:
    """Classes of the p-part and the p'-part of g_i."""
    order = t.classes[i].elt_order
    pa = 1
    while order % (pa * p) == 0:
        pa *= p
    m = order // pa
    if pa == 1:
        return t.identity_class, i
    if m == 1:
        return i, t.identity_class
    # u = 1 mod p^a, u = 0 mod m; v = 1 - u
    u = m * pow(m, -1, pa) % order
    v = (1 - u) % order
    return t.class_power(i, u), t.class_power(i, v)


def p_singular_classes(t: CharTable, p: int) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(t.classes) if c.elt_order % p == 0)


def p_regular_classes(t: CharTable, p: int) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(t.classes) if c.elt_order % p)


# -- ingestion ---------------------------------------------------------------


def load_table(path: str | Path) -> CharTable:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TableError(f"{path}: invalid JSON: {exc}") from exc
    return table_from_dict(data)


def table_from_dict(data: dict) -> CharTable:
    try:
        jsonschema.validate(data, TABLE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise TableError(f"schema violation: {exc.message}") from exc
    classes = tuple(
        ClassData(
            name=c["name"],
            size=c["size"],
            elt_order=c["order"],
            power_maps={int(q): v for q, v in c["powermaps"].items()},
        )
        for c in data["classes"]
    )
    rows = []
    for r, row in enumerate(data["irreducibles"]):
        parsed = []
        for c, entry in enumerate(row):
            try:
                parsed.append(cyc_parse(str(entry)))
            except CycParseError as exc:
                raise TableError(f"irreducibles[{r}][{c}]: {exc}") from exc
        rows.append(tuple(parsed))
    blocks = {
        int(p): tuple(tuple(b) for b in parts) for p, parts in data.get("blocks", {}).items()
    }
    t = CharTable(
        name=data["name"],
        group_order=data["order"],
        exponent=data["exponent"],
        classes=classes,
        irreducibles=tuple(rows),
        block_override=blocks,
    )
    validate_table(t)
    return t


def table_to_dict(t: CharTable) -> dict:
    out = {
        "name": t.name,
        "order": t.group_order,
        "exponent": t.exponent,
        "classes": [
            {
                "name": c.name,
                "size": c.size,
                "order": c.elt_order,
                "powermaps": {str(q): v for q, v in sorted(c.power_maps.items())},
            }
            for c in t.classes
        ],
        "irreducibles": [[str(v) for v in row] for row in t.irreducibles],
    }
    if t.block_override:
        out["blocks"] = {str(p): [list(b) for b in parts] for p, parts in t.block_override.items()}
    return out


def validate_table(t: CharTable) -> None:
    """Exact structural checks plus both orthogonality relations."""
    n = t.n_classes
    G = t.group_order
    if len(t.irreducibles) != n:
        raise TableError(f"{len(t.irreducibles)} characters but {n} classes")
    for r, row in enumerate(t.irreducibles):
        if len(row) != n:
            raise TableError(f"character {r} has {len(row)} values, expected {n}")
    ident = t.classes[t.identity_class]
    if ident.size != 1 or ident.elt_order != 1:
        raise TableError("class 0 must be the identity class (size 1, order 1)")
    for i, c in enumerate(t.classes):
        if G % c.size:
            raise TableError(f"class {i} size {c.size} does not divide {G}")
        if G % c.elt_order or t.exponent % c.elt_order:
            raise TableError(f"class {i} order {c.elt_order} does not divide |G| and the exponent")
    if sum(c.size for c in t.classes) != G:
        raise TableError("class sizes do not sum to the group order")
    for r, row in enumerate(t.irreducibles):
        d = row[t.identity_class]
        if not d.is_rational() or d.to_rational().denominator != 1 or d.to_rational() <= 0:
            raise TableError(f"character {r} has degree {d}, not a positive integer")
        for c, v in enumerate(row):
            if t.exponent % v.modulus:
                raise TableError(f"value {v} at ({r}, {c}) is not in Q_{t.exponent}")
            if not v.is_integral():
                raise TableError(f"value {v} at ({r}, {c}) is not an algebraic integer")
    _check_power_maps(t)
    _check_orthogonality(t)
    for p, parts in t.block_override.items():
        seen = sorted(i for b in parts for i in b)
        if seen != list(range(n)) or any(not b for b in parts):
            raise TableError(f"block override for p={p} is not a partition of the characters")


def _check_power_maps(t: CharTable) -> None:
    n = t.n_classes
    for i, c in enumerate(t.classes):
        for q in t.primes:
            if q not in c.power_maps:
                raise PowerMapError(f"class {i} lacks the {q}-power map")
        for q, j in c.power_maps.items():
            if not sympy.isprime(q) or t.group_order % q:
                raise PowerMapError(f"class {i}: power map for {q}, which is not a prime divisor of |G|")
            if not 0 <= j < n:
                raise PowerMapError(f"class {i}: {q}-power map points outside the table")
            want = c.elt_order // math.gcd(c.elt_order, q)
            if t.classes[j].elt_order != want:
                raise PowerMapError(
                    f"class {i}: {q}-th power has order {t.classes[j].elt_order}, expected {want}"
                )
            if c.elt_order % q:
                col = tuple(v.galois(q) for v in t.columns[i])
                if col != t.columns[j]:
                    raise PowerMapError(f"class {i}: {q}-power map disagrees with Galois action on values")
    for i in range(n):
        j = t.class_power(i, t.classes[i].elt_order - 1)
        if t.columns[j] != tuple(v.conjugate() for v in t.columns[i]):
            raise PowerMapError(f"class {i}: inverse class {j} is not the conjugate column")


def _check_orthogonality(t: CharTable) -> None:
    G = t.group_order
    sizes = [c.size for c in t.classes]
    conj = [tuple(v.conjugate() for v in row) for row in t.irreducibles]
    rows = t.irreducibles
    for a in range(len(rows)):
        for b in range(a, len(rows)):
            total = sum((s * x * y for s, x, y in zip(sizes, rows[a], conj[b])), CycNum.rational(0))
            if total != (G if a == b else 0):
                raise OrthogonalityError("first", (a, b), total / G)
    cols = t.columns
    for i in range(t.n_classes):
        ci = [v.conjugate() for v in cols[i]]
        for j in range(i, t.n_classes):
            total = sum((x * y for x, y in zip(cols[j], ci)), CycNum.rational(0))
            want = t.centralizer_order(i) if i == j else 0
            if total != want:
                raise OrthogonalityError("second", (i, j), total)


# -- table isomorphisms --------------------------------------------------------


def transforming_permutations(
    t1: CharTable | Sequence[Sequence], t2: CharTable | Sequence[Sequence]
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (row_perm, col_perm) with X2[row_perm[r]][col_perm[c]] == X1[r][c].

    Accepts tables or plain matrices of hashable values.  For t1 == t2 the
    result is the table automorphism group (as pairs), with no power-map
    condition imposed.
    """
    X1 = t1.irreducibles if isinstance(t1, CharTable) else tuple(map(tuple, t1))
    X2 = t2.irreducibles if isinstance(t2, CharTable) else tuple(map(tuple, t2))
    n = len(X1)
    if len(X2) != n or any(len(r) != len(X1[0]) for r in X1 + X2):
        return []
    ncols = len(X1[0])
    row_keys1 = [Counter(r) for r in X1]
    row_keys2 = [Counter(r) for r in X2]
    cols2 = {col: j for j, col in enumerate(zip(*X2))}
    if len(cols2) != ncols:
        raise ValueError("second matrix has repeated columns")
    results = []
    images: list[int] = []
    used = [False] * n

    def consistent() -> bool:
        k = len(images)
        sig1 = Counter(tuple(X1[r][c] for r in range(k)) for c in range(ncols))
        sig2 = Counter(tuple(X2[images[r]][c] for r in range(k)) for c in range(ncols))
        return sig1 == sig2

    def extend() -> None:
        r = len(images)
        if r == n:
            col_perm = tuple(cols2[tuple(X1[x][c] for x in _inverse_order(images, n))] for c in range(ncols))
            results.append((tuple(images), col_perm))
            return
        for s in range(n):
            if used[s] or row_keys1[r] != row_keys2[s]:
                continue
            used[s] = True
            images.append(s)
            if consistent():
                extend()
            images.pop()
            used[s] = False

    extend()
    return results


def _inverse_order(images: list[int], n: int) -> list[int]:
    """Rows of X1 listed in the order of their images 0..n-1."""
    inv = [0] * n
    for r, s in enumerate(images):
        inv[s] = r
    return inv
