"""Decomposition, Cartan and height matrices, and the relation QS = TQ'.

Matrices are lists of rows.  Ordinary decomposition matrices have integer
entries; generalized ones may hold CycNum values, which are split into
rational coordinate matrices over a common power basis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import jsonschema
import sympy
from sympy.matrices.normalforms import smith_normal_decomp

from .blocks import p_valuation
from .cyclo import CycNum, cyc_parse

__all__ = [
    "SmithForm",
    "SignedPerm",
    "Sidecar",
    "SIDECAR_SCHEMA",
    "smith_form",
    "cartan",
    "projector",
    "brauer_height_matrix",
    "heights_from",
    "heights_from_decomposition",
    "solve_basic_set",
    "basic_set_equiv",
    "basic_set_equiv_shared",
    "load_sidecar",
    "sidecar_from_dict",
]

Matrix = list[list[int]]


def _to_sympy(m) -> sympy.Matrix:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return sympy.Matrix(rows, cols, lambda i, j: sympy.Rational(m[i][j]))


def _from_sympy(m: sympy.Matrix) -> list[list]:
    out = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            v = m[i, j]
            row.append(int(v) if v.q == 1 else Fraction(int(v.p), int(v.q)))
        out.append(row)
    return out


def matmul(a, b) -> list[list]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a) -> list[list]:
    return [list(c) for c in zip(*a)]


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]


def _int_rows(X: sympy.Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(X[i, j]) for j in range(X.cols)) for i in range(X.rows))


def smith_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Elementary divisors d1 | d2 | ... with unimodular U, V and U M V = D."""
    M = _to_sympy(m)
    if M.rows == 0 or M.cols == 0:
        return SmithForm((), (), (), ())
    D, U, V = smith_normal_decomp(M, domain=sympy.ZZ)
    divisors = tuple(int(D[i, i]) for i in range(min(D.rows, D.cols)))
    return SmithForm(divisors, _int_rows(U), _int_rows(V), _int_rows(D))


def cartan(q: Sequence[Sequence[int]]) -> Matrix:
    return matmul(transpose(q), q)


def projector(q: Sequence[Sequence]) -> list[list[Fraction]]:
    """Orthogonal projector Q (Q^t Q)^-1 Q^t onto the column space of Q."""
    Q = _to_sympy(q)
    P = Q * (Q.T * Q).inv() * Q.T
    return [[Fraction(int(P[i, j].p), int(P[i, j].q)) for j in range(P.cols)] for i in range(P.rows)]


def _rank(q) -> int:
    return _to_sympy(q).rank()


def brauer_height_matrix(q: Sequence[Sequence[int]], d: int, p: int) -> Matrix:
    """p^d Q (Q^t Q)^-1 Q^t, which must be integral."""
    if _rank(q) != len(q[0]):
        raise ValueError("decomposition matrix lacks full column rank")
    Q = _to_sympy(q)
    M = p ** d * Q * (Q.T * Q).inv() * Q.T
    if any(v.q != 1 for v in M):
        raise ValueError(f"p^d Q C^-1 Q^t is not integral for p={p}, d={d}")
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def heights_from(m: Sequence[Sequence[int]], row: int, p: int) -> list[int]:
    """v_p(m[row][c]) for every column c; row must be a height-zero character."""
    if any(v == 0 for v in m[row]):
        raise ValueError(f"row {row} has a zero entry, so it is not of height zero")
    return [p_valuation(v, p) for v in m[row]]


def heights_from_decomposition(q: Sequence[Sequence[int]], d: int, p: int) -> list[int]:
    """Heights read off the height matrix, using a row with a p'-diagonal entry."""
    m = brauer_height_matrix(q, d, p)
    for r in range(len(m)):
        if m[r][r] % p:
            return heights_from(m, r, p)
    raise ValueError("no row of height zero")


# -- basic sets --------------------------------------------------------------


@dataclass(frozen=True)
class SignedPerm:
    """T with T[a][images[a]] = signs[a]; row a of TQ' is signs[a] * Q'[images[a]]."""

    images: tuple[int, ...]
    signs: tuple[int, ...]

    def matrix(self) -> Matrix:
        k = len(self.images)
        out = [[0] * k for _ in range(k)]
        for a, (b, s) in enumerate(zip(self.images, self.signs)):
            out[a][b] = s
        return out

    def apply(self, q: Sequence[Sequence]) -> list[list]:
        return [[s * v for v in q[b]] for b, s in zip(self.images, self.signs)]

    def compose(self, other: SignedPerm) -> SignedPerm:
        """self * other as matrices."""
        return SignedPerm(tuple(other.images[b] for b in self.images),
                          tuple(s * other.signs[b] for b, s in zip(self.images, self.signs)))

    def inverse(self) -> SignedPerm:
        k = len(self.images)
        im, sg = [0] * k, [0] * k
        for a, (b, s) in enumerate(zip(self.images, self.signs)):
            im[b], sg[b] = a, s
        return SignedPerm(tuple(im), tuple(sg))


def _is_cyclotomic(q) -> bool:
    return any(isinstance(v, CycNum) for row in q for v in row)


def _coordinate_blocks(q, n: int) -> list[Matrix]:
    """Rational coordinate matrices Q_j with Q = sum_j Q_j z_n^j."""
    if not _is_cyclotomic(q):
        return [[[Fraction(v) for v in row] for row in q]]
    width = len(CycNum.rational(0).coords_in(n))
    out = []
    for j in range(width):
        out.append([[(v if isinstance(v, CycNum) else CycNum.rational(v)).coords_in(n)[j]
                     for v in row] for row in q])
    return out


def _common_modulus(*mats) -> int:
    n = 1
    for q in mats:
        for row in q:
            for v in row:
                if isinstance(v, CycNum):
                    n = math.lcm(n, v.modulus)
    return n // 2 if n % 4 == 2 else n


class _Pair:
    """One equation Q S = T Q', in coordinate form Q_j S = T Q'_j for all j."""

    def __init__(self, q, qp):
        n = _common_modulus(q, qp)
        self.qs = _coordinate_blocks(q, n)
        self.qps = _coordinate_blocks(qp, n)
        if len(self.qs) != len(self.qps):
            # pad the rational side with zero coordinates
            w = max(len(self.qs), len(self.qps))
            zero = [[Fraction(0)] * len(q[0]) for _ in q]
            self.qs += [zero] * (w - len(self.qs))
            self.qps += [[[Fraction(0)] * len(qp[0]) for _ in qp]] * (w - len(self.qps))
        stacked = [row for blk in self.qs for row in blk]
        if _rank(stacked) != len(q[0]):
            raise ValueError("first matrix lacks full column rank")
        if _rank([row for blk in self.qps for row in blk]) != len(qp[0]):
            raise ValueError("second matrix lacks full column rank")
        # S = (A^t A)^-1 A^t (T Q') stacked, with A the stacked Q
        A = _to_sympy(stacked)
        self.left = _from_sympy((A.T * A).inv() * A.T)
        wide = [sum((blk[r] for blk in self.qs), []) for r in range(len(q))]
        wide_p = [sum((blk[r] for blk in self.qps), []) for r in range(len(qp))]
        # T must carry the column space of [Q'_0 | Q'_1 | ...] onto that of [Q_0 | Q_1 | ...]
        self.P = _span_projector(wide)
        self.Pp = _span_projector(wide_p)

    def solve(self, t: SignedPerm) -> Matrix | None:
        rhs = [row for blk in self.qps for row in t.apply(blk)]
        S = matmul(self.left, rhs)
        if any(Fraction(v).denominator != 1 for row in S for v in row):
            return None
        S = [[int(v) for v in row] for row in S]
        for qj, qpj in zip(self.qs, self.qps):
            if matmul(qj, S) != t.apply(qpj):
                return None
        if abs(_to_sympy(S).det()) != 1:
            return None
        return S


def _span_projector(rows) -> list[list[Fraction]]:
    M = _to_sympy(rows)
    basis = M.columnspace()
    if not basis:
        return [[Fraction(0)] * M.rows for _ in range(M.rows)]
    B = sympy.Matrix.hstack(*basis)
    P = B * (B.T * B).inv() * B.T
    return [[Fraction(int(P[i, j].p), int(P[i, j].q)) for j in range(P.cols)] for i in range(P.rows)]


def solve_basic_set(q, qp, t: SignedPerm) -> Matrix | None:
    """The unimodular S with Q S = T Q' for this T, or None."""
    return _Pair(q, qp).solve(t)


def basic_set_equiv_shared(pairs: Sequence[tuple]) -> tuple[SignedPerm, list[Matrix]] | None:
    """One signed permutation T and unimodular S_i with Q_i S_i = T Q'_i for every pair.

    Rows are assigned in order, targets in index order with + before -; a
    partial T survives only while T P'_i T^t and P_i agree on the assigned
    rows for every pair, P_i being the projector onto the column span.
    """
    if not pairs:
        raise ValueError("no matrix pairs given")
    k = len(pairs[0][0])
    for q, qp in pairs:
        if len(q) != k or len(qp) != k:
            return None
        if len(q[0]) != len(qp[0]):
            return None
    eqs = [_Pair(q, qp) for q, qp in pairs]
    images = [0] * k
    signs = [0] * k
    used = [False] * k

    def compatible(a: int, b: int, s: int) -> bool:
        for e in eqs:
            if e.P[a][a] != e.Pp[b][b]:
                return False
            for a2 in range(a):
                if e.P[a][a2] != s * signs[a2] * e.Pp[b][images[a2]]:
                    return False
        return True

    def rec(a: int):
        if a == k:
            t = SignedPerm(tuple(images), tuple(signs))
            sols = []
            for e in eqs:
                S = e.solve(t)
                if S is None:
                    return None
                sols.append(S)
            return t, sols
        for b in range(k):
            if used[b]:
                continue
            for s in (1, -1):
                if not compatible(a, b, s):
                    continue
                images[a], signs[a], used[b] = b, s, True
                found = rec(a + 1)
                used[b] = False
                if found is not None:
                    return found
        return None

    return rec(0)


def basic_set_equiv(q, qp) -> tuple[SignedPerm, Matrix] | None:
    """(T, S) with Q S = T Q', S unimodular and T a signed permutation, or None."""
    found = basic_set_equiv_shared([(q, qp)])
    if found is None:
        return None
    t, (S,) = found
    return t, S


# -- sidecar files -----------------------------------------------------------


SIDECAR_SCHEMA = {
    "type": "object",
    "required": ["block", "p", "decomposition"],
    "properties": {
        "table": {"type": "string"},
        "block": {"type": "integer", "minimum": 0},
        "p": {"type": "integer", "minimum": 2},
        "decomposition": {
            "type": "array", "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
        },
        "generalized": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "matrix"],
                "properties": {
                    "label": {"type": "string"},
                    "matrix": {"type": "array", "items": {"type": "array", "items": {"type": ["string", "integer"]}}},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Sidecar:
    table: str | None
    block: int
    p: int
    decomposition: tuple[tuple[int, ...], ...]
    generalized: tuple[tuple[str, tuple[tuple[CycNum, ...], ...]], ...] = ()

    def matrix(self) -> Matrix:
        return [list(r) for r in self.decomposition]


def sidecar_from_dict(data: dict) -> Sidecar:
    jsonschema.validate(data, SIDECAR_SCHEMA)
    q = data["decomposition"]
    if len({len(r) for r in q}) != 1:
        raise ValueError("decomposition rows have different lengths")
    if _rank(q) != len(q[0]):
        raise ValueError("decomposition matrix lacks full column rank")
    if any(d != 1 for d in smith_form(q).divisors):
        raise ValueError("decomposition matrix has no integral left inverse")
    gen = []
    for item in data.get("generalized", []):
        m = tuple(tuple(cyc_parse(str(v)) for v in row) for row in item["matrix"])
        gen.append((item["label"], m))
    return Sidecar(data.get("table"), data["block"], data["p"],
                   tuple(tuple(r) for r in q), tuple(gen))


def load_sidecar(path: str | Path) -> Sidecar:
    return sidecar_from_dict(json.loads(Path(path).read_text()))
