"""Structure constants of the class algebra and the character ring, and Osima's criterion.

    K_i K_j = sum_k a_ijk K_k          chi_i chi_j = sum_k b_ijk chi_k

Both tensors are computed from the character table alone, and the table can
be checked against either one: the central characters (resp. the table
columns) are simultaneous eigenvectors of the slice matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .blocks import block_partition
from .cyclo import ZERO, CycNum
from .table import CharTable, inverse_class, p_regular_classes

__all__ = [
    "StructConsts",
    "ConstVerdict",
    "OsimaResult",
    "class_constants",
    "character_constants",
    "verify_table_against_constants",
    "osima_check",
    "tensors_equivalent",
    "associativity_holds",
    "mod_p_invariants",
]


@dataclass(frozen=True)
class StructConsts:
    kind: str  # "class_algebra" or "character_ring"
    n: int
    values: tuple[tuple[tuple[int, ...], ...], ...]

    def slice(self, i: int) -> tuple[tuple[int, ...], ...]:
        """M_i with M_i[j][k] = c_ijk, the matrix of multiplication by basis element i."""
        return self.values[i]

    def as_lists(self) -> list:
        return [[list(r) for r in m] for m in self.values]


def _integer(v: CycNum, what: str) -> int:
    if not v.is_rational():
        raise ValueError(f"{what} = {v} is not rational")
    q = v.to_rational()
    if q.denominator != 1 or q < 0:
        raise ValueError(f"{what} = {q} is not a nonnegative integer")
    return int(q)


def class_constants(t: CharTable) -> StructConsts:
    n = t.n_classes
    X = t.irreducibles
    degs = t.degrees
    inv = [inverse_class(t, k) for k in range(n)]
    out = []
    for i in range(n):
        mat = []
        for j in range(n):
            pair = [X[l][i] * X[l][j] for l in range(len(X))]
            row = []
            for k in range(n):
                acc = ZERO
                for l, pl in enumerate(pair):
                    acc = acc + pl * X[l][inv[k]] / degs[l]
                c = acc * Fraction(t.classes[i].size * t.classes[j].size, t.group_order)
                row.append(_integer(c, f"a[{i}][{j}][{k}]"))
            mat.append(tuple(row))
        out.append(tuple(mat))
    return StructConsts("class_algebra", n, tuple(out))


def character_constants(t: CharTable) -> StructConsts:
    X = t.irreducibles
    n = len(X)
    sizes = [c.size for c in t.classes]
    conj = [tuple(v.conjugate() for v in row) for row in X]
    out = []
    for i in range(n):
        mat = []
        for j in range(n):
            prod_ij = [X[i][g] * X[j][g] * sizes[g] for g in range(t.n_classes)]
            row = []
            for k in range(n):
                acc = ZERO
                for g, v in enumerate(prod_ij):
                    acc = acc + v * conj[k][g]
                row.append(_integer(acc / t.group_order, f"b[{i}][{j}][{k}]"))
            mat.append(tuple(row))
        out.append(tuple(mat))
    return StructConsts("character_ring", n, tuple(out))


@dataclass(frozen=True)
class ConstVerdict:
    passed: bool
    slice_index: int | None = None
    eigen_index: int | None = None
    reason: str = ""


def verify_table_against_constants(t: CharTable, c: StructConsts) -> ConstVerdict:
    """Eigenvector test of the table against a structure-constant tensor.

    class_algebra: s_l = (omega_l(K_k))_k satisfies M_i s_l = omega_l(K_i) s_l.
    character_ring: v_l = (chi_k(g_l))_k satisfies M_i v_l = chi_i(g_l) v_l.
    """
    X = t.irreducibles
    if c.n != t.n_classes or len(X) != t.n_classes:
        return ConstVerdict(False, reason=f"dimension {c.n} does not match the table")
    if c.kind == "class_algebra":
        vectors = [[X[l][k] * t.classes[k].size / t.degrees[l] for k in range(c.n)] for l in range(len(X))]
        eigen = [[vectors[l][i] for l in range(c.n)] for i in range(c.n)]
    elif c.kind == "character_ring":
        vectors = [[X[k][l] for k in range(c.n)] for l in range(t.n_classes)]
        eigen = [[X[i][l] for l in range(c.n)] for i in range(c.n)]
    else:
        raise ValueError(f"unknown kind {c.kind!r}")
    for i in range(c.n):
        M = c.slice(i)
        for l, v in enumerate(vectors):
            lam = eigen[i][l]
            for j in range(c.n):
                acc = ZERO
                for k in range(c.n):
                    if M[j][k]:
                        acc = acc + v[k] * M[j][k]
                if acc != lam * v[j]:
                    return ConstVerdict(False, i, l, f"M_{i} v_{l} != lambda v_{l} at row {j}")
    return ConstVerdict(True)


def associativity_holds(c: StructConsts) -> bool:
    """sum_m c_ijm c_mkl == sum_m c_jkm c_iml for all i, j, k, l."""
    n, a = c.n, c.values
    for i, j, k in product(range(n), repeat=3):
        for l in range(n):
            lhs = sum(a[i][j][m] * a[m][k][l] for m in range(n))
            rhs = sum(a[j][k][m] * a[i][m][l] for m in range(n))
            if lhs != rhs:
                return False
    return True


def tensors_equivalent(a: StructConsts, b: StructConsts, labels_a=None, labels_b=None):
    """A basis relabeling pi with b[pi i][pi j][pi k] = a[i][j][k], or None.

    If labels are given, pi must preserve them (e.g. class size and element order).
    """
    n = a.n
    if b.n != n:
        return None
    A, B = a.values, b.values
    la = labels_a or [0] * n
    lb = labels_b or [0] * n
    for pi in permutations(range(n)):
        if any(la[i] != lb[pi[i]] for i in range(n)):
            continue
        if all(B[pi[i]][pi[j]][pi[k]] == A[i][j][k] for i, j, k in product(range(n), repeat=3)):
            return pi
    return None


def mod_p_invariants(c: StructConsts, p: int) -> dict:
    """Ring invariants of the algebra over GF(p): counts of idempotents and square-zero elements.

    Brute force over all p^n elements, so only for small n.
    """
    n, a = c.n, c.values
    if p ** n > 200000:
        raise ValueError("too many elements to enumerate")

    def mul(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        row = a[i][j]
                        for k in range(n):
                            out[k] += xi * yj * row[k]
        return tuple(v % p for v in out)

    idem = sqzero = 0
    for x in product(range(p), repeat=n):
        sq = mul(x, x)
        idem += sq == x
        sqzero += not any(sq)
    return {"idempotents": idem, "square_zero": sqzero}


@dataclass(frozen=True)
class OsimaResult:
    vanishes: bool
    union_of_blocks: bool
    witness: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        out = {"vanishing_condition": self.vanishes, "union_of_blocks": self.union_of_blocks}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def osima_check(t: CharTable, p: int, chars) -> OsimaResult:
    """Does sum over J of chi(g) chi(h) vanish for p-regular g and p-singular h?"""
    J = sorted(set(chars))
    if not J:
        raise ValueError("J must be nonempty")
    if any(c < 0 or c >= len(t.irreducibles) for c in J):
        raise ValueError(f"rows must lie in 0..{len(t.irreducibles) - 1}")
    regular = p_regular_classes(t, p)
    singular = [h for h in range(t.n_classes) if h not in regular]
    X = t.irreducibles
    witness = None
    for g in regular:
        for h in singular:
            acc = ZERO
            for chi in J:
                acc = acc + X[chi][g] * X[chi][h]
            if not acc.is_zero():
                witness = (g, h)
                break
        if witness:
            break
    js = set(J)
    union = all(set(b.chars) <= js or not (set(b.chars) & js) for b in block_partition(t, p))
    if witness is None and not union:
        raise AssertionError(f"vanishing holds for {J} but it is not a union of blocks")
    return OsimaResult(witness is None, union, witness)
