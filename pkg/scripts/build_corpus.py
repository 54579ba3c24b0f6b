"""Regenerate the bundled character tables in src/perfiso/data/.

Each table is written down from its textbook description; load_table()
re-validates everything (orthogonality, power maps) when the corpus is used,
and tests/test_table.py compares class data against brute-force permutation
realizations of the same groups.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "perfiso" / "data"


def root(n, k):
    k %= n
    return "1" if k == 0 else (f"E({n})" if k == 1 else f"E({n})^{k}")


def cls(name, size, order, **pm):
    return {"name": name, "size": size, "order": order,
            "powermaps": {k.lstrip("p"): v for k, v in pm.items()}}


def cyclic(n, p):
    classes = [cls("1" if k == 0 else f"a^{k}", 1, n // _gcd(n, k), **{f"p{p}": (p * k) % n})
               for k in range(n)]
    irr = [[root(n, j * k) for k in range(n)] for j in range(n)]
    return {"name": f"C{n}", "order": n, "exponent": n, "classes": classes, "irreducibles": irr}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def c3xc3():
    elts = [(i, j) for i in range(3) for j in range(3)]
    classes = [cls("1" if (i, j) == (0, 0) else f"a^{i}b^{j}", 1, 1 if (i, j) == (0, 0) else 3, p3=0)
               for i, j in elts]
    irr = [[root(3, s * i + t * j) for i, j in elts] for s, t in elts]
    return {"name": "C3xC3", "order": 9, "exponent": 3, "classes": classes, "irreducibles": irr}


def s3():
    return {
        "name": "S3", "order": 6, "exponent": 6,
        "classes": [cls("1", 1, 1, p2=0, p3=0), cls("(12)", 3, 2, p2=0, p3=1),
                    cls("(123)", 2, 3, p2=2, p3=0)],
        "irreducibles": [["1", "1", "1"], ["1", "-1", "1"], ["2", "0", "-1"]],
    }


def d8_like(name, second_orders):
    o_j, o_k = second_orders
    return {
        "name": name, "order": 8, "exponent": 4,
        "classes": [cls("1", 1, 1, p2=0), cls("z", 1, 2, p2=0), cls("r" if name == "D8" else "i", 2, 4, p2=1),
                    cls("s" if name == "D8" else "j", 2, o_j, p2=0 if o_j == 2 else 1),
                    cls("sr" if name == "D8" else "k", 2, o_k, p2=0 if o_k == 2 else 1)],
        "irreducibles": [["1", "1", "1", "1", "1"], ["1", "1", "1", "-1", "-1"],
                         ["1", "1", "-1", "1", "-1"], ["1", "1", "-1", "-1", "1"],
                         ["2", "-2", "0", "0", "0"]],
    }


def a4():
    return {
        "name": "A4", "order": 12, "exponent": 6,
        "classes": [cls("1", 1, 1, p2=0, p3=0), cls("(12)(34)", 3, 2, p2=0, p3=1),
                    cls("(123)", 4, 3, p2=3, p3=0), cls("(132)", 4, 3, p2=2, p3=0)],
        "irreducibles": [["1", "1", "1", "1"], ["1", "1", "E(3)", "E(3)^2"],
                         ["1", "1", "E(3)^2", "E(3)"], ["3", "-1", "0", "0"]],
    }


def s4():
    return {
        "name": "S4", "order": 24, "exponent": 12,
        "classes": [cls("1", 1, 1, p2=0, p3=0), cls("(12)", 6, 2, p2=0, p3=1),
                    cls("(12)(34)", 3, 2, p2=0, p3=2), cls("(123)", 8, 3, p2=3, p3=0),
                    cls("(1234)", 6, 4, p2=2, p3=4)],
        "irreducibles": [["1", "1", "1", "1", "1"], ["1", "-1", "1", "1", "-1"],
                         ["2", "0", "2", "-1", "0"], ["3", "1", "-1", "0", "-1"],
                         ["3", "-1", "-1", "0", "1"]],
    }


def a5():
    b5 = "-E(5)-E(5)^4"      # (1 - sqrt 5)/2
    b5s = "-E(5)^2-E(5)^3"   # (1 + sqrt 5)/2
    return {
        "name": "A5", "order": 60, "exponent": 30,
        "classes": [cls("1", 1, 1, p2=0, p3=0, p5=0), cls("(12)(34)", 15, 2, p2=0, p3=1, p5=1),
                    cls("(123)", 20, 3, p2=2, p3=0, p5=2), cls("(12345)", 12, 5, p2=4, p3=4, p5=0),
                    cls("(13524)", 12, 5, p2=3, p3=3, p5=0)],
        "irreducibles": [["1", "1", "1", "1", "1"], ["3", "-1", "0", b5, b5s],
                         ["3", "-1", "0", b5s, b5], ["5", "1", "-1", "0", "0"],
                         ["4", "0", "1", "-1", "-1"]],
    }


def d18():
    # D18 = <r, s | r^9, s^2, srs = r^-1>; classes 1, r^k (k=1..4), s
    rk = [1, 2, 3, 4]
    classes = [cls("1", 1, 1, p2=0, p3=0)]
    for k in rk:
        order = 9 // _gcd(9, k)
        sq = min((2 * k) % 9, 9 - (2 * k) % 9)
        cu = min((3 * k) % 9, 9 - (3 * k) % 9)
        classes.append(cls(f"r^{k}", 2, order, p2=rk.index(sq) + 1, p3=0 if cu == 0 else rk.index(cu) + 1))
    classes.append(cls("s", 9, 2, p2=0, p3=5))
    irr = [["1"] * 6, ["1"] * 5 + ["-1"]]
    for j in (1, 2, 3, 4):
        row = ["2"]
        for k in rk:
            a, b = (j * k) % 9, (-j * k) % 9
            if a == 0:
                row.append("2")
            else:
                row.append(f"{root(9, a)}+{root(9, b)}")
        row.append("0")
        irr.append(row)
    return {"name": "D18", "order": 18, "exponent": 18, "classes": classes, "irreducibles": irr}


def f21():
    # C7 : C3 with b a b^-1 = a^2; classes 1, a, a^3, b, b^2
    psi = "E(7)+E(7)^2+E(7)^4"
    psi_bar = "E(7)^3+E(7)^5+E(7)^6"
    return {
        "name": "F21", "order": 21, "exponent": 21,
        "classes": [cls("1", 1, 1, p3=0, p7=0), cls("a", 3, 7, p3=2, p7=0),
                    cls("a^3", 3, 7, p3=1, p7=0), cls("b", 7, 3, p3=0, p7=3),
                    cls("b^2", 7, 3, p3=0, p7=4)],
        "irreducibles": [["1", "1", "1", "1", "1"], ["1", "1", "1", "E(3)", "E(3)^2"],
                         ["1", "1", "1", "E(3)^2", "E(3)"], ["3", psi, psi_bar, "0", "0"],
                         ["3", psi_bar, psi, "0", "0"]],
    }


# decomposition matrices, rows ordered as the block's characters
SIDECARS = {
    "s3_p3": {"table": "s3", "block": 0, "p": 3, "decomposition": [[1, 0], [0, 1], [1, 1]]},
    "s4_p3": {"table": "s4", "block": 0, "p": 3, "decomposition": [[1, 0], [0, 1], [1, 1]]},
    "s4_p2": {"table": "s4", "block": 0, "p": 2,
              "decomposition": [[1, 0], [1, 0], [0, 1], [1, 1], [1, 1]]},
    "a5_p2": {"table": "a5", "block": 0, "p": 2,
              "decomposition": [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]]},
    "a4_p2": {"table": "a4", "block": 0, "p": 2,
              "decomposition": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]},
    "f21_p7": {"table": "f21", "block": 0, "p": 7,
               "decomposition": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 1, 1]]},
    "d18_p3": {"table": "d18", "block": 0, "p": 3,
               "decomposition": [[1, 0], [0, 1], [1, 1], [1, 1], [1, 1], [1, 1]]},
    "c3_p3": {"table": "c3", "block": 0, "p": 3, "decomposition": [[1]] * 3},
    "c9_p3": {"table": "c9", "block": 0, "p": 3, "decomposition": [[1]] * 9},
    "c3xc3_p3": {"table": "c3xc3", "block": 0, "p": 3, "decomposition": [[1]] * 9},
}


def p_group_generalized(table):
    """Generalized decomposition matrices of a p-group: one column per class."""
    return [{"label": c["name"], "matrix": [[row[i]] for row in table["irreducibles"]]}
            for i, c in enumerate(table["classes"])]


def main():
    tables = {
        "c3": cyclic(3, 3), "c9": cyclic(9, 3), "c3xc3": c3xc3(), "s3": s3(),
        "d8": d8_like("D8", (2, 2)), "q8": d8_like("Q8", (4, 4)), "a4": a4(), "s4": s4(),
        "a5": a5(), "d18": d18(), "f21": f21(),
    }
    for key, table in tables.items():
        (OUT / f"{key}.json").write_text(json.dumps(table, indent=1) + "\n")
    decomp = OUT / "decomp"
    decomp.mkdir(exist_ok=True)
    sidecars = dict(SIDECARS)
    for key in ("d8", "q8"):
        sidecars[f"{key}_p2"] = {"table": key, "block": 0, "p": 2, "decomposition": [[1], [1], [1], [1], [2]],
                                 "generalized": p_group_generalized(tables[key])}
    sidecars["c3xc3_p3"]["generalized"] = p_group_generalized(tables["c3xc3"])
    sidecars["c9_p3"]["generalized"] = p_group_generalized(tables["c9"])
    for key, side in sidecars.items():
        (decomp / f"{key}.json").write_text(json.dumps(side, indent=1) + "\n")


if __name__ == "__main__":
    main()
