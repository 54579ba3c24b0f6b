"""perfiso: command-line front end.  Every command prints one JSON report.

Exit codes: 0 ok, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra, isometry
from .blocks import block_invariant_summary, block_partition, brauer_count, residue_factors
from .bundled import digest, resolve
from .corpus import run_corpus
from .intmat import (basic_set_equiv, basic_set_equiv_shared, cartan, heights_from_decomposition,
                     sidecar_from_dict, smith_form)
from .table import CharTable, TableError, table_from_dict

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Context:
    """Collects input echoes and file digests for the report."""

    def __init__(self, args: argparse.Namespace):
        self.args = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "pretty", "command")}
        self.files: dict[str, dict] = {}
        self.diagnostics: list[str] = []

    def text(self, role: str, arg: str, kind: str = "table") -> str:
        try:
            text, label = resolve(arg, kind)
        except (KeyError, OSError) as exc:
            raise InputError(f"cannot read {role} {arg!r}: {exc}") from exc
        self.files[role] = {"source": label, "sha256": digest(text)}
        return text

    def table(self, role: str, arg: str) -> CharTable:
        text = self.text(role, arg)
        try:
            return table_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{role}: invalid JSON: {exc}") from exc
        except TableError as exc:
            raise InputError(f"{role}: {exc}") from exc

    def sidecar(self, role: str, arg: str):
        text = self.text(role, arg, kind="decomp")
        try:
            return sidecar_from_dict(json.loads(text))
        except Exception as exc:
            raise InputError(f"{role}: {exc}") from exc

    def inputs(self) -> dict:
        return {"args": self.args, "files": self.files}


def _prime(t: CharTable, p: int) -> int:
    if p not in t.primes:
        raise InputError(f"{p} does not divide |{t.name}| = {t.group_order}")
    return p


def _block(t: CharTable, p: int, index: int | None, rows=None):
    blocks = block_partition(t, _prime(t, p))
    if index is not None:
        if not 0 <= index < len(blocks):
            raise InputError(f"{t.name} has {len(blocks)} {p}-blocks; no block {index}")
        return blocks[index]
    if rows is None:
        return blocks[0]
    for b in blocks:
        if set(rows) <= set(b.chars):
            return b
    raise InputError(f"rows {sorted(rows)} of {t.name} do not lie in one {p}-block")


def _block_json(t: CharTable, b, index: int) -> dict:
    return {
        "index": index,
        "chars": list(b.chars),
        "degrees": list(b.degrees),
        "defect": b.defect,
        "heights": {str(c): h for c, h in zip(b.chars, b.heights)},
        "k": len(b.chars),
        "l": brauer_count(t, b),
    }


# -- commands ----------------------------------------------------------------


def cmd_validate(ctx: _Context, a) -> tuple[str, dict]:
    text = ctx.text("table", a.table)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    try:
        t = table_from_dict(data)
    except TableError as exc:
        ctx.diagnostics.append(str(exc))
        return "fail", {"valid": False, "error": str(exc)}
    return "ok", {
        "valid": True,
        "name": t.name,
        "order": t.group_order,
        "classes": t.n_classes,
        "orthogonality": "confirmed",
        "power_map_primes": sorted({q for c in t.classes for q in c.power_maps}),
    }


def cmd_blocks(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    p = _prime(t, a.p)
    nf = len(residue_factors(_p_free(t.exponent, p), p))
    if not 0 <= a.factor < nf:
        raise InputError(f"factor index must lie in 0..{nf - 1}")
    blocks = block_partition(t, p, a.factor)
    return "ok", {"prime": p, "blocks": [_block_json(t, b, i) for i, b in enumerate(blocks)]}


def _p_free(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def _pair(ctx: _Context, a, rows=None):
    src = ctx.table("src", a.src)
    dst = ctx.table("dst", a.dst)
    p = a.p
    _prime(src, p)
    _prime(dst, p)
    src_rows = dst_rows = None
    if rows is not None:
        src_rows, dst_rows = list(rows), [d for _, d in rows.values()]
    sb = _block(src, p, a.block, src_rows)
    db = _block(dst, p, a.dst_block, dst_rows)
    return src, sb, dst, db


def cmd_verify_iso(ctx: _Context, a) -> tuple[str, dict]:
    try:
        mapping = isometry.parse_map(a.map)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    src, sb, dst, db = _pair(ctx, a, mapping)
    try:
        iso = isometry.SignedBijection.from_map(src, sb, dst, db, mapping)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    modes = isometry.MODES if a.mode == "both" else (a.mode,)
    mu = isometry.mu_table(iso)
    verdicts = [isometry.verify_perfect(iso, m, mu) for m in modes]
    result = {
        "map": iso.map_string(),
        "source_block": list(sb.chars),
        "target_block": list(db.chars),
        "verdicts": [v.as_dict() for v in verdicts],
    }
    if a.show_mu:
        result["mu"] = mu.as_strings()
    ok = all(v.passed for v in verdicts)
    if not ok:
        ctx.diagnostics += [f"{v.mode}: {v.condition} fails at class pair {v.pair}" for v in verdicts if not v.passed]
    return ("ok" if ok else "fail"), result


def cmd_search_iso(ctx: _Context, a) -> tuple[str, dict]:
    src, sb, dst, db = _pair(ctx, a)
    if a.limit is not None and a.limit < 1:
        raise InputError("--limit must be positive")
    found = isometry.search_isometries((src, sb), (dst, db), limit=a.limit, prune=not a.no_prune)
    return "ok", {
        "source_block": list(sb.chars),
        "target_block": list(db.chars),
        "count": len(found),
        "uniform_sign_count": sum(f.is_uniform() for f in found),
        "isometries": [f.map_string() for f in found],
    }


def cmd_pi_group(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    b = _block(t, a.p, a.block)
    rep = isometry.pi_group(t, b)
    result = {"block": list(b.chars), **rep.as_dict(with_elements=a.elements)}
    ok = rep.minus_id_central and rep.sign_rigid
    if not ok:
        ctx.diagnostics.append("-id is not central or sign rigidity fails")
    return ("ok" if ok else "fail"), result


def cmd_npi_group(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    if t.p_group_prime() is None:
        raise InputError(f"{t.name} is not the table of a p-group")
    rep = isometry.npi_group(t)
    result = rep.as_dict()
    status = "ok"
    if not a.no_cross_check:
        b = block_partition(t, rep.prime)[0]
        order = isometry.pi_group(t, b).order
        result["pi_order"] = order
        result["cross_check"] = order == rep.predicted_pi_order
        if order != rep.predicted_pi_order:
            status = "fail"
            ctx.diagnostics.append(f"|PI| = {order} but 2*|P/P'|*|normalized| = {rep.predicted_pi_order}")
    return status, result


def cmd_invariants(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    p = _prime(t, a.p)
    blocks = block_partition(t, p)
    out = []
    for i, b in enumerate(blocks):
        item = _block_json(t, b, i)
        item["summary"] = block_invariant_summary(b)
        item["summary"]["k_i"] = {str(h): c for h, c in item["summary"]["k_i"].items()}
        out.append(item)
    result = {"prime": p, "blocks": out}
    status = "ok"
    if a.decomp:
        sc = ctx.sidecar("decomp", a.decomp)
        if sc.p != p or not 0 <= sc.block < len(blocks):
            raise InputError(f"sidecar is for p={sc.p}, block {sc.block}")
        b = blocks[sc.block]
        q = sc.matrix()
        if len(q) != len(b.chars):
            raise InputError(f"decomposition matrix has {len(q)} rows, block has {len(b.chars)}")
        c = cartan(q)
        divisors = list(smith_form(c).divisors)
        heights = heights_from_decomposition(q, b.defect, p)
        checks = {
            "largest_divisor_is_defect_group_order": max(divisors) == p ** b.defect,
            "heights_agree": heights == list(b.heights),
            "l_agrees": len(q[0]) == brauer_count(t, b),
        }
        result["decomposition"] = {
            "block": sc.block,
            "cartan": c,
            "elementary_divisors": divisors,
            "heights_from_decomposition": heights,
            "checks": checks,
        }
        if not all(checks.values()):
            status = "fail"
            ctx.diagnostics += [f"check failed: {k}" for k, v in checks.items() if not v]
    return status, result


def _perm_json(t, mats) -> dict:
    return {"T": {"images": list(t.images), "signs": list(t.signs)}, "S": mats}


def cmd_basic_set_equiv(ctx: _Context, a) -> tuple[str, dict]:
    sa = ctx.sidecar("a", a.a)
    sb = ctx.sidecar("b", a.b)
    try:
        if a.shared_t:
            if len(sa.generalized) != len(sb.generalized):
                raise InputError("the sidecars list different numbers of generalized matrices")
            pairs = [(sa.matrix(), sb.matrix())]
            pairs += [(ma, mb) for (_, ma), (_, mb) in zip(sa.generalized, sb.generalized)]
            found = basic_set_equiv_shared(pairs)
            labels = ["decomposition"] + [f"{la}|{lb}" for (la, _), (lb, _) in zip(sa.generalized, sb.generalized)]
            if found is None:
                return "ok", {"equivalent": False, "matrices": labels}
            t, mats = found
            return "ok", {"equivalent": True, "matrices": labels, **_perm_json(t, mats)}
        found = basic_set_equiv(sa.matrix(), sb.matrix())
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if found is None:
        return "ok", {"equivalent": False}
    t, s = found
    return "ok", {"equivalent": True, **_perm_json(t, s)}


def cmd_structconst(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    try:
        c = algebra.class_constants(t) if a.kind == "class" else algebra.character_constants(t)
    except ValueError as exc:
        ctx.diagnostics.append(str(exc))
        return "fail", {"kind": a.kind, "error": str(exc)}
    v = algebra.verify_table_against_constants(t, c)
    if not v.passed:
        ctx.diagnostics.append(v.reason)
    return ("ok" if v.passed else "fail"), {"kind": c.kind, "n": c.n, "eigenvector_check": v.passed,
                                            "values": c.as_lists()}


def cmd_osima(ctx: _Context, a) -> tuple[str, dict]:
    t = ctx.table("table", a.table)
    p = _prime(t, a.p)
    try:
        chars = [int(x) for x in a.chars.split(",") if x.strip()]
        res = algebra.osima_check(t, p, chars)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return "ok", {"chars": sorted(set(chars)), **res.as_dict()}


def cmd_corpus(ctx: _Context, a) -> tuple[str, dict]:
    numbers = None
    if a.only:
        numbers = {int(x) for x in a.only.split(",")}
    results = run_corpus(numbers)
    rows = []
    for r in results:
        line = f"{r.number:>2}  {'PASS' if r.passed else 'FAIL'}  {r.seconds:8.2f}s  {r.title}"
        print(line, file=sys.stderr)
        rows.append({"criterion": r.number, "title": r.title, "passed": r.passed, "details": r.details})
        if not r.passed:
            ctx.diagnostics.append(f"criterion {r.number} failed")
        if r.seconds > r.limit:
            print(f"    note: criterion {r.number} took longer than its {r.limit:.0f}s target", file=sys.stderr)
    ok = all(r.passed for r in results)
    return ("ok" if ok else "fail"), {"criteria": rows, "passed": sum(r.passed for r in results),
                                     "total": len(results)}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="perfiso", description="Perfect isometries between blocks of finite groups.")
    ap.add_argument("--pretty", action="store_true", help="indent the JSON report")
    sub = ap.add_subparsers(dest="command", metavar="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return p

    p = add("validate", cmd_validate, "check a character table")
    p.add_argument("table")

    p = add("blocks", cmd_blocks, "p-block partition")
    p.add_argument("table")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--factor", type=int, default=0, help="which residue field to use (same answer for all)")

    def pair_args(p):
        p.add_argument("src")
        p.add_argument("dst")
        p.add_argument("-p", type=int, required=True)
        p.add_argument("--block", type=int, default=None, help="source block index")
        p.add_argument("--dst-block", type=int, default=None, help="target block index")

    p = add("verify-iso", cmd_verify_iso, "verify a signed bijection")
    pair_args(p)
    p.add_argument("--map", required=True, help='e.g. "0:+0,1:-2,2:-1"')
    p.add_argument("--mode", choices=("full", "int_prime", "both"), default="full")
    p.add_argument("--show-mu", action="store_true")

    p = add("search-iso", cmd_search_iso, "all perfect isometries between two blocks")
    pair_args(p)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--no-prune", action="store_true")

    p = add("pi-group", cmd_pi_group, "the group of self perfect isometries")
    p.add_argument("table")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--block", type=int, default=0)
    p.add_argument("--elements", action="store_true")

    p = add("npi-group", cmd_npi_group, "normalized perfect isometry group of a p-group")
    p.add_argument("table")
    p.add_argument("--no-cross-check", action="store_true", help="skip computing PI(B) by search")

    p = add("invariants", cmd_invariants, "block invariants, optionally with a decomposition matrix")
    p.add_argument("table")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--decomp", default=None)

    p = add("basic-set-equiv", cmd_basic_set_equiv, "decide QS = TQ'")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--shared-t", action="store_true")

    p = add("structconst", cmd_structconst, "structure constants")
    p.add_argument("table")
    p.add_argument("--kind", choices=("class", "char"), required=True)

    p = add("osima", cmd_osima, "Osima's union-of-blocks criterion")
    p.add_argument("table")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--chars", required=True)

    p = add("corpus", cmd_corpus, "run the bundled regression checks")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return ap


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        text = json.dumps(report, indent=2)
    else:
        text = json.dumps(report, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    ctx = _Context(args)
    try:
        status, result = args.func(ctx, args)
        code = EXIT_OK if status == "ok" else EXIT_FAIL
    except InputError as exc:
        status, result, code = "fail", None, EXIT_INPUT
        ctx.diagnostics.append(f"input error: {exc}")
    report = {
        "command": args.command,
        "inputs": ctx.inputs(),
        "result": result,
        "status": status,
        "diagnostics": ctx.diagnostics,
    }
    _emit(report, args.pretty)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
