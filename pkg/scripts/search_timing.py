"""Time the pruned isometry search against plain enumeration.

    python3 scripts/search_timing.py [--repeats 3] [--out results/search_timing.json]

For each block pair this records the number of hits, search nodes, and wall
time for the pruned kernel, and (for k <= max_k_unpruned) the same for
enumeration of all k! 2^k signed bijections.  The two hit lists must agree.
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from perfiso.blocks import block_partition
from perfiso.bundled import bundled_table
from perfiso.isometry import SearchStats, search_isometries


@dataclass
class TimingConfig:
    pairs: list = field(default_factory=lambda: [
        (("s3", 3, 0), ("s3", 3, 0)),
        (("a5", 2, 0), ("a4", 2, 0)),
        (("d8", 2, 0), ("q8", 2, 0)),
        (("f21", 7, 0), ("f21", 7, 0)),
        (("s4", 2, 0), ("s4", 2, 0)),
        (("c9", 3, 0), ("c9", 3, 0)),
        (("c3xc3", 3, 0), ("c3xc3", 3, 0)),
    ])
    max_k_unpruned: int = 6
    repeats: int = 3
    out: str = "results/search_timing.json"


def load(spec):
    name, p, index = spec
    t = bundled_table(name)
    return t, block_partition(t, p)[index]


def timed_search(src, dst, prune, repeats):
    best, found, stats = None, None, None
    for _ in range(repeats):
        stats = SearchStats()
        t0 = time.perf_counter()
        found = search_isometries(src, dst, prune=prune, workers=1, stats=stats)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return found, stats, best


def main(cfg: TimingConfig) -> list:
    rows = []
    for a, b in cfg.pairs:
        src, dst = load(a), load(b)
        k = len(src[1].chars)
        found, stats, secs = timed_search(src, dst, True, cfg.repeats)
        row = {"src": f"{a[0]}/p{a[1]}", "dst": f"{b[0]}/p{b[1]}", "k": k, "hits": len(found),
               "pruned_nodes": stats.nodes, "pruned_seconds": round(secs, 4)}
        if k <= cfg.max_k_unpruned:
            plain, pstats, psecs = timed_search(src, dst, False, 1)
            row.update(unpruned_candidates=pstats.candidates, unpruned_seconds=round(psecs, 4),
                       agree=[i.key() for i in plain] == [i.key() for i in found])
        rows.append(row)
        print(json.dumps(row))
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2) + "\n")
    return rows


if __name__ == "__main__":
    cfg = TimingConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=cfg.repeats)
    ap.add_argument("--max-k-unpruned", type=int, default=cfg.max_k_unpruned)
    ap.add_argument("--out", default=cfg.out)
    args = ap.parse_args()
    main(TimingConfig(repeats=args.repeats, max_k_unpruned=args.max_k_unpruned, out=args.out))
