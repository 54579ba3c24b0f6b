import importlib.util
import json
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_reproduce_examples_small(tmp_path):
    mod = load("reproduce_examples")
    cfg = mod.ExamplesConfig(pi_blocks=[("s3", 3), ("f21", 7)], p_groups=["d8"], kiyota=200,
                             out=str(tmp_path / "ex.json"))
    rec = mod.main(cfg)
    assert [r["order"] for r in rec["pi_groups"]] == [12, 24]
    assert rec["mode_comparison"]["mismatches"] == 0
    assert rec["d8_q8"]["uniform"]
    assert json.loads((tmp_path / "ex.json").read_text())["a5_a4"]["signed_map"]["verdict"] == "PASS"


def test_search_timing_small(tmp_path):
    mod = load("search_timing")
    cfg = mod.TimingConfig(pairs=[(("s3", 3, 0), ("s3", 3, 0)), (("a5", 2, 0), ("a4", 2, 0))], repeats=1,
                           out=str(tmp_path / "t.json"))
    rows = mod.main(cfg)
    assert [r["hits"] for r in rows] == [12, 48] and all(r["agree"] for r in rows)
