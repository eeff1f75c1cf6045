#!/usr/bin/env python3
"""Development fuzz harness: solve vs verifier (and oracle when small).

Not part of the package; run from the repo root:
    python3 scripts/fuzz.py --count 2000 --max-n 24
"""

import argparse
import collections
import sys
import traceback
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hpcolor import engine
from hpcolor.generate import GenSpec, generate
from hpcolor.model import Instance
from hpcolor.verification import oracle, verify


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--modes", default="random,covered,uncovered,degenerate")
    ap.add_argument("--oracle-n", type=int, default=0, help="cross-check oracle up to this n")
    ap.add_argument("--stop-on-fail", action="store_true")
    args = ap.parse_args()

    modes = args.modes.split(",")
    stats = collections.Counter()
    paths = collections.Counter()
    failures = []
    import random

    rng = random.Random(args.seed)
    for t in range(args.count):
        n = rng.randint(args.min_n, args.max_n)
        mode = modes[t % len(modes)]
        if mode == "covered" and n < 3:
            n = 3
        spec = GenSpec(n=n, mode=mode, seed=args.seed * 1_000_003 + t, bound=rng.choice([3, 10, 50]))
        try:
            inst = generate(spec)
        except Exception:
            stats["genfail"] += 1
            continue
        try:
            res = engine.solve_detailed(inst)
            v = verify(inst, res.colors, 3)
            if v is not None:
                failures.append((spec, "verify", v.to_json_dict()))
                stats["BAD"] += 1
            else:
                stats["ok"] += 1
                stats[f"attempt{res.attempts}"] += 1
                paths["/".join(res.case_path[:4])] += 1
            if args.oracle_n and len(inst) <= args.oracle_n:
                if oracle(inst, 3) is None:
                    failures.append((spec, "oracle-none", None))
                    stats["ORACLE-NONE"] += 1
        except Exception as exc:
            failures.append((spec, "exception", traceback.format_exc()))
            stats["EXC"] += 1
            if args.stop_on_fail:
                break
        if args.stop_on_fail and failures:
            break

    print(dict(stats))
    print("top case paths:")
    for path, cnt in paths.most_common(25):
        print(f"  {cnt:6d}  {path}")
    for spec, kind, detail in failures[:10]:
        print("FAIL", kind, spec)
        if detail:
            print(str(detail)[:2000])
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
