"""Time the numba kernels against the numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at import.
Usage: python3 benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from kfold_sidon import kernels
from kfold_sidon.construct import bose_chowla, field_and_generator
from kfold_sidon.search import SearchTask, max_set, table_rows
from kfold_sidon.verify import ResidueSet, verify_dilate_family

field_and_generator(2, 7); field_and_generator(11, 2)
max_set(SearchTask("modular", 7, 1))  # warm-up / compile
bose_chowla(2, 2); verify_dilate_family(ResidueSet.mod([0, 1, 3], 7), [1])
out = {"backend": kernels.BACKEND}

def clock(name, fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    out[name] = best

R = REPEAT
clock("scan_q128", lambda: bose_chowla(2, 7), R)
clock("scan_q121", lambda: bose_chowla(11, 2), R)
A = bose_chowla(2, 7)
clock("verify_q128_x200", lambda: [verify_dilate_family(A, [1]) for _ in range(200)], R)
clock("search_S1_N57", lambda: max_set(SearchTask("modular", 57, 1)), R)
clock("table_S2_odd_le45", lambda: table_rows(range(1, 46, 2), 2), R)
print(json.dumps(out))
"""


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, KFOLD_SIDON_NUMBA=flag)
    code = WORKLOAD.replace("REPEAT", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run("1", args.repeat), run("0", args.repeat)
    keys = [k for k in fast if k != "backend"]
    print(f"{'workload':<22}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for k in keys:
        print(f"{k:<22}{fast[k]:>11.4f}s{slow[k]:>11.4f}s{slow[k] / fast[k]:>9.1f}x")


if __name__ == "__main__":
    main()
