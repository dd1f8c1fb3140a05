"""Time the Gompertz numerator pipeline on both kernel backends.

Each backend runs in its own interpreter because the choice is made at
import time (``EULERGOMPERTZ_KERNELS``).  Outputs are hashed and compared.

    python3 benchmarks/bench_kernels.py --n-list 128,256,512
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

from eulergompertz.kernels import available_backends

_CHILD = """
import hashlib, json, sys, time
from eulergompertz import kernels
from eulergompertz.gompertz_family import run_pipeline
out = []
for n in json.loads(sys.argv[1]):
    t = time.perf_counter()
    pipe = run_pipeline(n)
    dt = time.perf_counter() - t
    digest = hashlib.sha256(repr(pipe.scaled_f1).encode()).hexdigest()[:16]
    out.append({"n": n, "seconds": dt, "digest": digest})
print(json.dumps({"backend": kernels.BACKEND, "runs": out}))
"""


def time_backend(backend: str, ns: list[int]) -> dict:
    env = dict(os.environ, EULERGOMPERTZ_KERNELS=backend)
    proc = subprocess.run(
        [sys.executable, "-c", _CHILD, json.dumps(ns)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-list", default="64,128,256,384")
    args = ap.parse_args(argv)
    ns = [int(t) for t in args.n_list.split(",") if t.strip()]
    backends = sorted(available_backends())
    if "compiled" not in backends:
        print("compiled kernels not built; timing the python fallback only", file=sys.stderr)
    results = {b: {r["n"]: r for r in time_backend(b, ns)["runs"]} for b in backends}

    print(f"{'n':>6} " + " ".join(f"{b + ' [s]':>14}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    mismatch = False
    for n in ns:
        row = [results[b][n] for b in backends]
        line = f"{n:>6} " + " ".join(f"{r['seconds']:>14.3f}" for r in row)
        if len(row) == 2:
            line += f"  {row[1]['seconds'] / row[0]['seconds']:>9.1f}x"
            if row[0]["digest"] != row[1]["digest"]:
                line += "  OUTPUT MISMATCH"
                mismatch = True
        print(line)
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
