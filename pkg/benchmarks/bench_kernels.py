"""Time the integration kernels under numba and under the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each backend runs in its own interpreter because the backend is fixed at
import time by HARDYOSC_DISABLE_NUMBA.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from fractions import Fraction
from hardyosc.numeric import BACKEND, compile, integrate_pair, numeric_oscillation_probe
from hardyosc.sequences import gamma, omega_seq
from hardyosc.tower import TowerElem

repeat = int(sys.argv[1])
euler = compile(TowerElem.monomial([-2], Fraction(5, 2)))
probe_q = (omega_seq(2) + gamma(2) ** 2) / 4

t = time.perf_counter()
integrate_pair(euler, 10.0, 100.0)          # first call pays JIT compilation
numeric_oscillation_probe(TowerElem.const(1))
warmup = time.perf_counter() - t

def best(fn):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)

print(json.dumps({
    "backend": BACKEND,
    "warmup_s": warmup,
    "euler_pair_s": best(lambda: integrate_pair(euler, 10.0, 1e6)),
    "probe_s": best(lambda: numeric_oscillation_probe(probe_q)),
}))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, HARDYOSC_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                         check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'workload':<14}{'numba (s)':>12}{'python (s)':>12}{'speedup':>10}")
    for key in ("euler_pair_s", "probe_s"):
        print(f"{key[:-2]:<14}{fast[key]:>12.4f}{slow[key]:>12.4f}{slow[key] / fast[key]:>9.1f}x")
    print(f"{'jit warmup':<14}{fast['warmup_s']:>12.4f}{slow['warmup_s']:>12.4f}")


if __name__ == "__main__":
    main()
