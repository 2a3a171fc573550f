"""Compare the numba and numpy elimination backends.

The backend is fixed at import time, so each side runs in its own
interpreter with ``SSBIM_DISABLE_NUMBA`` set accordingly.  Both sides must
produce the same reduced echelon forms; the script checks a digest.

    python benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 3]
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time

P = 67108859


def _worker(sizes: list[int], repeat: int, seed: int) -> dict:
    import numpy as np

    from ssbim import _kernels
    from ssbim.realization import standard_realization
    from ssbim.sections import bott_samelson, hom_grk

    rng = np.random.default_rng(seed)
    out: dict = {"backend": _kernels.BACKEND, "rref": {}, "digest": ""}
    h = hashlib.sha256()
    # warm-up so JIT compilation is not timed
    _kernels.rref(rng.integers(0, P, size=(4, 4)), P)
    for n in sizes:
        A = rng.integers(0, P, size=(n, n + n // 2), dtype=np.int64)
        A[n // 2 :] = A[: n - n // 2] * 3 % P  # force rank deficiency
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            R, piv = _kernels.rref(A, P)
            best = min(best, time.perf_counter() - t0)
        h.update(R.tobytes())
        h.update(piv.tobytes())
        out["rref"][str(n)] = round(best, 5)
    real = standard_realization("B2")
    t0 = time.perf_counter()
    grk = hom_grk(bott_samelson(real, (0, 1, 0)), bott_samelson(real, (1, 0, 1)))
    out["hom_B2_sts_tst"] = round(time.perf_counter() - t0, 3)
    h.update(json.dumps(grk.to_json(), sort_keys=True).encode())
    out["digest"] = h.hexdigest()[:16]
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(_worker(args.sizes, args.repeat, args.seed)))
        return 0

    results = {}
    for name, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, SSBIM_DISABLE_NUMBA=flag)
        cmd = [sys.executable, __file__, "--worker", "--repeat", str(args.repeat), "--seed", str(args.seed),
               "--sizes", *map(str, args.sizes)]
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        results[name] = json.loads(proc.stdout.strip().splitlines()[-1])

    nb, npy = results["numba"], results["numpy"]
    print(f"{'case':<18}{'numba':>10}{'numpy':>10}{'speedup':>10}")
    for n in args.sizes:
        a, b = nb["rref"][str(n)], npy["rref"][str(n)]
        print(f"{'rref ' + str(n):<18}{a:>10.4f}{b:>10.4f}{b / a if a else float('nan'):>10.1f}")
    a, b = nb["hom_B2_sts_tst"], npy["hom_B2_sts_tst"]
    print(f"{'hom B2':<18}{a:>10.3f}{b:>10.3f}{b / a if a else float('nan'):>10.1f}")
    same = nb["digest"] == npy["digest"]
    print(f"backends reported: {nb['backend']} / {npy['backend']}; results identical: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
