"""Time the numba and numpy kernels on the same workloads and check they agree.

    python3 benchmarks/bench_backends.py [--repeat 3] [--quick]
"""

import argparse
import time

import numpy as np

from insdel_rs import kernels
from insdel_rs._backend import HAS_NUMBA
from insdel_rs.channel import all_codewords, apply_edits, decode_k2, random_edit_script
from insdel_rs.finite_field import BaseField
from insdel_rs.insdel_verify import verify_code
from insdel_rs.rs_core import ConstructionKind, MessagePoly, construct_code, encode

SQ = ConstructionKind.SQUARE


def best_of(fn, repeat):
    result, best = None, float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def workloads(quick):
    n_verify = 16 if quick else 30
    p_verify = 17 if quick else 31
    verify_target = construct_code(BaseField(p_verify), n_verify, SQ)

    dec = construct_code(BaseField(11), 10, SQ)
    T = dec.tower
    rng = np.random.default_rng(0)
    words = []
    for seed in range(50 if quick else 300):
        f = MessagePoly.from_values(T, rng.integers(0, T.order, size=2).tolist())
        words.append(apply_edits(encode(dec, f), random_edit_script(10, 4, 3, seed, T)))

    small = construct_code(BaseField(5), 4, SQ)
    W = all_codewords(small)
    y = W[1234, :3]

    return {
        f"verify [{n_verify},2] over GF({p_verify})^3": lambda b: verify_code(verify_target, backend=b).pairs_checked,
        f"decode_k2 x{len(words)} at radius 7": lambda b: [decode_k2(dec, w, b).outcome for w in words],
        "lcs_many 15625 x 4": lambda b: kernels.lcs_many(W, y, b).sum(),
        "first_confusable GF(5) code, t=1": lambda b: kernels.first_confusable(W, 3, b),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller instances")
    args = ap.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'workload':<38} {'numpy s':>9} {'numba s':>9} {'speedup':>8}")
    for name, fn in workloads(args.quick).items():
        fn("numba")  # compile / warm caches outside the timed runs
        t_np, r_np = best_of(lambda: fn("numpy"), args.repeat)
        t_nb, r_nb = best_of(lambda: fn("numba"), args.repeat)
        same = r_np == r_nb if not isinstance(r_np, np.ndarray) else np.array_equal(r_np, r_nb)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<38} {t_np:>9.3f} {t_nb:>9.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
