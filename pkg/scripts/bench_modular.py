"""Time slice ranks of df^ for a nodal quartic surface, rational vs multi-modular."""

import argparse
import time
from dataclasses import dataclass, field

from nodalspec.cli import parse_polynomial
from nodalspec.exactla import Arithmetic, ExactMatrix, rank
from nodalspec.koszul import KoszulComplex

QUARTIC_SURFACE = ("5*x^2*y^2 - 3*x^2*y*z + 6*x^2*z^2 + 9*x^2*w^2 + x*y*z*w + 2*x*y*w^2"
                   " + y^2*z^2 - 4*y^2*z*w + 8*y^2*w^2 + 4*z^2*w^2")


@dataclass
class BenchConfig:
    poly: str = QUARTIC_SURFACE
    form_degrees: tuple[int, ...] = (2, 3)
    ks: tuple[int, ...] = tuple(range(8, 15))
    primes: int = 3
    repeats: int = 1
    arith_seed: int = field(default=Arithmetic().seed)


def timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=14)
    ap.add_argument("--primes", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=1)
    args = ap.parse_args()
    cfg = BenchConfig(ks=tuple(range(8, args.kmax + 1)), primes=args.primes, repeats=args.repeats)

    f = parse_polynomial(cfg.poly)
    K = KoszulComplex(f)
    modular = Arithmetic("modular", primes=cfg.primes, seed=cfg.arith_seed)
    rank(ExactMatrix.identity(80), modular)
    tot_r = tot_m = 0.0
    print(f"{'j':>2} {'k':>3} {'shape':>12} {'rank':>6} {'rational':>9} {'modular':>9} {'ratio':>6}")
    for k in cfg.ks:
        for j in cfg.form_degrees:
            m = K.df_wedge(j, k)
            r1, t1 = timed(lambda: rank(m), cfg.repeats)
            r2, t2 = timed(lambda: rank(m, modular), cfg.repeats)
            if r1 != r2:
                raise SystemExit(f"rank mismatch at ({j}, {k}): {r1} vs {r2}")
            tot_r += t1
            tot_m += t2
            shape = f"{m.rows}x{m.cols}"
            print(f"{j:>2} {k:>3} {shape:>12} {r1:>6} {t1:>8.2f}s {t2:>8.2f}s {t1 / t2:>5.1f}x")
    print(f"total rational {tot_r:.2f}s  modular {tot_m:.2f}s  speedup {tot_r / tot_m:.1f}x")


if __name__ == "__main__":
    main()
