"""Wall-clock scaling of instance decomposition against constraint count.

Generates random arity-k instances at a fixed variable count, times
decompose_instance at each requested m, and prints one row per size with the
per-constraint cost.  The last column reports the wall-time ratio against the
previous row; for linear behavior it should track the ratio of the m values.
"""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from ocsp.efron_stein import decompose_instance
from ocsp.instance import generate


@dataclass(frozen=True)
class BenchConfig:
    n: int
    sizes: tuple[int, ...]
    k: int
    frac: Fraction
    seed: int


def run(config: BenchConfig) -> None:
    print(f"n={config.n} k={config.k} frac={config.frac} seed={config.seed}")
    print(f"{'m':>9} {'wall s':>8} {'us/con':>8} {'parts':>9} {'ratio':>6}")
    previous = None
    for i, m in enumerate(config.sizes):
        inst = generate(
            "random-k",
            n=config.n,
            m=m,
            k=config.k,
            allowed_fraction=config.frac,
            seed=config.seed + i,
        )
        start = time.perf_counter()
        dec = decompose_instance(inst)
        elapsed = time.perf_counter() - start
        ratio = "" if previous is None else f"{elapsed / previous:.2f}"
        print(
            f"{m:>9} {elapsed:>8.3f} {elapsed / m * 1e6:>8.1f}"
            f" {len(dec.subsets()):>9} {ratio:>6}"
        )
        previous = elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10_000)
    parser.add_argument(
        "--m",
        type=int,
        nargs="+",
        default=[25_000, 50_000, 100_000, 200_000],
        help="constraint counts to time, one run each",
    )
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--frac", type=Fraction, default=Fraction(1, 2))
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    run(BenchConfig(n=args.n, sizes=tuple(args.m), k=args.k, frac=args.frac, seed=args.seed))


if __name__ == "__main__":
    main()
