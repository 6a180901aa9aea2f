"""Compare the simplex Kantorovich distance with the vertex-enumeration oracle."""
import argparse
import itertools
import random
import time
from fractions import Fraction

from kanlift import fibration as fib
from kanlift.fibration import INF
from kanlift.finset import FinSet
from kanlift.kantorovich import kantorovich_oracle, kantorovich_solve
from kanlift.measurable import FinMeasSpace, SubProb


def random_instance(rng, n):
    d = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        d[i][j] = d[j][i] = rng.choice([Fraction(k, 4) for k in range(9)] + [INF])
    for k, i, j in itertools.product(range(n), repeat=3):
        d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    space = FinMeasSpace.discrete(FinSet(range(n)))

    def measure():
        w = [rng.randint(0, 5) for _ in range(n + 1)]
        return SubProb(space, tuple(Fraction(x, sum(w) or 1) for x in w[:n]))

    return fib.pseudometric(space.carrier, d), measure(), measure()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-points", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    bad = 0
    for k in range(args.count):
        d, v1, v2 = random_instance(rng, rng.randint(1, args.max_points))
        res = kantorovich_solve(d, v1, v2)
        ref = kantorovich_oracle(d, v1, v2)
        if res.value != ref or not res.certified:
            bad += 1
            print(f"instance {k}: simplex {res.value} oracle {ref} certified {res.certified}")
    print(f"{args.count - bad}/{args.count} agree ({time.perf_counter() - t0:.1f}s)")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
