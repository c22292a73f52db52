"""Compare the model's H^-j with Tor_(j-1) over R on seeded random quotients.

    python scripts/random_tor_sweep.py --seeds 1 2 3 --count 30 --weight 8
"""

import argparse
import random
import time
from dataclasses import dataclass, field
from typing import List

from ncdq.derived_quotient import build_model, dq_cohomology_ring, ker_mu_dims, tor_oracle
from ncdq.examples import RandomQuotientConfig, random_spec
from ncdq.quiver import build_algebra


@dataclass
class SweepConfig:
    seeds: List[int] = field(default_factory=lambda: [1])
    count: int = 30
    depth: int = 6
    weight: int = 8
    quotient: RandomQuotientConfig = field(default_factory=RandomQuotientConfig)


def sweep(cfg: SweepConfig):
    rows = []
    for seed in cfg.seeds:
        rng = random.Random(seed)
        for k in range(cfg.count):
            spec = random_spec(rng, cfg.quotient)
            A = build_algebra(spec)
            V = spec.marked_vertices
            t0 = time.perf_counter()
            H = dq_cohomology_ring(build_model(A, V, cfg.depth, cfg.weight), reps=False)
            tor = tor_oracle(A, V, cfg.depth - 2, cfg.weight)
            km = ker_mu_dims(A, V, cfg.weight)
            mism = 0
            for w in range(cfg.weight + 1):
                mism += H.dim((-1, w)) != km.get(w, 0)
                for j in range(2, cfg.depth):
                    if H.trusted((-j, w)):
                        mism += H.dim((-j, w)) != tor.get((j - 1, w), 0)
            deg = H.degree_dims()
            rows.append((seed, k, A.dim, [deg.get(-j, 0) for j in range(cfg.depth)], mism,
                         time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[1])
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--weight", type=int, default=8)
    args = ap.parse_args()
    cfg = SweepConfig(args.seeds, args.count, args.depth, args.weight)
    rows = sweep(cfg)
    print("seed  k   dim A  trusted H^-j (j = 0..)           mismatches  seconds")
    for seed, k, dim, dims, mism, sec in rows:
        print(f"{seed:<5} {k:<3} {dim:<6} {str(dims):<32} {mism:<11} {sec:.2f}")
    print(f"total mismatches: {sum(r[4] for r in rows)} over {len(rows)} quotients")


if __name__ == "__main__":
    main()
