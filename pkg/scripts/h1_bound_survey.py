"""dim H^-1 of the derived quotient against the bound d^2 * ell on random quotients.

    python scripts/h1_bound_survey.py --count 40 --seed 3
"""

import argparse
import random
from dataclasses import dataclass

from ncdq.derived_quotient import build_model, dq_cohomology_ring, h1_bound, marked_relations
from ncdq.examples import random_spec
from ncdq.quiver import build_algebra, quotient_by_idempotent_ideal


@dataclass
class SurveyConfig:
    count: int = 40
    seed: int = 3
    weight: int = 8


def survey(cfg: SurveyConfig):
    rng = random.Random(cfg.seed)
    over, rows = 0, []
    for k in range(cfg.count):
        spec = random_spec(rng)
        A = build_algebra(spec)
        model = build_model(A, spec.marked_vertices, 2, cfg.weight)
        H = dq_cohomology_ring(model)
        h1 = sum(H.dim((-1, w)) for w in range(cfg.weight + 1))
        b = h1_bound(spec, quotient_by_idempotent_ideal(A, spec.marked_vertices).dim)
        spans = marked_relations(spec, model, H).spans
        over += h1 > b["bound"]
        rows.append((k, A.dim, h1, b["d"], b["ell"], b["bound"], spans))
    return rows, over


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()
    rows, over = survey(SurveyConfig(args.count, args.seed))
    print("k   dim A  dim H^-1  d  ell  bound  marked relations span")
    for r in rows:
        print(f"{r[0]:<3} {r[1]:<6} {r[2]:<9} {r[3]:<2} {r[4]:<4} {r[5]:<6} {r[6]}")
    print(f"bound exceeded in {over} of {len(rows)} cases")


if __name__ == "__main__":
    main()
