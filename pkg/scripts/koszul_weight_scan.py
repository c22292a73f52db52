"""Cell dimensions of H(A), H(A!!) and H(Omega B A) as the weight cap grows.

    python scripts/koszul_weight_scan.py --max-weight 8
"""

import argparse
import time
from dataclasses import dataclass

from ncdq.dg import algebra_as_dga
from ncdq.examples import dual_numbers_spec, square_zero_plane_spec
from ncdq.koszul import double_dual_compare
from ncdq.quiver import build_algebra


@dataclass
class ScanConfig:
    max_weight: int = 8


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-weight", type=int, default=8)
    cfg = ScanConfig(ap.parse_args().max_weight)
    for make in (dual_numbers_spec, square_zero_plane_spec):
        spec = make(cfg.max_weight)
        a = algebra_as_dga(build_algebra(spec))
        for W in range(2, cfg.max_weight + 1, 2):
            t0 = time.perf_counter()
            r = double_dual_compare(a, W)
            print(f"{spec.name:<18} W={W}  H(A!!)=H(A): {r.dims_match}  H(Omega B A)=H(A): {r.cobar_bar_match}"
                  f"  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
