"""Chain of H_k for sigma = (1 2)(n-1 n): order, block profile, and whether
each H_k sits inside S(k; 2+b, 2+b) with b = k - n.

    python3 scripts/sharpness_profile.py --n 6
"""

import argparse
import math
from dataclasses import dataclass

from evcom.harness import sharpness_sigma
from evcom.perm import TwoTermIdentity, in_S_nab
from evcom.saturation import saturate


@dataclass(frozen=True)
class ProfileConfig:
    n: int = 5
    check_membership_up_to: int = 400_000


def profile(cfg: ProfileConfig) -> None:
    rep = saturate(TwoTermIdentity(sharpness_sigma(cfg.n)))
    print(f"sigma = (1 2)({cfg.n - 1} {cfg.n}); ec_degree = {rep.ec_degree} "
          f"(2n-3 = {2 * cfg.n - 3})")
    print(f"{'k':>3} {'|H_k|':>8} {'k!':>8} {'prefix':>6} {'suffix':>6}  inside S(k;2+b)")
    for rec in rep.chain:
        b = rec.k - cfg.n
        inside = "-"
        if rec.order <= cfg.check_membership_up_to:
            group = rep.group(rec.k)
            inside = str(all(in_S_nab(t, 2 + b, 2 + b) for t in group.enumerate()))
        print(f"{rec.k:>3} {rec.order:>8} {math.factorial(rec.k):>8} "
              f"{rec.prefix_block:>6} {rec.suffix_block:>6}  {inside}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=ProfileConfig.n)
    profile(ProfileConfig(ap.parse_args().n))


if __name__ == "__main__":
    main()
