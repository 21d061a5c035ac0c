"""Distribution of the degree of eventual commutativity over all sigma in S_n
that move both endpoints (q = 1), with the worst cases listed.

    python3 scripts/survey_degrees.py --n 5
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from evcom.harness import moving_both_ends
from evcom.perm import TwoTermIdentity, format_perm
from evcom.saturation import guaranteed_degree, saturate


@dataclass(frozen=True)
class SurveyConfig:
    n: int = 5
    show_worst: int = 10


def survey(cfg: SurveyConfig) -> Counter:
    degrees = {}
    for sigma in moving_both_ends(cfg.n):
        degrees[sigma] = saturate(TwoTermIdentity(sigma)).ec_degree
    hist = Counter(degrees.values())
    bound = guaranteed_degree(cfg.n)
    print(f"n = {cfg.n}: {len(degrees)} permutations, stated bound {bound}")
    for d in sorted(hist, key=lambda x: (x is None, x)):
        print(f"  degree {d}: {hist[d]}")
    worst = sorted(degrees.items(), key=lambda kv: (-(kv[1] or 10**9), kv[0]))[: cfg.show_worst]
    print("highest degrees:")
    for sigma, d in worst:
        flag = "  above bound" if d is None or d > bound else ""
        print(f"  {format_perm(sigma)} = {format_perm(sigma, 'cycles')}: {d}{flag}")
    return hist


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=SurveyConfig.n)
    ap.add_argument("--show-worst", type=int, default=SurveyConfig.show_worst)
    args = ap.parse_args()
    start = time.perf_counter()
    survey(SurveyConfig(args.n, args.show_worst))
    print(f"({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
