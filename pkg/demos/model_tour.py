"""Solve one random piecewise-linear growth model end to end.

Builds a seeded random model on the b3 preset, solves for the critical
functional by both routes, and replays the per-wall deduction and tent
inequality against it.

    python3 demos/model_tour.py [seed]
"""

import random
import sys

from weylgrowth.critical import critical_report
from weylgrowth.growth import random_growth_model, tent_check
from weylgrowth.rootsystem import build_root_system
from weylgrowth.verify import deduce_onewall


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 17
    R = build_root_system("b3")
    rng = random.Random(seed)
    G = random_growth_model(R, rng)

    print(f"random model on b3, seed {seed}")
    print(f"  cone generators: {[tuple(map(float, g)) for g in G.cone.generators]}")
    rep = critical_report(G)
    print(f"  delta'          : {rep['delta_prime']}")
    print(f"  mu_Gamma        : {rep['mu_gamma']}")
    print(f"  route gap       : {rep['route_gap']:.2e}")
    for key, val in sorted(rep["theta"].items()):
        print(f"  theta[{key}] : {val}")

    print()
    for alpha in R.simple_roots:
        wall = deduce_onewall(G, alpha)
        print(f"wall {tuple(map(float, alpha))}: premise "
              f"{'holds' if wall['premise_holds'] else 'fails'}, "
              f"deduction {'violated' if wall['deduction_violated'] else 'replayed'}")

    mus = [[1, 0, 0], [1, 1, 0], [1, 1, 1], [2, 1, 1]]
    tent = tent_check(G, mus, seed=seed)
    status = "passed" if tent["passed"] else f"{len(tent['failures'])} failures"
    print()
    print(f"tent inequality on {tent['checked']} weightings: {status}")


if __name__ == "__main__":
    main()
