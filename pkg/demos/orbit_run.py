"""Enumerate matrix-semigroup Cartan projections and estimate growth.

Two small groups in SL(3,R) and SL(2,R): a cyclic diagonal group whose
projections fill a single ray, and a free two-generator group whose
exponent estimate stabilizes across depths.

    python3 demos/orbit_run.py
"""

import math

from weylgrowth.orbits import (
    build_group_spec,
    empirical_limit_cone,
    enumerate_orbit,
    estimate_exponent,
    iota_symmetry_check,
)


def matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]


def conjugate(m, a):
    # m a m^-1 for 2x2 m with det(m) = 1
    (p, q), (r, s) = m
    return matmul(matmul(m, a), [[s, -q], [-r, p]])


def main():
    lam = math.exp(0.25)
    cyclic = build_group_spec({
        "ambient": "sl3r",
        "generators": [[[lam, 0, 0], [0, 1, 0], [0, 0, 1 / lam]]],
        "max_word_length": 1200,
    })
    sample = enumerate_orbit(cyclic)
    cone = empirical_limit_cone(sample, radius_cut=5.0)
    est = estimate_exponent(sample, (0.5, 0.0, -0.5))
    print(f"cyclic diagonal group, {len(sample.points)} projections")
    print(f"  limit cone rays : {[tuple(round(float(x), 6) for x in g) for g in cone.generators]}")
    print(f"  exponent        : {est['estimate']:.4f}  ({est['flag']})")
    sym = iota_symmetry_check(cyclic, depth=8)
    print(f"  inverse symmetry: {sym['pairs']} pairs, {sym['failures']} failures")

    a = [[3.0, 0.0], [0.0, 1 / 3.0]]
    m = [[1.0, 1.0], [1.0, 2.0]]
    free = build_group_spec({
        "ambient": "sl2r",
        "generators": [a, conjugate(m, a)],
        "max_word_length": 9,
    })
    sample = enumerate_orbit(free)
    est = estimate_exponent(sample, (0.5, -0.5))
    print()
    print(f"free two-generator group, {len(sample.points)} projections")
    print(f"  exponent        : {est['estimate']:.4f} "
          f"+- {(est['band'][1] - est['band'][0]) / 2:.4f}  ({est['flag']})")


if __name__ == "__main__":
    main()
