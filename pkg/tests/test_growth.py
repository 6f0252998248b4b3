import math
import random
from fractions import Fraction as Q

import pytest

from weylgrowth.cones import dominant_cone, poly_cone
from weylgrowth.errors import InputError, ModelInvariantError
from weylgrowth.growth import (
    NEG_INF,
    POS_INF,
    build_growth_model,
    delta_prime,
    delta_prime_report,
    dominant_iota_classes,
    evaluate,
    evaluate_modified,
    exponent_sandwich,
    growth_model_from_json,
    growth_model_to_json,
    iota_vector_matrix,
    limit_set_dim_bound,
    modified_cone_nonempty,
    modified_limit_cone,
    random_growth_model,
    tent_check,
)
from weylgrowth.rational import dot, matvec, to_float, vadd, vec, vscale
from weylgrowth.rootsystem import build_root_system, fundamental_weights, rho


def so25():
    return build_root_system("so(2,5)")


def two_rho_model(R=None):
    R = R or so25()
    return build_growth_model(R, dominant_cone(R), [vscale(2, rho(R))])


def rho_model(R=None):
    R = R or so25()
    return build_growth_model(R, dominant_cone(R), [rho(R)])


def test_evaluate_examples():
    G = two_rho_model()
    assert evaluate(G, [1, 0]) == 5
    assert evaluate(G, [0, 1]) == NEG_INF
    assert evaluate_modified(G, [1, 1]) == 4
    Gr = rho_model()
    assert evaluate_modified(Gr, [2, 1]) == 0
    assert evaluate(Gr, [2, 1]) == Q(13, 2)


def test_model_invariant_violations():
    R = so25()
    C = dominant_cone(R)
    with pytest.raises(ModelInvariantError, match="outside the chamber"):
        build_growth_model(R, poly_cone(generators=[[0, 1]], rank=2), [rho(R)])
    with pytest.raises(ModelInvariantError, match="negative value"):
        build_growth_model(R, C, [[-1, 0]])
    with pytest.raises(ModelInvariantError, match="twice the half sum"):
        build_growth_model(R, C, [[10, 0]])
    A2 = build_root_system("a2")
    with pytest.raises(ModelInvariantError, match="involution-stable"):
        build_growth_model(A2, poly_cone(generators=[[1, 0]], rank=2),
                           [rho(A2)])
    with pytest.raises(ModelInvariantError, match="involution-invariant"):
        build_growth_model(A2, dominant_cone(A2), [["5/3", "4/3"]])
    with pytest.raises(InputError):
        build_growth_model(R, C, [])


def test_modified_limit_cone():
    R = so25()
    assert not modified_cone_nonempty(rho_model(R))
    G2 = two_rho_model(R)
    L = modified_limit_cone(G2)
    assert L.open_flag
    assert set(L.generators) == {vec([1, 0]), vec([1, 1])}
    assert modified_cone_nonempty(G2)
    G3 = build_growth_model(R, dominant_cone(R), [[3, 1]])
    assert set(modified_limit_cone(G3).generators) == {vec([1, 0]), vec([1, 1])}


def test_delta_prime_rho_model_is_zero():
    G = rho_model()
    for mu in ([1, 0], [1, 1], ["1/2", "1/3"]):
        dp = delta_prime(G, mu)
        assert dp.value == 0 and dp.status == "nonpositive"


def test_delta_prime_two_rho_values():
    G = two_rho_model()
    dp = delta_prime(G, [1, 0])
    assert dp.value == 4 and dp.status == "finite"
    assert dp.witness == vec([1, 1])
    assert evaluate_modified(G, dp.witness) == 4
    d = delta_prime(G, [1, 0], modified=False)
    assert d.value == 8


def test_delta_prime_infinite_and_neg():
    G = two_rho_model()
    dp = delta_prime(G, [1, -1])
    assert dp.value == POS_INF and dp.status == "infinite"
    assert dp.certificate is not None
    v = dp.certificate
    assert dot(vec([1, -1]), v) <= 0 and evaluate_modified(G, v) > 0

    R = so25()
    Gh = build_growth_model(R, dominant_cone(R), [vscale("1/2", rho(R))])
    dn = delta_prime(Gh, [1, 0])
    assert dn.value == Q(-5, 4) and dn.status == "nonpositive"
    assert dn.witness == vec([1, 0])

    ray = poly_cone(generators=[[1, 1]], rank=2)
    Gr = build_growth_model(R, ray, [rho(R)])
    dm = delta_prime(Gr, [1, -1])
    assert dm.value == NEG_INF and dm.status == "nonpositive"


def test_delta_prime_rejects_zero():
    with pytest.raises(InputError):
        delta_prime(two_rho_model(), [0, 0])


def test_delta_prime_scaling():
    G = two_rho_model()
    base = delta_prime(G, [1, 0]).value
    assert delta_prime(G, [3, 0]).value == base / 3
    assert delta_prime(G, ["1/7", 0]).value == base * 7


def test_delta_prime_iota_symmetry():
    rng = random.Random(2)
    for name in ("a2", "a3"):
        R = build_root_system(name)
        ws = fundamental_weights(R)
        from weylgrowth.rootsystem import apply_iota
        for seed in range(5):
            G = random_growth_model(R, random.Random(seed))
            cs = [Q(rng.randint(1, 4)) for _ in ws]
            mu = vec([0] * R.rank)
            for c, w in zip(cs, ws):
                mu = vadd(mu, vscale(c, w))
            a = delta_prime(G, mu)
            b = delta_prime(G, apply_iota(R, mu))
            assert a.value == b.value
            half = vscale("1/2", vadd(mu, apply_iota(R, mu)))
            c = delta_prime(G, half)
            if a.status == "finite" and c.status == "finite":
                assert c.value <= a.value


def _ray_grid_sup(G, mu, grid=10_000):
    # independent check: scan rays of the rank-2 wedge, then polish the
    # bracket with golden section; evaluation only, no vertex machinery
    g0, g1 = [to_float(g) for g in G.cone.generators[:2]]
    muf = to_float(mu)
    rf = to_float(rho(G.root_system))
    pf = [to_float(p) for p in G.pieces]

    def val(t):
        v = tuple((1 - t) * a + t * b for a, b in zip(g0, g1))
        m = sum(x * y for x, y in zip(muf, v))
        if m <= 1e-12:
            return -math.inf
        psi = min(sum(x * y for x, y in zip(p, v)) for p in pf)
        return (psi - sum(x * y for x, y in zip(rf, v))) / m

    best_i = max(range(grid + 1), key=lambda i: val(i / grid))
    lo = max(0.0, (best_i - 1) / grid)
    hi = min(1.0, (best_i + 1) / grid)
    phi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c1 = b - phi * (b - a)
    c2 = a + phi * (b - a)
    for _ in range(80):
        if val(c1) < val(c2):
            a, c1 = c1, c2
            c2 = a + phi * (b - a)
        else:
            b, c2 = c2, c1
            c1 = b - phi * (b - a)
    return max(val(a), val(b), val((a + b) / 2))


def test_delta_prime_matches_ray_grid():
    for seed in range(8):
        R = build_root_system(("b2", "g2", "so(2,7)")[seed % 3])
        G = random_growth_model(R, random.Random(seed))
        if len(G.cone.generators) != 2:
            G = build_growth_model(R, dominant_cone(R), G.pieces)
        rng = random.Random(seed + 50)
        ws = fundamental_weights(R)
        mu = vadd(vscale(rng.randint(1, 3), ws[0]), vscale(rng.randint(1, 3), ws[1]))
        dp = delta_prime(G, mu)
        assert dp.status == "finite"
        brute = _ray_grid_sup(G, mu)
        assert abs(brute - float(dp.value)) <= 1e-6 * max(1.0, abs(brute))


def test_exponent_sandwich():
    R = so25()
    G = rho_model(R)
    w1, w2 = fundamental_weights(R)
    mu = vadd(w1, w2)
    lo, hi = exponent_sandwich(G, mu)
    assert lo <= delta_prime(G, mu, modified=False).value <= hi

    ray = poly_cone(generators=[[1, 1]], rank=2)
    Gr = build_growth_model(R, ray, [rho(R)])
    lo, hi = exponent_sandwich(Gr, [1, 0])
    d = delta_prime(Gr, [1, 0], modified=False).value
    assert d == hi == 4 and lo == -4

    with pytest.raises(InputError):
        exponent_sandwich(G, [1, -1])


def test_exponent_sandwich_scaled_weight():
    R = so25()
    G = two_rho_model(R)
    mu = vscale(3, fundamental_weights(R)[1])
    lo, hi = exponent_sandwich(G, mu)
    d = delta_prime(G, mu, modified=False).value
    assert lo <= d <= hi
    assert abs(float(d) - float(d)) < 1e-9


def test_tent_check():
    R = so25()
    assert tent_check(rho_model(R), [[1, 0], [1, 1]])["passed"]
    report = tent_check(two_rho_model(R), [[1, 0], [1, -1]])
    assert report["passed"] and report["vacuous"] == 1 and report["checked"] == 1
    for seed in range(6):
        Rr = build_root_system(("b2", "a3")[seed % 2])
        G = random_growth_model(Rr, random.Random(seed))
        ws = fundamental_weights(Rr)
        rng = random.Random(seed + 9)
        mus = []
        for _ in range(10):
            mu = vec([0] * Rr.rank)
            for w in ws:
                mu = vadd(mu, vscale(Q(rng.randint(0, 4)), w))
            if any(mu):
                mus.append(mu)
        assert tent_check(G, mus)["passed"]


def test_limit_set_dim_bound():
    R = so25()
    ray = poly_cone(generators=[[2, 1]], rank=2)
    G = build_growth_model(R, ray, [rho(R)])
    a1, a2 = R.simple_roots
    assert limit_set_dim_bound(G, [a1]) == 6.5
    assert limit_set_dim_bound(G, []) == 0.0
    ray11 = build_growth_model(R, poly_cone(generators=[[1, 1]], rank=2), [rho(R)])
    assert limit_set_dim_bound(ray11, [a1]) == POS_INF
    assert limit_set_dim_bound(ray11, [a2]) == 4.0


def test_dominant_iota_classes():
    A2 = build_root_system("a2")
    assert dominant_iota_classes(A2) == (vec([1, 1]),)
    B2 = so25()
    assert dominant_iota_classes(B2) == (vec([1, 0]), vec([1, 1]))


def test_random_models_valid_and_positive():
    for name in ("a2", "b2", "g2", "a3", "b3"):
        R = build_root_system(name)
        for seed in range(4):
            G = random_growth_model(R, random.Random(seed))
            assert modified_cone_nonempty(G)
            iota_v = iota_vector_matrix(R)
            for g in G.cone.generators:
                assert evaluate(G, g) >= 0
                assert evaluate(G, g) <= 2 * dot(rho(R), g)
                assert evaluate(G, matvec(iota_v, g)) == evaluate(G, g)


def test_model_json_roundtrip():
    G = two_rho_model()
    obj = growth_model_to_json(G)
    G2 = growth_model_from_json(obj)
    assert G2.pieces == G.pieces
    assert set(G2.cone.generators) == set(G.cone.generators)
    assert delta_prime(G2, [1, 0]).value == 4


def test_delta_prime_report_shapes():
    G = two_rho_model()
    rep = delta_prime_report(G, [1, 0])
    assert rep == {"delta_prime": 4.0, "witness": (1.0, 1.0), "status": "finite"}
    rep_inf = delta_prime_report(G, [1, -1])
    assert rep_inf["delta_prime"] == "inf" and rep_inf["status"] == "infinite"
