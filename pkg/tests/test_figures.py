"""Figure geometry: orbit hulls, inclusion claims, SVG determinism."""

import pytest

from weylgrowth.cones import conv_hull_member
from weylgrowth.errors import InputError
from weylgrowth.figures import figure_geometry, figure_svg, orbit_hull
from weylgrowth.rational import Q
from weylgrowth.rootsystem import build_root_system


def test_so25_hull_geometry():
    g = figure_geometry("so(2,5)")
    assert g["gap"] == (Q(3, 2), Q(3, 2))
    assert [w["c"] for w in g["wall_hulls"]] == [Q(3, 2), Q(3, 2)]
    # extremal case: the second wall hull coincides with the gap hull
    assert set(g["wall_hulls"][1]["hull"]) == set(g["gap_hull"])
    # the first wall hull is the inscribed diamond
    assert set(g["wall_hulls"][0]["hull"]) == {
        (Q(3, 2), Q(0)), (Q(0), Q(3, 2)), (Q(-3, 2), Q(0)), (Q(0), Q(-3, 2))}


def test_so25_first_wall_inside_gap_hull():
    g = figure_geometry("so(2,5)")
    R = build_root_system("so(2,5)")
    for v in g["wall_hulls"][0]["hull"]:
        assert conv_hull_member(R, v, g["gap"])
    # proper inclusion, not equality
    assert set(g["wall_hulls"][0]["hull"]) != set(g["gap_hull"])


def test_hulls_counterclockwise_and_convex():
    g = figure_geometry("so(2,8)")
    for hull in [g["gap_hull"]] + [w["hull"] for w in g["wall_hulls"]]:
        k = len(hull)
        assert k >= 4
        for i in range(k):
            a, b, c = hull[i], hull[(i + 1) % k], hull[(i + 2) % k]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            assert cross > 0


def test_a2_all_hulls_coincide():
    g = figure_geometry("a2")
    assert [w["c"] for w in g["wall_hulls"]] == [Q(1, 2), Q(1, 2)]
    assert set(g["wall_hulls"][0]["hull"]) == set(g["gap_hull"])
    assert set(g["wall_hulls"][1]["hull"]) == set(g["gap_hull"])


def test_rank_guard():
    with pytest.raises(InputError, match="rank-2"):
        figure_geometry("a1")
    with pytest.raises(InputError, match="rank-2"):
        figure_geometry("b3")


def test_orbit_hull_of_zero_is_a_point():
    R = build_root_system("b2")
    assert orbit_hull(R, (0, 0)) == ((Q(0), Q(0)),)


def test_svg_deterministic_bytes():
    a = figure_svg(figure_geometry("so(2,5)"))
    b = figure_svg(figure_geometry("so(2,5)"))
    assert a == b
    assert a.startswith("<svg xmlns")
    assert a.count("<polygon") == 3
    for label in ("W(rho - Theta)", "W(c1 u1)", "W(c2 u2)"):
        assert label in a


def test_zero_bound_wall_is_not_drawn():
    # split rank-2 system whose gap vanishes on the first chamber ray
    spec = {"simple_roots": [[1, 0], [0, 1]],
            "multiplicities": [{"root": [1, 0], "m": 1},
                               {"root": [0, 1], "m": 3}]}
    g = figure_geometry(spec)
    assert g["wall_hulls"][0]["c"] == Q(0)
    assert g["wall_hulls"][1]["c"] == Q(1)
    svg = figure_svg(g)
    assert svg.count("<polygon") == 2
    assert "W(c1 u1)" not in svg
    assert "W(rho - Theta)" in svg
