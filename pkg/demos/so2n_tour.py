"""Walk the so(2,n) family: chamber constants, wall bounds, and the
rank-2 picture for n = 5.

Run from the repository root:

    python3 demos/so2n_tour.py
"""

from pathlib import Path

from weylgrowth.figures import figure_geometry, figure_svg
from weylgrowth.rootsystem import build_root_system, rho, strongly_orthogonal_theta
from weylgrowth.verify import bound_wall_avoided


def main():
    print("half sum, gap functional, and per-wall linear bounds")
    print()
    header = f"{'n':>3}  {'rho':<12} {'Theta':<8} {'wall 1 bound':<16} wall 2 bound"
    print(header)
    print("-" * len(header))
    for n in range(3, 11):
        R = build_root_system(f"so(2,{n})")
        _, theta = strongly_orthogonal_theta(R)
        a1, a2 = R.simple_roots
        _, b1 = bound_wall_avoided(R, a1)
        _, b2 = bound_wall_avoided(R, a2)
        fmt = lambda v: "(" + ", ".join(str(x) for x in v) + ")"
        print(f"{n:>3}  {fmt(rho(R)):<12} {fmt(theta):<8} {fmt(b1):<16} {fmt(b2)}")

    print()
    geom = figure_geometry("so(2,5)")
    out = Path(__file__).with_name("so25_hulls.svg")
    out.write_text(figure_svg(geom))
    print(f"n=5 hull picture written to {out}")
    print(f"  gap hull vertices: {[tuple(map(float, v)) for v in geom['gap_hull']]}")
    for w in geom["wall_hulls"]:
        verts = [tuple(map(float, v)) for v in w["hull"]]
        print(f"  wall {w['alpha_index']} hull (c = {w['c']}): {verts}")


if __name__ == "__main__":
    main()
