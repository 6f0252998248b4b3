"""Empirical Cartan-projection data for finitely generated matrix groups.

Everything here is floating point and sample based: word enumeration in
a ball of the word metric, singular-value projections, empirical cones
and growth-exponent estimates.  Nothing in this module certifies
discreteness, density, or an actual critical exponent; outputs that
depend on the enumeration horizon say so.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from .cones import poly_cone
from .errors import CapExceeded, InputError

ORBIT_CAP_DEFAULT = 10**6
DEDUPE_TOL_DEFAULT = 1e-6
UNIMODULAR_TOL = 1e-8

_AMBIENTS = {f"sl{n}r": n for n in range(2, 7)}

ESTIMATE_FLAG = "estimate (not a certified abscissa)"


def _parse_ambient(name) -> str:
    s = str(name).lower()
    for ch in " (),":
        s = s.replace(ch, "")
    if not s.endswith("r"):
        s += "r"
    if s not in _AMBIENTS:
        raise InputError(f"unknown ambient group {name!r}; "
                         f"choose from {sorted(_AMBIENTS)}")
    return s


@dataclass(frozen=True)
class MatrixGroupSpec:
    """Generators of a matrix subgroup, renormalized to determinant one."""

    ambient: str
    generators: tuple
    max_word_length: int
    dedupe_tolerance: float = DEDUPE_TOL_DEFAULT

    @property
    def n(self) -> int:
        return _AMBIENTS[self.ambient]


@dataclass(frozen=True)
class CartanSample:
    """Projections of enumerated words: (point, word length) pairs.

    Points live in the trace-zero coordinate model, sorted decreasing
    with coordinate sum zero; rank is the dimension of that space.
    dropped counts words lost to numerical degeneration.
    """

    points: tuple
    rank: int
    dropped: int = 0


def build_group_spec(obj) -> MatrixGroupSpec:
    """Validate a generator specification, accepting the JSON input shape.

    {"ambient": "sl3r", "generators": [[[...]]], "max_word_length": 12,
    "dedupe_tolerance": 1e-6}.  Each generator is renormalized by the
    n-th root of its determinant and must then be unimodular to 1e-8.
    Whether the generated group is discrete is the caller's claim; it
    is never verified here.
    """
    if isinstance(obj, MatrixGroupSpec):
        return obj
    if not isinstance(obj, dict):
        raise InputError("group spec must be a mapping or a MatrixGroupSpec")
    ambient = _parse_ambient(obj.get("ambient", ""))
    n = _AMBIENTS[ambient]
    gens = []
    for g in obj.get("generators", ()):
        A = np.asarray(g, dtype=float)
        if A.shape != (n, n) or not np.all(np.isfinite(A)):
            raise InputError(f"generators must be finite {n}x{n} matrices")
        d = float(np.linalg.det(A))
        if abs(d) < 1e-12:
            raise InputError("generator is numerically singular")
        if d < 0 and n % 2 == 0:
            raise InputError("negative determinant cannot be renormalized "
                             "in even dimension")
        A = A / math.copysign(abs(d) ** (1.0 / n), d)
        if abs(float(np.linalg.det(A)) - 1.0) > UNIMODULAR_TOL:
            raise InputError("generator is not unimodular after renormalization")
        gens.append(tuple(tuple(float(x) for x in row) for row in A))
    mwl = obj.get("max_word_length", 8)
    if not isinstance(mwl, int) or mwl < 1:
        raise InputError("max_word_length must be a positive integer")
    tol = float(obj.get("dedupe_tolerance", DEDUPE_TOL_DEFAULT))
    if not 0 < tol < 1:
        raise InputError("dedupe_tolerance must sit strictly between 0 and 1")
    return MatrixGroupSpec(ambient=ambient, generators=tuple(gens),
                           max_word_length=mwl, dedupe_tolerance=tol)


def _letters(spec: MatrixGroupSpec):
    """Generator matrices with inverses appended; letter i inverts to i+m."""
    mats = [np.array(g, dtype=float) for g in spec.generators]
    m = len(mats)
    mats.extend(np.linalg.inv(mats[i]) for i in range(m))
    return mats, m


def _cartan_point(P) -> tuple | None:
    """Sorted log singular values, recentered to sum zero; None if degenerate."""
    try:
        s = np.linalg.svd(P, compute_uv=False)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(s)) or s[-1] <= 0.0:
        return None
    ls = np.log(s)
    ls = ls - ls.mean()
    return tuple(float(x) for x in ls)


def enumerate_orbit(spec, cap: int = ORBIT_CAP_DEFAULT) -> CartanSample:
    """Projections of all reduced words up to the configured length.

    Breadth first with no immediate backtracking.  Within each word
    length, words whose projections round to the same grid cell (side
    dedupe_tolerance) are merged; float equality of group elements is
    undecidable, and equal-length words with equal projections are
    overwhelmingly the same element for the inputs this targets.
    Degenerate products (overflow, vanishing singular values) are
    dropped and counted.  Grows past cap -> CapExceeded.
    """
    spec = build_group_spec(spec)
    n = spec.n
    mats, m = _letters(spec)
    points = [(tuple(0.0 for _ in range(n)), 0)]
    dropped = 0
    count = 1
    frontier = [(np.eye(n), -1)]
    for length in range(1, spec.max_word_length + 1):
        seen = set()
        nxt = []
        level = []
        for M, last in frontier:
            for j, L in enumerate(mats):
                # skip the immediate backtrack letter
                if last >= 0 and j == (last + m) % (2 * m):
                    continue
                P = M @ L
                if not np.all(np.isfinite(P)):
                    dropped += 1
                    continue
                mu = _cartan_point(P)
                if mu is None:
                    dropped += 1
                    continue
                key = tuple(int(round(x / spec.dedupe_tolerance)) for x in mu)
                if key in seen:
                    continue
                seen.add(key)
                count += 1
                if count > cap:
                    raise CapExceeded("orbit enumeration", count, cap)
                level.append(mu)
                nxt.append((P, j))
        # canonical order within each level, independent of visit order
        points.extend((mu, length) for mu in sorted(level))
        frontier = nxt
        if not frontier:
            break
    return CartanSample(points=tuple(points), rank=n - 1, dropped=dropped)


def validate_cartan_sample(S: CartanSample, tol: float = 1e-6) -> bool:
    """Dominance and trace-zero invariants of every point, within tol."""
    for p, _ in S.points:
        if len(p) != S.rank + 1:
            raise InputError("point length disagrees with the sample rank")
        if abs(sum(p)) > tol:
            raise InputError(f"point {p} is not trace free")
        if any(p[i] < p[i + 1] - tol for i in range(len(p) - 1)):
            raise InputError(f"point {p} is not sorted decreasing")
    return True


def _norm(p) -> float:
    return math.sqrt(sum(x * x for x in p))


def empirical_limit_cone(S: CartanSample, radius_cut: float):
    """Cone spanned by the directions of the far sample points.

    Keeps the points with norm at least radius_cut and normalizes them.
    Rank two returns the two angular extremes of the fan (one ray when
    everything is collinear); other ranks return the deduped directions
    filtered to convex position.
    """
    tail = [p for p, _ in S.points
            if _norm(p) >= radius_cut and _norm(p) > 0]
    if not tail:
        raise InputError("no sample points beyond the radius cut; "
                         "enumerate with a larger max_word_length")
    n = S.rank + 1
    dirs = [tuple(x / _norm(p) for x in p) for p in tail]
    if S.rank == 2:
        u1 = (1 / math.sqrt(2), 0.0, -1 / math.sqrt(2))
        u2 = (1 / math.sqrt(6), -2 / math.sqrt(6), 1 / math.sqrt(6))
        angs = [math.atan2(sum(a * b for a, b in zip(d, u2)),
                           sum(a * b for a, b in zip(d, u1))) for d in dirs]
        lo = min(range(len(angs)), key=angs.__getitem__)
        hi = max(range(len(angs)), key=angs.__getitem__)
        if angs[hi] - angs[lo] <= 1e-12:
            return poly_cone(generators=(dirs[hi],), rank=n)
        return poly_cone(generators=(dirs[lo], dirs[hi]), rank=n)
    uniq = {}
    for d in dirs:
        uniq[tuple(round(x, 6) for x in d)] = d
    kept = _convex_position(list(uniq.values()))
    return poly_cone(generators=tuple(kept), rank=n)


def _convex_position(dirs):
    """Drop directions that are nonnegative combinations of the others."""
    from scipy.optimize import linprog

    kept = list(dirs)
    i = 0
    while i < len(kept) and len(kept) > 1:
        others = kept[:i] + kept[i + 1:]
        A = np.array(others, dtype=float).T
        res = linprog(c=np.zeros(len(others)), A_eq=A, b_eq=np.array(kept[i]),
                      bounds=[(0, None)] * len(others), method="highs")
        if res.status == 0:
            kept.pop(i)
        else:
            i += 1
    return kept


def estimate_exponent(S: CartanSample, mu) -> dict:
    """Growth-exponent estimate for the counting function weighted by mu.

    Fits log N(T) against T by least squares over the top half of the
    value range (the regime is echoed in the output).  The number is an
    estimate from a word-metric ball, never a certified abscissa, and
    the report says so in its flag field.
    """
    mu = tuple(float(x) for x in mu)
    if len(mu) != S.rank + 1:
        raise InputError("the weighting functional must have one entry "
                         "per matrix dimension")
    vals = sorted(sum(m * x for m, x in zip(mu, p)) for p, _ in S.points)
    if len(vals) < 1000:
        raise InputError("need at least 1000 sample points for an estimate")
    spread = vals[-1] - vals[0]
    if spread < 3:
        raise InputError("mu-values must spread over at least 3 units")
    lo = vals[-1] - spread / 2
    xs, ys = [], []
    for k, t in enumerate(vals):
        if t >= lo:
            xs.append(t)
            ys.append(math.log(k + 1))
    if len(xs) < 3 or xs[-1] - xs[0] <= 0:
        raise InputError("insufficient spread in the fitting regime")
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    ssxx = sum((x - sum(xs) / len(xs)) ** 2 for x in xs)
    se = math.sqrt(sum(r * r for r in resid) / max(len(xs) - 2, 1) / ssxx)
    band = 1.96 * se
    return {
        "estimate": float(slope),
        "band": [float(slope - band), float(slope + band)],
        "regime": [float(lo), float(vals[-1])],
        "points_used": len(xs),
        "flag": ESTIMATE_FLAG,
    }


def iota_symmetry_check(spec, depth: int | None = None, tol: float = 1e-6,
                        cap: int = ORBIT_CAP_DEFAULT) -> dict:
    """Projection of the inverse word against the reversed negation.

    Walks every reduced word to the requested depth, computing the word
    product and the inverse word's product independently, and compares
    the inverse's projection with the coordinate reversal and negation
    of the word's.  That reversal is the opposition involution in the
    trace-zero model.
    """
    spec = build_group_spec(spec)
    depth = spec.max_word_length if depth is None else depth
    mats, m = _letters(spec)
    n = spec.n
    pairs = 0
    failures = 0
    worst = 0.0
    stack = [(np.eye(n), np.eye(n), -1, 0)]
    while stack:
        P, Pinv, last, length = stack.pop()
        if length > 0:
            mu = _cartan_point(P)
            nu = _cartan_point(Pinv)
            if mu is not None and nu is not None:
                pairs += 1
                expected = tuple(-x for x in reversed(mu))
                dev = max(abs(a - b) for a, b in zip(nu, expected))
                worst = max(worst, dev)
                if dev > tol:
                    failures += 1
        if length == depth:
            continue
        for j, L in enumerate(mats):
            if last >= 0 and j == (last + m) % (2 * m):
                continue
            inv_j = (j + m) % (2 * m)
            # inverse of w*l is l^-1 * w^-1
            stack.append((P @ L, mats[inv_j] @ Pinv, j, length + 1))
            if len(stack) + pairs > cap:
                raise CapExceeded("involution check", len(stack) + pairs, cap)
    return {"pairs": pairs, "failures": failures,
            "max_deviation": float(worst), "tolerance": tol}


def subadditivity_check(spec, pairs: int = 100, seed: int = 0,
                        tol: float = 1e-6, depth: int = 4,
                        cap: int = ORBIT_CAP_DEFAULT) -> dict:
    """Norm of the projection of a product against the sum of the factors'."""
    spec = build_group_spec(spec)
    mats, m = _letters(spec)
    n = spec.n
    pool = []
    frontier = [(np.eye(n), -1)]
    for _ in range(depth):
        nxt = []
        for M, last in frontier:
            for j, L in enumerate(mats):
                if last >= 0 and j == (last + m) % (2 * m):
                    continue
                nxt.append((M @ L, j))
                if len(pool) + len(nxt) > cap:
                    raise CapExceeded("subadditivity pool", len(pool), cap)
        pool.extend(nxt)
        frontier = nxt
    if not pool:
        return {"pairs": 0, "failures": 0, "max_excess": 0.0}
    rng = random.Random(seed)
    failures = 0
    worst = -math.inf
    for _ in range(pairs):
        (A, _), (B, _) = rng.choice(pool), rng.choice(pool)
        pa, pb, pab = _cartan_point(A), _cartan_point(B), _cartan_point(A @ B)
        if pa is None or pb is None or pab is None:
            continue
        excess = _norm(pab) - _norm(pa) - _norm(pb)
        worst = max(worst, excess)
        if excess > tol:
            failures += 1
    if worst == -math.inf:
        worst = 0.0
    return {"pairs": pairs, "failures": failures, "max_excess": float(worst)}


def facet_contact_report(S: CartanSample, tol: float = 1e-6) -> dict:
    """Which chamber walls the sample directions touch.

    In the trace-zero model the walls are the consecutive coordinate
    differences; a normalized direction with a vanishing difference
    lies in that wall.  Reports the contact fraction per wall and
    whether every direction sits there.
    """
    dirs = []
    for p, _ in S.points:
        r = _norm(p)
        if r > 0:
            dirs.append(tuple(x / r for x in p))
    walls = []
    for i in range(S.rank):
        hits = sum(1 for d in dirs if abs(d[i] - d[i + 1]) <= tol)
        frac = hits / len(dirs) if dirs else 0.0
        walls.append({"wall": i, "contact_fraction": frac,
                      "all_on_wall": bool(dirs) and hits == len(dirs)})
    return {"directions": len(dirs), "walls": walls}


def sample_to_csv(S: CartanSample) -> str:
    """word_length,x1,...,xn rows; plain text, no binary."""
    header = "word_length," + ",".join(f"x{i+1}" for i in range(S.rank + 1))
    lines = [header]
    for p, wl in S.points:
        lines.append(str(wl) + "," + ",".join(repr(float(x)) for x in p))
    return "\n".join(lines) + "\n"
