"""Exact rational computations on 2-D polyhedral unit balls.

All geometry here is done with ``fractions.Fraction``: convex hulls,
facet functionals, Minkowski functionals, halfplane clipping, and the
finite enumerations behind the exact modulus values.  Distances between
points of a polygonal ball are measured in the ball's own norm, so every
exact value produced here is rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, Fraction]
HalfPlane = tuple[Fraction, Fraction, Fraction]  # a1*x + a2*y <= b

ZERO = Fraction(0)
ONE = Fraction(1)


def frac_vec(v: Sequence) -> Vec:
    return (Fraction(v[0]).limit_denominator(10 ** 12),
            Fraction(v[1]).limit_denominator(10 ** 12))


def cross(o: Vec, a: Vec, b: Vec) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_ccw(points: Iterable[Vec]) -> list[Vec]:
    """Convex hull in counterclockwise order (monotone chain, exact)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class Polygon:
    """Convex polygon with the origin in its interior (a unit ball)."""

    def __init__(self, vertices: Iterable[Vec]):
        self.vertices = hull_ccw(vertices)
        if len(self.vertices) < 3:
            raise ValueError("polygon must be two-dimensional")
        self.facets: list[tuple[Fraction, Fraction]] = []
        n = len(self.vertices)
        for i in range(n):
            v, w = self.vertices[i], self.vertices[(i + 1) % n]
            det = v[0] * w[1] - w[0] * v[1]
            if det == 0:
                raise ValueError("origin must be interior to the polygon")
            self.facets.append(((w[1] - v[1]) / det, (v[0] - w[0]) / det))

    def gauge(self, x: Vec) -> Fraction:
        """Minkowski functional: max over facet functionals."""
        return max(a[0] * x[0] + a[1] * x[1] for a in self.facets)

    def contains(self, x: Vec) -> bool:
        return self.gauge(x) <= 1

    def edges(self) -> list[tuple[Vec, Vec]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def polar(self) -> "Polygon":
        return Polygon(self.facets)

    def scaled_shifted(self, scale: Fraction, center: Vec) -> "Polygon":
        return Polygon([(center[0] + scale * v[0], center[1] + scale * v[1])
                        for v in self.vertices])


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def clip_halfplane(vertices: list[Vec], a: Vec, b: Fraction) -> list[Vec]:
    """Sutherland-Hodgman clip of a convex polygon by {x : a.x <= b}."""
    if not vertices:
        return []
    out: list[Vec] = []
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        fp, fq = dot(a, p) - b, dot(a, q) - b
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    # dedupe consecutive duplicates
    ded: list[Vec] = []
    for v in out:
        if not ded or v != ded[-1]:
            ded.append(v)
    if len(ded) > 1 and ded[0] == ded[-1]:
        ded.pop()
    return ded


def clip_polygon(vertices: list[Vec], halfplanes: Iterable[HalfPlane]) -> list[Vec]:
    out = list(vertices)
    for a1, a2, b in halfplanes:
        out = clip_halfplane(out, (a1, a2), b)
        if not out:
            return []
    return out


def segment_interval(p: Vec, q: Vec, halfplanes: Iterable[HalfPlane]
                     ) -> Optional[tuple[Fraction, Fraction]]:
    """Parameter interval of {p + t(q-p) : t in [0,1]} inside all halfplanes."""
    lo, hi = ZERO, ONE
    d = sub(q, p)
    for a1, a2, b in halfplanes:
        c0 = a1 * p[0] + a2 * p[1] - b
        c1 = a1 * d[0] + a2 * d[1]
        if c1 == 0:
            if c0 > 0:
                return None
        elif c1 > 0:
            hi = min(hi, -c0 / c1)
        else:
            lo = max(lo, -c0 / c1)
        if lo > hi:
            return None
    return (lo, hi)


# -- slice diameter --------------------------------------------------------


def slice_diameter_exact(ball: Polygon, f: Vec, alpha: Fraction) -> Fraction:
    """Diameter, in the ball's own norm, of {g in ball : f.g > alpha}."""
    if max(dot(f, v) for v in ball.vertices) <= alpha:
        return ZERO  # empty-slice convention
    clipped = clip_halfplane(ball.vertices, (-f[0], -f[1]), -alpha)
    best = ZERO
    for i, u in enumerate(clipped):
        for w in clipped[i + 1:]:
            best = max(best, ball.gauge(sub(u, w)))
    return best


# -- beta moduli -----------------------------------------------------------


def _far_set_candidates(dual_ball: Polygon, f: Vec, t: Fraction) -> list[Vec]:
    """Extreme candidates of {g in dual ball : ||f-g|| >= t} (dual-ball norm)."""
    Q = dual_ball.scaled_shifted(t, f)
    cand = [v for v in dual_ball.vertices if dual_ball.gauge(sub(v, f)) >= t]
    cand += [w for w in Q.vertices if dual_ball.contains(w)]
    for p, q in dual_ball.edges():
        for r, s in Q.edges():
            pt = _segment_intersection(p, q, r, s)
            if pt is not None:
                cand.append(pt)
    return cand


def _segment_intersection(p: Vec, q: Vec, r: Vec, s: Vec) -> Optional[Vec]:
    d1, d2 = sub(q, p), sub(s, r)
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    rp = sub(r, p)
    t = (rp[0] * d2[1] - rp[1] * d2[0]) / den
    u = (rp[0] * d1[1] - rp[1] * d1[0]) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (p[0] + t * d1[0], p[1] + t * d1[1])
    return None


def beta_point_exact(dual_ball: Polygon, f: Vec, x: Vec, t: Fraction) -> Fraction:
    """inf{1 - g(x) : g in dual ball, ||f-g|| >= t}, exactly."""
    cand = _far_set_candidates(dual_ball, f, t)
    if not cand:
        raise ValueError("empty feasible set; need t <= 2")
    return 1 - max(dot(g, x) for g in cand)


def beta_sup_exact(primal_ball: Polygon, dual_ball: Polygon,
                   f: Vec, t: Fraction) -> Fraction:
    """sup over x in the primal sphere of beta_point, exactly.

    Equals 1 - min over the primal sphere of the support function of the
    far set; the minimum over each sphere edge of a max of affine
    functions is attained at an endpoint or a crossing of two lines.
    """
    cand = _far_set_candidates(dual_ball, f, t)
    best_min: Optional[Fraction] = None
    for v, w in primal_ball.edges():
        d = sub(w, v)
        # affine functions lam -> g.v + lam * g.d
        consts = [dot(g, v) for g in cand]
        slopes = [dot(g, d) for g in cand]
        lams = {ZERO, ONE}
        m = len(cand)
        for i in range(m):
            for j in range(i + 1, m):
                if slopes[i] != slopes[j]:
                    lam = (consts[j] - consts[i]) / (slopes[i] - slopes[j])
                    if 0 < lam < 1:
                        lams.add(lam)
        for lam in lams:
            val = max(c + lam * s for c, s in zip(consts, slopes))
            if best_min is None or val < best_min:
                best_min = val
    assert best_min is not None
    return 1 - best_min


# -- s modulus on a polygonal ball ----------------------------------------


def s_point_exact(ball: Polygon, x: Vec, f: Vec, t: Fraction) -> Fraction:
    """inf{||x+y|| - 1 : y in ker f, ||y|| >= t/4}, truncated at 2 + t/4."""
    v = (-f[1], f[0])
    nv = ball.gauge(v)
    lo = (t / 4) / nv
    hi = (2 + t / 4) / nv
    best: Optional[Fraction] = None
    for sign in (1, -1):
        sv = (sign * v[0], sign * v[1])
        consts = [dot(a, x) for a in ball.facets]
        slopes = [dot(a, sv) for a in ball.facets]
        cands = {lo, hi}
        m = len(consts)
        for i in range(m):
            for j in range(i + 1, m):
                if slopes[i] != slopes[j]:
                    s = (consts[j] - consts[i]) / (slopes[i] - slopes[j])
                    if lo < s < hi:
                        cands.add(s)
        for s in cands:
            val = max(c + s * k for c, k in zip(consts, slopes)) - 1
            if best is None or val < best:
                best = val
    assert best is not None
    return best


# -- denting sign tests ----------------------------------------------------


def denting_nonpositive(ball: Polygon, g: Vec, t: Fraction) -> Optional[Vec]:
    """Exact test that sup_f s(g, f, t) <= 0 for g on the sphere of ``ball``.

    The sup is nonpositive iff for every unit direction u one of
    g +- (t/4) u stays in the ball.  Returns None when that holds, or a
    witness direction u where both signs leave the ball.
    """
    r = t / 4
    for v, w in ball.edges():
        iv_plus = _direction_interval(ball, g, v, w, r)
        iv_minus = _direction_interval(ball, g, v, w, -r)
        gap = _uncovered_param(iv_plus, iv_minus)
        if gap is not None:
            lam = gap
            return (v[0] + lam * (w[0] - v[0]), v[1] + lam * (w[1] - v[1]))
    return None


def _direction_interval(ball: Polygon, g: Vec, v: Vec, w: Vec, r: Fraction
                        ) -> Optional[tuple[Fraction, Fraction]]:
    """Parameters lam in [0,1] with g + r*(v + lam(w-v)) inside the ball."""
    hp = []
    d = sub(w, v)
    for a in ball.facets:
        # a.(g + r v) + lam * r a.d <= 1
        c0 = dot(a, g) + r * dot(a, v)
        c1 = r * dot(a, d)
        hp.append((c1, ZERO, 1 - c0))  # treat lam as the x-coordinate
    return segment_interval((ZERO, ZERO), (ONE, ZERO), hp)


def _uncovered_param(i1: Optional[tuple[Fraction, Fraction]],
                     i2: Optional[tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """A point of [0,1] missed by the union of two closed intervals, if any."""
    ivs = sorted(i for i in (i1, i2) if i is not None)
    cur = ZERO
    for lo, hi in ivs:
        if lo > cur:
            return (cur + lo) / 2
        cur = max(cur, hi)
    if cur < 1:
        return (cur + 1) / 2
    return None


# -- d*_0 coverage over a neighbourhood ------------------------------------


def dstar_zero_nonpositive(primal_ball: Polygon, f: Vec, t: Fraction
                           ) -> Optional[tuple[Vec, Vec]]:
    """Exact test that d*(g, t) <= 0 for every g on S(X*) with ||f-g|| <= t.

    Works on the dual ball (polar of the primal polygon).  Returns None on
    success or a witness (g, u) with both g +- (t/4) u outside the dual
    ball.  Combined with d*(f, t) >= 0 this pins d*_0(f, t) = 0 exactly.
    """
    dual = primal_ball.polar()
    r = t / 4
    near = [(a1, a2, t + dot((a1, a2), f)) for a1, a2 in dual.facets]
    for g0, g1 in dual.edges():
        seg = segment_interval(g0, g1, near)
        if seg is None:
            continue
        lo, hi = seg
        ga = (g0[0] + lo * (g1[0] - g0[0]), g0[1] + lo * (g1[1] - g0[1]))
        gb = (g0[0] + hi * (g1[0] - g0[0]), g0[1] + hi * (g1[1] - g0[1]))
        for v, w in dual.edges():
            witness = _square_coverage_witness(dual, ga, gb, v, w, r)
            if witness is not None:
                mu, lam = witness
                g = (ga[0] + mu * (gb[0] - ga[0]), ga[1] + mu * (gb[1] - ga[1]))
                u = (v[0] + lam * (w[0] - v[0]), v[1] + lam * (w[1] - v[1]))
                return (g, u)
    return None


def _square_coverage_witness(ball: Polygon, ga: Vec, gb: Vec, v: Vec, w: Vec,
                             r: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Check [0,1]^2 (mu, lam) is covered by R+ union R-, where R(sigma) is
    the set with g(mu) + sigma r u(lam) inside the ball.  Both sets are
    intersections of halfplanes that are linear in (mu, lam)."""
    dg, du = sub(gb, ga), sub(w, v)

    def halfplanes(sigma: int) -> list[HalfPlane]:
        hp = []
        for a in ball.facets:
            c_mu = dot(a, dg)
            c_lam = sigma * r * dot(a, du)
            c0 = dot(a, ga) + sigma * r * dot(a, v)
            hp.append((c_mu, c_lam, 1 - c0))
        return hp

    hp_plus, hp_minus = halfplanes(1), halfplanes(-1)
    square = [(ZERO, ZERO), (ONE, ZERO), (ONE, ONE), (ZERO, ONE)]

    def in_all(p: tuple[Fraction, Fraction], hps: list[HalfPlane]) -> bool:
        return all(a1 * p[0] + a2 * p[1] <= b for a1, a2, b in hps)

    # Any uncovered point violates some R+ halfplane strictly, so it lies in
    # a piece square ∩ {a.x >= b} with an off-line vertex; R- is convex, so
    # if all vertices of such a piece are in R- the piece is covered.
    for a1, a2, b in hp_plus:
        piece = clip_polygon(square, [(-a1, -a2, -b)])
        if not piece:
            continue
        off_line = [q for q in piece if a1 * q[0] + a2 * q[1] > b]
        if not off_line:
            continue  # degenerate sliver on the facet line
        for p in piece:
            if in_all(p, hp_minus):
                continue
            if not in_all(p, hp_plus):
                return p
            # p sits on the R+ boundary; slide toward an off-line vertex to
            # leave R+ while staying (by closedness) outside R-
            q = off_line[0]
            step = ONE
            for _ in range(128):
                x = (p[0] + step * (q[0] - p[0]), p[1] + step * (q[1] - p[1]))
                if not in_all(x, hp_minus) and not in_all(x, hp_plus):
                    return x
                step = step / 2
            raise ArithmeticError("coverage perturbation failed to converge")
    return None
