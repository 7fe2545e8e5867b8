"""Slices of unit balls: diameters, residual-set radius, separating balls.

Slice diameters are measured in the norm of the ball being sliced.  The
certified path relies on a convexity fact: the diameter of a closed slice
{g in B : v(g) >= a} is attained at extreme points, and every extreme
point of the slice lies on the unit sphere (points of the hyperplane
section interior to the ball are relative-interior, hence not extreme).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .bracket import GRID, Bracket
from .config import Budget, resolve
from .denting import modulus_convexity, _resolution, _vec
from .errors import BallConstructionError, DomainError
from .gridutil import lowdisc_sphere, sphere_grid
from .spaces import (Point, SpaceDescriptor, duality_preimage, polar_space,
                     _dual_norm_array, _norm_array)


@dataclass(frozen=True)
class Slice:
    """The slice {g in the unit ball : direction(g) > threshold}.

    For ``ball_side="dual"`` the ball is the dual ball and the direction is
    a primal point acting as a functional (a w*-slice).
    """

    direction: tuple[float, ...]
    threshold: float
    ball_side: Literal["primal", "dual"] = "primal"

    def __post_init__(self):
        if self.threshold <= 0.0:
            raise DomainError("slice threshold must be positive")

    @staticmethod
    def of(direction: Sequence[float], threshold: float,
           ball_side: Literal["primal", "dual"] = "primal") -> "Slice":
        return Slice(tuple(float(c) for c in direction), threshold, ball_side)


def _ball_space(space: SpaceDescriptor, ball_side: str) -> SpaceDescriptor:
    return space if ball_side == "primal" else polar_space(space)


def slice_diameter(space: SpaceDescriptor, slc: Slice,
                   budget: Optional[Budget] = None) -> Bracket:
    """Certified bracket for the diameter of a slice, in the ball's norm.

    A threshold at or above the direction's dual norm yields the empty
    slice, reported as the exact bracket [0, 0].
    """
    budget = resolve(budget)
    W = _ball_space(space, slc.ball_side)
    v = np.asarray(slc.direction, dtype=float)
    nv = float(_dual_norm_array(W, v))
    if abs(nv - 1.0) > 1e-6:
        raise DomainError(f"slice direction must be a unit functional, norm {nv}")
    alpha = slc.threshold
    if alpha >= nv:
        return Bracket.exact(0.0)
    res = _resolution(budget, 1e-3, 0.05, W.dim)
    grid = sphere_grid(W, res)
    h = grid.covering
    vals = grid.points @ v
    # |v(g) - v(g0)| <= ||g - g0|| since v is a unit functional
    relax = grid.points[vals >= alpha - h]
    feas = grid.points[vals >= alpha]
    lower = _max_pair(W, feas)
    upper = (_max_pair(W, relax) + 2.0 * h) if len(relax) else 0.0
    return Bracket(lower=lower, upper=max(upper, lower), method=GRID,
                   resolution=res, lipschitz=1.0, seed=budget.seed)


def _max_pair(space: SpaceDescriptor, pts: np.ndarray, chunk: int = 1024) -> float:
    if len(pts) < 2:
        return 0.0
    best = 0.0
    for i in range(0, len(pts), chunk):
        diffs = pts[i:i + chunk, None, :] - pts[None, :, :]
        best = max(best, float(np.max(_norm_array(space, diffs))))
    return best


# -- residual-set radius ----------------------------------------------------


def f_eps_radius(space: SpaceDescriptor, eps: float,
                 budget: Optional[Budget] = None) -> Bracket:
    """Bracket for sup{||f|| : f in the dual ball lies in no w*-slice of
    diameter < eps}.

    Upper bound (rigorous): any f with ||f|| > 1 - 2 delta*(eps/2) lies in
    the small w*-slice determined by a norming direction of f.  Lower
    bound (by definition a search floor): the largest norm of a sample
    point for which no witness slice was found within the budget.
    Convention: eps >= 2 returns [0, 0] — the whole-ball slice witnesses
    every point.
    """
    if eps <= 0.0:
        raise DomainError("eps must be positive")
    if eps >= 2.0:
        return Bracket.exact(0.0)
    budget = resolve(budget)
    W = polar_space(space)
    delta = modulus_convexity(W, eps / 2.0, budget)
    tau = 1.0 - 2.0 * max(delta.lower, 0.0)
    upper = min(1.0, tau)

    samples = [lowdisc_sphere(W, 24, seed=budget.seed)]
    if W.kind == "polyhedral":
        samples.append(_facet_midpoints(W))
    shell = np.vstack(samples)
    lower = 0.0
    for r in (1.0, 0.98, 0.95, 0.9, 0.8, 0.6):
        if r <= lower or r > upper + 1e-12:
            continue
        for fa in shell:
            fr = r * fa
            if float(_norm_array(W, fr)) <= lower:
                continue
            if not _has_witness_slice(space, W, fr, eps, budget):
                lower = max(lower, float(_norm_array(W, fr)))
    lower = min(lower, upper)
    return Bracket(lower=lower, upper=upper, method=GRID,
                   resolution=delta.resolution, lipschitz=1.0, seed=budget.seed)


def _facet_midpoints(W: SpaceDescriptor) -> np.ndarray:
    V = np.asarray(W.vertices, dtype=float)
    mids = []
    for a in W.facets:
        on = V[np.isclose(V @ a, 1.0, atol=1e-9)]
        if len(on):
            mids.append(np.mean(on, axis=0))
    return np.array(mids) if mids else np.zeros((0, W.dim))


def _has_witness_slice(space: SpaceDescriptor, W: SpaceDescriptor,
                       fr: np.ndarray, eps: float, budget: Budget) -> bool:
    r = float(_norm_array(W, fr))
    if r < 1e-12:
        return True  # the origin lies in every slice; small slices exist
    dirs = [duality_preimage(space, fr / r).array]
    dirs.extend(lowdisc_sphere(space, 12, seed=budget.seed + 1))
    slice_budget = budget.with_resolution(
        budget.resolution if budget.resolution is not None
        else (5e-3 if W.dim == 2 else 0.08))
    for xa in dirs:
        v = float(fr @ xa)
        if v <= 0.0:
            continue
        for frac in (0.5, 0.25, 0.1, 0.02):
            alpha = v - frac * min(v, 1.0 - v + 1e-3)
            if not (0.0 < alpha < v):
                continue
            diam = slice_diameter(space, Slice.of(xa, alpha, "dual"), slice_budget)
            if diam.upper < eps:
                return True
    return False


# -- separating-ball construction ------------------------------------------


@dataclass(frozen=True)
class SeparatingBall:
    """A ball B[center, radius] separating a convex set from a functional's
    sublevel region, together with the constants used to build it."""

    center: Point
    radius: float
    lam: float
    k: int
    gamma: float
    eta: float
    d: float
    M1: float
    K: float

    def __post_init__(self):
        if self.radius > self.K + 1e-9:
            raise DomainError("ball radius exceeds the uniform cap K")
        if self.eta <= 0.0:
            raise DomainError("eta must be positive")
        lam_expected = self.M1 / (2.0 * self.k * (1.0 - self.gamma))
        if abs(self.lam - lam_expected) > 1e-6 * max(1.0, lam_expected):
            raise DomainError("lam is inconsistent with (M1, k, gamma)")
        eta_expected = 1.0 - 2.0 * self.k * (1.0 - self.gamma)
        if abs(self.eta - eta_expected) > 1e-9:
            raise DomainError("eta is inconsistent with (k, gamma)")


def construct_separating_ball(space: SpaceDescriptor, C: Sequence[Sequence[float]],
                              f, eps: float, M: float,
                              budget: Optional[Budget] = None) -> SeparatingBall:
    """Build a ball containing the polytope C while staying in {f >= eps/2}.

    Recipe: with M1 = M + 3 eps/4 and the smallest k with 1/2k < eps/4M1,
    search for gamma close to 1 such that the w*-slice in direction of a
    norming point x2 of f at threshold eta = 1 - 2k(1-gamma) has certified
    diameter < eps/4M1; then the ball B[lam x2, lam - d - 3 eps/4] with
    lam = M1/(1-eta) and d = d(0, C + (3 eps/4)B)(1-eta)/(1+eta) works.
    All three postconditions (containment of C, inf f over the ball
    >= eps/2, radius <= K = lam) are verified numerically to 1e-6; any
    violation raises BallConstructionError with the failed condition.
    """
    budget = resolve(budget)
    fa = _vec(f)
    nf = float(_dual_norm_array(space, fa))
    if abs(nf - 1.0) > 1e-6:
        raise DomainError("f must be a unit functional")
    V = np.asarray(C, dtype=float)
    if V.ndim != 2 or V.shape[1] != space.dim:
        raise DomainError("C must be a nonempty vertex list of matching dimension")
    if eps <= 0.0:
        raise DomainError("eps must be positive")
    norms = _norm_array(space, V)
    if float(np.max(norms)) > M + 1e-9:
        raise DomainError(f"C is not contained in the ball of radius M={M}")
    inf_fC = float(np.min(V @ fa))
    if inf_fC < eps - 1e-9:
        raise DomainError(f"inf f over C is {inf_fC}, below eps={eps}")

    M1 = M + 0.75 * eps
    k = int(math.floor(2.0 * M1 / eps)) + 1
    target = eps / (4.0 * M1)
    x2 = duality_preimage(space, fa).array

    eta = None
    gamma = None
    slice_budget = budget.with_resolution(
        budget.resolution if budget.resolution is not None
        else (5e-4 if space.dim == 2 else 0.02))
    for j in range(1, 16):
        gamma_j = 1.0 - 2.0 ** (-j) / (2.0 * k)
        eta_j = 1.0 - 2.0 * k * (1.0 - gamma_j)
        if eta_j <= 0.0 or float(fa @ x2) <= gamma_j:
            continue
        diam = slice_diameter(space, Slice.of(x2, eta_j, "dual"), slice_budget)
        if diam.upper < target:
            gamma, eta = gamma_j, eta_j
            break
    if eta is None:
        raise BallConstructionError(
            "no-small-slice-witness",
            f"no w*-slice in the norming direction of f reaches certified "
            f"diameter < {target:.6g}; the dual ball is not uniformly "
            f"w*-denting at this scale")

    d0C = _distance_to_hull(space, V)
    d0D = max(d0C - 0.75 * eps, 0.0)
    d = d0D * (1.0 - eta) / (1.0 + eta)
    lam = M1 / (1.0 - eta)
    radius = lam - d - 0.75 * eps
    center = lam * x2
    K = lam

    tol = 1e-6
    margins = radius + tol - _norm_array(space, V - center)
    if float(np.min(margins)) < 0.0:
        raise BallConstructionError(
            "containment", f"a vertex of C escapes the ball by {-float(np.min(margins)):.3g}")
    inf_f_ball = float(fa @ center) - radius
    if inf_f_ball < 0.5 * eps - tol:
        raise BallConstructionError(
            "separation", f"inf f over the ball is {inf_f_ball:.6g} < eps/2")
    if radius > K + tol:
        raise BallConstructionError("radius", f"radius {radius} exceeds K={K}")
    return SeparatingBall(center=Point.of(space, center), radius=radius,
                          lam=lam, k=k, gamma=gamma, eta=eta, d=d, M1=M1, K=K)


def _distance_to_hull(space: SpaceDescriptor, V: np.ndarray) -> float:
    """min ||sum_i w_i v_i|| over the simplex of vertex weights."""
    n = len(V)
    if n == 1:
        return float(_norm_array(space, V[0]))

    def objective(w: np.ndarray) -> float:
        return float(_norm_array(space, w @ V))

    w0 = np.full(n, 1.0 / n)
    out = minimize(objective, w0, method="SLSQP",
                   bounds=[(0.0, 1.0)] * n,
                   constraints=[{"type": "eq", "fun": lambda w: np.sum(w) - 1.0}],
                   options={"maxiter": 200, "ftol": 1e-12})
    return float(out.fun)
