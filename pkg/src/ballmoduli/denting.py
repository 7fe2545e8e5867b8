"""Denting moduli s, d and their dual (w*) counterparts, plus the modulus
of convexity.

All searches are certified grid searches in dimension <= 3: grids carry a
computed covering radius, objectives and constraints are norm/linear-form
compositions whose Lipschitz constants are recorded, and every returned
Bracket is rigorous under those constants.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .bracket import GRID, Bracket
from .config import Budget, resolve
from .errors import BudgetError, DomainError
from .gridutil import lowdisc_sphere, sharp_equiv_constants, sphere_grid
from .spaces import (Point, SpaceDescriptor, kernel_frame, polar_space,
                     support_functional, _dual_norm_array, _norm_array)

_UNIT_TOL = 1e-6


def _vec(v) -> np.ndarray:
    if isinstance(v, Point):
        return v.array
    return np.asarray(v, dtype=float)


def _require_unit(value: float, name: str, tol: float = _UNIT_TOL) -> None:
    if abs(value - 1.0) > tol:
        raise DomainError(f"{name} must have norm 1, got {value}")


def _resolution(budget: Budget, default2: float, default3: float, dim: int) -> float:
    if budget.resolution is not None:
        return budget.resolution
    return default2 if dim <= 2 else default3


# -- modulus of convexity ---------------------------------------------------


def modulus_convexity(space: SpaceDescriptor, t: float,
                      budget: Optional[Budget] = None) -> Bracket:
    """Certified bracket for inf{1 - ||x+y||/2 : x,y unit, ||x-y|| >= t}."""
    if not (0.0 < t <= 2.0):
        raise DomainError(f"modulus of convexity needs 0 < t <= 2, got {t}")
    budget = resolve(budget)
    res = _resolution(budget, 1.5e-3, 0.12, space.dim)
    grid = sphere_grid(space, res)
    pts, h = grid.points, grid.covering
    n = len(pts)
    if n * n > 2 * budget.max_evals:
        raise BudgetError(f"pair grid of {n}^2 evaluations exceeds the budget")
    # the objective 1 - ||x+y||/2 and the constraint ||x-y|| are each
    # 1-Lipschitz in (x, y) jointly for the max-of-norms metric; moving both
    # endpoints to grid neighbours changes value by <= h and distance by <= 2h
    best_feas = math.inf
    best_relax = math.inf
    chunk = max(1, int(4_000_000 // max(n, 1)))
    for i in range(0, n, chunk):
        block = pts[i:i + chunk]
        sums = block[:, None, :] + pts[None, i:, :]
        diffs = block[:, None, :] - pts[None, i:, :]
        vals = 1.0 - 0.5 * _norm_array(space, sums)
        dist = _norm_array(space, diffs)
        feas = dist >= t
        relax = dist >= t - 2.0 * h
        if np.any(feas):
            best_feas = min(best_feas, float(np.min(vals[feas])))
        if np.any(relax):
            best_relax = min(best_relax, float(np.min(vals[relax])))
    if not math.isfinite(best_feas):
        # symmetric grids contain antipodal pairs at distance 2 >= t, so this
        # only triggers on pathological resolutions
        raise BudgetError("no feasible pair found; refine the resolution")
    lower = max(0.0, best_relax - h)
    upper = max(best_feas, lower)
    return Bracket(lower=lower, upper=upper, method=GRID, resolution=res,
                   lipschitz=1.0, seed=budget.seed)


# -- kernel scans for the s-modulus ----------------------------------------


def _kernel_extent(space: SpaceDescriptor, t: float) -> float:
    eq = sharp_equiv_constants(space)
    return (2.0 + t / 4.0) / eq.c * 1.05


def _scan_1d(space: SpaceDescriptor, xs: np.ndarray, dirs: np.ndarray,
             t: float, res: float, max_evals: int):
    """Line scans y = c * dir through each kernel direction (dim 2 kernels).

    xs: (n, d) base points, dirs: (n, d) Euclidean-unit kernel directions.
    Returns per-row arrays (w, vals, c_grid, slack): feasibility radii,
    objective values ||x+y||-1, and the certified evaluation slack.
    """
    eq = sharp_equiv_constants(space)
    R = _kernel_extent(space, t)
    dc = max(res / eq.C, 1e-9)
    n_c = int(math.ceil(2.0 * R / dc)) + 1
    if len(xs) * n_c > max_evals:
        raise BudgetError(f"kernel scan of {len(xs) * n_c} evaluations exceeds the budget")
    c = np.linspace(-R, R, n_c)
    Y = c[None, :, None] * dirs[:, None, :]
    w = _norm_array(space, Y)
    vals = _norm_array(space, xs[:, None, :] + Y) - 1.0
    slack = eq.C * (c[1] - c[0]) * 0.5
    return w, vals, slack


def _boundary_vals_1d(space: SpaceDescriptor, xs: np.ndarray, dirs: np.ndarray,
                      radii) -> np.ndarray:
    """Objective at the exactly-feasible points ||y|| = radius on each line."""
    wd = _norm_array(space, dirs)
    r = np.broadcast_to(np.asarray(radii, dtype=float), (len(xs),))
    cb = (r / wd)[:, None, None] * np.array([1.0, -1.0])[None, :, None]
    Y = cb * dirs[:, None, :]
    return _norm_array(space, xs[:, None, :] + Y) - 1.0  # (n, 2)


def _kernel_inf_bracket(space: SpaceDescriptor, x: np.ndarray, B: np.ndarray,
                        t: float, res: float, max_evals: int) -> tuple[float, float]:
    """Certified (lower, upper) for inf{||x+y||-1 : y in ker f, ||y|| >= t/4}."""
    r0 = t / 4.0
    hi = 2.0 + t / 4.0
    if B.shape[0] == 1:
        w, vals, slack = _scan_1d(space, x[None, :], B, t, res, max_evals)
        w, vals = w[0], vals[0]
        bvals = _boundary_vals_1d(space, x[None, :], B, r0)[0]
    elif B.shape[0] == 2:
        w, vals, slack = _scan_2d(space, x, B, t, res, max_evals)
        bvals = _ring_vals(space, x, B, r0)
    else:
        raise DomainError("certified kernel scans are limited to dimension <= 3")
    feas = (w >= r0)
    relax = (w >= r0 - slack) & (w <= hi + slack)
    upper = float(np.min(vals[feas], initial=np.inf))
    upper = min(upper, float(np.min(bvals)))
    lower = float(np.min(vals[relax], initial=np.inf))
    lower = min(lower, float(np.min(bvals))) - slack
    return lower, max(upper, lower), slack


def _scan_2d(space: SpaceDescriptor, x: np.ndarray, B: np.ndarray,
             t: float, res: float, max_evals: int):
    eq = sharp_equiv_constants(space)
    R = _kernel_extent(space, t)
    dc = max(res / eq.C, 1e-9)
    n_c = int(math.ceil(2.0 * R / dc)) + 1
    if n_c * n_c > max_evals:
        raise BudgetError(f"planar kernel scan of {n_c}^2 evaluations exceeds the budget")
    c = np.linspace(-R, R, n_c)
    C1, C2 = np.meshgrid(c, c, indexing="ij")
    Y = C1[..., None] * B[0] + C2[..., None] * B[1]
    w = _norm_array(space, Y).ravel()
    vals = (_norm_array(space, x + Y) - 1.0).ravel()
    slack = eq.C * (c[1] - c[0]) / math.sqrt(2.0)
    return w, vals, slack


def _ring_vals(space: SpaceDescriptor, x: np.ndarray, B: np.ndarray,
               radius: float, m: int = 720) -> np.ndarray:
    th = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    U = np.cos(th)[:, None] * B[0] + np.sin(th)[:, None] * B[1]
    cb = radius / _norm_array(space, U)
    return _norm_array(space, x + cb[:, None] * U) - 1.0


def s_point(space: SpaceDescriptor, x, f, t: float,
            budget: Optional[Budget] = None) -> Bracket:
    """Certified bracket for s(x, f, t) = inf{||x+y||-1 : y in ker f, ||y|| >= t/4}.

    The search region is rigorously truncated to ||y|| <= 2 + t/4: the value
    at the exactly-feasible shell ||y|| = t/4 is at most t/4, while
    ||x+y||-1 >= ||y||-2 exceeds t/4 beyond the truncation radius.
    """
    if not (0.0 < t < 2.0):
        raise DomainError(f"s modulus needs 0 < t < 2, got {t}")
    budget = resolve(budget)
    xa, fa = _vec(x), _vec(f)
    _require_unit(float(_norm_array(space, xa)), "x")
    _require_unit(float(_dual_norm_array(space, fa)), "f")
    res = _resolution(budget, 1e-3, 0.03, space.dim)
    B = kernel_frame(space, Point.of(space, fa, side="dual")).matrix
    lower, upper, slack = _kernel_inf_bracket(space, xa, B, t, res, budget.max_evals)
    return Bracket(lower=lower, upper=upper, method=GRID, resolution=res,
                   lipschitz=sharp_equiv_constants(space).C, seed=budget.seed)


# -- sup over the dual sphere: d(x, t) --------------------------------------


def _rot90(F: np.ndarray) -> np.ndarray:
    """Euclidean-unit kernel directions of 2-D functionals (rows)."""
    V = np.stack([-F[:, 1], F[:, 0]], axis=-1)
    return V / np.linalg.norm(V, axis=-1, keepdims=True)


def _f_samples_2d(space: SpaceDescriptor, x: np.ndarray, res_f: float):
    grid = sphere_grid(space, res_f, dual=True)
    extra = [support_functional(space, x / float(_norm_array(space, x))).array]
    F = np.vstack([grid.points, np.array(extra)])
    return F, grid.covering


def d_point(space: SpaceDescriptor, x, t: float,
            budget: Optional[Budget] = None) -> Bracket:
    """Certified bracket for d(x, t) = sup over unit f of s(x, f, t).

    Upper bound: for every unit f there is a grid neighbour f0 with
    ||f - f0||* <= h; projecting a minimizer y0 of the tightened problem
    (shell radius t/4 + h R, truncation 2 + t/4) into ker f along a norming
    vector of f moves it by at most h R with R = 2 + t/4 and keeps it
    feasible, so s(x, f, t) <= tight-min(f0) + h R.
    """
    if not (0.0 < t < 2.0):
        raise DomainError(f"d modulus needs 0 < t < 2, got {t}")
    budget = resolve(budget)
    xa = _vec(x)
    _require_unit(float(_norm_array(space, xa)), "x")
    if space.dim == 2:
        res_f, res_i = _resolution(budget, 4e-3, 0.0, 2), _resolution(budget, 1.5e-3, 0.0, 2)
    else:
        res_f, res_i = _resolution(budget, 0.0, 0.25, 3), _resolution(budget, 0.0, 0.06, 3)
    lower, upper = _d_point_bounds(space, xa, t, res_f, res_i, budget.max_evals)
    return Bracket(lower=lower, upper=upper, method=GRID, resolution=res_f,
                   lipschitz=2.0 + t / 4.0, seed=budget.seed)


def _d_point_bounds(space: SpaceDescriptor, xa: np.ndarray, t: float,
                    res_f: float, res_i: float, max_evals: int) -> tuple[float, float]:
    r0, hi, R_t = t / 4.0, 2.0 + t / 4.0, 2.0 + t / 4.0
    if space.dim == 2:
        F, h_f = _f_samples_2d(space, xa, res_f)
        dirs = _rot90(F)
        lower = -math.inf
        upper = -math.inf
        r_tight = r0 + h_f * R_t
        chunk = 256
        for i in range(0, len(F), chunk):
            d_blk = dirs[i:i + chunk]
            xs = np.broadcast_to(xa, (len(d_blk), 2))
            w, vals, slack = _scan_1d(space, xs, d_blk, t, res_i, max_evals)
            b0 = _boundary_vals_1d(space, xs, d_blk, r0)
            bt = _boundary_vals_1d(space, xs, d_blk, min(r_tight, hi))
            tight = np.where((w >= r_tight) & (w <= hi), vals, np.inf)
            m_tight = np.minimum(np.min(tight, axis=1), np.min(bt, axis=1))
            relax = np.where((w >= r0 - slack) & (w <= hi + slack), vals, np.inf)
            m_relax = np.minimum(np.min(relax, axis=1), np.min(b0, axis=1)) - slack
            upper = max(upper, float(np.max(m_tight)))
            lower = max(lower, float(np.max(m_relax)))
        upper += h_f * R_t
    else:
        grid = sphere_grid(space, res_f, dual=True)
        h_f = grid.covering
        extras = [support_functional(space, xa / float(_norm_array(space, xa))).array]
        F = np.vstack([grid.points, np.array(extras)])
        r_tight = r0 + h_f * R_t
        lower = -math.inf
        upper = -math.inf
        for fa in F:
            B = kernel_frame(space, Point.of(space, fa, side="dual")).matrix
            w, vals, slack = _scan_2d(space, xa, B, t, res_i, max_evals)
            b0 = _ring_vals(space, xa, B, r0)
            bt = _ring_vals(space, xa, B, min(r_tight, hi))
            tight = np.where((w >= r_tight) & (w <= hi), vals, np.inf)
            m_tight = min(float(np.min(tight)), float(np.min(bt)))
            relax = np.where((w >= r0 - slack) & (w <= hi + slack), vals, np.inf)
            m_relax = min(float(np.min(relax)), float(np.min(b0))) - slack
            upper = max(upper, m_tight)
            lower = max(lower, m_relax)
        upper += h_f * R_t
    # d(x, t) >= 0 always: the duality map of x is nonempty and s(x, f, t) >= 0
    # for any norming f
    lower = max(lower, 0.0)
    return lower, max(upper, lower)


def _d_lower_cheap(space: SpaceDescriptor, xa: np.ndarray, t: float,
                   res_i: float, max_evals: int, n_extra: int = 32,
                   seed: int = 0) -> float:
    """Rigorous lower bound for d(x, t) from the norming functional plus a
    small sample of dual directions (each f gives d >= s(x, f, t))."""
    r0, hi = t / 4.0, 2.0 + t / 4.0
    fs = [support_functional(space, xa / float(_norm_array(space, xa))).array]
    if n_extra:
        fs.append(lowdisc_sphere(space, n_extra, seed=seed, dual=True))
    F = np.vstack([np.atleast_2d(a) for a in fs])
    best = 0.0  # d(x, t) >= 0 unconditionally
    if space.dim == 2:
        dirs = _rot90(F)
        xs = np.broadcast_to(xa, (len(F), 2))
        w, vals, slack = _scan_1d(space, xs, dirs, t, res_i, max_evals)
        b0 = _boundary_vals_1d(space, xs, dirs, r0)
        relax = np.where((w >= r0 - slack) & (w <= hi + slack), vals, np.inf)
        m = np.minimum(np.min(relax, axis=1), np.min(b0, axis=1)) - slack
        best = max(best, float(np.max(m)))
    else:
        for fa in F:
            B = kernel_frame(space, Point.of(space, fa, side="dual")).matrix
            lo, _, _ = _kernel_inf_bracket(space, xa, B, t, res_i, max_evals)
            best = max(best, lo)
    return best


def d_global(space: SpaceDescriptor, t: float,
             budget: Optional[Budget] = None) -> Bracket:
    """Certified bracket for d(t) = inf over unit x of d(x, t).

    d(., t) is 1-Lipschitz on the sphere (the defining infimum shifts by at
    most ||x - x'||), so a covering grid certifies the lower bound; any
    single x certifies the upper bound through its full d_point bracket.
    """
    if not (0.0 < t < 2.0):
        raise DomainError(f"d modulus needs 0 < t < 2, got {t}")
    budget = resolve(budget)
    res_x = _resolution(budget, 2e-3, 0.12, space.dim)
    res_i = _resolution(budget, 1.5e-3, 0.05, space.dim)
    grid = sphere_grid(space, res_x)
    h_x = grid.covering
    lows = np.array([
        _d_lower_cheap(space, xa, t, res_i, budget.max_evals,
                       n_extra=0, seed=budget.seed)
        for xa in grid.points])
    i_best = int(np.argmin(lows))
    lower = max(0.0, float(np.min(lows)) - h_x)
    upper = d_point(space, grid.points[i_best], t, budget).upper
    return Bracket(lower=lower, upper=max(upper, lower), method=GRID,
                   resolution=res_x, lipschitz=1.0, seed=budget.seed)


# -- dual family ------------------------------------------------------------


def s_star(space: SpaceDescriptor, f, x, t: float,
           budget: Optional[Budget] = None) -> Bracket:
    """s*(f, x, t): the s-modulus of the dual ball, computed in the polar
    space with x acting as a functional on X* (reflexivity)."""
    W = polar_space(space)
    return s_point(W, _vec(f), _vec(x), t, budget)


def d_star(space: SpaceDescriptor, f, t: float,
           budget: Optional[Budget] = None) -> Bracket:
    """d*(f, t) = sup over unit x of s*(f, x, t)."""
    W = polar_space(space)
    return d_point(W, _vec(f), t, budget)


def d_star_global(space: SpaceDescriptor, t: float,
                  budget: Optional[Budget] = None) -> Bracket:
    """d*(t) = inf over unit f of d*(f, t)."""
    W = polar_space(space)
    return d_global(W, t, budget)


def d_star_zero(space: SpaceDescriptor, f, t: float,
                budget: Optional[Budget] = None) -> Bracket:
    """d*0(f, t) = sup{d*(g, t) : g unit in X*, ||f - g|| < t}.

    Lower bound: g = f is always admissible, plus a strict-interior sample
    at radius <= t(1 - 1e-6).  Upper bound: d*(., t) is 1-Lipschitz in g, so
    a covering of the closed neighbourhood certifies the sup.
    """
    if not (0.0 < t < 2.0):
        raise DomainError(f"d*0 needs 0 < t < 2, got {t}")
    budget = resolve(budget)
    W = polar_space(space)
    fa = _vec(f)
    _require_unit(float(_norm_array(W, fa)), "f")
    lower = d_point(W, fa, t, budget).lower
    res_i = _resolution(budget, 2e-3, 0.05, W.dim)
    inner = lowdisc_sphere(W, 64, seed=budget.seed)
    dist = _norm_array(W, inner - fa)
    for ga in inner[dist <= t * (1.0 - 1e-6)][:8]:
        lower = max(lower, _d_lower_cheap(W, ga, t, res_i, budget.max_evals,
                                          seed=budget.seed))
    res_g = _resolution(budget, 0.05, 0.2, W.dim)
    cover = sphere_grid(W, res_g)
    h_g = cover.covering
    sel = cover.points[_norm_array(W, cover.points - fa) <= t + h_g]
    upper = -math.inf
    for ga in sel:
        _, up = _d_point_bounds(W, ga, t,
                                0.02 if W.dim == 2 else 0.3,
                                5e-3 if W.dim == 2 else 0.08,
                                budget.max_evals)
        upper = max(upper, up)
    upper = (upper + h_g) if math.isfinite(upper) else lower
    return Bracket(lower=lower, upper=max(upper, lower), method=GRID,
                   resolution=res_g, lipschitz=1.0, seed=budget.seed)


def d_star_zero_global(space: SpaceDescriptor, t: float,
                       budget: Optional[Budget] = None) -> Bracket:
    """d*0(t) = inf over unit f of d*0(f, t).

    Lower bound: for any unit f with grid neighbour f0 at distance <= h,
    every g with ||g - f0|| <= t - h satisfies ||g - f|| <= t, hence
    d*0(f, t) >= max over such sampled g of a certified d*(g, t) lower bound.
    """
    if not (0.0 < t < 2.0):
        raise DomainError(f"d*0 needs 0 < t < 2, got {t}")
    budget = resolve(budget)
    W = polar_space(space)
    res_f = _resolution(budget, 0.1, 0.25, W.dim)
    res_i = _resolution(budget, 2e-3, 0.05, W.dim)
    grid = sphere_grid(W, res_f)
    h_f = grid.covering
    sample = lowdisc_sphere(W, 48, seed=budget.seed)
    lower = math.inf
    for fa in grid.points:
        near = sample[_norm_array(W, sample - fa) <= max(t - h_f, 0.0) * (1.0 - 1e-9)]
        cand = np.vstack([fa[None, :], near[:4]])
        best = max(_d_lower_cheap(W, ga, t, res_i, budget.max_evals,
                                  seed=budget.seed) for ga in cand)
        lower = min(lower, best)
        if lower <= 0.0:
            break
    lower = max(0.0, lower if math.isfinite(lower) else 0.0)
    # upper bound: d*0(t) <= d*0(f, t) at any sampled f
    probes = lowdisc_sphere(W, 4, seed=budget.seed + 1)
    upper = min(d_star_zero(space, fa, t, budget).upper for fa in probes)
    return Bracket(lower=lower, upper=max(upper, lower), method=GRID,
                   resolution=res_f, lipschitz=1.0, seed=budget.seed)
