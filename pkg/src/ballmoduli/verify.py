"""Property-verification suites and the oracle comparison battery.

Each registered suite turns a family of geometric inequalities into
``Check`` records over brackets.  A check passes when the brackets are
compatible with the asserted inequality, fails when the inequality is
violated by more than the combined bracket widths, and is inconclusive in
the narrow band between; inconclusive results are reported but do not
fail a run.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import oracle
from .beta import beta_global, beta_point, beta_sup
from .bracket import EXACT, Bracket
from .config import Budget, resolve
from .denting import (d_global, d_point, d_star, d_star_global, d_star_zero,
                      modulus_convexity, s_point, s_star)
from .errors import DomainError
from .lpsum import (ComponentModuli, alpha_star, delta_q_lower,
                    sum_beta_lower_bound, sum_slice_threshold_case1,
                    witness_functional)
from .presets import preset
from .slices import Slice, slice_diameter
from .spaces import (SpaceDescriptor, duality_preimage, lp_space, polar_space,
                     support_functional, _dual_norm_array, _norm_array)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Check:
    """One verified inequality instance: asserts lhs >= rhs on brackets."""

    name: str
    space: str
    params: dict
    status: str
    lhs: Bracket
    rhs: Bracket
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "space": self.space, "params": self.params,
               "status": self.status, "lhs": self.lhs.to_json(),
               "rhs": self.rhs.to_json()}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    checks: tuple[Check, ...]
    seed: int
    config: dict
    flags: dict = field(default_factory=dict)

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.status == PASS)

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if c.status == FAIL)

    @property
    def n_inconclusive(self) -> int:
        return sum(1 for c in self.checks if c.status == INCONCLUSIVE)

    @property
    def ok(self) -> bool:
        return self.n_fail == 0

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "config": self.config,
                "flags": self.flags,
                "summary": {"pass": self.n_pass, "fail": self.n_fail,
                            "inconclusive": self.n_inconclusive},
                "checks": [c.to_json() for c in self.checks]}


def _sorted(checks: list[Check]) -> tuple[Check, ...]:
    """Canonical report order, independent of execution order."""
    return tuple(sorted(
        checks, key=lambda c: (c.name, c.space,
                               json.dumps(c.params, sort_keys=True, default=str))))


def compare(name: str, space: str, params: dict, lhs: Bracket, rhs: Bracket,
            counterexample: Optional[dict] = None) -> Check:
    """Three-way bracket comparison of the assertion lhs >= rhs.

    Tolerance is the combined bracket width, so a failure means the
    inequality is violated beyond what the certificates can explain.
    """
    tol = lhs.width + rhs.width
    if lhs.lower >= rhs.upper - tol - 1e-12:
        status = PASS
    elif lhs.upper < rhs.lower - tol - 1e-12:
        status = FAIL
    else:
        status = INCONCLUSIVE
    return Check(name=name, space=space, params=params, status=status,
                 lhs=lhs, rhs=rhs,
                 counterexample=counterexample if status == FAIL else None)


def _vacuous(name: str, space: str, params: dict, rhs: Bracket) -> Check:
    params = dict(params, vacuous=True)
    return Check(name=name, space=space, params=params, status=PASS,
                 lhs=Bracket.exact(0.0), rhs=rhs)


def _unit(space: SpaceDescriptor, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=space.dim)
        n = float(_norm_array(space, v))
        if n > 1e-9:
            return v / n


def _dual_unit(space: SpaceDescriptor, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=space.dim)
        n = float(_dual_norm_array(space, v))
        if n > 1e-9:
            return v / n


def _slice_budget(budget: Budget, dim: int) -> Budget:
    if budget.resolution is not None:
        return budget
    return budget.with_resolution(5e-3 if dim == 2 else 0.1)


# -- lemma battery ----------------------------------------------------------

LEMMA_PRESETS = ("l2-2", "l2-3", "lp:1.5-2d", "l1-2d", "linf-2d", "square-rot")

LEMMA_NAMES = (
    "slice-diameter-shrinks-under-positive-s",
    "dual-slice-diameter-shrinks-under-positive-s-star",
    "small-slice-forces-s-lower-bound",
    "small-slice-forces-high-threshold",
    "slice-diameter-threshold-scaling",
    "slice-diameter-2k-threshold",
)


def suite_lemmas(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                 budget: Optional[Budget] = None,
                 instances_per_lemma: int = 210) -> VerificationReport:
    """Randomized slice-geometry inequality battery across the presets."""
    budget = resolve(budget)
    names = list(spaces) if spaces else list(LEMMA_PRESETS)
    checks: list[Check] = []
    for li, lemma in enumerate(LEMMA_NAMES):
        rng = np.random.default_rng(seed * 1000 + li)
        for i in range(instances_per_lemma):
            name = names[i % len(names)]
            space = preset(name)
            bud = _slice_budget(budget, space.dim)
            checks.append(_lemma_instance(lemma, name, space, rng, bud, i))
    return VerificationReport(
        suite="lemmas", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "instances_per_lemma": instances_per_lemma,
                "resolution": budget.resolution})


def _lemma_instance(lemma: str, name: str, space: SpaceDescriptor,
                    rng: np.random.Generator, bud: Budget, i: int) -> Check:
    if lemma == "slice-diameter-shrinks-under-positive-s":
        x = _unit(space, rng)
        f = support_functional(space, x).array
        t = float(rng.uniform(0.3, 1.2))
        params = {"i": i, "t": t}
        s = s_point(space, x, f, t, bud)
        thr = float(f @ x) * (1.0 - s.upper)
        if s.lower <= 1e-12 or thr <= 0.0:
            return _vacuous(lemma, name, params, s)
        diam = slice_diameter(space, Slice.of(f, thr), bud)
        return compare(lemma, name, params, Bracket.exact(2.0 * t), diam,
                       {"x": x.tolist(), "f": f.tolist(), "s": s.to_json()})
    if lemma == "dual-slice-diameter-shrinks-under-positive-s-star":
        f = _dual_unit(space, rng)
        x = duality_preimage(space, f).array
        t = float(rng.uniform(0.3, 1.2))
        params = {"i": i, "t": t}
        s = s_star(space, f, x, t, bud)
        thr = float(f @ x) * (1.0 - s.upper)
        if s.lower <= 1e-12 or thr <= 0.0:
            return _vacuous(lemma, name, params, s)
        diam = slice_diameter(space, Slice.of(x, thr, "dual"), bud)
        return compare(lemma, name, params, Bracket.exact(2.0 * t), diam,
                       {"f": f.tolist(), "x": x.tolist(), "s": s.to_json()})
    if lemma == "small-slice-forces-s-lower-bound":
        x = _unit(space, rng)
        f = support_functional(space, x).array
        alpha = float(rng.uniform(0.998, 0.9998))
        t = float(rng.uniform(0.7, 1.8))
        params = {"i": i, "t": t, "alpha": alpha}
        diam = slice_diameter(space, Slice.of(f, alpha), bud)
        if diam.upper >= t / 5.0:
            return _vacuous(lemma, name, params, diam)
        bound = min((float(f @ x) - alpha) / alpha, t / 20.0)
        s = s_point(space, x, f, t, bud)
        return compare(lemma, name, params, s, Bracket.exact(bound),
                       {"x": x.tolist(), "f": f.tolist(),
                        "diam": diam.to_json()})
    if lemma == "small-slice-forces-high-threshold":
        x = _unit(space, rng)
        alpha = float(rng.uniform(0.3, 0.95))
        params = {"i": i, "alpha": alpha}
        diam = slice_diameter(space, Slice.of(x, alpha, "dual"), bud)
        rhs = Bracket(lower=1.0 - diam.upper, upper=1.0 - diam.lower,
                      method=diam.method, resolution=diam.resolution,
                      lipschitz=diam.lipschitz)
        return compare(lemma, name, params, Bracket.exact(alpha), rhs,
                       {"x": x.tolist(), "diam": diam.to_json()})
    if lemma == "slice-diameter-threshold-scaling":
        x = _unit(space, rng)
        alpha = float(rng.uniform(0.5, 0.9))
        beta = float(rng.uniform(0.1, alpha - 0.05))
        params = {"i": i, "alpha": alpha, "beta": beta}
        d_a = slice_diameter(space, Slice.of(x, alpha, "dual"), bud)
        d_b = slice_diameter(space, Slice.of(x, beta, "dual"), bud)
        factor = (1.0 - beta) / (1.0 - alpha)
        lhs = Bracket(lower=factor * d_a.lower, upper=factor * d_a.upper,
                      method=d_a.method, resolution=d_a.resolution,
                      lipschitz=factor)
        return compare(lemma, name, params, lhs, d_b, {"x": x.tolist()})
    if lemma == "slice-diameter-2k-threshold":
        x = _unit(space, rng)
        k = int(rng.integers(1, 4))
        gamma = 1.0 - float(rng.uniform(0.01, 0.45)) / (2.0 * k)
        eta = 1.0 - 2.0 * k * (1.0 - gamma)
        params = {"i": i, "k": k, "gamma": gamma, "eta": eta}
        d_g = slice_diameter(space, Slice.of(x, gamma, "dual"), bud)
        d_e = slice_diameter(space, Slice.of(x, eta, "dual"), bud)
        lhs = Bracket(lower=2.0 * k * d_g.lower, upper=2.0 * k * d_g.upper,
                      method=d_g.method, resolution=d_g.resolution,
                      lipschitz=2.0 * k)
        return compare(lemma, name, params, lhs, d_e, {"x": x.tolist()})
    raise DomainError(f"unknown lemma {lemma!r}")


# -- quantitative chain -----------------------------------------------------

CHAIN_PRESETS = ("lp:1.5-2d", "lp:2-2d", "lp:3-2d")
CHAIN_T = (0.4, 0.8, 1.2)


def suite_chain(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                budget: Optional[Budget] = None) -> VerificationReport:
    """Convexity/denting comparison inequalities between the dual moduli."""
    budget = resolve(budget)
    names = list(spaces) if spaces else list(CHAIN_PRESETS)
    checks: list[Check] = []
    for name in names:
        space = preset(name)
        dual = polar_space(space)
        for t in CHAIN_T:
            delta_t = modulus_convexity(dual, t, budget)
            dstar_q = d_star_global(space, t / 4.0, budget)
            checks.append(compare(
                "dual-convexity-dominates-quarter-scale-dstar", name,
                {"t": t}, delta_t, dstar_q))
            dstar_t = d_star_global(space, t, budget)
            delta_s = modulus_convexity(dual, t / 20.0, budget)
            checks.append(compare(
                "dstar-dominates-twentieth-scale-dual-convexity", name,
                {"t": t}, dstar_t, delta_s))
            if t < 1.0:
                bcurve = beta_global(space, [t], budget)
                b = bcurve.values[0]
                rhs = Bracket(lower=2.0 * delta_t.lower,
                              upper=2.0 * delta_t.upper,
                              method=delta_t.method,
                              resolution=delta_t.resolution, lipschitz=2.0)
                checks.append(compare(
                    "beta-dominates-twice-dual-convexity", name,
                    {"t": t}, b, rhs))
    return VerificationReport(
        suite="chain", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "t_grid": list(CHAIN_T),
                "resolution": budget.resolution})


# -- MIP/UMIP detection -----------------------------------------------------


def suite_mip_detect(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                     budget: Optional[Budget] = None) -> VerificationReport:
    """Classify spaces as intersection-property positive or violated."""
    budget = resolve(budget)
    names = list(spaces) if spaces else ["l1-2d", "l2-2"]
    checks: list[Check] = []
    flags: dict = {}
    t_grid = (0.25, 0.5, 0.75)
    for name in names:
        space = preset(name)
        if space.kind == "polyhedral" and space.dim == 2:
            f, t = (1.0, 0.0), 0.5
            val = float(oracle.exact_beta_sup(space, f, t))
            checks.append(compare(
                "beta-sup-vanishes-at-flat-face-functional", name,
                {"f": list(f), "t": t}, Bracket.exact(0.0), Bracket.exact(val)))
            zero = oracle.exact_d_star_zero_is_zero(space, f, t)
            checks.append(Check(
                name="no-wstar-denting-near-flat-face-functional", space=name,
                params={"f": list(f), "t": t},
                status=PASS if zero else FAIL,
                lhs=Bracket.exact(0.0),
                rhs=Bracket.exact(0.0 if zero else 1.0)))
            flags[name] = ("MIP: violated" if (val == 0.0 and zero)
                           else "MIP: positive")
        else:
            curve = beta_global(space, t_grid, budget)
            positive = True
            for t, b in zip(curve.t_grid, curve.values):
                ok = b.lower > 0.0
                positive = positive and ok
                checks.append(Check(
                    name="beta-curve-lower-bracket-positive", space=name,
                    params={"t": t}, status=PASS if ok else FAIL,
                    lhs=b, rhs=Bracket.exact(0.0)))
            flags[name] = "MIP: positive" if positive else "MIP: undetermined"
    return VerificationReport(
        suite="mip-detect", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "t_grid": list(t_grid),
                "resolution": budget.resolution}, flags=flags)


# -- lp-sum stability battery -----------------------------------------------


def _block_rotate(fa: np.ndarray, slices, angles) -> np.ndarray:
    g = fa.copy()
    for s, th in zip(slices, angles):
        c, sn = math.cos(th), math.sin(th)
        b = fa[s]
        g[s] = np.array([c * b[0] - sn * b[1], sn * b[0] + c * b[1]])
    return g


def suite_lpsum(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                budget: Optional[Budget] = None,
                n_pairs: int = 1000) -> VerificationReport:
    """Sum-stability contracts for the 2-sum of two Euclidean planes."""
    budget = resolve(budget)
    name = (list(spaces) or ["l2sum-4"])[0] if spaces else "l2sum-4"
    sum_space = preset(name)
    if sum_space.kind != "lp-sum":
        raise DomainError("the lpsum suite needs an lp-sum space")
    p = q = sum_space.p
    if abs(p - 2.0) > 1e-12:
        q = p / (p - 1.0)
    comp_grid = (0.05, 0.1, 0.2)
    curves = tuple(beta_global(c, comp_grid, budget)
                   for c in sum_space.components)
    cm = ComponentModuli(curves=curves)
    dual_sum = polar_space(sum_space)
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    rows = []
    scales_case1 = (0.001, 0.01, 0.05, 0.2, 0.5, 1.0)
    scales_gen = (1e-6, 1e-5, 5e-5, 1e-4, 5e-4)
    for t in (0.4, 0.8):
        tau = sum_slice_threshold_case1(q, t, cm)
        a_star = alpha_star(q, t, cm)
        bound = sum_beta_lower_bound(p, q, t, cm)

        # blockwise-equal-norm contract: g(z) > tau forces ||f - g|| < t
        triggered = 0
        worst = 0.0
        ce = None
        for j in range(n_pairs):
            fa = _dual_unit(sum_space, rng)
            z = witness_functional(sum_space, fa).array
            sc = scales_case1[j % len(scales_case1)]
            angles = rng.normal(scale=sc, size=len(sum_space.components))
            g = _block_rotate(fa, sum_space.block_slices, angles)
            if float(g @ z) > tau:
                triggered += 1
                dist = float(_norm_array(dual_sum, fa - g))
                if dist > worst:
                    worst = dist
                    ce = {"f": fa.tolist(), "g": g.tolist(), "dist": dist}
        checks.append(compare(
            "equal-block-norm-slice-contract", name,
            {"t": t, "n_pairs": n_pairs, "triggered": triggered},
            Bracket.exact(t + 1e-9), Bracket.exact(worst), ce))

        # general contract at the derived threshold
        triggered_g = 0
        worst_g = 0.0
        ce_g = None
        if bound > 0.0:
            for j in range(n_pairs):
                fa = _dual_unit(sum_space, rng)
                z = witness_functional(sum_space, fa).array
                sc = scales_gen[j % len(scales_gen)]
                g = z + rng.normal(scale=sc, size=sum_space.dim)
                ng = float(_norm_array(dual_sum, g))
                if ng > 1.0:
                    g = g / ng
                if float(g @ z) > 1.0 - bound:
                    triggered_g += 1
                    dist = float(_norm_array(dual_sum, fa - g))
                    if dist > worst_g:
                        worst_g = dist
                        ce_g = {"f": fa.tolist(), "g": g.tolist(), "dist": dist}
        checks.append(compare(
            "derived-threshold-slice-contract", name,
            {"t": t, "n_pairs": n_pairs, "triggered": triggered_g},
            Bracket.exact(t + 1e-9), Bracket.exact(worst_g), ce_g))

        b_sum = beta_global(sum_space, [t], budget).values[0]
        checks.append(Check(
            name="sum-beta-exceeds-derived-bound", space=name,
            params={"t": t}, status=PASS if b_sum.lower >= bound else FAIL,
            lhs=b_sum, rhs=Bracket.exact(bound)))
        rows.append({"t": t, "beta0_t4": cm.floor(t / 4.0),
                     "tau_case1": tau, "alpha_star": a_star, "bound": bound,
                     "beta_sum_lower": b_sum.lower,
                     "pass": b_sum.lower >= bound})
    return VerificationReport(
        suite="lpsum", checks=_sorted(checks), seed=seed,
        config={"space": name, "n_pairs": n_pairs, "component_grid":
                list(comp_grid), "resolution": budget.resolution},
        flags={"rows": rows})


# -- ordering, dense-set, space algebra, beta slices, delta-q ---------------


def suite_ordering(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                   budget: Optional[Budget] = None) -> VerificationReport:
    """sup/inf structure: d*0(f,t) >= d*(f,t) >= s*(f,x,t)."""
    budget = resolve(budget)
    names = list(spaces) if spaces else ["l2-2", "lp:1.5-2d", "l1-2d"]
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    for name in names:
        space = preset(name)
        for t in (0.5, 1.0):
            for j in range(2):
                f = _dual_unit(space, rng)
                ds = d_star(space, f, t, budget)
                dz = d_star_zero(space, f, t, budget)
                checks.append(compare(
                    "dstar-zero-dominates-dstar", name,
                    {"t": t, "j": j}, dz, ds, {"f": f.tolist()}))
                x = _unit(space, rng)
                ss = s_star(space, f, x, t, budget)
                checks.append(compare(
                    "dstar-dominates-s-star", name,
                    {"t": t, "j": j}, ds, ss,
                    {"f": f.tolist(), "x": x.tolist()}))
    return VerificationReport(
        suite="ordering", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "resolution": budget.resolution})


def suite_dense_set(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                    budget: Optional[Budget] = None) -> VerificationReport:
    """Halving the sphere-sample spacing moves the global denting bracket
    midpoint by at most the spacing."""
    budget = resolve(budget)
    names = list(spaces) if spaces else ["l2-2", "linf-2d"]
    checks: list[Check] = []
    for name in names:
        space = preset(name)
        t = 1.0 if name == "l2-2" else 0.5
        r = budget.resolution if budget.resolution is not None else 8e-3
        b1 = d_global(space, t, budget.with_resolution(r))
        b2 = d_global(space, t, budget.with_resolution(r / 2.0))
        diff = abs(b1.midpoint - b2.midpoint)
        checks.append(compare(
            "d-global-stable-under-grid-refinement", name,
            {"t": t, "spacing": r},
            Bracket.exact(r + b1.width + b2.width), Bracket.exact(diff),
            {"coarse": b1.to_json(), "fine": b2.to_json()}))
    return VerificationReport(
        suite="dense-set", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "resolution": budget.resolution})


def suite_spaces(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                 budget: Optional[Budget] = None) -> VerificationReport:
    """Norm-algebra contracts: pairing bound, bipolarity, support
    functionals, blockwise sum duality."""
    budget = resolve(budget)
    names = list(spaces) if spaces else list(LEMMA_PRESETS) + ["l2sum-4"]
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    for name in names:
        space = preset(name)
        for j in range(5):
            x = rng.normal(size=space.dim)
            f = rng.normal(size=space.dim)
            prod = float(_norm_array(space, x)) * float(_dual_norm_array(space, f))
            checks.append(compare(
                "pairing-bounded-by-norm-product", name, {"j": j},
                Bracket.exact(prod), Bracket.exact(abs(float(f @ x)))))
            xu = _unit(space, rng)
            g = support_functional(space, xu).array
            err = max(abs(float(g @ xu) - 1.0),
                      abs(float(_dual_norm_array(space, g)) - 1.0))
            checks.append(compare(
                "support-functional-norms-its-point", name, {"j": j},
                Bracket.exact(1e-7), Bracket.exact(err)))
        if space.kind in ("lp", "weighted-lp", "polyhedral"):
            bipolar = polar_space(polar_space(space))
            pts = rng.normal(size=(8, space.dim))
            err = float(np.max(np.abs(_norm_array(space, pts)
                                      - _norm_array(bipolar, pts))))
            checks.append(compare(
                "bipolar-norm-roundtrip", name, {},
                Bracket.exact(1e-7), Bracket.exact(err)))
        if space.kind == "lp-sum":
            dual = polar_space(space)
            q = space.q
            for j in range(5):
                f = rng.normal(size=space.dim)
                manual = sum(
                    float(_dual_norm_array(c, f[s])) ** q
                    for c, s in zip(space.components, space.block_slices)
                ) ** (1.0 / q)
                err = abs(float(_norm_array(dual, f)) - manual)
                checks.append(compare(
                    "sum-dual-norm-is-blockwise", name, {"j": j},
                    Bracket.exact(1e-7), Bracket.exact(err)))
    return VerificationReport(
        suite="spaces", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "resolution": budget.resolution})


def suite_beta_slices(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                      budget: Optional[Budget] = None) -> VerificationReport:
    """Slice-containment and norming-slice facts behind the beta modulus."""
    budget = resolve(budget)
    names = list(spaces) if spaces else ["l2-2", "lp:1.5-2d"]
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    for name in names:
        space = preset(name)
        dual = polar_space(space)
        t = 0.5
        for j in range(2):
            f = _dual_unit(space, rng)
            x = duality_preimage(space, f).array
            b = beta_point(space, f, x, t, budget)
            params = {"t": t, "j": j}
            if b.lower <= 0.0:
                checks.append(_vacuous("deep-slice-points-stay-near-f",
                                       name, params, b))
            else:
                G = rng.normal(size=(500, space.dim))
                G /= np.maximum(_norm_array(dual, G), 1.0)[:, None]
                mask = G @ x > 1.0 - b.lower
                worst = (float(np.max(_norm_array(dual, G[mask] - f)))
                         if np.any(mask) else 0.0)
                checks.append(compare(
                    "deep-slice-points-stay-near-f", name,
                    dict(params, n_inside=int(np.sum(mask))),
                    Bracket.exact(t + b.width), Bracket.exact(worst),
                    {"f": f.tolist(), "beta": b.to_json()}))
            delta = modulus_convexity(dual, t / 2.0, budget)
            thr = 1.0 - 2.0 * delta.upper
            if thr <= 0.0:
                checks.append(_vacuous("norming-slice-diameter-below-t",
                                       name, params, delta))
            else:
                diam = slice_diameter(
                    space, Slice.of(x, thr, "dual"), _slice_budget(budget, space.dim))
                checks.append(compare(
                    "norming-slice-diameter-below-t", name, params,
                    Bracket.exact(t), diam, {"f": f.tolist()}))
        curve = beta_global(space, (0.25, 0.5, 0.75), budget)
        checks.append(Check(
            name="beta-curve-monotone-in-t", space=name,
            params={"t_grid": [0.25, 0.5, 0.75]},
            status=PASS if curve.is_monotone() else FAIL,
            lhs=curve.values[-1], rhs=curve.values[0]))
    return VerificationReport(
        suite="beta-slices", checks=_sorted(checks), seed=seed,
        config={"spaces": names, "resolution": budget.resolution})


def suite_delta_q(spaces: Optional[Sequence[str]] = None, seed: int = 0,
                  budget: Optional[Budget] = None) -> VerificationReport:
    """The internal convexity-modulus evaluator for lq norms agrees with the
    certified engine on three-dimensional lq spaces."""
    budget = resolve(budget)
    if budget.resolution is None:
        budget = budget.with_resolution(0.3)
    checks: list[Check] = []
    for q in (1.5, 2.0, 4.0):
        space = lp_space(3, q)
        for t in (0.4, 1.0):
            b = modulus_convexity(space, t, budget)
            val = delta_q_lower(q, t)
            if q >= 2.0:
                ok = b.contains(val, slack=1e-9)
                cname = "closed-form-convexity-inside-bracket"
            else:
                ok = val <= b.upper + 1e-12
                cname = "quadratic-convexity-lower-bound-valid"
            checks.append(Check(
                name=cname, space=f"lp:{q}-3d", params={"t": t},
                status=PASS if ok else FAIL, lhs=b, rhs=Bracket.exact(val)))
    return VerificationReport(
        suite="delta-q", checks=_sorted(checks), seed=seed,
        config={"resolution": budget.resolution})


# -- registry ---------------------------------------------------------------

SUITES: dict[str, Callable[..., VerificationReport]] = {
    "lemmas": suite_lemmas,
    "chain": suite_chain,
    "mip-detect": suite_mip_detect,
    "lpsum": suite_lpsum,
    "ordering": suite_ordering,
    "dense-set": suite_dense_set,
    "spaces": suite_spaces,
    "beta-slices": suite_beta_slices,
    "delta-q": suite_delta_q,
}


def list_suites() -> list[str]:
    return sorted(SUITES)


def run_suite(name: str, spaces: Optional[Sequence[str]] = None,
              seed: int = 0, budget: Optional[Budget] = None,
              **kwargs) -> VerificationReport:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; known: {list_suites()}")
    return SUITES[name](spaces=spaces, seed=seed, budget=budget, **kwargs)


# -- oracle/engine comparison battery ---------------------------------------

_ORACLE_RES = {"delta": 2e-3, "s": 1e-3, "d": 3e-3, "beta": 4e-3,
               "beta_sup": 1.5e-2, "slice-diameter": 2e-3}
_EXACT_KINDS = {"s", "beta", "beta_sup", "slice-diameter"}


def _engine_bracket(kind: str, space: SpaceDescriptor, args: dict,
                    budget: Optional[Budget]) -> Bracket:
    if kind == "delta":
        return modulus_convexity(space, args["t"], budget)
    if kind == "s":
        return s_point(space, args["x"], args["f"], args["t"], budget)
    if kind == "d":
        return d_point(space, args["x"], args["t"], budget)
    if kind == "beta":
        return beta_point(space, args["f"], args["x"], args["t"], budget)
    if kind == "beta_sup":
        return beta_sup(space, args["f"], args["t"], budget)
    if kind == "slice-diameter":
        return slice_diameter(space, Slice.of(
            args["direction"], args["alpha"], args.get("ball_side", "primal")),
            budget)
    raise DomainError(f"unsupported battery kind {kind!r}")


def _exact_value(kind: str, space: SpaceDescriptor, args: dict):
    if space.kind != "polyhedral" or space.dim != 2:
        return None
    if kind == "s":
        return float(oracle.exact_s_point(space, args["x"], args["f"], args["t"]))
    if kind == "beta":
        return float(oracle.exact_beta_point(space, args["f"], args["x"], args["t"]))
    if kind == "beta_sup":
        return float(oracle.exact_beta_sup(space, args["f"], args["t"]))
    if kind == "slice-diameter":
        return float(oracle.exact_slice_diameter(
            space, args["direction"], args["alpha"],
            args.get("ball_side", "primal")))
    return None


def run_oracle_battery(budget: Optional[Budget] = None) -> dict:
    """Run the fixed 30-instance battery: engine bracket vs brute-force
    oracle bracket, plus the exact rational value where available."""
    records = []
    n_overlap = 0
    for item in oracle.BATTERY:
        kind, args = item["kind"], item["args"]
        space = preset(item["space"])
        res = _ORACLE_RES[kind]
        eng_budget = budget
        if kind == "delta" and space.dim == 3:
            res = 0.45
            if eng_budget is None or eng_budget.resolution is None:
                eng_budget = resolve(eng_budget).with_resolution(0.3)
        ob = oracle.grid_bracket(kind, space, res, **args)
        eb = _engine_bracket(kind, space, args, eng_budget)
        overlap = ob.overlaps(eb)
        n_overlap += overlap
        exact = _exact_value(kind, space, args) if kind in _EXACT_KINDS else None
        rec = {"problem": {"kind": kind, "space": item["space"], "args":
                           {k: (list(v) if isinstance(v, tuple) else v)
                            for k, v in args.items()}},
               "oracle": ob.to_json(), "engine": eb.to_json(),
               "overlap": bool(overlap)}
        if exact is not None:
            rec["exact"] = exact
            rec["exact_inside"] = bool(ob.contains(exact, 1e-9)
                                       and eb.contains(exact, 1e-9))
        records.append(rec)
    return {"n_instances": len(records), "n_overlap": int(n_overlap),
            "records": records}
