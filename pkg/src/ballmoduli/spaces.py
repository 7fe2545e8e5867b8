"""Finite-dimensional normed spaces: descriptors, norms, duality.

Supported kinds: lp (1 < p < inf), weighted-lp, polyhedral (unit ball is
the convex hull of a symmetric vertex set), and lp-sum of component
spaces.  All operations are pure; descriptors are immutable and hashable,
with derived data (facet form of a polytope, conjugate exponent) cached
idempotently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Literal, Optional, Sequence

import numpy as np
from scipy.linalg import null_space
from scipy.spatial import ConvexHull

from .errors import DescriptorError, DimensionMismatchError, DomainError

Side = Literal["primal", "dual"]

_MAX_DIM = 8


def conjugate_exponent(p: float) -> float:
    return p / (p - 1.0)


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: Literal["lp", "weighted-lp", "polyhedral", "lp-sum"]
    dim: int
    p: Optional[float] = None
    weights: Optional[tuple[float, ...]] = None
    vertices: Optional[tuple[tuple[float, ...], ...]] = None
    components: Optional[tuple["SpaceDescriptor", ...]] = None

    def __post_init__(self):
        if self.dim <= 0:
            raise DescriptorError("dimension must be positive")
        if self.dim > _MAX_DIM:
            raise DescriptorError(f"dimensions above {_MAX_DIM} are unsupported")
        if self.kind in ("lp", "lp-sum"):
            if self.p is None or not (1.0 < self.p < np.inf):
                raise DescriptorError(f"{self.kind} requires 1 < p < inf, got {self.p}")
        if self.kind == "weighted-lp":
            if self.p is None or not (1.0 < self.p < np.inf):
                raise DescriptorError("weighted-lp requires 1 < p < inf")
            if self.weights is None or len(self.weights) != self.dim:
                raise DescriptorError("weighted-lp requires one weight per coordinate")
            if any(w <= 0 for w in self.weights):
                raise DescriptorError("weights must be strictly positive")
        if self.kind == "polyhedral":
            if not self.vertices:
                raise DescriptorError("polyhedral space requires a vertex set")
            V = np.asarray(self.vertices, dtype=float)
            if V.ndim != 2 or V.shape[1] != self.dim:
                raise DescriptorError("vertex coordinates must match the dimension")
            # symmetry: v in V  =>  -v in V
            for v in V:
                if not np.any(np.all(np.isclose(V, -v, atol=1e-12), axis=1)):
                    raise DescriptorError("polyhedral vertex set must be symmetric")
            if np.linalg.matrix_rank(V, tol=1e-12) < self.dim:
                raise DescriptorError("polyhedral vertex set must span the space")
        if self.kind == "lp-sum":
            if not self.components:
                raise DescriptorError("lp-sum requires a nonempty component list")
            if sum(c.dim for c in self.components) != self.dim:
                raise DescriptorError("lp-sum dimension must equal the sum of component dims")

    # -- derived data ------------------------------------------------------

    @cached_property
    def q(self) -> Optional[float]:
        return conjugate_exponent(self.p) if self.p is not None else None

    @cached_property
    def facets(self) -> np.ndarray:
        """Facet matrix F of a polyhedral ball: ||x|| = max_j (F @ x)_j.

        Rows are the outward facet functionals normalized so that the facet
        hyperplane is {y : F_j . y = 1}.  Built idempotently on demand.
        """
        if self.kind != "polyhedral":
            raise DescriptorError("facet form only exists for polyhedral spaces")
        V = np.asarray(self.vertices, dtype=float)
        if self.dim == 1:
            r = np.max(np.abs(V))
            return np.array([[1.0 / r], [-1.0 / r]])
        hull = ConvexHull(V)
        # equations: n . x + b <= 0 on the hull; 0 is interior so b < 0
        n, b = hull.equations[:, :-1], hull.equations[:, -1]
        return n / (-b)[:, None]

    @cached_property
    def block_slices(self) -> tuple[slice, ...]:
        if self.kind != "lp-sum":
            raise DescriptorError("block structure only exists for lp-sum spaces")
        out, start = [], 0
        for c in self.components:
            out.append(slice(start, start + c.dim))
            start += c.dim
        return tuple(out)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind, "dim": self.dim}
        if self.p is not None:
            d["p"] = self.p
        if self.weights is not None:
            d["weights"] = list(self.weights)
        if self.vertices is not None:
            d["vertices"] = [list(v) for v in self.vertices]
        if self.components is not None:
            d["components"] = [c.to_json() for c in self.components]
        return d

    @staticmethod
    def from_json(data: dict | str) -> "SpaceDescriptor":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "kind" not in data:
            raise DescriptorError("descriptor JSON must be an object with a 'kind'")
        kind = data["kind"]
        if kind == "polyhedral":
            verts = tuple(tuple(float(c) for c in v) for v in data["vertices"])
            dim = data.get("dim", len(verts[0]))
            return SpaceDescriptor(kind="polyhedral", dim=dim, vertices=verts)
        if kind == "lp-sum":
            comps = tuple(SpaceDescriptor.from_json(c) for c in data["components"])
            dim = data.get("dim", sum(c.dim for c in comps))
            return SpaceDescriptor(kind="lp-sum", dim=dim, p=float(data["p"]), components=comps)
        if kind == "weighted-lp":
            w = tuple(float(x) for x in data["weights"])
            return SpaceDescriptor(kind="weighted-lp", dim=data.get("dim", len(w)),
                                   p=float(data["p"]), weights=w)
        if kind == "lp":
            return SpaceDescriptor(kind="lp", dim=int(data["dim"]), p=float(data["p"]))
        raise DescriptorError(f"unknown space kind {kind!r}")


# -- convenience constructors ---------------------------------------------


def lp_space(dim: int, p: float) -> SpaceDescriptor:
    return SpaceDescriptor(kind="lp", dim=dim, p=float(p))


def weighted_lp_space(p: float, weights: Sequence[float]) -> SpaceDescriptor:
    w = tuple(float(x) for x in weights)
    return SpaceDescriptor(kind="weighted-lp", dim=len(w), p=float(p), weights=w)


def polyhedral_space(vertices: Sequence[Sequence[float]]) -> SpaceDescriptor:
    V = tuple(tuple(float(c) for c in v) for v in vertices)
    return SpaceDescriptor(kind="polyhedral", dim=len(V[0]), vertices=V)


def make_lp_sum(components: Sequence[SpaceDescriptor], p: float) -> SpaceDescriptor:
    if not (1.0 < p < np.inf):
        raise DomainError(f"lp-sum requires 1 < p < inf, got {p}")
    comps = tuple(components)
    if not comps:
        raise DomainError("lp-sum requires at least one component")
    return SpaceDescriptor(kind="lp-sum", dim=sum(c.dim for c in comps),
                           p=float(p), components=comps)


def cross_polytope(dim: int) -> SpaceDescriptor:
    """Unit ball of l1 in polyhedral form."""
    verts = []
    for i in range(dim):
        e = [0.0] * dim
        e[i] = 1.0
        verts.append(tuple(e))
        verts.append(tuple(-c for c in e))
    return polyhedral_space(verts)


def hypercube(dim: int) -> SpaceDescriptor:
    """Unit ball of l-infinity in polyhedral form."""
    verts = []
    for mask in range(2 ** dim):
        verts.append(tuple(1.0 if mask & (1 << i) else -1.0 for i in range(dim)))
    return polyhedral_space(verts)


# -- points and functionals ------------------------------------------------


@dataclass(frozen=True)
class Point:
    """A coordinate vector tagged with its space and primal/dual side."""

    coords: tuple[float, ...]
    space: SpaceDescriptor
    side: Side = "primal"

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise DimensionMismatchError(
                f"{len(self.coords)} coordinates for a {self.space.dim}-dimensional space")
        if not all(np.isfinite(c) for c in self.coords):
            raise DomainError("coordinates must be finite")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    @staticmethod
    def of(space: SpaceDescriptor, coords: Sequence[float], side: Side = "primal") -> "Point":
        return Point(tuple(float(c) for c in coords), space, side)


def _coords(x, space: SpaceDescriptor, side: Side) -> np.ndarray:
    if isinstance(x, Point):
        if x.side != side:
            raise DomainError(f"expected a {side}-side point, got {x.side}")
        if x.space.dim != space.dim:
            raise DimensionMismatchError("point belongs to a space of different dimension")
        return x.array
    a = np.asarray(x, dtype=float)
    if a.shape[-1] != space.dim:
        raise DimensionMismatchError(
            f"last axis has {a.shape[-1]} coordinates, space has dimension {space.dim}")
    if not np.all(np.isfinite(a)):
        raise DomainError("coordinates must be finite")
    return a


# -- norms -----------------------------------------------------------------


def norm(space: SpaceDescriptor, x) -> np.ndarray | float:
    """Norm of ``x`` (a primal Point, or an array with trailing axis dim)."""
    a = _coords(x, space, "primal")
    return _norm_array(space, a)


def _norm_array(space: SpaceDescriptor, a: np.ndarray):
    if space.kind == "lp":
        return np.sum(np.abs(a) ** space.p, axis=-1) ** (1.0 / space.p)
    if space.kind == "weighted-lp":
        w = np.asarray(space.weights)
        return np.sum(w * np.abs(a) ** space.p, axis=-1) ** (1.0 / space.p)
    if space.kind == "polyhedral":
        return np.max(a @ space.facets.T, axis=-1)
    if space.kind == "lp-sum":
        parts = [_norm_array(c, a[..., s])
                 for c, s in zip(space.components, space.block_slices)]
        return np.sum(np.stack(parts, axis=-1) ** space.p, axis=-1) ** (1.0 / space.p)
    raise DescriptorError(space.kind)


def dual_norm(space: SpaceDescriptor, f) -> np.ndarray | float:
    """Norm of a functional: sup{f(x) : ||x|| <= 1}."""
    a = _coords(f, space, "dual")
    return _dual_norm_array(space, a)


def _dual_norm_array(space: SpaceDescriptor, a: np.ndarray):
    if space.kind == "lp":
        return np.sum(np.abs(a) ** space.q, axis=-1) ** (1.0 / space.q)
    if space.kind == "weighted-lp":
        w = np.asarray(space.weights)
        return np.sum(w ** (-space.q / space.p) * np.abs(a) ** space.q, axis=-1) ** (1.0 / space.q)
    if space.kind == "polyhedral":
        V = np.asarray(space.vertices)
        return np.max(a @ V.T, axis=-1)
    if space.kind == "lp-sum":
        q = space.q
        parts = [_dual_norm_array(c, a[..., s])
                 for c, s in zip(space.components, space.block_slices)]
        return np.sum(np.stack(parts, axis=-1) ** q, axis=-1) ** (1.0 / q)
    raise DescriptorError(space.kind)


def pairing(f, x) -> float:
    """Action f(x) of a functional on a point (plain dot product)."""
    fa = f.array if isinstance(f, Point) else np.asarray(f, dtype=float)
    xa = x.array if isinstance(x, Point) else np.asarray(x, dtype=float)
    return float(fa @ xa)


# -- polar space -----------------------------------------------------------


def polar_space(space: SpaceDescriptor) -> SpaceDescriptor:
    """Descriptor of the dual space X*: dual_norm in X equals norm in polar(X)."""
    if space.kind == "lp":
        return lp_space(space.dim, space.q)
    if space.kind == "weighted-lp":
        w = np.asarray(space.weights)
        return weighted_lp_space(space.q, tuple(w ** (-space.q / space.p)))
    if space.kind == "polyhedral":
        # vertices of the polar polytope are the facet functionals
        F = space.facets
        return polyhedral_space([tuple(row) for row in _dedupe_rows(F)])
    if space.kind == "lp-sum":
        return make_lp_sum([polar_space(c) for c in space.components], space.q)
    raise DescriptorError(space.kind)


def _dedupe_rows(A: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    out: list[np.ndarray] = []
    for row in A:
        if not any(np.allclose(row, r, atol=tol) for r in out):
            out.append(row)
    return np.array(out)


# -- support mapping -------------------------------------------------------


def support_functional(space: SpaceDescriptor, x, tol: float = 1e-9) -> Point:
    """A deterministic selection from the duality map of a unit vector.

    Returns f with dual_norm(f) = 1 and f(x) = 1.  At non-smooth points of
    a polyhedral ball the selection is the lexicographically smallest
    norming vertex of the dual polytope.
    """
    a = _coords(x, space, "primal")
    if abs(_norm_array(space, a) - 1.0) > max(tol, 1e-9):
        raise DomainError("support_functional requires a unit-norm point")
    f = _support_array(space, a)
    return Point.of(space, f, side="dual")


def _support_array(space: SpaceDescriptor, a: np.ndarray) -> np.ndarray:
    if space.kind == "lp":
        return np.sign(a) * np.abs(a) ** (space.p - 1.0)
    if space.kind == "weighted-lp":
        w = np.asarray(space.weights)
        return w * np.sign(a) * np.abs(a) ** (space.p - 1.0)
    if space.kind == "polyhedral":
        W = _dedupe_rows(space.facets)  # vertices of the dual polytope
        vals = W @ a
        feasible = W[vals >= 1.0 - 1e-9]
        if len(feasible) == 0:  # numerical guard; take the best available
            feasible = W[[int(np.argmax(vals))]]
        order = sorted(range(len(feasible)), key=lambda i: tuple(feasible[i]))
        return feasible[order[0]]
    if space.kind == "lp-sum":
        out = np.zeros_like(a)
        for c, s in zip(space.components, space.block_slices):
            block = a[s]
            nb = float(_norm_array(c, block))
            if nb > 1e-15:
                out[s] = nb ** (space.p - 1.0) * _support_array(c, block / nb)
        return out
    raise DescriptorError(space.kind)


def duality_preimage(space: SpaceDescriptor, f, tol: float = 1e-9) -> Point:
    """A unit vector x with f(x) = 1 for a unit functional f.

    Uses reflexivity: the norming point of f is the support functional of f
    computed in the polar space.
    """
    a = _coords(f, space, "dual")
    g = support_functional(polar_space(space), a, tol=tol)
    return Point.of(space, g.coords, side="primal")


# -- kernel frames ---------------------------------------------------------


@dataclass(frozen=True)
class KernelFrame:
    functional: Point
    basis: tuple[tuple[float, ...], ...] = field(default=())

    @property
    def matrix(self) -> np.ndarray:
        """(dim-1, dim) array whose rows span ker f, Euclid-orthonormal."""
        return np.asarray(self.basis, dtype=float)


def kernel_frame(space: SpaceDescriptor, f) -> KernelFrame:
    a = _coords(f, space, "dual")
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        raise DomainError("kernel_frame requires a nonzero functional")
    B = null_space(a[None, :] / scale)
    fp = f if isinstance(f, Point) else Point.of(space, a, side="dual")
    return KernelFrame(functional=fp, basis=tuple(tuple(col) for col in B.T))


# -- exact rational views (consumed by the oracle) -------------------------


def exact_vertices(space: SpaceDescriptor) -> list[tuple[Fraction, ...]]:
    if space.kind != "polyhedral":
        raise DescriptorError("exact vertex form only exists for polyhedral spaces")
    return [tuple(Fraction(c).limit_denominator(10 ** 12) for c in v)
            for v in space.vertices]
