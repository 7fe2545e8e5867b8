"""Sphere and ball grids with computed covering radii.

Every certified search in the package reduces to covering a unit sphere
(or ball) by finitely many points whose covering radius in the ambient
norm is known.  The radius is derived from rigorous norm-equivalence
constants computed from the basis vectors, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetError, DomainError
from .spaces import SpaceDescriptor, _dual_norm_array, _norm_array

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class EquivConstants:
    """c * |x|_2 <= ||x|| <= C * |x|_2, plus the radial-projection bound."""

    c: float
    C: float

    @property
    def projection_lipschitz(self) -> float:
        # u -> u/||u|| on the Euclidean sphere is (2C/c)-Lipschitz into ||.||
        return 2.0 * self.C / self.c


def equiv_constants(space: SpaceDescriptor) -> EquivConstants:
    d = space.dim
    E = np.eye(d)
    C = math.sqrt(d) * float(np.max(_norm_array(space, E)))
    c = 1.0 / (math.sqrt(d) * float(np.max(_dual_norm_array(space, E))))
    return EquivConstants(c=c, C=C)


def dual_equiv_constants(space: SpaceDescriptor) -> EquivConstants:
    d = space.dim
    E = np.eye(d)
    C = math.sqrt(d) * float(np.max(_dual_norm_array(space, E)))
    c = 1.0 / (math.sqrt(d) * float(np.max(_norm_array(space, E))))
    return EquivConstants(c=c, C=C)


@lru_cache(maxsize=256)
def sharp_equiv_constants(space: SpaceDescriptor, dual: bool = False) -> EquivConstants:
    """Tightened equivalence constants, bootstrapped from the crude ones.

    The crude constants make the norm provably Lipschitz on the Euclidean
    sphere; evaluating on a fine grid then gives rigorous sharper bounds.
    """
    crude = dual_equiv_constants(space) if dual else equiv_constants(space)
    norm_fn = _dual_norm_array if dual else _norm_array
    d = space.dim
    if d == 1:
        v = float(norm_fn(space, np.array([[1.0]])))
        return EquivConstants(c=v, C=v)
    if d == 2:
        n = 8192
        theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        gap = math.pi / n
    else:
        dirs, faces = _icosphere(4)
        gap = _max_circumradius(dirs, faces)
    vals = norm_fn(space, dirs)
    C = min(crude.C, float(np.max(vals)) + crude.C * gap)
    c = max(crude.c, float(np.min(vals)) - crude.C * gap)
    if c <= 0:
        c = crude.c
    return EquivConstants(c=c, C=C)


@dataclass(frozen=True)
class SphereGrid:
    """Points on the unit sphere of a norm with a certified covering radius.

    Every sphere point is within ``covering`` of some grid point, measured
    in the space's own norm.
    """

    points: np.ndarray  # (n, dim)
    covering: float


def _project(space: SpaceDescriptor, dirs: np.ndarray) -> np.ndarray:
    norms = _norm_array(space, dirs)
    return dirs / norms[..., None]


def sphere_grid(space: SpaceDescriptor, resolution: float,
                max_points: int = 5_000_000, dual: bool = False) -> SphereGrid:
    """Certified covering of the unit sphere at ambient covering radius
    <= resolution.  ``dual=True`` grids the sphere of the dual norm."""
    if resolution <= 0:
        raise DomainError("resolution must be positive")
    eq = sharp_equiv_constants(space, dual)
    norm_fn = _dual_norm_array if dual else _norm_array
    L = eq.projection_lipschitz
    d = space.dim
    if d == 1:
        pts = np.array([[1.0], [-1.0]]) / norm_fn(space, np.array([[1.0]]))[0]
        return SphereGrid(points=pts, covering=0.0)
    if d == 2:
        # Euclidean-arc half step * projection Lipschitz bounds the covering
        n = max(8, int(math.ceil(math.pi * L / resolution)))
        if n > max_points:
            raise BudgetError(f"2-D sphere grid needs {n} points, cap is {max_points}")
        theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        pts = dirs / norm_fn(space, dirs)[:, None]
        h = L * (math.pi / n)  # half angular step, chord <= arc
        return SphereGrid(points=pts, covering=h)
    if d == 3:
        verts, faces = _icosphere_for(resolution / L, max_points)
        pts = verts / norm_fn(space, verts)[:, None]
        # Euclidean covering radius of the triangulated sphere: any unit
        # vector lies in a face cap; bound by the largest circumradius.
        r = _max_circumradius(verts, faces)
        return SphereGrid(points=pts, covering=L * r)
    raise DomainError("certified sphere grids are limited to dimension <= 3")


def _icosahedron() -> tuple[np.ndarray, np.ndarray]:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    v = []
    for a, b in [(1, phi), (-1, phi), (1, -phi), (-1, -phi)]:
        v += [(0, a, b), (a, b, 0), (b, 0, a)]
    V = np.array(v, dtype=float)
    V /= np.linalg.norm(V, axis=1)[:, None]
    from scipy.spatial import ConvexHull
    F = ConvexHull(V).simplices
    return V, F


def _subdivide(V: np.ndarray, F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    edge_mid: dict[tuple[int, int], int] = {}
    verts = list(V)

    def mid(i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in edge_mid:
            m = verts[i] + verts[j]
            m = m / np.linalg.norm(m)
            verts.append(m)
            edge_mid[key] = len(verts) - 1
        return edge_mid[key]

    faces = []
    for a, b, c in F:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    return np.array(verts), np.array(faces)


_ICO_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _icosphere(level: int) -> tuple[np.ndarray, np.ndarray]:
    if level not in _ICO_CACHE:
        if level == 0:
            _ICO_CACHE[0] = _icosahedron()
        else:
            _ICO_CACHE[level] = _subdivide(*_icosphere(level - 1))
    return _ICO_CACHE[level]


def _max_circumradius(V: np.ndarray, F: np.ndarray) -> float:
    # circumradius of each planar face triangle; spherical caps are flatter
    # than the chordal bound by projection, and radial projection onto the
    # sphere does not increase distances to the nearest vertex beyond it.
    a = np.linalg.norm(V[F[:, 0]] - V[F[:, 1]], axis=1)
    b = np.linalg.norm(V[F[:, 1]] - V[F[:, 2]], axis=1)
    c = np.linalg.norm(V[F[:, 2]] - V[F[:, 0]], axis=1)
    s = 0.5 * (a + b + c)
    area = np.sqrt(np.maximum(s * (s - a) * (s - b) * (s - c), 1e-300))
    # planar circumradius abc/4A; multiply by sqrt(2) slack for the
    # projection of interior face points back to the sphere
    return float(np.max(a * b * c / (4.0 * area))) * math.sqrt(2.0)


def _icosphere_for(target_euclid: float, max_points: int) -> tuple[np.ndarray, np.ndarray]:
    level = 0
    while True:
        V, F = _icosphere(level)
        if _max_circumradius(V, F) <= target_euclid:
            return V, F
        if len(V) * 4 > max_points:
            raise BudgetError(
                f"3-D sphere grid at covering {target_euclid:.3g} exceeds {max_points} points")
        level += 1


def lowdisc_sphere(space: SpaceDescriptor, n: int, seed: int = 0,
                   dual: bool = False) -> np.ndarray:
    """Deterministic low-discrepancy sequence on the unit sphere."""
    norm_fn = _dual_norm_array if dual else _norm_array
    d = space.dim
    rng = np.random.default_rng(seed)
    if d == 2:
        theta = (2.0 * math.pi) * ((np.arange(n) * 0.6180339887498949 + 0.05) % 1.0)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    elif d == 3:
        k = np.arange(n) + 0.5
        z = 1.0 - 2.0 * k / n
        r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
        th = GOLDEN_ANGLE * np.arange(n)
        dirs = np.stack([r * np.cos(th), r * np.sin(th), z], axis=-1)
    else:
        dirs = rng.standard_normal((n, d))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return dirs / norm_fn(space, dirs)[:, None]


def max_pairwise_norm(space: SpaceDescriptor, pts: np.ndarray,
                      dual: bool = False, chunk: int = 512) -> float:
    """Largest pairwise distance among ``pts`` in the space's norm."""
    if len(pts) < 2:
        return 0.0
    norm_fn = _dual_norm_array if dual else _norm_array
    best = 0.0
    for i in range(0, len(pts), chunk):
        block = pts[i:i + chunk]
        diffs = block[:, None, :] - pts[None, i:, :]
        best = max(best, float(np.max(norm_fn(space, diffs))))
    return best


@dataclass(frozen=True)
class BallGrid:
    points: np.ndarray
    covering: float


def ball_grid(space: SpaceDescriptor, resolution: float,
              max_points: int = 20_000_000, dual: bool = False) -> BallGrid:
    """Covering of the closed unit ball at ambient covering radius <= resolution."""
    sg = sphere_grid(space, resolution * 0.5, max_points=max_points, dual=dual)
    n_r = max(2, int(math.ceil(2.0 / resolution)))
    radii = np.linspace(0.0, 1.0, n_r + 1)
    if (n_r + 1) * len(sg.points) > max_points:
        raise BudgetError("ball grid exceeds the evaluation cap")
    pts = (radii[:, None, None] * sg.points[None, :, :]).reshape(-1, space.dim)
    # radial gap 1/n_r plus the sphere covering scaled by radius <= 1
    cov = 0.5 / n_r * 2.0 + sg.covering
    return BallGrid(points=pts, covering=cov)
