"""Named space presets for the CLI and the verification batteries."""

from __future__ import annotations

from fractions import Fraction

from .errors import DescriptorError
from .spaces import (SpaceDescriptor, cross_polytope, hypercube, lp_space,
                     make_lp_sum, polyhedral_space)


def _square_rot() -> SpaceDescriptor:
    """The square ball rotated by the 3-4-5 angle; vertices stay rational so
    the exact polyhedral path applies."""
    c, s = Fraction(4, 5), Fraction(3, 5)
    verts = []
    for x, y in [(1, 1), (-1, 1), (-1, -1), (1, -1)]:
        verts.append((float(c * x - s * y), float(s * x + c * y)))
    return polyhedral_space(verts)


_FIXED = {
    "l2-2": lambda: lp_space(2, 2.0),
    "l2-3": lambda: lp_space(3, 2.0),
    "l1-2d": lambda: cross_polytope(2),
    "l1-3d": lambda: cross_polytope(3),
    "linf-2d": lambda: hypercube(2),
    "linf-3d": lambda: hypercube(3),
    "square-rot": _square_rot,
    "l2sum-4": lambda: make_lp_sum([lp_space(2, 2.0), lp_space(2, 2.0)], 2.0),
}


def preset(name: str) -> SpaceDescriptor:
    """Resolve a named preset.

    Fixed names: l2-2, l2-3, l1-2d, l1-3d, linf-2d, linf-3d, square-rot,
    l2sum-4 (the 2-sum of two Euclidean planes).  Patterns:
    ``lp:P-Dd`` for the lp space with exponent P in dimension D (e.g.
    ``lp:1.5-2d``), and ``lpsum:P:<name>+<name>`` for a p-sum of presets.
    """
    if name in _FIXED:
        return _FIXED[name]()
    if name.startswith("lp:"):
        body = name[3:]
        try:
            p_str, dim_str = body.rsplit("-", 1)
            if not dim_str.endswith("d"):
                raise ValueError(body)
            return lp_space(int(dim_str[:-1]), float(p_str))
        except ValueError as exc:
            raise DescriptorError(f"malformed lp preset {name!r}") from exc
    if name.startswith("lpsum:"):
        try:
            _, p_str, comps = name.split(":", 2)
            components = [preset(c) for c in comps.split("+")]
            return make_lp_sum(components, float(p_str))
        except (ValueError, DescriptorError) as exc:
            raise DescriptorError(f"malformed lpsum preset {name!r}") from exc
    raise DescriptorError(f"unknown preset {name!r}")


def list_presets() -> list[str]:
    return sorted(_FIXED) + ["lp:<p>-<dim>d", "lpsum:<p>:<name>+<name>"]
