"""Exact orientation and in-sphere predicates on the fixed-point grid.

Every coordinate is rounded to a multiple of ``2**-GRID_BITS`` before it
reaches a predicate.  The predicates then run on the scaled integer
coordinates with Python's unbounded ints, so their signs are exact.

The in-sphere test comes in two flavours: :func:`insphere_int` returns the
plain sign (0 on cospherical input) and :func:`insphere_sos` breaks ties by
an infinitesimal perturbation of the lifted coordinate ``|p|**2`` of each
point, ordered by a caller supplied priority key.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

GRID_BITS = 32
SCALE = 1 << GRID_BITS

IntPoint = Tuple[int, int, int]


def snap(x: float) -> float:
    """Round ``x`` to the nearest multiple of ``2**-GRID_BITS``."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite coordinate: {x!r}")
    return round(x * SCALE) / SCALE


def to_grid(x: float) -> int:
    """Scaled integer for a coordinate (snapping it first)."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite coordinate: {x!r}")
    return int(round(x * SCALE))


def grid_point(p: Sequence[float]) -> IntPoint:
    return (to_grid(p[0]), to_grid(p[1]), to_grid(p[2]))


def from_grid(g: Sequence[int]) -> Tuple[float, float, float]:
    return (g[0] / SCALE, g[1] / SCALE, g[2] / SCALE)


def sign(v: int) -> int:
    return (v > 0) - (v < 0)


def orient3d_int(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> int:
    """Six times the signed volume of ``abcd`` (positive for a right-handed frame)."""
    bx, by, bz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    cx, cy, cz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    dx, dy, dz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return (bx * (cy * dz - cz * dy)
            - by * (cx * dz - cz * dx)
            + bz * (cx * dy - cy * dx))


def insphere_int(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint,
                 e: IntPoint) -> int:
    """Positive iff ``e`` is strictly inside the sphere through a positively
    oriented ``abcd``; zero when the five points are cospherical."""
    aex, aey, aez = a[0] - e[0], a[1] - e[1], a[2] - e[2]
    bex, bey, bez = b[0] - e[0], b[1] - e[1], b[2] - e[2]
    cex, cey, cez = c[0] - e[0], c[1] - e[1], c[2] - e[2]
    dex, dey, dez = d[0] - e[0], d[1] - e[1], d[2] - e[2]

    ab = aex * bey - bex * aey
    bc = bex * cey - cex * bey
    cd = cex * dey - dex * cey
    da = dex * aey - aex * dey
    ac = aex * cey - cex * aey
    bd = bex * dey - dex * bey

    abc = aez * bc - bez * ac + cez * ab
    bcd = bez * cd - cez * bd + dez * bc
    cda = cez * da + dez * ac + aez * cd
    dab = dez * ab + aez * bd + bez * da

    alift = aex * aex + aey * aey + aez * aez
    blift = bex * bex + bey * bey + bez * bez
    clift = cex * cex + cey * cey + cez * cez
    dlift = dex * dex + dey * dey + dez * dez

    # this is minus the lifted 4x4 determinant, so "inside" comes out positive
    return -((dlift * abc - clift * dab) + (blift * cda - alift * bcd))


def insphere_sos(pts: Sequence[IntPoint], keys: Sequence) -> int:
    """Perturbed in-sphere sign of ``pts[4]`` against the tet ``pts[:4]``.

    The tet must be positively oriented.  Point ``k`` has its lifted
    coordinate raised by ``eps**rank(k)`` where rank follows ``keys``
    (smallest key = largest perturbation).  Never returns 0 for five
    distinct points with a non-degenerate tet.
    """
    s = insphere_int(pts[0], pts[1], pts[2], pts[3], pts[4])
    if s:
        return 1 if s > 0 else -1
    for k in sorted(range(5), key=lambda i: keys[i]):
        rest = [pts[i] for i in range(5) if i != k]
        o = orient3d_int(rest[0], rest[1], rest[2], rest[3])
        if o:
            o = 1 if o > 0 else -1
            # d/dw_k of the lifted determinant, with the sign flip above
            return -o if k % 2 == 0 else o
    raise ValueError("insphere_sos: degenerate input (coincident or coplanar tet)")


def circumcenter_int(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint):
    """Circumcenter as an exact rational ``(num_x, num_y, num_z, den)`` with
    the center equal to ``num / den`` in grid units; ``den > 0``."""
    b1 = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
    c1 = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
    d1 = (d[0] - a[0], d[1] - a[1], d[2] - a[2])
    vol = orient3d_int(a, b, c, d)
    if vol == 0:
        raise ValueError("degenerate tetrahedron has no circumsphere")
    nb = b1[0] * b1[0] + b1[1] * b1[1] + b1[2] * b1[2]
    nc = c1[0] * c1[0] + c1[1] * c1[1] + c1[2] * c1[2]
    nd = d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]
    cd = _cross(c1, d1)
    db = _cross(d1, b1)
    bc = _cross(b1, c1)
    num = [nb * cd[i] + nc * db[i] + nd * bc[i] for i in range(3)]
    den = 2 * vol
    if den < 0:
        num = [-v for v in num]
        den = -den
    return (num[0] + a[0] * den, num[1] + a[1] * den, num[2] + a[2] * den, den)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def cross_int(u: IntPoint, v: IntPoint) -> IntPoint:
    return _cross(u, v)


def dot_int(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
