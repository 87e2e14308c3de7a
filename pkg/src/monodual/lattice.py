"""Integer coordinate system for the Rhombille tiling.

Conventions (frozen; SVG goldens and all edge tables depend on them):

* Hexagon centers sit at ``q*V1 + r*V2`` with ``V1 = (3/2, sqrt(3)/2)``
  and ``V2 = (0, sqrt(3))``; rhomb edges have unit length.
* Hexagon vertices are ``V_m = center + e(60*m degrees)``, m = 0..5.
* Hexagon ``(q, r)`` is partitioned into three rhombs, one per axis
  ``a in {0, 1, 2}``: the quadrilateral ``(V_2a, V_2a+1, V_2a+2, C)``.
  The first listed vertex is the canonical arrow vertex (the 60-degree
  corner the matching-rule arrows point toward for an unflipped tile).
* Rhomb edges are numbered counterclockwise so that edges 0 and 1 are
  the two incident to the arrow vertex:
      edge 0 = spoke  C       -> V_2a
      edge 1 = border V_2a    -> V_2a+1   (hexagon edge 2a)
      edge 2 = border V_2a+1  -> V_2a+2   (hexagon edge 2a+1)
      edge 3 = spoke  V_2a+2  -> C
* Hexagon edge directions d = 0..5 point toward ``e(30 + 60*d degrees)``;
  the neighbour across edge d is offset by ``HEX_DIRS[d]``.

The three axis projections treat the tiling as the staircase of unit
cubes ``(i, j, k) = (q + r, -q, -r)`` viewed along the main diagonal, so
all projected coordinates are exact integers.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Union


class HexCoord(NamedTuple):
    q: int
    r: int

    def __add__(self, other):
        return HexCoord(self.q + other[0], self.r + other[1])

    def __sub__(self, other):
        return HexCoord(self.q - other[0], self.r - other[1])


class RhombId(NamedTuple):
    q: int
    r: int
    axis: int

    @property
    def hex(self) -> HexCoord:
        return HexCoord(self.q, self.r)


class PlanarPoint(NamedTuple):
    x: float
    y: float


class SquareCell(NamedTuple):
    u: int
    v: int


class Segment(NamedTuple):
    start: tuple[int, int]
    end: tuple[int, int]


class EdgeDescriptor(NamedTuple):
    """Shared unit edge; ``edge_a``/``edge_b`` are each side's local index."""

    edge_a: int
    edge_b: int


AXES = (0, 1, 2)

SQRT3 = math.sqrt(3.0)
V1 = (1.5, SQRT3 / 2.0)
V2 = (0.0, SQRT3)

# Neighbour offsets across hexagon edges 0..5 (directions 30 + 60*d degrees).
HEX_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

_UNIT = tuple(
    (math.cos(math.radians(60 * m)), math.sin(math.radians(60 * m))) for m in range(6)
)


def hex_center(h: HexCoord) -> PlanarPoint:
    q, r = h
    return PlanarPoint(q * V1[0] + r * V2[0], q * V1[1] + r * V2[1])


def hex_vertex(h: HexCoord, m: int) -> PlanarPoint:
    c = hex_center(h)
    u = _UNIT[m % 6]
    return PlanarPoint(c.x + u[0], c.y + u[1])


def hex_neighbors(h: HexCoord) -> list[HexCoord]:
    """Six edge-adjacent hexagons, counterclockwise from direction V1."""
    q, r = h
    return [HexCoord(q + dq, r + dr) for dq, dr in HEX_DIRS]


def rhomb_vertices(rid: RhombId) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint, PlanarPoint]:
    """Counterclockwise vertices; first is the canonical arrow vertex."""
    h = HexCoord(rid.q, rid.r)
    a = rid.axis
    return (
        hex_vertex(h, 2 * a),
        hex_vertex(h, 2 * a + 1),
        hex_vertex(h, 2 * a + 2),
        hex_center(h),
    )


def rhomb_edge_endpoints(rid: RhombId, edge: int) -> tuple[PlanarPoint, PlanarPoint]:
    verts = rhomb_vertices(rid)
    # edge i runs from verts[(i + 3) % 4] to verts[i]
    return verts[(edge + 3) % 4], verts[edge]


def rhomb_center(rid: RhombId) -> PlanarPoint:
    verts = rhomb_vertices(rid)
    return PlanarPoint(
        sum(p.x for p in verts) / 4.0,
        sum(p.y for p in verts) / 4.0,
    )


def edge_partner(rid: RhombId, edge: int) -> tuple[RhombId, int]:
    """The rhomb and local edge index on the other side of ``edge``.

    Total involution over the infinite lattice; patch membership is the
    caller's concern.
    """
    q, r, a = rid
    if edge == 0:
        return RhombId(q, r, (a + 2) % 3), 3
    if edge == 3:
        return RhombId(q, r, (a + 1) % 3), 0
    if edge == 1:
        d = 2 * a
        dq, dr = HEX_DIRS[d]
        return RhombId(q + dq, r + dr, (a + 1) % 3), 2
    if edge == 2:
        d = 2 * a + 1
        dq, dr = HEX_DIRS[d]
        return RhombId(q + dq, r + dr, (a + 2) % 3), 1
    raise ValueError(f"edge index out of range: {edge}")


def hex_edge_rhomb(h: HexCoord, d: int) -> tuple[RhombId, int]:
    """The rhomb of hexagon ``h`` owning boundary edge ``d`` and its local index."""
    a, parity = divmod(d % 6, 2)
    return RhombId(h[0], h[1], a), 1 + parity


def neighbor_rhomb_across(h: HexCoord, d: int) -> RhombId:
    """The neighbouring hexagon's rhomb sharing boundary edge ``d`` of ``h``."""
    rid, e = hex_edge_rhomb(h, d)
    partner, _ = edge_partner(rid, e)
    return partner


def shared_edge(a: RhombId, b: RhombId) -> Optional[EdgeDescriptor]:
    if a == b:
        return None
    for e in range(4):
        partner, pe = edge_partner(a, e)
        if partner == b:
            return EdgeDescriptor(e, pe)
    return None


def cube_coords(h: HexCoord) -> tuple[int, int, int]:
    """Staircase cube cell (i, j, k) of hexagon ``h``; i + j + k = 0."""
    q, r = h
    return (q + r, -q, -r)


def project(axis: int, rid: RhombId) -> Union[SquareCell, Segment]:
    """Axis projection of one rhomb: a unit square or a degenerate segment.

    The projection drops the ``axis`` coordinate of the cube staircase.
    Rhombs of matching orientation map to the unit square indexed by the
    two surviving cube coordinates (cyclic order); the other two
    orientations collapse to integer-endpoint segments.
    """
    if axis not in AXES:
        raise ValueError(f"axis out of range: {axis}")
    c = cube_coords(rid.hex)
    u = c[(axis + 1) % 3]
    v = c[(axis + 2) % 3]
    a = rid.axis
    if a == axis:
        return SquareCell(u, v)
    if a == (axis + 1) % 3:
        return Segment((u + 1, v), (u + 1, v + 1))
    return Segment((u, v + 1), (u + 1, v + 1))


def is_loschian(n: int) -> bool:
    """True iff ``n = x^2 + x*y + y^2`` for nonnegative integers x, y.

    Uses the classical criterion: every prime factor congruent to
    2 (mod 3) must occur to an even power.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return True
    for p in _prime_factors(n):
        if p % 3 == 2 and _multiplicity(n, p) % 2 == 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _multiplicity(n: int, p: int) -> int:
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return m


# --- lattice lines ---------------------------------------------------------
#
# A "line of rhombuses" runs through a row of hexagons and picks up two of
# the three rhombs in each.  There are three direction families, named by
# the axis whose rhombs the family never contains (equivalently: the
# projection under which the line has no area).
#
#   family 2: direction +V1,      axes {1, 0}, row key r
#   family 0: direction V2 - V1,  axes {2, 1}, row key q + r
#   family 1: direction -V2,      axes {0, 2}, row key q
#
# ``line_position`` orders the rhombs along the direction of travel.

LINE_FAMILIES = (0, 1, 2)


def line_axes(family: int) -> tuple[int, int]:
    """Axes present on lines of ``family``, in traversal order per hexagon."""
    return {2: (1, 0), 0: (2, 1), 1: (0, 2)}[family]


def line_key(family: int, rid: RhombId) -> int:
    if rid.axis == family:
        raise ValueError(f"axis {rid.axis} rhombs do not lie on family-{family} lines")
    if family == 2:
        return rid.r
    if family == 0:
        return rid.q + rid.r
    return rid.q


def line_position(family: int, rid: RhombId) -> int:
    enter, _exit = line_axes(family)
    offset = 0 if rid.axis == enter else 1
    if family == 2:
        return 2 * rid.q + offset
    if family == 0:
        return 2 * rid.r + offset
    return -2 * rid.r + offset


def line_rhomb(family: int, key: int, position: int) -> RhombId:
    """Inverse of (line_key, line_position) for rhombs on a family line."""
    t, offset = divmod(position, 2)
    enter, exit_ = line_axes(family)
    axis = enter if offset == 0 else exit_
    if family == 2:
        return RhombId(t, key, axis)
    if family == 0:
        return RhombId(key - t, t, axis)
    return RhombId(key, -t, axis)


def line_crossing_hex(fam_a: int, key_a: int, fam_b: int, key_b: int) -> HexCoord:
    """Hexagon where two non-parallel family lines cross."""
    if fam_a == fam_b:
        raise ValueError("parallel lines do not cross")
    keys = {fam_a: key_a, fam_b: key_b}
    if 2 in keys and 1 in keys:
        return HexCoord(keys[1], keys[2])
    if 2 in keys and 0 in keys:
        return HexCoord(keys[0] - keys[2], keys[2])
    return HexCoord(keys[1], keys[0] - keys[1])
