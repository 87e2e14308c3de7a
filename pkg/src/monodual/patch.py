"""Colored Rhombille patches: matching validator, tile assembly, statistics.

A patch maps rhombs to colors.  Red and black rhombs expose one color on
all four edges.  A red&black rhomb exposes red on the two edges incident
to its arrow vertex and black on the other two; which of its two
60-degree corners carries the arrow is not stored in the data.  All
red&black rhombs of one hexagon must share that choice, so the validator
treats it as one boolean unknown per hexagon, the *arrow state*:

    ARROW_FWD  (0): arrow at vertex V_2a, edges {0, 1} red
    ARROW_BWD  (1): arrow at vertex V_2a+2, edges {2, 3} red

Dual tiles (a hexagonal trio of red&black rhombs plus one attached red
rhomb) anchor two ways: on a lattice hexagon (family "a") or on the trio
of rhombs around an odd lattice vertex (family "b"; members
``(h, 0), (h+V1, 1), (h+V2, 2)``).  Both occur in valid tilings.  The
two geometric orientation classes (a tile and its mirror image) relate
to the arrow state through the family:

    flipped = (family "a" and ARROW_FWD) or (family "b" and ARROW_BWD)

with "flipped" naming the minority class that sits at Ammann-bar
crossings.  Equivalently: regular "a" tiles attach their red rhomb
across an even boundary edge, regular "b" tiles across an odd one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .errors import AmbiguousAssemblyError, InvalidPatchError
from .lattice import (
    HEX_DIRS,
    HexCoord,
    LINE_FAMILIES,
    RhombId,
    edge_partner,
    hex_edge_rhomb,
    line_crossing_hex,
    line_key,
    line_position,
)


class Color(Enum):
    RED = "red"
    BLACK = "black"
    REDBLACK = "redblack"


ARROW_FWD = 0
ARROW_BWD = 1

SCHEMA = "aperiodic-patch/1"


@dataclass
class ColoredPatch:
    cells: dict[RhombId, Color]
    alpha_degrees: float = 60.0

    def __len__(self) -> int:
        return len(self.cells)

    def copy(self) -> "ColoredPatch":
        return ColoredPatch(dict(self.cells), self.alpha_degrees)


def _tile_arrow_state(family: str, flipped: bool) -> int:
    if family == "a":
        return ARROW_FWD if flipped else ARROW_BWD
    return ARROW_BWD if flipped else ARROW_FWD


@dataclass(frozen=True)
class DualTile:
    """One dual tile: red&black trio plus its red rhomb.

    ``attach_dir`` indexes the trio boundary edge carrying the red rhomb
    (0..5, the fixed cyclic order of ``boundary_edges``).
    """

    center: HexCoord
    attach_dir: int
    flipped: bool
    family: str = "a"

    def __post_init__(self):
        if self.family not in ("a", "b"):
            raise ValueError(f"bad family {self.family!r}")
        if self.attach_dir >= 0:
            want_odd = self.flipped if self.family == "a" else not self.flipped
            if (self.attach_dir % 2 == 1) != want_odd:
                raise ValueError(
                    f"attach_dir {self.attach_dir} inconsistent with "
                    f"flipped={self.flipped} family={self.family!r}"
                )

    @property
    def arrow_state(self) -> int:
        return _tile_arrow_state(self.family, self.flipped)

    def trio_rhombs(self) -> tuple[RhombId, RhombId, RhombId]:
        q, r = self.center
        if self.family == "a":
            return (RhombId(q, r, 0), RhombId(q, r, 1), RhombId(q, r, 2))
        return (RhombId(q, r, 0), RhombId(q + 1, r, 1), RhombId(q, r + 1, 2))

    def boundary_edges(self) -> tuple[tuple[RhombId, int], ...]:
        """The six boundary (rhomb, local edge) pairs, fixed cyclic order."""
        q, r = self.center
        if self.family == "a":
            return tuple(hex_edge_rhomb(HexCoord(q, r), d) for d in range(6))
        r0 = RhombId(q, r, 0)
        r1 = RhombId(q + 1, r, 1)
        r2 = RhombId(q, r + 1, 2)
        return ((r0, 0), (r1, 3), (r1, 0), (r2, 3), (r2, 0), (r0, 3))

    def red_rhomb(self) -> RhombId:
        rid, e = self.boundary_edges()[self.attach_dir]
        partner, _ = edge_partner(rid, e)
        return partner

    def cells(self) -> dict[RhombId, Color]:
        out = {rid: Color.REDBLACK for rid in self.trio_rhombs()}
        out[self.red_rhomb()] = Color.RED
        return out


@dataclass(frozen=True)
class Violation:
    rhomb_a: RhombId
    edge_a: int
    rhomb_b: RhombId
    edge_b: int
    color_a: Color
    color_b: Color


@dataclass
class ValidationReport:
    violations: list[Violation]
    arrow_state: dict[HexCoord, int]
    n_edges: int

    @property
    def ok(self) -> bool:
        return not self.violations


def edge_color(color: Color, edge: int, state: int) -> Color:
    """Exposed color of one rhomb edge given the hexagon arrow state."""
    if color is Color.RED:
        return Color.RED
    if color is Color.BLACK:
        return Color.BLACK
    near_arrow = edge in (0, 1)
    if state == ARROW_FWD:
        return Color.RED if near_arrow else Color.BLACK
    return Color.BLACK if near_arrow else Color.RED


def interior_edges(patch: ColoredPatch) -> list[tuple[RhombId, int, RhombId, int]]:
    """Each shared edge between two patch rhombs, reported once."""
    out = []
    cells = patch.cells
    for rid in cells:
        for e in range(4):
            partner, pe = edge_partner(rid, e)
            if partner in cells and (rid, e) < (partner, pe):
                out.append((rid, e, partner, pe))
    return out


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def validate_matching(patch: ColoredPatch) -> ValidationReport:
    """Check every interior shared edge against the matching rules.

    Arrow states are inferred: red&black rhombs meeting red&black rhombs
    of another hexagon must share the state, and contact with a red or
    black rhomb forces a definite value.  Components with no forcing
    default to ARROW_FWD.  An empty violation list means some assignment
    satisfies every interior edge; the report carries the one used.
    """
    cells = patch.cells
    edges = interior_edges(patch)
    uf = _UnionFind()
    forcings: dict[HexCoord, set[int]] = {}
    violations: list[Violation] = []

    for rid, e, partner, pe in edges:
        ca, cb = cells[rid], cells[partner]
        rb_a, rb_b = ca is Color.REDBLACK, cb is Color.REDBLACK
        if not rb_a and not rb_b:
            if ca is cb:
                violations.append(Violation(rid, e, partner, pe, ca, cb))
            continue
        if rb_a and rb_b:
            if rid.hex != partner.hex:
                uf.union(rid.hex, partner.hex)
            continue  # same-hexagon spokes are consistent under the shared state
        if rb_b:
            rid, e, partner, pe = partner, pe, rid, e
            ca, cb = cb, ca
        # red&black side must expose the opposite of the fixed color
        need = Color.BLACK if cb is Color.RED else Color.RED
        state = ARROW_FWD if edge_color(Color.REDBLACK, e, ARROW_FWD) is need else ARROW_BWD
        forcings.setdefault(rid.hex, set()).add(state)

    votes: dict = {}
    for h, states in forcings.items():
        root = uf.find(h)
        tally = votes.setdefault(root, [0, 0])
        for s in states:
            tally[s] += 1
    arrow_state: dict[HexCoord, int] = {}
    for rid, c in cells.items():
        if c is not Color.REDBLACK:
            continue
        h = rid.hex
        if h in arrow_state:
            continue
        tally = votes.get(uf.find(h))
        if tally is None:
            arrow_state[h] = ARROW_FWD
        else:
            arrow_state[h] = ARROW_FWD if tally[ARROW_FWD] >= tally[ARROW_BWD] else ARROW_BWD

    for rid, e, partner, pe in edges:
        ca, cb = cells[rid], cells[partner]
        if not (ca is Color.REDBLACK or cb is Color.REDBLACK):
            continue
        sa = edge_color(ca, e, arrow_state.get(rid.hex, ARROW_FWD))
        sb = edge_color(cb, pe, arrow_state.get(partner.hex, ARROW_FWD))
        if sa is sb:
            violations.append(Violation(rid, e, partner, pe, ca, cb))

    violations.sort(key=lambda v: (v.rhomb_a, v.edge_a))
    return ValidationReport(violations, arrow_state, len(edges))


# --- tile assembly ---------------------------------------------------------


def _candidate_trios(
    patch: ColoredPatch, arrow_state: dict[HexCoord, int]
) -> list[tuple[str, HexCoord, int]]:
    """(family, host, state) for every trio placement the colors allow."""
    cells = patch.cells
    out = []
    hexes = sorted({rid.hex for rid, c in cells.items() if c is Color.REDBLACK})
    for h in hexes:
        q, r = h
        if all(cells.get(RhombId(q, r, a)) is Color.REDBLACK for a in range(3)):
            out.append(("a", h, arrow_state[h]))
        members = (RhombId(q, r, 0), RhombId(q + 1, r, 1), RhombId(q, r + 1, 2))
        if all(cells.get(m) is Color.REDBLACK for m in members):
            states = {arrow_state[m.hex] for m in members}
            if len(states) == 1:
                out.append(("b", h, states.pop()))
    return out


def _trio_tile(family: str, host: HexCoord, state: int, attach_dir: int) -> DualTile:
    flipped = (state == ARROW_FWD) if family == "a" else (state == ARROW_BWD)
    return DualTile(host, attach_dir, flipped, family)


def _feasible_reds(
    patch: ColoredPatch, family: str, host: HexCoord, state: int
) -> list[tuple[int, RhombId]]:
    """Red rhombs adjacent to the trio across one of its black edges."""
    cells = patch.cells
    probe = _trio_tile(family, host, state, -1)
    out = []
    for d, (rid, e) in enumerate(probe.boundary_edges()):
        if edge_color(Color.REDBLACK, e, state) is not Color.BLACK:
            continue
        partner, _ = edge_partner(rid, e)
        if cells.get(partner) is Color.RED:
            out.append((d, partner))
    return out


def assemble_tiles(
    patch: ColoredPatch, *, complete: bool = False
) -> tuple[list[DualTile], list[RhombId]]:
    """Group red&black rhombs into trios and bind each trio to a red rhomb.

    Two forcing passes.  First the trio partition: a red&black rhomb
    with exactly one surviving candidate trio requires that trio, which
    removes every candidate overlapping it or its red options' rivals.
    Then red binding on the surviving trios: reds feasible for exactly
    one unbound trio (and trios with one remaining red) bind greedily
    to a fixed point.  Leftovers (black rhombs, bare trios, unresolved
    reds) come back unassigned; with ``complete=True`` any leftover red
    or red&black rhomb raises AmbiguousAssemblyError.
    """
    report = validate_matching(patch)
    if not report.ok:
        raise InvalidPatchError(f"{len(report.violations)} matching violations")
    trios = _candidate_trios(patch, report.arrow_state)
    by_rhomb: dict[RhombId, list[int]] = {}
    trio_rhombs = []
    for i, (fam, host, state) in enumerate(trios):
        rids = _trio_tile(fam, host, state, -1).trio_rhombs()
        trio_rhombs.append(rids)
        for rid in rids:
            by_rhomb.setdefault(rid, []).append(i)

    red_of_trio: dict[int, list[tuple[int, RhombId]]] = {}
    red_opts: dict[RhombId, list[tuple[int, int]]] = {}
    for i, (fam, host, state) in enumerate(trios):
        feas = _feasible_reds(patch, fam, host, state)
        red_of_trio[i] = feas
        for d, red in feas:
            red_opts.setdefault(red, []).append((i, d))

    alive = [True] * len(trios)
    required: set[int] = set()

    def kill(i: int) -> None:
        if not alive[i]:
            return
        if i in required:
            raise AmbiguousAssemblyError("conflicting trio requirements")
        alive[i] = False

    # pass 1: fix the trio partition by rhomb coverage
    queue = [rid for rid, cands in by_rhomb.items() if len(cands) == 1]
    while queue:
        next_queue = []
        for rid in sorted(queue):
            cands = [i for i in by_rhomb[rid] if alive[i]]
            if len(cands) != 1 or cands[0] in required:
                continue
            i = cands[0]
            required.add(i)
            for member in trio_rhombs[i]:
                for j in by_rhomb.get(member, ()):
                    if j != i and alive[j]:
                        kill(j)
                        for dead_member in trio_rhombs[j]:
                            next_queue.append(dead_member)
        queue = next_queue

    # pass 2: bind reds to surviving trios
    used_red: set[RhombId] = set()
    bound: dict[int, int] = {}  # trio index -> attach dir

    def bind(i: int, d: int, red: RhombId) -> None:
        bound[i] = d
        used_red.add(red)
        for member in trio_rhombs[i]:
            for j in by_rhomb.get(member, ()):
                if j != i:
                    kill(j)

    progress = True
    while progress:
        progress = False
        for red in sorted(red_opts):
            if red in used_red:
                continue
            opts = [(i, d) for i, d in red_opts[red] if alive[i] and i not in bound]
            if len(opts) == 1:
                i, d = opts[0]
                bind(i, d, red)
                progress = True
        for i in sorted(red_of_trio):
            if not alive[i] or i in bound:
                continue
            opts = [(d, red) for d, red in red_of_trio[i] if red not in used_red]
            if len(opts) == 1:
                d, red = opts[0]
                bind(i, d, red)
                progress = True

    tiles = []
    covered: set[RhombId] = set()
    for i in sorted(bound, key=lambda i: (trios[i][0], trios[i][1])):
        fam, host, state = trios[i]
        tile = _trio_tile(fam, host, state, bound[i])
        tiles.append(tile)
        covered.update(tile.trio_rhombs())
        covered.add(tile.red_rhomb())

    unassigned = sorted(rid for rid in patch.cells if rid not in covered)
    if complete:
        bad = [rid for rid in unassigned if patch.cells[rid] is not Color.BLACK]
        if bad:
            raise AmbiguousAssemblyError(
                f"{len(bad)} red/red&black rhombs not uniquely assembled"
            )
    return tiles, unassigned


def tiles_to_patch(tiles: Iterable[DualTile], alpha_degrees: float = 60.0) -> ColoredPatch:
    """Lower dual tiles to a colored patch (hole rhombs not included)."""
    cells: dict[RhombId, Color] = {}
    for t in tiles:
        for rid, color in t.cells().items():
            prev = cells.get(rid)
            if prev is not None and prev is not color:
                raise InvalidPatchError(f"overlapping tiles at {rid}")
            cells[rid] = color
    return ColoredPatch(cells, alpha_degrees)


# --- statistics ------------------------------------------------------------


@dataclass
class PatchStats:
    n_red: int
    n_black: int
    n_redblack: int
    n_flipped: int
    n_regular: int
    cluster_sizes: list[int]


def _trio_nodes(patch: ColoredPatch, tiles: list[DualTile]) -> dict[tuple, Optional[bool]]:
    """Cluster nodes: tile trios plus bare all-red&black hexagons."""
    nodes: dict[tuple, Optional[bool]] = {}
    claimed: set[RhombId] = set()
    for t in tiles:
        nodes[(t.family, t.center)] = t.flipped
        claimed.update(t.trio_rhombs())
    cells = patch.cells
    hexes = {rid.hex for rid, c in cells.items() if c is Color.REDBLACK}
    for h in sorted(hexes):
        q, r = h
        rids = [RhombId(q, r, a) for a in range(3)]
        if ("a", h) not in nodes and all(
            cells.get(x) is Color.REDBLACK and x not in claimed for x in rids
        ):
            nodes[("a", h)] = None  # orientation unknown without a red rhomb
    return nodes


def is_interior_tile(patch: ColoredPatch, tile: DualTile) -> bool:
    """Tile whose trio, red rhomb and all surrounding hexagons are present."""
    cells = patch.cells
    hexes = {rid.hex for rid in tile.trio_rhombs()}
    hexes.add(tile.red_rhomb().hex)
    for h in hexes:
        for dq, dr in HEX_DIRS:
            if not _hex_complete(cells, HexCoord(h.q + dq, h.r + dr)):
                return False
    return True


def interior_tiles(patch: ColoredPatch, tiles: list[DualTile]) -> list[DualTile]:
    return [t for t in tiles if is_interior_tile(patch, t)]


def interior_cluster_sizes(
    patch: ColoredPatch, tiles: Optional[list[DualTile]] = None
) -> list[int]:
    """Sizes of trio clusters whose members all lie strictly inside."""
    if tiles is None:
        tiles, _ = assemble_tiles(patch)
    nodes = _trio_nodes(patch, tiles)
    uf = _UnionFind()
    for fam, h in nodes:
        for dq, dr in HEX_DIRS:
            other = (fam, HexCoord(h[0] + dq, h[1] + dr))
            if other in nodes:
                uf.union((fam, h), other)
    comps: dict = {}
    for node in nodes:
        comps.setdefault(uf.find(node), []).append(node)
    cells = patch.cells
    out = []
    for members in comps.values():
        interior = True
        for fam, h in members:
            probe = _trio_tile(fam, h, ARROW_FWD, -1)
            for rid in probe.trio_rhombs():
                for dq, dr in HEX_DIRS:
                    if not _hex_complete(
                        cells, HexCoord(rid.hex.q + dq, rid.hex.r + dr)
                    ):
                        interior = False
        if interior:
            out.append(len(members))
    return sorted(out)


def cluster_sizes(patch: ColoredPatch, tiles: Optional[list[DualTile]] = None) -> list[int]:
    if tiles is None:
        tiles, _ = assemble_tiles(patch)
    nodes = _trio_nodes(patch, tiles)
    uf = _UnionFind()
    for fam, h in nodes:
        for dq, dr in HEX_DIRS:
            other = (fam, HexCoord(h[0] + dq, h[1] + dr))
            if other in nodes:
                uf.union((fam, h), other)
    counts: dict = {}
    for node in nodes:
        root = uf.find(node)
        counts[root] = counts.get(root, 0) + 1
    return sorted(counts.values())


def stats(patch: ColoredPatch, tiles: Optional[list[DualTile]] = None) -> PatchStats:
    n_red = sum(1 for c in patch.cells.values() if c is Color.RED)
    n_black = sum(1 for c in patch.cells.values() if c is Color.BLACK)
    n_rb = sum(1 for c in patch.cells.values() if c is Color.REDBLACK)
    if tiles is None:
        tiles, _ = assemble_tiles(patch)
    n_flipped = sum(1 for t in tiles if t.flipped)
    return PatchStats(
        n_red,
        n_black,
        n_rb,
        n_flipped,
        len(tiles) - n_flipped,
        cluster_sizes(patch, tiles),
    )


# --- Ammann bar lines ------------------------------------------------------


@dataclass
class GabLine:
    """One maximal run of patch rhombs along a lattice line.

    ``kind`` is "gab" when every tiled red&black cell on the run belongs
    to a flipped tile, "complementary" when some belongs to a regular
    tile, and "empty" when the run carries no tiled red&black cell.
    """

    family: int
    key: int
    cells: list[RhombId]
    kind: str
    n_flipped: int = 0
    n_regular: int = 0


def _rhomb_to_tile(tiles: list[DualTile]) -> dict[RhombId, DualTile]:
    out = {}
    for t in tiles:
        for rid in t.trio_rhombs():
            out[rid] = t
    return out


def find_gabs(patch: ColoredPatch, tiles: Optional[list[DualTile]] = None) -> list[GabLine]:
    if tiles is None:
        tiles, _ = assemble_tiles(patch)
    owner = _rhomb_to_tile(tiles)
    lines: dict[tuple[int, int], list[tuple[int, RhombId]]] = {}
    for rid in patch.cells:
        for family in LINE_FAMILIES:
            if rid.axis == family:
                continue
            key = line_key(family, rid)
            pos = line_position(family, rid)
            lines.setdefault((family, key), []).append((pos, rid))

    out = []
    for (family, key), entries in sorted(lines.items()):
        entries.sort()
        run: list[tuple[int, RhombId]] = []
        for pos, rid in entries:
            if run and pos != run[-1][0] + 1:
                out.append(_classify_run(patch, owner, family, key, run))
                run = []
            run.append((pos, rid))
        if run:
            out.append(_classify_run(patch, owner, family, key, run))
    return out


def _classify_run(patch, owner, family, key, run) -> GabLine:
    flipped = regular = 0
    seen: set = set()
    for _pos, rid in run:
        if patch.cells[rid] is not Color.REDBLACK:
            continue
        tile = owner.get(rid)
        if tile is None or (tile.family, tile.center) in seen:
            continue
        seen.add((tile.family, tile.center))
        if tile.flipped:
            flipped += 1
        else:
            regular += 1
    if flipped + regular == 0:
        kind = "empty"
    elif regular == 0:
        kind = "gab"
    else:
        kind = "complementary"
    return GabLine(family, key, [rid for _p, rid in run], kind, flipped, regular)


# --- tiling properties ------------------------------------------------------


@dataclass
class PropertyResult:
    passed: bool
    checked: int
    skipped: int
    witnesses: list = field(default_factory=list)


@dataclass
class PropertyReport:
    results: dict[str, PropertyResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results.values())


def _alongside_line(tile: DualTile) -> tuple[int, int]:
    """The line through the tile's red rhomb that avoids its trio."""
    red = tile.red_rhomb()
    trio_lines = set()
    for rid in tile.trio_rhombs():
        for family in LINE_FAMILIES:
            if rid.axis != family:
                trio_lines.add((family, line_key(family, rid)))
    for family in LINE_FAMILIES:
        if red.axis == family:
            continue
        candidate = (family, line_key(family, red))
        if candidate not in trio_lines:
            return candidate
    raise AssertionError("red rhomb lines all meet the trio")


def check_properties(
    patch: ColoredPatch, tiles: Optional[list[DualTile]] = None
) -> PropertyReport:
    """Evaluate tiling properties 2..6 on interior instances.

    Instances whose full support is not inside the patch are counted as
    skipped, never failed.
    """
    if tiles is None:
        tiles, _ = assemble_tiles(patch)
    cells = patch.cells
    results: dict[str, PropertyResult] = {}

    # Property 2: every complete hexagon has a red&black rhomb.
    checked = skipped = 0
    witnesses = []
    hexes = {rid.hex for rid in cells}
    for h in sorted(hexes):
        present = [cells.get(RhombId(h.q, h.r, a)) for a in range(3)]
        if any(c is None for c in present):
            skipped += 1
            continue
        checked += 1
        if not any(c is Color.REDBLACK for c in present):
            witnesses.append(h)
    results["P2_hex_has_redblack"] = PropertyResult(not witnesses, checked, skipped, witnesses)

    owner = _rhomb_to_tile(tiles)
    runs = find_gabs(patch, tiles)

    # Property 3/i: tiles with their red rhomb on a line are opposite in
    # orientation to every tile the line passes through.
    checked = skipped = 0
    witnesses = []
    runs_by_line: dict[tuple[int, int], list[GabLine]] = {}
    for g in runs:
        runs_by_line.setdefault((g.family, g.key), []).append(g)
    for t in tiles:
        lf, lk = _alongside_line(t)
        pos = line_position(lf, t.red_rhomb())
        for g in runs_by_line.get((lf, lk), []):
            first = line_position(lf, g.cells[0])
            last = line_position(lf, g.cells[-1])
            if not first <= pos <= last:
                continue
            for rid in g.cells:
                other = owner.get(rid)
                if other is None or other is t:
                    continue
                checked += 1
                if other.flipped == t.flipped:
                    witnesses.append((t, other))
    results["P3_bar_orientation"] = PropertyResult(not witnesses, checked, skipped, witnesses)

    # Property 3/ii: tiles crossed by one line share an orientation.
    checked = skipped = 0
    witnesses = []
    for g in runs:
        crossed = []
        seen = set()
        for rid in g.cells:
            t = owner.get(rid)
            if t is not None and (t.family, t.center) not in seen:
                seen.add((t.family, t.center))
                crossed.append(t)
        if len(crossed) >= 2:
            checked += 1
            if len({t.flipped for t in crossed}) > 1:
                witnesses.append((g.family, g.key, crossed))
    results["P3_line_uniform"] = PropertyResult(not witnesses, checked, skipped, witnesses)

    # Property 4: adjacent trios share an edge with a third.
    nodes = _trio_nodes(patch, tiles)
    checked = skipped = 0
    witnesses = []
    for fam, h in sorted(nodes):
        for dq, dr in HEX_DIRS:
            h2 = HexCoord(h.q + dq, h.r + dr)
            if (fam, h2) not in nodes or (h2, h) < (h, h2):
                continue
            common = [
                HexCoord(h.q + a, h.r + b)
                for a, b in HEX_DIRS
                if (h2.q - h.q - a, h2.r - h.r - b) in HEX_DIRS
            ]
            if any(not _hex_complete(cells, c) for c in common):
                skipped += 1
                continue
            checked += 1
            if not any((fam, c) in nodes for c in common):
                witnesses.append((fam, h, h2))
    results["P4_third_hex"] = PropertyResult(not witnesses, checked, skipped, witnesses)

    # Property 5: clustered trios all share one orientation.
    uf = _UnionFind()
    for fam, h in nodes:
        for dq, dr in HEX_DIRS:
            other = (fam, HexCoord(h.q + dq, h.r + dr))
            if other in nodes:
                uf.union((fam, h), other)
    comps: dict = {}
    for node in nodes:
        comps.setdefault(uf.find(node), []).append(node)
    clustered = {}
    for members in comps.values():
        if len(members) < 2:
            continue
        for node in members:
            if nodes[node] is not None:
                clustered[node] = nodes[node]
    witnesses = []
    if len(set(clustered.values())) > 1:
        a = next(k for k, v in clustered.items() if v)
        b = next(k for k, v in clustered.items() if not v)
        witnesses.append((a, b))
    results["P5_clusters_uniform"] = PropertyResult(
        not witnesses, len(clustered), 0, witnesses
    )

    # Property 6: crossings of non-parallel gab runs land on flipped trios.
    gab_runs = [g for g in runs if g.kind == "gab"]
    checked = skipped = 0
    witnesses = []
    for i, ga in enumerate(gab_runs):
        for gb in gab_runs[i + 1 :]:
            if ga.family == gb.family:
                continue
            h = line_crossing_hex(ga.family, ga.key, gb.family, gb.key)
            shared_axis = 3 - ga.family - gb.family
            rid = RhombId(h.q, h.r, shared_axis)
            if not (_run_contains(ga, rid) and _run_contains(gb, rid)):
                skipped += 1
                continue
            checked += 1
            tile = owner.get(rid)
            if tile is None or not tile.flipped:
                witnesses.append((ga.key, gb.key, rid))
    results["P6_gab_crossings"] = PropertyResult(not witnesses, checked, skipped, witnesses)

    return PropertyReport(results)


def _run_contains(g: GabLine, rid: RhombId) -> bool:
    pos = line_position(g.family, rid)
    first = line_position(g.family, g.cells[0])
    last = line_position(g.family, g.cells[-1])
    return first <= pos <= last


def _hex_complete(cells, h: HexCoord) -> bool:
    return all(RhombId(h.q, h.r, a) in cells for a in range(3))


# --- JSON interchange -------------------------------------------------------


def to_json_dict(patch: ColoredPatch, tiles: Optional[list[DualTile]] = None) -> dict:
    cell_rows = [
        {"q": rid.q, "r": rid.r, "axis": rid.axis, "color": patch.cells[rid].value}
        for rid in sorted(patch.cells)
    ]
    doc = {
        "schema": SCHEMA,
        "alpha_degrees": patch.alpha_degrees,
        "cells": cell_rows,
    }
    if tiles is not None:
        rows = []
        for t in sorted(tiles, key=lambda t: (t.family, t.center, t.attach_dir)):
            row = {
                "q": t.center.q,
                "r": t.center.r,
                "attach_dir": t.attach_dir,
                "flipped": t.flipped,
            }
            if t.family != "a":
                row["family"] = t.family
            rows.append(row)
        doc["tiles"] = rows
    return doc


def dumps(patch: ColoredPatch, tiles: Optional[list[DualTile]] = None) -> str:
    return json.dumps(to_json_dict(patch, tiles), indent=None, separators=(",", ":"))


def from_json_dict(doc: dict) -> tuple[ColoredPatch, Optional[list[DualTile]]]:
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise InvalidPatchError(f"unsupported schema: {doc.get('schema')!r}")
    cells = {}
    for row in doc["cells"]:
        rid = RhombId(int(row["q"]), int(row["r"]), int(row["axis"]))
        if rid.axis not in (0, 1, 2):
            raise InvalidPatchError(f"bad axis in cell {row}")
        if rid in cells:
            raise InvalidPatchError(f"duplicate cell {rid}")
        cells[rid] = Color(row["color"])
    patch = ColoredPatch(cells, float(doc.get("alpha_degrees", 60.0)))
    tiles = None
    if "tiles" in doc:
        tiles = [
            DualTile(
                HexCoord(int(row["q"]), int(row["r"])),
                int(row["attach_dir"]),
                bool(row["flipped"]),
                row.get("family", "a"),
            )
            for row in doc["tiles"]
        ]
    return patch, tiles


def loads(text: str) -> tuple[ColoredPatch, Optional[list[DualTile]]]:
    return from_json_dict(json.loads(text))
