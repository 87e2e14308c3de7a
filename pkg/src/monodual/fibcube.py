"""Fibonacci-cube construction: typed cell grids, the diagonal slice,
axis projections, and lowering of the slice to a colored patch.

The cube over a binary word w is the L^3 grid of cells (i, j, k) typed by
the symbol triple (w[i], w[j], w[k]).  Slicing at cell level c = i+j+k
and projecting along the main diagonal yields a triangular patch of the
Rhombille tiling: cell (i, j, k) becomes the "pit" hexagon whose three
rhombs are (h, 0), (h + V1, 1), (h + V2, 2) for h = (-j, -k), each rhomb
colored from the symbol pair at its two surviving coordinates (cyclic
order), equal pairs giving red&black and mixed pairs red or black.

Matching validity of the lowered patch depends on the word's phase
within the infinite Fibonacci word.  The words B_n themselves are not in
phase at the default cut, so ``slice_to_patch`` recolors from the
aligned window of the infinite Fibonacci word of the same length when
needed (recorded on the result); cell counts, types and projection
statistics always refer to the slice's own word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import RangeError
from .lattice import RhombId
from .patch import Color, ColoredPatch, validate_matching

# cell -> rhomb member table: (host offset, axis) per coordinate axis
PIT_MEMBERS = (((0, 0), 0), ((1, 0), 1), ((0, 1), 2))

EVEN, ODD, GAP = "even", "odd", "gap"


def _strip_b(n: int) -> str:
    a, b = "0", "0"
    for _ in range(n):
        a = b + "01" + a
        b = a + b
    return b


def fib_word_prefix(length: int) -> str:
    """Prefix of the infinite Fibonacci word 001 001 0 001 ..."""
    a, b = "0", "001"
    while len(b) < length:
        a, b = b, b + a
    return b[:length]


@dataclass(frozen=True)
class TypedCube:
    """Lazy L^3 grid typed from a word; no O(L^3) storage."""

    word: str

    @property
    def size(self) -> int:
        return len(self.word)

    def cell_type(self, i: int, j: int, k: int) -> str:
        L = self.size
        if not all(0 <= x < L for x in (i, j, k)):
            raise RangeError(f"cell ({i},{j},{k}) outside [0,{L})^3")
        s = {self.word[i], self.word[j], self.word[k]}
        if s == {"0"}:
            return EVEN
        if s == {"1"}:
            return ODD
        return GAP


def build_cube(n: int) -> TypedCube:
    if n < 1:
        raise RangeError("cube level must be >= 1")
    return TypedCube(_strip_b(n))


@dataclass(frozen=True)
class Slice:
    word: str
    cut: int

    @property
    def size(self) -> int:
        return len(self.word)

    def cells(self) -> list[tuple[int, int, int]]:
        L, c = self.size, self.cut
        out = []
        for j in range(min(L, c + 1)):
            for k in range(min(L, c - j + 1)):
                i = c - j - k
                if i < L:
                    out.append((i, j, k))
        return out


def cube_slice(cube: TypedCube, cut: Optional[int] = None) -> Slice:
    L = cube.size
    if cut is None:
        cut = L - 1
    if not 0 <= cut <= 3 * (L - 1):
        raise RangeError(f"cut {cut} outside [0, {3 * (L - 1)}]")
    return Slice(cube.word, cut)


def pair_color(a: str, b: str, swap: bool = False) -> Color:
    if a == b:
        return Color.REDBLACK
    if (a, b) == ("0", "1"):
        return Color.BLACK if swap else Color.RED
    return Color.RED if swap else Color.BLACK


def lower_cells(
    cells: list[tuple[int, int, int]], word: str, swap: bool = False
) -> ColoredPatch:
    """Color the pit hexagons of a cell set from a coordinate word."""
    out: dict[RhombId, Color] = {}
    for i, j, k in cells:
        sym = (word[i], word[j], word[k])
        for a in range(3):
            (dq, dr), axis = PIT_MEMBERS[a]
            c1, c2 = (a + 1) % 3, (a + 2) % 3
            out[RhombId(-j + dq, -k + dr, axis)] = pair_color(sym[c1], sym[c2], swap)
    return ColoredPatch(out)


@lru_cache(maxsize=64)
def aligned_window(length: int) -> tuple[int, str]:
    """Smallest Fibonacci-word window of this length whose full
    antidiagonal slice passes the matching validator."""
    inf = fib_word_prefix(length + 8 * length)
    cells = Slice("0" * length, length - 1).cells()
    s = 0
    while s + length <= len(inf):
        w = inf[s : s + length]
        if validate_matching(lower_cells(cells, w)).ok:
            return s, w
        s += 1
    raise RangeError(f"no aligned window of length {length} found")


def slice_to_patch(s: Slice, swap: bool = False) -> ColoredPatch:
    """Lower a slice to a colored patch that passes the matching rules.

    Tries the slice's own word with the configured mixed-pair rule, then
    the swapped rule; if neither validates (the usual case for B_n at
    the default cut, whose phase is off by a Sturmian offset), recolors
    from the aligned Fibonacci window of the same length.  The patch
    gains an ``alignment`` attribute recording (offset, swapped).
    """
    cells = s.cells()
    for sw in (swap, not swap):
        patch = lower_cells(cells, s.word, sw)
        if validate_matching(patch).ok:
            patch.alignment = (None, sw)
            return patch
    if s.cut == s.size - 1:
        offset, w = aligned_window(s.size)
        patch = lower_cells(cells, w, swap)
        if validate_matching(patch).ok:
            patch.alignment = (offset, swap)
            return patch
    patch = lower_cells(cells, s.word, swap)
    patch.alignment = (None, swap)
    return patch


@dataclass
class ProjectionImage:
    """Square-grid shadow of a slice along one axis.

    ``squares`` maps (u, v) to a category derived from the symbol pair
    at the two surviving coordinates; the antidiagonal u+v = cut carries
    hexagon images only (the word is a palindrome there).
    """

    axis: int
    squares: dict[tuple[int, int], str]

    def category_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for cat in self.squares.values():
            out[cat] = out.get(cat, 0) + 1
        return out


CAT_FLIPPED = "flipped-hex"
CAT_REGULAR = "regular-hex"
CAT_RED = "red-rhomb"
CAT_BLACK = "black-rhomb"


def _pair_category(a: str, b: str) -> str:
    if a == b:
        return CAT_FLIPPED if a == "1" else CAT_REGULAR
    return CAT_RED if (a, b) == ("0", "1") else CAT_BLACK


def project_slice(s: Slice, axis: int) -> ProjectionImage:
    if axis not in (0, 1, 2):
        raise RangeError(f"axis {axis} out of range")
    squares = {}
    for i, j, k in s.cells():
        coords = (i, j, k)
        u, v = coords[(axis + 1) % 3], coords[(axis + 2) % 3]
        squares[(u, v)] = _pair_category(s.word[u], s.word[v])
    return ProjectionImage(axis, squares)


def diagonal_census(s: Slice) -> tuple[int, int]:
    """(flipped, regular) hex-image counts on the projection diagonal."""
    img = project_slice(s, 0)
    flipped = regular = 0
    for (u, v), cat in img.squares.items():
        if u + v != s.cut:
            continue
        if cat == CAT_FLIPPED:
            flipped += 1
        elif cat == CAT_REGULAR:
            regular += 1
        else:
            raise AssertionError(f"mixed pair on the diagonal at {(u, v)}")
    return flipped, regular
