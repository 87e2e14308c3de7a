"""Bricks-and-Mortar substitution system: strip words, Fibonacci words,
tile-count recursions, and the triangular/parallelogram metatiles.

Words are over {0 = regular tile, 1 = flipped tile}:

    J = 01,  A_0 = B_0 = 0,  A_{n+1} = B_n J A_n,  B_{n+1} = A_{n+1} B_n

Metatiles are lowered to colored patches through the cube-slice
construction: a triangular region of side |B_n| (or a parallelogram
|B_n| x |A_n|) of pit hexagons colored from a window of the infinite
Fibonacci word.  Matching validity pins the window phase; the canonical
offsets below were found by validator search and are re-asserted by the
test suite.  Parallelogram regions are in phase with the plain
Fibonacci prefix (offset 0) at every level.

In the lowered patches the flipped tiles fill whole lattice rows (the
Golden Ammann Bars); the row-orientation word along each side follows
the window word, whose symbol statistics match the strip words exactly
in the limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DepthError, DomainError
from .fibcube import aligned_window, fib_word_prefix, lower_cells
from .patch import ColoredPatch, DualTile, assemble_tiles, validate_matching

DEFAULT_MAX_LEVEL = 7

# Tile counts of the level-1 base patches (measured from the shipped
# fixtures; re-asserted against assemble_tiles by the test suite).
T1_TILES = 7
P1_TILES = 10


@lru_cache(maxsize=64)
def fib(n: int) -> int:
    if n < 0:
        raise DomainError("Fibonacci index must be >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_word(n: int) -> str:
    """Fibonacci word: F_1 = 0, F_2 = 001, F_n = F_{n-1} F_{n-2}."""
    if n < 1:
        raise DomainError("Fibonacci word index must be >= 1")
    a, b = "0", "001"
    if n == 1:
        return a
    for _ in range(n - 2):
        a, b = b, b + a
    return b


@lru_cache(maxsize=64)
def _strips(n: int) -> tuple[str, str]:
    """(A_n, B_n)."""
    if n == 0:
        return "0", "0"
    a, b = _strips(n - 1)
    a2 = b + "01" + a
    return a2, a2 + b


def strip_word(kind: str, n: int) -> str:
    if kind == "J":
        return "01"
    if n < 0:
        raise DomainError("strip level must be >= 0")
    if kind == "A":
        return _strips(n)[0]
    if kind == "B":
        return _strips(n)[1]
    raise DomainError(f"unknown strip kind {kind!r}")


def palindrome_report(n: int) -> dict[str, bool]:
    """Palindromicity of B_n and J A_n."""
    if n < 1:
        raise DomainError("level must be >= 1")
    b = strip_word("B", n)
    ja = "01" + strip_word("A", n)
    return {"B": b == b[::-1], "JA": ja == ja[::-1]}


def fib_strip_identity(k: int) -> tuple[bool, bool]:
    """Exact word identities tying strips to Fibonacci words.

    For the listed sequences these read A_k = F_{2k+1} and
    B_k 01 = F_{2k+2} (k >= 0); the paper states them with the strip
    index one higher.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    a_ok = strip_word("A", k) == fib_word(2 * k + 1)
    b_ok = strip_word("B", k) + "01" == fib_word(2 * k + 2)
    return a_ok, b_ok


def cassini(j: int) -> bool:
    if j < 1:
        raise DomainError("j must be >= 1")
    return fib(j - 1) * fib(j + 1) == fib(j) ** 2 + (-1) ** j


@dataclass
class CountLedger:
    """Tile counts per level: metatiles t/p, strip lengths a/b."""

    t: list[int]
    p: list[int]
    a: list[int]
    b: list[int]


def counts(n: int, t1: int = T1_TILES, p1: int = P1_TILES) -> CountLedger:
    """Ledger through level n from the count recursions.

    t_{n+1} = 3 t_n + 3 p_n + t_{n-1} + 6 b_n
    p_{n+1} = 2 t_n + 5 p_n + 2 t_{n-1} + 8 b_n

    with empty level-0 metatiles and the level-1 fixture counts.
    """
    if n < 1:
        raise DomainError("level must be >= 1")
    a = [len(strip_word("A", i)) for i in range(n + 1)]
    b = [len(strip_word("B", i)) for i in range(n + 1)]
    t, p = [0, t1], [0, p1]
    for i in range(1, n):
        t.append(3 * t[i] + 3 * p[i] + t[i - 1] + 6 * b[i])
        p.append(2 * t[i] + 5 * p[i] + 2 * t[i - 1] + 8 * b[i])
    return CountLedger(t[: n + 1], p[: n + 1], a, b)


# --- metatile lowering -------------------------------------------------------

# Validator-determined window offsets into the infinite Fibonacci word.
T_OFFSETS = {1: 0, 2: 1, 3: 19, 4: 25, 5: 25}
P_OFFSETS = {1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def _triangle_cells(m: int) -> list[tuple[int, int, int]]:
    return [(m - 1 - j - k, j, k) for j in range(m) for k in range(m - j)]


def _parallelogram_cells(width: int, height: int) -> list[tuple[int, int, int]]:
    top = width + height - 2
    return [(top - j - k, j, k) for j in range(width) for k in range(height)]


@dataclass
class Metatile:
    """A lowered metatile: its patch, assembled tiles, and recursion data.

    ``children`` records the substitution structure (child kind, level,
    multiplicity): a level-(n+1) triangle is three triangles, three
    parallelograms, one level-(n-1) triangle and six mortar strips.
    """

    kind: str
    level: int
    children: list[tuple[str, int, int]]
    patch: ColoredPatch
    tiles: list[DualTile]
    window_offset: int

    @property
    def tile_count(self) -> int:
        return len(self.tiles)


def _children_spec(kind: str, level: int) -> list[tuple[str, int, int]]:
    if level <= 1:
        return []
    if kind == "T":
        return [("T", level - 1, 3), ("P", level - 1, 3), ("T", level - 2, 1), ("B", level - 1, 6)]
    return [("T", level - 1, 2), ("P", level - 1, 5), ("T", level - 2, 2), ("B", level - 1, 8)]


def _find_offset(cells, length: int, known: dict[int, int], level: int) -> int:
    if level in known:
        return known[level]
    inf = fib_word_prefix(9 * length)
    s = 0
    while s + length <= len(inf):
        patch = lower_cells(cells, inf[s : s + length])
        if validate_matching(patch).ok:
            return s
        s += 1
    raise DepthError(f"no valid window of length {length}")


def build_metatile(kind: str, level: int, max_level: int = DEFAULT_MAX_LEVEL) -> Metatile:
    """Lower the level-n triangle (T) or parallelogram (P) to a patch.

    The patch passes the matching validator by construction; the window
    offset used is recorded.  Levels beyond the cached table fall back
    to a validator search, which is slow but deterministic.
    """
    if kind not in ("T", "P"):
        raise DomainError(f"metatile kind must be T or P, not {kind!r}")
    if level < 1:
        raise DomainError("metatile level must be >= 1")
    if level > max_level:
        raise DepthError(f"level {level} beyond the configured limit {max_level}")
    b = len(strip_word("B", level))
    if kind == "T":
        cells = _triangle_cells(b)
        length = b
        offset = _find_offset(cells, length, T_OFFSETS, level)
    else:
        a = len(strip_word("A", level))
        cells = _parallelogram_cells(b, a)
        length = a + b - 1
        offset = _find_offset(cells, length, P_OFFSETS, level)
    word = fib_word_prefix(offset + length)[offset : offset + length]
    patch = lower_cells(cells, word)
    report = validate_matching(patch)
    if not report.ok:
        raise AssertionError(f"{kind}{level} lowering failed validation")
    tiles, _ = assemble_tiles(patch)
    return Metatile(kind, level, _children_spec(kind, level), patch, tiles, offset)


def row_orientation_word(meta: Metatile) -> str:
    """Orientation of the tile rows along +V1, bottom row first.

    Rows of a lowered metatile are orientation-uniform; flipped rows are
    the Golden Ammann Bars.  The resulting 0/1 word is the metatile's
    strip structure along that direction.
    """
    rows: dict[int, set[bool]] = {}
    for t in meta.tiles:
        rows.setdefault(-t.center.r, set()).add(t.flipped)
    out = []
    for k in sorted(rows):
        kinds = rows[k]
        if len(kinds) != 1:
            raise AssertionError(f"row {k} mixes orientations")
        out.append("1" if kinds.pop() else "0")
    return "".join(out)
