"""Spectre (Hats-in-Turtles) combinatorics: Conway worm words, shape-count
recursions, and the substitution matrix with its exact spectrum.

Worms are binary words over {0 = even tile, 1 = odd tile}.  The two
joint elements are fixed two-tile Mystics, E = "10" and O = "01".  The
"articulated" and "wriggly" systems share the same recursions

    S' = (S I S I S) E (S I S) O (S I S I S)
    I' = O (S I S I S) E
    N' = S I S
    M' = S I S I M

and differ only in their seeds.  M has no seed in closed form; M_1 is
fixed by extending the M recursion one step down with M_0 empty, giving
M_1 = S_0 I_0 S_0 I_0.

Shape counts follow the six tile-count recursions of the three-step
substitution; level-0 two-dimensional shapes are empty, so the level-1
base values are derived rather than transcribed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DepthError, DomainError

E = "10"
O = "01"

SYSTEMS = {
    "articulated": {"S0": "", "I0": "0"},
    "wriggly": {"S0": "00", "I0": "010"},
}

MAX_WORD_LENGTH = 50_000_000


def _seeds(system: str) -> tuple[str, str]:
    try:
        spec = SYSTEMS[system]
    except KeyError:
        raise DomainError(f"unknown worm system {system!r}") from None
    return spec["S0"], spec["I0"]


@lru_cache(maxsize=256)
def _si(system: str, k: int) -> tuple[str, str]:
    if k == 0:
        return _seeds(system)
    s, i = _si(system, k - 1)
    if (8 * len(s) + 5 * len(i) + 4) > MAX_WORD_LENGTH:
        raise DepthError(f"worm words at level {k} exceed the length limit")
    sis = s + i + s
    sisis = sis + i + s
    s_next = sisis + E + sis + O + sisis
    i_next = O + sisis + E
    return s_next, i_next


@lru_cache(maxsize=256)
def _m(system: str, k: int) -> str:
    s0, i0 = _seeds(system)
    if k == 1:
        return s0 + i0 + s0 + i0  # M_0 = empty
    s, i = _si(system, k - 1)
    prev = _m(system, k - 1)
    if (2 * len(s) + 2 * len(i) + len(prev)) > MAX_WORD_LENGTH:
        raise DepthError(f"worm words at level {k} exceed the length limit")
    return s + i + s + i + prev


def worm(system: str, kind: str, k: int) -> str:
    """Worm word of the given kind and level, as a binary string."""
    if kind in ("S", "I"):
        if k < 0:
            raise DomainError("worm level must be >= 0")
        s, i = _si(system, k)
        return s if kind == "S" else i
    if k < 1:
        raise DomainError(f"worm kind {kind} needs level >= 1")
    if kind == "N":
        s, i = _si(system, k - 1)
        return s + i + s
    if kind == "M":
        return _m(system, k)
    raise DomainError(f"unknown worm kind {kind!r}")


def worm_identity(system: str, k: int) -> bool:
    """Exact check of the string equality O S_k I_k == I_k S_k E."""
    s, i = _si(system, k)
    return O + s + i == i + s + E


def worm_palindrome(system: str, kind: str, k: int) -> bool:
    """S_k and I_k read the same backwards (E and O swap under reversal)."""
    return worm(system, kind, k)[::-1] == worm(system, kind, k)


def odd_frequency(system: str, kind: str, k: int) -> Fraction:
    w = worm(system, kind, k)
    if not w:
        raise DomainError("empty worm word has no frequency")
    return Fraction(w.count("1"), len(w))


# --- shape counts -----------------------------------------------------------


@dataclass(frozen=True)
class ShapeCounts:
    level: int
    td: int
    pa: int
    tb: int
    tc: int
    pb: int
    ta: int
    s: int  # |S_k|
    n: int  # |N_k|
    m: int  # |M_k|


def worm_lengths(system: str, k: int) -> tuple[int, int, int, int]:
    """(|S_k|, |I_k|, |N_k|, |M_k|) by the linear length recursions."""
    s0, i0 = _seeds(system)
    s, i = len(s0), len(i0)
    n = m = 0
    for level in range(1, k + 1):
        n = 2 * s + i
        m = 2 * s + 2 * i + (m if level > 1 else 0)
        if level == 1:
            m = 2 * s + 2 * i  # M_1 = S0 I0 S0 I0
        s, i = 8 * s + 5 * i + 4, 3 * s + 2 * i + 4
    if k == 0:
        return s, i, 0, 0
    return s, i, n, m


def shape_counts(system: str, k: int, include_worms: bool = True) -> list[ShapeCounts]:
    """Tile counts of the six 2D shapes for levels 1..k.

    Level-0 shapes are empty.  With ``include_worms=False`` the worm
    terms are dropped, which is the count system the block-cyclic
    substitution matrix reproduces exactly.
    """
    if k < 1:
        raise DomainError("shape level must be >= 1")
    out = []
    pb_prev = tc_prev = ta_prev = 0
    s0, i0 = _seeds(system)
    s_len, i_len = len(s0), len(i0)
    m_len = 0
    for level in range(1, k + 1):
        n_len = 2 * s_len + i_len
        m_len = 2 * s_len + 2 * i_len + (m_len if level > 1 else 0)
        s_next, i_next = 8 * s_len + 5 * i_len + 4, 3 * s_len + 2 * i_len + 4
        s_cur = s_next  # |S_level|
        if not include_worms:
            n_eff = m_eff = s_eff = 0
        else:
            n_eff, m_eff, s_eff = n_len, m_len, s_cur
        td = 3 * pb_prev + tc_prev + 3 * n_eff
        pa = pb_prev + 2 * ta_prev + 2 * n_eff
        tb = 3 * td + 3 * pa + ta_prev + 6 * m_eff
        tc = td + 3 * pa + 3 * m_eff
        pb = 2 * tb + 2 * tc + pa + 4 * s_eff
        ta = tb + 3 * tc + 3 * s_eff
        out.append(ShapeCounts(level, td, pa, tb, tc, pb, ta, s_cur, n_len, m_len))
        pb_prev, tc_prev, ta_prev = pb, tc, ta
        s_len, i_len = s_next, i_next
    return out


# --- substitution matrix ----------------------------------------------------

A_BLOCK = ((3, 0, 1), (1, 2, 0), (0, 1, 0))
B_BLOCK = ((3, 3, 1), (1, 3, 0), (0, 1, 0))
C_BLOCK = ((2, 2, 1), (1, 3, 0), (0, 1, 0))


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def mat_pow(a, e):
    n = len(a)
    out = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    base = a
    while e:
        if e & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        e >>= 1
    return out


def substitution_matrix() -> tuple[tuple[int, ...], ...]:
    """The 9x9 block-cyclic matrix [[0,0,A],[B,0,0],[0,C,0]]."""
    Z = ((0, 0, 0),) * 3
    rows = []
    for blocks in ((Z, Z, A_BLOCK), (B_BLOCK, Z, Z), (Z, C_BLOCK, Z)):
        for i in range(3):
            rows.append(blocks[0][i] + blocks[1][i] + blocks[2][i])
    return tuple(rows)


def charpoly(matrix) -> list[int]:
    """Characteristic polynomial det(xI - M), descending coefficients.

    Faddeev-LeVerrier over exact rationals; integer matrices give
    integer coefficients.
    """
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk = M (mk + c_{k-1} I)
        shifted = [row[:] for row in mk]
        for i in range(n):
            shifted[i][i] += coeffs[-1]
        mk = [
            [sum(m[i][t] * shifted[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("non-integer characteristic coefficient")
        out.append(int(c))
    return out


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


# (x^3 - 1)(x^6 - 62 x^3 + 1) and (x - 1)(x^2 - 62 x + 1), descending
CHARPOLY_M = poly_mul([1, 0, 0, -1], [1, 0, 0, -62, 0, 0, 1])
CHARPOLY_BLOCK = poly_mul([1, -1], [1, -62, 1])

# dominant eigenvalues: (4 + sqrt(15))^2 = 31 + 8 sqrt(15) for each cubed
# block, and its cube root for M itself.
DOMINANT_BLOCK = 31 + 8 * math.sqrt(15.0)
DOMINANT_M = DOMINANT_BLOCK ** (1.0 / 3.0)


def matrix_cubed_blocks():
    """Diagonal blocks (ACB, BAC, CAB) of M^3; off-diagonal blocks are zero."""
    m3 = mat_pow(substitution_matrix(), 3)
    for bi in range(3):
        for bj in range(3):
            if bi == bj:
                continue
            for i in range(3):
                for j in range(3):
                    if m3[3 * bi + i][3 * bj + j] != 0:
                        raise AssertionError("M^3 is not block diagonal")
    return tuple(
        tuple(tuple(m3[3 * b + i][3 * b + j] for j in range(3)) for i in range(3))
        for b in range(3)
    )


def dominant_eigenvalue(matrix, iterations: int = 200) -> float:
    """Power iteration with exact integer vectors; float at the end."""
    n = len(matrix)
    v = [1] * n
    prev = 0.0
    for _ in range(iterations):
        w = [sum(matrix[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = max(abs(x) for x in w)
        if norm == 0:
            return 0.0
        est = Fraction(sum(w)) / Fraction(sum(v))
        v = w
        if max(abs(x) for x in v) > 10**40:
            g = math.gcd(*[abs(x) for x in v if x]) or 1
            v = [x // g for x in v]
        cur = float(est)
        if abs(cur - prev) < 1e-14 * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev
