"""Continued fractions, standard sequences, and exact slope arithmetic.

Slopes of eventually periodic continued fractions are quadratic surds;
they are kept exact as p + q*sqrt(d) with rational p, q and squarefree
d, floats being derived views only.  Standard sequences follow
s_0 = "1", s_1 = "0", s_{k+1} = s_k^{d_k} s_{k-1} with d_1 = c_1 - 1 and
d_k = c_k afterwards, partial quotients cycling through the period.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, SlopeMismatchError
from . import spectre


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = f^2 * d with d squarefree; returns (f, d)."""
    if n < 0:
        raise DomainError("negative radicand")
    f, d = 1, n
    p = 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            f *= p
        p += 1
    return f, d


@dataclass(frozen=True)
class Surd:
    """Exact p + q*sqrt(d) with p, q rational and d squarefree (d=1 => rational)."""

    p: Fraction
    q: Fraction
    d: int

    @staticmethod
    def make(p, q=0, d=1) -> "Surd":
        p, q = Fraction(p), Fraction(q)
        if q == 0 or d in (0, 1):
            return Surd(p + q * (1 if d else 0), Fraction(0), 1)
        f, d0 = _squarefree_split(d)
        if d0 == 1:
            return Surd(p + q * f, Fraction(0), 1)
        return Surd(p, q * f, d0)

    def _compat(self, other: "Surd") -> int:
        if self.q and other.q and self.d != other.d:
            raise DomainError(f"incompatible radicands {self.d} and {other.d}")
        return self.d if self.q else other.d

    def __add__(self, other):
        other = _as_surd(other)
        d = self._compat(other)
        return Surd.make(self.p + other.p, self.q + other.q, d)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self.__add__(-_as_surd(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _as_surd(other)
        d = self._compat(other)
        return Surd.make(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.d)

    def inverse(self) -> "Surd":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("zero surd")
        return Surd.make(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        return self.__mul__(_as_surd(other).inverse())

    def __rtruediv__(self, other):
        return _as_surd(other).__mul__(self.inverse())

    def sign(self) -> int:
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # opposite signs: compare p^2 against q^2 d
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        big_p = lhs > rhs
        if self.p > 0:
            return 1 if big_p else (-1 if lhs != rhs else 0)
        return -1 if big_p else (1 if lhs != rhs else 0)

    def __eq__(self, other):
        try:
            other = _as_surd(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).sign() == 0

    def __lt__(self, other):
        return (self - _as_surd(other)).sign() < 0

    def __le__(self, other):
        return (self - _as_surd(other)).sign() <= 0

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def floor(self) -> int:
        m = math.floor(float(self))
        # exact verification around the float estimate
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    def __repr__(self):
        if self.q == 0:
            return f"Surd({self.p})"
        return f"Surd({self.p} + {self.q}*sqrt({self.d}))"


def _as_surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd(Fraction(x), Fraction(0), 1)
    raise TypeError(f"cannot coerce {x!r} to Surd")


@dataclass(frozen=True)
class ContinuedFraction:
    """[0; c_1, c_2, ..., (period repeating)] with all quotients >= 1."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.preperiod and not self.period:
            raise DomainError("empty continued fraction")
        if any(c < 1 for c in self.preperiod + self.period):
            raise DomainError("partial quotients must be >= 1")

    def quotient(self, j: int) -> int:
        """c_j, 1-indexed, cycling through the period."""
        if j < 1:
            raise DomainError("quotient index is 1-based")
        if j <= len(self.preperiod):
            return self.preperiod[j - 1]
        if not self.period:
            raise DomainError(f"finite expansion has no c_{j}")
        return self.period[(j - len(self.preperiod) - 1) % len(self.period)]

    def __str__(self):
        head = ",".join(str(c) for c in self.preperiod)
        if not self.period:
            return f"0;{head}"
        tail = ",".join(str(c) for c in self.period)
        return f"0;{head},({tail})" if head else f"0;({tail})"


CF_RE = re.compile(r"^0;(?P<head>(\d+,)*\d+)?(,?\((?P<tail>(\d+,)*\d+)\))?$")


def parse_cf(text: str) -> ContinuedFraction:
    m = CF_RE.match(text.replace(" ", ""))
    if not m:
        raise DomainError(f"cannot parse continued fraction {text!r}")
    head = tuple(int(x) for x in m.group("head").split(",")) if m.group("head") else ()
    tail = tuple(int(x) for x in m.group("tail").split(",")) if m.group("tail") else ()
    return ContinuedFraction(head, tail)


def slope_value(cf: ContinuedFraction) -> Surd:
    """Exact value of [0; c_1, c_2, ...] as a rational or quadratic surd."""
    if cf.period:
        # y = value of the purely periodic tail [p_1; p_2, ..., p_r, y]
        a, b, c, d = 1, 0, 0, 1  # Moebius y -> (a y + b) / (c y + d)
        for p in cf.period:
            a, b, c, d = a * p + b, a, c * p + d, c
        # y = (a y + b)/(c y + d)  =>  c y^2 + (d - a) y - b = 0
        disc = (d - a) * (d - a) + 4 * c * b
        root = Surd.make(Fraction(a - d, 2 * c), Fraction(1, 2 * c), disc)
        if root.sign() <= 0:
            root = Surd.make(Fraction(a - d, 2 * c), Fraction(-1, 2 * c), disc)
        tail: Surd = root
    else:
        tail = None
    # fold [0; c_1 ... c_m, tail] via convergents
    p0, q0, p1, q1 = 1, 0, 0, 1  # p_{-1}/q_{-1}, p_0/q_0 for value [0; ...]
    for c in cf.preperiod:
        p0, q0, p1, q1 = p1, q1, c * p1 + p0, c * q1 + q0
    if tail is None:
        value = Surd.make(Fraction(p1, q1))
    else:
        value = (tail * p1 + p0) / (tail * q1 + q0)
    if not (Surd.make(0) < value and value < Surd.make(1)):
        raise DomainError(f"continued fraction value {float(value)} outside (0,1)")
    return value


def convergents(cf: ContinuedFraction, count: int) -> list[Fraction]:
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    for j in range(1, count + 1):
        c = cf.quotient(j)
        p0, q0, p1, q1 = p1, q1, c * p1 + p0, c * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def standard_sequence(cf: ContinuedFraction, k: int) -> list[str]:
    """Words s_0 .. s_k of the standard sequence with slope cf.

    d_1 = c_1 - 1 may be zero (slopes above 1/2 start c_1 = 1), in which
    case s_2 = s_0; this matches the classical tables.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    words = ["1", "0"]
    for j in range(1, k):
        d = cf.quotient(j) - 1 if j == 1 else cf.quotient(j)
        words.append(words[j] * d + words[j - 1])
    return words[: k + 1]


def characteristic_prefix(cf: ContinuedFraction, length: int) -> str:
    """Prefix of the characteristic word for an irrational slope."""
    if not cf.period:
        raise DomainError("rational slope has no infinite characteristic word")
    j = 1
    words = ["1", "0"]
    while len(words[-1]) < length + 1:
        d = cf.quotient(j) - 1 if j == 1 else cf.quotient(j)
        words.append(words[-1] * d + words[-2])
        j += 1
    # s_k with k >= 2 are prefixes of the characteristic word
    return words[-1][:length]


def cutting_word(slope: Surd, length: int) -> str:
    """Mechanical word floor((n+1)a) - floor(na), n = 1..length.

    Exact integer floors; an irrational slope never hits a lattice tie,
    which is the cutting-sequence reading of the characteristic word.
    """
    out = []
    prev = slope.floor()
    for n in range(1, length + 1):
        cur = (slope * (n + 1)).floor()
        out.append(str(cur - prev))
        prev = cur
    return "".join(out)


def complement_cf(cf: ContinuedFraction, max_terms: int = 64) -> ContinuedFraction:
    """Continued fraction of 1 - slope(cf) (eventually periodic)."""
    return cf_of_surd(Surd.make(1) - slope_value(cf), max_terms)


def cf_of_surd(x: Surd, max_terms: int = 64) -> ContinuedFraction:
    """Expand a quadratic surd (or rational) in (0,1) as a continued fraction.

    Quadratic surds use the classical (P + sqrt(D))/Q iteration with
    exact integers, detecting the period; rationals terminate.
    """
    if not (Surd.make(0) < x and x < Surd.make(1)):
        raise DomainError("expansion requires a value in (0,1)")
    if x.q == 0:
        value = x.p
        quotients = []
        num, den = value.numerator, value.denominator
        # [0; ...] of num/den
        num, den = den, num
        while den:
            a, rem = divmod(num, den)
            quotients.append(a)
            num, den = den, rem
        return ContinuedFraction(tuple(quotients), ())
    # write x = (P + sqrt(D)) / Q with integers and Q | D - P^2
    scale = (x.p.denominator * x.q.denominator) // math.gcd(
        x.p.denominator, x.q.denominator
    )
    p_int = x.p.numerator * (scale // x.p.denominator)
    q_int = x.q.numerator * (scale // x.q.denominator)
    d = x.d
    if q_int < 0:
        # (P - sqrt(D))/Q form: multiply numerator and denominator by -1
        p_int, q_int, scale = -p_int, -q_int, -scale
    P, D, Q = p_int, q_int * q_int * d, scale
    if (D - P * P) % Q != 0:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    # first step consumes the leading zero of [0; c_1, ...]
    a0 = _floor_quadratic(P, D, Q)
    if a0 != 0:
        raise AssertionError("value in (0,1) must start with quotient 0")
    P = -P
    Q = (D - P * P) // Q
    quotients = []
    seen: dict[tuple[int, int], int] = {}
    for step in range(max_terms):
        state = (P, Q)
        if state in seen:
            start = seen[state]
            return ContinuedFraction(tuple(quotients[:start]), tuple(quotients[start:]))
        seen[state] = step
        a = _floor_quadratic(P, D, Q)
        quotients.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise DomainError(f"period not found within {max_terms} terms")


def _floor_quadratic(P: int, D: int, Q: int) -> int:
    """floor((P + sqrt(D)) / Q) with exact integers (Q may be negative)."""
    s = math.isqrt(D)
    if Q > 0:
        return (P + s) // Q
    # (P + sqrt(D))/Q with Q < 0: floor(-y) = -ceil(y)
    num = P + s  # floor of numerator; numerator irrational unless D square
    if s * s == D:
        return num // Q
    return -((num + 1 + (-Q) - 1) // (-Q))  # ceil((P + sqrt(D))/(-Q)) negated


def conjugate_complement_check(
    cf_a: ContinuedFraction, cf_b: ContinuedFraction, n_symbols: int
) -> bool:
    """True iff the two characteristic words are bitwise complements.

    Precondition slope(b) = 1 - slope(a) is checked exactly when the
    radicands match, else numerically to 1e-9.
    """
    va, vb = slope_value(cf_a), slope_value(cf_b)
    if va.d == vb.d:
        if (va + vb) != Surd.make(1):
            raise SlopeMismatchError(f"slopes sum to {float(va + vb)}, not 1")
    elif abs(float(va) + float(vb) - 1.0) > 1e-9:
        raise SlopeMismatchError(f"slopes sum to {float(va) + float(vb)}, not 1")
    wa = characteristic_prefix(cf_a, n_symbols)
    wb = characteristic_prefix(cf_b, n_symbols)
    swap = {"0": "1", "1": "0"}
    return wb == "".join(swap[ch] for ch in wa)


# --- worm alignment ---------------------------------------------------------

ARTICULATED_CF = ContinuedFraction((3,), (1, 2, 1, 1))
WRIGGLY_CF = ContinuedFraction((4,), (1, 1, 1, 2))


def _worm_alignment(system: str, index: int) -> str:
    """Expected word for s_index in the worm correspondence tables."""
    S, I = (lambda k: spectre.worm(system, "S", k)), (
        lambda k: spectre.worm(system, "I", k)
    )
    E, O = spectre.E, spectre.O
    if system == "articulated":
        if index < 3:
            raise DomainError("alignment starts at s_3")
        j, r = divmod(index - 3, 4)
        if r == 0:  # s_{4j+3} = S_j I_j S_j I_j S_j E
            s, i = S(j), I(j)
            return s + i + s + i + s + E
        if r == 1:  # s_{4j+4} = S_{j+1} O
            return S(j + 1) + O
        if r == 2:  # s_{4j+5} = S_{j+1} I_{j+1}
            return S(j + 1) + I(j + 1)
        return S(j + 1) + I(j + 1) + S(j + 1) + O
    if system == "wriggly":
        if index < 3:
            raise DomainError("alignment starts at s_3")
        j, r = divmod(index - 3, 4)
        if r == 0:  # s_{4j+3} = S_j I_j
            return S(j) + I(j)
        if r == 1:  # s_{4j+4} = S_j I_j S_j O
            return S(j) + I(j) + S(j) + O
        if r == 2:  # s_{4j+5} = S_j I_j S_j I_j S_j E
            s, i = S(j), I(j)
            return s + i + s + i + s + E
        return S(j + 1) + O  # s_{4j+6} = S_{j+1} O
    raise DomainError(f"unknown system {system!r}")


def worm_sturmian_check(system: str, index: int) -> bool:
    """Exact equality of s_index with its worm expression from the tables."""
    cf = ARTICULATED_CF if system == "articulated" else WRIGGLY_CF
    words = standard_sequence(cf, index)
    return words[index] == _worm_alignment(system, index)
