"""Exact arithmetic kernel: rationals, negative continued fractions, and
unimodular integer transformations of slopes.

Every surgery coefficient in this package is a reduced integer fraction, and
every boundary slope is either such a fraction or the distinguished vertical
slope ``INFINITY``.  A rational -p/q with p > q > 0 coprime has a unique
expansion

    -p/q = a0 - 1/(a1 - 1/(... - 1/an)),    all ai <= -2,

computed by the ceiling-division (Hirzebruch-Jung) recurrence.  The empty
coefficient list is reserved for S^3, the chain with no unknots; we evaluate
it to ``INFINITY`` because the meridian of the glued-in solid torus is the
vertical slope.

All arithmetic is arbitrary-precision integer; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

Rational = Fraction


class DomainError(ValueError):
    """Input outside an operation's domain (bad fraction, bad coefficients)."""


class _Infinity:
    """The vertical slope.  A single shared instance, equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Slope = Union[Rational, _Infinity]


def rational(num: int, den: int = 1) -> Rational:
    """Reduced fraction with the sign carried by the numerator."""
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def format_slope(s: Slope) -> str:
    if s is INFINITY:
        return "inf"
    return str(s)


# ---------------------------------------------------------------------------
# Negative continued fractions
# ---------------------------------------------------------------------------

NegContFrac = tuple  # tuple[int, ...]; canonical form has every entry <= -2


def neg_cont_frac(p: int, q: int) -> tuple[int, ...]:
    """Expansion of -p/q for p > q > 0 coprime, all entries <= -2.

    Uses the recurrence a0 = -ceil(p/q), continuing on the reciprocal
    remainder; the result is the unique all-(<= -2) expansion.
    """
    if not (isinstance(p, int) and isinstance(q, int)):
        raise DomainError("p and q must be integers")
    if q <= 0 or q >= p:
        raise DomainError(f"need p > q > 0, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise DomainError(f"p={p} and q={q} are not coprime")
    coeffs = []
    while True:
        a = -((p + q - 1) // q)
        coeffs.append(a)
        r = (-a) * q - p
        if r == 0:
            break
        p, q = q, r
    return tuple(coeffs)


def neg_cont_frac_of(x: Rational) -> tuple[int, ...]:
    """Expansion of any negative rational; the head may be -1.

    For x <= -1 this is the usual all-(<= -2) expansion (with an integer x
    giving the singleton [x]).  For -1 < x < 0 the head is floor(x) = -1 and
    the remaining entries are <= -2.  Used by the Seifert module, where the
    distinguished leg may carry a -1-framed head.
    """
    if x >= 0:
        raise DomainError(f"need a negative rational, got {x}")
    coeffs = []
    num, den = x.numerator, x.denominator
    while True:
        a = -((-num + den - 1) // den)  # floor(num/den)
        coeffs.append(a)
        r = (-a) * den + num  # 0 <= r < den
        if r == 0:
            break
        num, den = -den, r
    return tuple(coeffs)


def _eval_pair(coeffs: Sequence[int]) -> tuple[int, int]:
    """Right-to-left fold of the expansion as a reduced (num, den) pair.

    The fold x <- a - 1/x never divides, so the only failure mode is a
    genuine 1/0 arising from a non-canonical list; that is reported as a
    DomainError.  The returned pair is automatically reduced because each
    step sends (n, d) to (a*n - d, n), which preserves gcd(n, d) = 1.
    """
    num, den = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        if num == 0:
            raise DomainError(f"zero denominator while evaluating {list(coeffs)}")
        num, den = a * num - den, num
    if den < 0:
        num, den = -num, -den
    return num, den


def eval_cont_frac(coeffs: Sequence[int]) -> Slope:
    """Value of [a0, ..., an]; the empty list is the S^3 convention, Infinity."""
    if len(coeffs) == 0:
        return INFINITY
    num, den = _eval_pair(coeffs)
    return Fraction(num, den)


def is_canonical(coeffs: Sequence[int]) -> bool:
    return all(a <= -2 for a in coeffs)


def increment_last(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Add 1 to the final entry, collapsing trailing -2s.

    [..., b, -2] + 1 is identified with [..., b+1]; the collapse repeats
    until the list is canonical again (possibly empty).
    """
    if len(coeffs) == 0:
        raise DomainError("cannot increment the empty expansion")
    if not is_canonical(coeffs):
        raise DomainError(f"not in canonical form: {list(coeffs)}")
    out = list(coeffs)
    out[-1] += 1
    while out and out[-1] == -1:
        out.pop()
        if out:
            out[-1] += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Unimodular maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnimodularMap:
    """Integer 2x2 matrix (a b; c d) with determinant +-1.

    Acts on slopes written as columns (numerator over denominator):
    s = n/d maps to (a*n + b*d)/(c*n + d*d), and Infinity maps to a/c
    (Infinity again when c = 0).
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise DomainError(
                f"determinant of ({self.a},{self.b};{self.c},{self.d}) is not +-1"
            )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """Matrix product self * other (other acts first)."""
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return self.compose(other)

    def __call__(self, s: Slope) -> Slope:
        if s is INFINITY:
            num, den = 1, 0
        else:
            num, den = s.numerator, s.denominator
        top = self.a * num + self.b * den
        bot = self.c * num + self.d * den
        if bot == 0:
            return INFINITY
        return Fraction(top, bot)


IDENTITY = UnimodularMap(1, 0, 0, 1)


def apply_map(m: UnimodularMap, s: Slope) -> Slope:
    """Fractional-linear action of m on the slope s."""
    return m(s)
