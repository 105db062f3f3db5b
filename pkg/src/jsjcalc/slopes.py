"""Basic-slice slope sequences and the splitting-slope calculus.

When two adjacent blocks of basic slices carry opposite signs, the convex
torus between them is mixed, and a filling of the ambient manifold splits
along it.  The three relevant boundary slopes are read off continued
fraction expansions sharing a common prefix:

    -p2'/q2' = [a0, ..., an, -2, ..., -2]      (m+1 trailing -2s, an <= -3)
    -p1'/q1' = [a0, ..., an + 1]
    -p0'/q0' = [a0, ..., an + 2]               if an <= -4
    -p0'/q0' = [a0, ..., a(n-1) + 1]           if an == -3

These satisfy q1'p2' - p1'q2' = 1 and q0'p1' - p0'q1' = 1, and the key count
p2'q0' - q2'p0' = m + 3, where m is the number of unstabilized knots sitting
between the two stabilized ones.  Normalizing so the mixed torus is vertical
turns the triple into (-1, Infinity, m + 2), and the admissible splitting
slopes are the integers 0..m+1, i.e. m + 2 branches.

``splitting_data`` recomputes every one of these identities on each call and
raises ``InternalCheckError`` if any fails; they are theorems, so a failure
means a bug, not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    DomainError,
    INFINITY,
    Rational,
    Slope,
    UnimodularMap,
    apply_map,
    eval_cont_frac,
    increment_last,
    is_canonical,
)


class InternalCheckError(AssertionError):
    """A self-check that should be a theorem failed; indicates a bug."""


def basic_slice_slopes(coeffs) -> tuple[Rational, ...]:
    """Boundary slopes of the basic-slice decomposition, from eval(coeffs) to -1.

    Produced by repeatedly incrementing the last entry of the expansion;
    consecutive slopes are Farey neighbors.  The final increment collapses
    the list entirely and contributes the slope -1.
    """
    coeffs = tuple(coeffs)
    if not coeffs:
        raise DomainError("basic_slice_slopes needs a nonempty expansion")
    if not is_canonical(coeffs):
        raise DomainError(f"not in canonical form: {list(coeffs)}")
    slopes = [eval_cont_frac(coeffs)]
    while coeffs:
        coeffs = increment_last(coeffs)
        slopes.append(eval_cont_frac(coeffs) if coeffs else Fraction(-1))
    return tuple(slopes)


@dataclass(frozen=True)
class SlopeTriple:
    """Boundary slopes around a mixed torus, normalized to (-1, Infinity, s2)."""

    s0: Slope
    s1: Slope
    s2: Slope


@dataclass(frozen=True)
class MixedTorusData:
    """Shared prefix, pivot coefficient and trailing -2 count at a mixed torus.

    ``m`` counts the unstabilized knots between the two stabilized ones, so
    the -p2'/q2' expansion ends in m+1 copies of -2.
    """

    prefix: tuple[int, ...]
    pivot: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if not all(a <= -2 for a in self.prefix):
            raise DomainError(f"prefix entries must be <= -2: {list(self.prefix)}")
        if self.pivot > -3:
            raise DomainError(f"pivot must be <= -3, got {self.pivot}")
        if self.pivot == -3 and not self.prefix:
            raise DomainError("pivot -3 requires a nonempty prefix")
        if self.m < 0:
            raise DomainError(f"m must be nonnegative, got {self.m}")


@dataclass(frozen=True)
class SplittingData:
    """The three slopes, their normalization, and the branch count."""

    p2q2: Rational
    p1q1: Rational
    p0q0: Rational
    triple: SlopeTriple
    branch_count: int
    normalizing_map: UnimodularMap


def _positive_pair(value: Fraction) -> tuple[int, int]:
    """(p', q') with value = -p'/q'; q' > 0 and p' may be any sign."""
    return -value.numerator, value.denominator


def splitting_data(data: MixedTorusData) -> SplittingData:
    """Slopes, normalization and branch count for a mixed torus.

    Verifies the two unit determinants, the p2'q0' - q2'p0' = m + 3 count
    (re-checked after prepending each prefix entry, mirroring the inductive
    argument), and that the normalizing map really sends the slopes to
    (-1, Infinity, m+2).
    """
    prefix, pivot, m = data.prefix, data.pivot, data.m

    tail2 = (pivot,) + (-2,) * (m + 1)
    tail1 = (pivot + 1,)
    if pivot <= -4:
        tail0 = (pivot + 2,)
        shared = prefix
    else:  # pivot == -3: the increment propagates into the prefix
        tail0 = (prefix[-1] + 1,)
        shared = prefix[:-1]

    def staged(tail):
        """Values of [shared[k:], tail] for k = len(shared) down to 0."""
        out = [eval_cont_frac(tail)]
        for a in reversed(shared):
            tail = (a,) + tail
            out.append(eval_cont_frac(tail))
        return out

    # In the pivot == -3 branch the -p2'/q2' expansion still contains the
    # full prefix, so its staged evaluation starts one entry deeper.
    vals2 = staged((prefix[-1],) + tail2) if pivot == -3 else staged(tail2)
    vals0 = staged(tail0)

    dets = []
    for v2, v0 in zip(vals2, vals0):
        p2, q2 = _positive_pair(v2)
        p0, q0 = _positive_pair(v0)
        dets.append(p2 * q0 - q2 * p0)
    if any(d != m + 3 for d in dets):
        raise InternalCheckError(
            f"splitting count broke during prefix extension: {dets} != {m + 3}"
        )

    p2q2 = vals2[-1]
    p0q0 = vals0[-1]
    p1q1 = eval_cont_frac(prefix + tail1)

    p2, q2 = _positive_pair(p2q2)
    p1, q1 = _positive_pair(p1q1)
    p0, q0 = _positive_pair(p0q0)
    if q1 * p2 - p1 * q2 != 1:
        raise InternalCheckError(f"q1'p2' - p1'q2' = {q1 * p2 - p1 * q2} != 1")
    if q0 * p1 - p0 * q1 != 1:
        raise InternalCheckError(f"q0'p1' - p0'q1' = {q0 * p1 - p0 * q1} != 1")

    s2 = p2 * q0 - q2 * p0 - 1  # = m + 2
    # Normalization sending (-p0'/q0', -p1'/q1', -p2'/q2') to (-1, inf, s2):
    # the shear (1 0; s2 1) composed with (-p1' -q1'; p2' q2') in the basis
    # where slopes are columns (denominator, numerator); rewritten for our
    # numerator-over-denominator convention by conjugating with the swap.
    shear = UnimodularMap(1, s2, 0, 1)
    base = UnimodularMap(q2, p2, -q1, -p1)
    normalizer = shear.compose(base)

    triple = SlopeTriple(
        apply_map(normalizer, p0q0),
        apply_map(normalizer, p1q1),
        apply_map(normalizer, p2q2),
    )
    if triple.s0 != Fraction(-1) or triple.s1 is not INFINITY or triple.s2 != Fraction(s2):
        raise InternalCheckError(f"normalization produced {triple}")
    if s2 != m + 2:
        raise InternalCheckError(f"s2 = {s2} but m + 2 = {m + 2}")

    return SplittingData(
        p2q2=p2q2,
        p1q1=p1q1,
        p0q0=p0q0,
        triple=triple,
        branch_count=s2,
        normalizing_map=normalizer,
    )
