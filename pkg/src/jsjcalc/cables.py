"""Arithmetic for Legendrian surgeries on negative cables.

A Legendrian knot L with Thurston-Bennequin number t has a twice-stabilized
companion S+S-(L) with tb = t - 2.  A torus knot in the companion's standard
neighborhood with smooth cable type K_{p,q} (q > 0, gcd(p, q) = 1) is a
negative cable exactly when p < q(t - 2); surgery along it produces a
manifold whose fillings all factor through the lens space L(q^2, pq - 1).

The self-check recomputes the coordinate change that makes the companion's
boundary vertical and verifies that the surgered solid torus' meridian lands
strictly between slopes -1 and 0, which pins the gluing slope of the JSJ
splitting to m = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import DomainError, INFINITY, Rational, UnimodularMap, apply_map
from .seifert import normalize_lens
from .slopes import InternalCheckError


@dataclass(frozen=True)
class CableInput:
    """tb of L, and the smooth cable type K_{p,q} of the negative cable."""

    tb: int
    p: int
    q: int

    def __post_init__(self):
        if self.q <= 0:
            raise DomainError(f"cable parameter q must be positive, got {self.q}")
        if gcd(self.p, self.q) != 1:
            raise DomainError(f"cable type ({self.p},{self.q}) must be coprime")
        if self.p >= self.q * (self.tb - 2):
            raise DomainError(
                f"not a negative cable: need p < q(tb - 2), "
                f"got {self.p} >= {self.q * (self.tb - 2)}"
            )


@dataclass(frozen=True)
class CableReport:
    """Surgery data of the cable and the lens space its fillings reduce to."""

    tb_cable: int             # tb of the cable knot: p * q
    torus_knot_param: int     # its (., q)-cable parameter around S+S-(L)
    lens: tuple[int, int]     # normalize_lens(q^2, pq - 1)
    surgery_coeff: Rational   # (pq - 1) / q^2 along the original knot type


def cable_knot_type(torus_p: int, q: int, tb: int) -> int:
    """Smooth cable parameter of a (torus_p, q)-torus knot around a tb-framed
    Legendrian: the product framing of the neighborhood is the contact one."""
    return torus_p + q * tb


def cable_report(c: CableInput) -> CableReport:
    """The cable's tb, cable parameter, target lens space and surgery slope."""
    return CableReport(
        tb_cable=c.p * c.q,
        torus_knot_param=c.p + c.q * (2 - c.tb),
        lens=normalize_lens(c.q * c.q, c.p * c.q - 1),
        surgery_coeff=Fraction(c.p * c.q - 1, c.q * c.q),
    )


@dataclass(frozen=True)
class CableSlopeEvidence:
    """Transformed slopes witnessing that the splitting slope must be 0."""

    gamma_l: Rational          # image of the contact-framing slope 1/tb
    gamma_sl: object           # image of 1/(tb - 1): the vertical slope
    meridian_vector: tuple[int, int]
    meridian_slope: Rational
    window_slope: Rational     # strictly between -1 and 0
    m: int                     # the only admissible gluing slope


def cable_slope_check(c: CableInput) -> CableSlopeEvidence:
    """Recompute the slope picture that forces the gluing slope m = 0.

    After the shear (1 0; 1-tb 1), the boundary of the companion's
    neighborhood is vertical, the original boundary has slope 1, and the
    meridian of the surgered torus is (pq-1+q^2(1-tb), q^2), whose slope in
    the vertical-boundary coordinates lies strictly between -1 and 0.
    """
    t = c.tb
    shear = UnimodularMap(1, 0, 1 - t, 1)
    gamma_l = apply_map(shear, Fraction(1, t) if t != 0 else INFINITY)
    gamma_sl = apply_map(shear, Fraction(1, t - 1) if t != 1 else INFINITY)
    if gamma_l != Fraction(1):
        raise InternalCheckError(f"contact-framing slope mapped to {gamma_l}, not 1")
    if gamma_sl is not INFINITY:
        raise InternalCheckError(f"stabilized boundary mapped to {gamma_sl}, not Infinity")

    top = c.p * c.q - 1 + c.q * c.q * (1 - t)
    vector = (top, c.q * c.q)
    window = Fraction(c.q * c.q, top)
    if not Fraction(-1) < window < Fraction(0):
        raise InternalCheckError(
            f"meridian window violated: {window} not in (-1, 0) for {c}"
        )
    return CableSlopeEvidence(
        gamma_l=gamma_l,
        gamma_sl=gamma_sl,
        meridian_vector=vector,
        meridian_slope=Fraction(top, c.q * c.q),
        window_slope=window,
        m=0,
    )
