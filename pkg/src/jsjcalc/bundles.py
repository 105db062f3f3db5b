"""Tight contact structures on circle bundles over closed surfaces.

For genus g > 1 and Euler number e < 2g - 2 the twisting-number -1
structures come from a single knot over 2g 1-handles stabilized
(2g - 2) - e times, so there are (2g - 1) - e of them: two universally
tight (the single-signed patterns) and the rest virtually overtwisted,
each of the latter with a unique exact filling.  Virtually overtwisted
structures with zero twisting are not strongly fillable at all.

Genus 0 bundles route to the lens-space rules (the bundle is L(|e|, 1));
genus 1 is deferred to the torus-bundle literature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import DomainError
from .chains import count_tight


@dataclass(frozen=True)
class BundleInput:
    genus: int
    euler: int

    def __post_init__(self):
        if self.genus < 0:
            raise DomainError(f"genus must be nonnegative, got {self.genus}")


@dataclass(frozen=True)
class BundleReport:
    genus: int
    euler: int
    budget: Optional[int]       # stabilizations of the surgery knot, if applicable
    total: Optional[int]        # tight structures with twisting -1
    ut: Optional[int]
    vot: Optional[int]
    vot_verdict: str
    zero_twisting_verdict: str
    lens: Optional[tuple[int, int]] = None
    note: Optional[str] = None


ZERO_TWISTING = (
    "virtually overtwisted with zero twisting: admits no strong symplectic filling"
)


def bundle_classify(b: BundleInput) -> BundleReport:
    """Counts and filling verdicts for the circle bundle of genus g, Euler e."""
    g, e = b.genus, b.euler
    if g == 0:
        if e <= -2:
            lens = (-e, 1)
            total = count_tight(-e, 1)
            ut = 2 if -e >= 3 else 1
            return BundleReport(
                genus=g,
                euler=e,
                budget=None,
                total=total,
                ut=ut,
                vot=total - ut,
                vot_verdict="unique exact filling (lens-space rules)",
                zero_twisting_verdict=ZERO_TWISTING,
                lens=lens,
                note=f"genus 0: the bundle is the lens space L({-e},1)",
            )
        return BundleReport(
            genus=g,
            euler=e,
            budget=None,
            total=None,
            ut=None,
            vot=0,
            vot_verdict="no virtually overtwisted structures",
            zero_twisting_verdict=ZERO_TWISTING,
            note="genus 0 with e >= -1: S^3 or S^1 x S^2; unique tight structure",
        )
    if g == 1:
        if e <= -2:
            note = "genus 1: torus bundle; unique exact filling still holds"
        elif e >= 2:
            note = (
                "genus 1: torus bundle; some virtually overtwisted structures "
                "admit no strong filling"
            )
        else:
            note = "genus 1: deferred to the torus-bundle literature"
        return BundleReport(
            genus=g,
            euler=e,
            budget=None,
            total=None,
            ut=None,
            vot=None,
            vot_verdict="out of scope: see the torus-bundle literature",
            zero_twisting_verdict=ZERO_TWISTING,
            note=note,
        )
    budget = (2 * g - 2) - e
    if budget < 0:
        return BundleReport(
            genus=g,
            euler=e,
            budget=budget,
            total=0,
            ut=0,
            vot=0,
            vot_verdict="no twisting -1 structures of this form",
            zero_twisting_verdict=ZERO_TWISTING,
        )
    total = budget + 1  # = (2g - 1) - e
    ut = 2 if budget >= 1 else 1
    return BundleReport(
        genus=g,
        euler=e,
        budget=budget,
        total=total,
        ut=ut,
        vot=total - ut,
        vot_verdict="unique exact filling, up to symplectomorphism",
        zero_twisting_verdict=ZERO_TWISTING,
    )
