"""Star-shaped surgery diagrams for Seifert fibered spaces over S^2.

Two regimes, two diagram shapes:

* ``SeifertPosE0`` (Euler number e0 >= 0): n >= 3 legs hang off a single
  1-handle.  Leg i expands -p_i/q_i = [a0^i, a1^i, ...]; the head knot runs
  over the 1-handle, so it reaches contact framing after -1 - a0 extra
  stabilizations, while the hanging tail knots carry the usual -2 - a
  budget.  The last leg may have q_n > p_n, in which case its head is
  -1-framed and unstabilized, followed by e0 - 1 unstabilized -2s before
  the first stabilizable knot.

* ``SeifertNegE0`` (e0 <= -3): a central knot of framing e0 with n >= 3
  plain chains attached; every knot here has the chain budget -2 - a.

Sign patterns sort the structures into mixedness classes that decide which
decomposition applies: thoroughly mixed diagrams shatter into one lens
space per leg, lightly mixed ones leave a pair of legs merged into a single
chain, a both-signs central knot splits the star into its legs, and leg
mismatches are resolved one deletion at a time exactly like lens chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence, Union

from .arith import DomainError, Rational, eval_cont_frac, neg_cont_frac_of
from .chains import (
    Deletion,
    KnotNode,
    StabilizedChain,
    deletions_for_locus,
    mixed_locus_of_nodes,
    tridiagonal_det,
)
from .trees import ContactAssembly, DecompositionTree, S1xS2, build_assembly_tree

Leg = tuple  # tuple[KnotNode, ...]


class Mixedness(Enum):
    THOROUGHLY_MIXED = "thoroughly mixed"
    LIGHTLY_MIXED = "lightly mixed"
    NEITHER_POS = "neither thoroughly nor lightly mixed"
    CENTRALLY_MIXED = "centrally mixed"
    CANONICAL = "canonical"
    OTHER_NEG = "mixed legs, single-signed central knot"


def _head_budget(framing: int) -> int:
    """Stabilizations of a knot running over the 1-handle."""
    return -1 - framing


def _leg_signs(nodes: Sequence[KnotNode]) -> str:
    return "/".join(_node_field(n) for n in nodes)


def _node_field(node: KnotNode) -> str:
    if node.budget == 0:
        return "0"
    field = ""
    if node.plus:
        field += f"{node.plus}+"
    if node.minus:
        field += f"{node.minus}-"
    return field


@dataclass(frozen=True)
class SeifertPosE0:
    """Star-shaped diagram with nonnegative Euler number, one 1-handle."""

    legs: tuple[Leg, ...]

    def __post_init__(self):
        legs = tuple(tuple(leg) for leg in self.legs)
        object.__setattr__(self, "legs", legs)
        if len(legs) < 3:
            raise DomainError(f"need at least 3 legs, got {len(legs)}")
        for i, leg in enumerate(legs):
            if not leg:
                raise DomainError(f"leg {i} is empty")
            head = leg[0]
            head_floor = -1 if i == len(legs) - 1 else -2
            if head.framing > head_floor:
                raise DomainError(
                    f"leg {i} head framing {head.framing} must be <= {head_floor}"
                )
            if head.budget != _head_budget(head.framing):
                raise DomainError(
                    f"leg {i} head: {head.plus}+{head.minus} stabilizations, "
                    f"budget over the 1-handle is {_head_budget(head.framing)}"
                )
            for k, node in enumerate(leg[1:], start=1):
                if node.framing > -2:
                    raise DomainError(
                        f"leg {i} knot {k}: framing {node.framing} must be <= -2"
                    )
                if node.budget != -2 - node.framing:
                    raise DomainError(
                        f"leg {i} knot {k}: {node.plus}+{node.minus} stabilizations, "
                        f"budget of framing {node.framing} is {-2 - node.framing}"
                    )

    @property
    def n(self) -> int:
        return len(self.legs)

    def leg_framings(self, i: int) -> tuple[int, ...]:
        return tuple(node.framing for node in self.legs[i])

    def fractions(self) -> tuple[Fraction, ...]:
        """The Seifert invariants q_i/p_i, recovered from the expansions."""
        out = []
        for i in range(self.n):
            value = eval_cont_frac(self.leg_framings(i))
            out.append(Fraction(value.denominator, -value.numerator))
        return tuple(out)

    @property
    def e0(self) -> int:
        fracs = self.fractions()
        return sum(f.numerator // f.denominator for f in fracs)

    def tail_chain(self, i: int) -> StabilizedChain:
        return StabilizedChain(self.legs[i][1:])

    def kind(self) -> str:
        return "seifert-pos"

    def sort_key(self) -> tuple:
        key = [3, self.n]
        for leg in self.legs:
            key.append(len(leg))
            for node in leg:
                key.extend((node.framing, node.plus, node.minus))
        return tuple(key)

    def h1_order(self) -> int:
        return abs(star_det(0, [self.leg_framings(i) for i in range(self.n)]))

    def describe(self) -> str:
        fracs = ",".join(str(f) for f in self.fractions())
        signs = ";".join(_leg_signs(leg) for leg in self.legs)
        return f"M({fracs})[{signs}]"

    def flipped(self) -> "SeifertPosE0":
        return SeifertPosE0(
            tuple(tuple(node.flipped() for node in leg) for leg in self.legs)
        )

    def is_terminal(self) -> bool:
        if classify_mixedness(self) is not Mixedness.NEITHER_POS:
            return False
        return self.n == 3 and all(_single_signed(leg) for leg in self.legs)

    def decomposition_kind(self) -> str:
        mixedness = classify_mixedness(self)
        if mixedness is Mixedness.THOROUGHLY_MIXED:
            return "thorough"
        if mixedness is Mixedness.LIGHTLY_MIXED:
            return "light"
        return "simultaneous"

    def decomposition_children(self):
        mixedness = classify_mixedness(self)
        if mixedness is Mixedness.THOROUGHLY_MIXED:
            parts = tuple(self.tail_chain(i) for i in range(self.n))
            deletions = tuple(
                Deletion(knot=0, slope=None, leg=i) for i in range(self.n)
            )
            return [(parts, deletions)]
        if mixedness is Mixedness.LIGHTLY_MIXED:
            i, j = lightly_mixed_pairs(self)[0]
            return [_lightly_parts(self, i, j)]
        if self.n != 3:
            raise DomainError(
                "no decomposition rule for a neither-mixed diagram with more "
                "than three legs"
            )
        if self.is_terminal():
            raise DomainError("universally tight small Seifert structures are leaves")
        return _simultaneous_children(self)


@dataclass(frozen=True)
class SeifertNegE0:
    """Central knot of framing e0 <= -3 with plain chains attached."""

    central: KnotNode
    legs: tuple[StabilizedChain, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        if self.central.framing > -3:
            raise DomainError(
                f"central framing must be <= -3, got {self.central.framing}"
            )
        if self.central.budget != -2 - self.central.framing:
            raise DomainError(
                f"central knot: {self.central.plus}+{self.central.minus} "
                f"stabilizations, budget is {-2 - self.central.framing}"
            )
        if len(self.legs) < 3:
            raise DomainError(f"need at least 3 legs, got {len(self.legs)}")

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def e0(self) -> int:
        return self.central.framing

    def kind(self) -> str:
        return "seifert-neg"

    def sort_key(self) -> tuple:
        key = [4, self.central.framing, self.central.plus, self.central.minus, self.n]
        for leg in self.legs:
            key.append(len(leg))
            for node in leg.nodes:
                key.extend((node.framing, node.plus, node.minus))
        return tuple(key)

    def h1_order(self) -> int:
        return abs(star_det(self.e0, [leg.framings for leg in self.legs]))

    def describe(self) -> str:
        signs = ";".join(
            _leg_signs(leg.nodes) if leg.nodes else "()" for leg in self.legs
        )
        return f"SFS(e0={self.e0})[{_node_field(self.central)}][{signs}]"

    def flipped(self) -> "SeifertNegE0":
        return SeifertNegE0(
            self.central.flipped(), tuple(leg.flipped() for leg in self.legs)
        )

    def is_terminal(self) -> bool:
        return classify_mixedness(self) is Mixedness.CANONICAL

    def decomposition_kind(self) -> str:
        mixedness = classify_mixedness(self)
        if mixedness is Mixedness.CENTRALLY_MIXED:
            return "central"
        leg = _first_mixed_leg(self)
        return "leg-split" if leg is not None else "leg-clean"

    def decomposition_children(self):
        mixedness = classify_mixedness(self)
        if mixedness is Mixedness.CANONICAL:
            raise DomainError("canonical structures are leaves")
        if mixedness is Mixedness.CENTRALLY_MIXED:
            deletion = Deletion(knot=0, slope=None, leg=None)
            return [(tuple(self.legs), (deletion,))]
        leg = _first_mixed_leg(self)
        if leg is not None:
            locus = mixed_locus_of_nodes(self.legs[leg].nodes)
            out = []
            for d in deletions_for_locus(self.legs[leg].nodes, locus):
                deletion = Deletion(knot=d.knot, slope=d.slope, leg=leg)
                out.append((_amputation_parts(self, leg, d.knot), (deletion,)))
            return out
        leg = _first_opposed_leg(self)
        return _cleaning_children(self, leg)


def _single_signed(nodes: Sequence[KnotNode]) -> bool:
    plus = sum(node.plus for node in nodes)
    minus = sum(node.minus for node in nodes)
    return plus == 0 or minus == 0


def _first_stabilized(nodes: Sequence[KnotNode]) -> Optional[int]:
    for i, node in enumerate(nodes):
        if node.stabilized:
            return i
    return None


# ---------------------------------------------------------------------------
# Invariants and coefficient bookkeeping
# ---------------------------------------------------------------------------


def euler_number(s: Union[SeifertPosE0, SeifertNegE0]) -> int:
    """e0 = sum of the floors of the Seifert invariants."""
    return s.e0


def b_coefficients(framings: Sequence[int], e0: int) -> tuple[int, ...]:
    """Extract (b0, ..., bl') from a -1-headed last leg.

    The leg must look like [-1, -2 x (e0-1), b0 - 1, b1, ..., bl'] with
    every b <= -2; the b-coefficients drive the stabilization counts of the
    leg once the unstabilizable head region is skipped.
    """
    framings = tuple(framings)
    if e0 < 1:
        raise DomainError(f"b-coefficients require e0 >= 1, got {e0}")
    expected_head = (-1,) + (-2,) * (e0 - 1)
    if framings[: len(expected_head)] != expected_head or len(framings) <= e0:
        raise DomainError(
            f"leg {list(framings)} does not have the [-1, -2 x {e0 - 1}, b0-1, ...] shape"
        )
    b0 = framings[e0] + 1
    rest = framings[e0 + 1:]
    if b0 > -2 or any(b > -2 for b in rest):
        raise DomainError(f"b-coefficients of {list(framings)} are not all <= -2")
    return (b0,) + rest


def leg_n_framings_from_b(b: Sequence[int], e0: int) -> tuple[int, ...]:
    """Inverse of b_coefficients."""
    b = tuple(b)
    return (-1,) + (-2,) * (e0 - 1) + (b[0] - 1,) + b[1:]


def make_seifert_pos(
    fractions: Sequence[Rational], signs: Sequence[Sequence[tuple[int, int]]]
) -> SeifertPosE0:
    """Build the Figure-style diagram for M(q1/p1, ..., qn/pn), e0 >= 0.

    The first n-1 invariants must satisfy 0 < q_i < p_i; the last may be any
    positive rational.  ``signs`` gives one (plus, minus) pair per knot per
    leg, heads included.
    """
    fractions = [Fraction(f) for f in fractions]
    if len(fractions) < 3:
        raise DomainError("need at least 3 Seifert invariants")
    legs = []
    for i, f in enumerate(fractions):
        if f <= 0:
            raise DomainError(f"invariant {i}: expected a positive rational, got {f}")
        if i < len(fractions) - 1 and f >= 1:
            raise DomainError(
                f"invariant {i}: q/p = {f} must be < 1 except in the last slot"
            )
        coeffs = neg_cont_frac_of(Fraction(-f.denominator, f.numerator))
        leg_signs = signs[i]
        if len(leg_signs) != len(coeffs):
            raise DomainError(
                f"leg {i} has {len(coeffs)} knots, got {len(leg_signs)} sign pairs"
            )
        legs.append(
            tuple(
                KnotNode(a, plus, minus)
                for a, (plus, minus) in zip(coeffs, leg_signs)
            )
        )
    return SeifertPosE0(tuple(legs))


def make_seifert_neg(
    fractions: Sequence[Rational],
    central_signs: tuple[int, int],
    leg_signs: Sequence[Sequence[tuple[int, int]]],
) -> SeifertNegE0:
    """Build the diagram for M(-q1/p1, ..., -qn/pn), e0 <= -3.

    Each invariant is a negative rational with denominator p_i >= 2; the
    central knot takes framing e0 = sum of the floors.
    """
    fractions = [Fraction(f) for f in fractions]
    if len(fractions) < 3:
        raise DomainError("need at least 3 Seifert invariants")
    e0 = 0
    legs = []
    for i, f in enumerate(fractions):
        if f >= 0:
            raise DomainError(f"invariant {i}: expected a negative rational, got {f}")
        if f.denominator < 2:
            raise DomainError(f"invariant {i}: need p >= 2, got p = {f.denominator}")
        coeffs = neg_cont_frac_of(f)
        e0 += coeffs[0]
        tail = coeffs[1:]
        pairs = leg_signs[i]
        if len(pairs) != len(tail):
            raise DomainError(
                f"leg {i} has {len(tail)} knots, got {len(pairs)} sign pairs"
            )
        legs.append(
            StabilizedChain(
                tuple(KnotNode(a, p, m) for a, (p, m) in zip(tail, pairs))
            )
        )
    if e0 > -3:
        raise DomainError(f"this regime needs e0 <= -3, got e0 = {e0}")
    central = KnotNode(e0, central_signs[0], central_signs[1])
    return SeifertNegE0(central, tuple(legs))


# ---------------------------------------------------------------------------
# Mixedness
# ---------------------------------------------------------------------------


def _thoroughly_mixed(s: SeifertPosE0) -> bool:
    heads = [leg[0] for leg in s.legs]
    if s.e0 == 0:
        candidates = heads
    else:
        candidates = heads[:-1]
        first = _first_stabilized(s.legs[-1])
        if first is not None:
            candidates = candidates + [s.legs[-1][first]]
    return all(node.plus >= 1 for node in candidates) or all(
        node.minus >= 1 for node in candidates
    )


def lightly_mixed_pairs(s: SeifertPosE0) -> list[tuple[int, int]]:
    """Leg pairs (i, j) whose complement is entirely both-signed."""
    not_both = [i for i, leg in enumerate(s.legs) if not leg[0].both_signs]
    if len(not_both) > 2:
        return []
    pairs = []
    for i in range(s.n):
        for j in range(i + 1, s.n):
            if set(not_both) <= {i, j}:
                pairs.append((i, j))
    return pairs


def classify_mixedness(s: Union[SeifertPosE0, SeifertNegE0]) -> Mixedness:
    """Which decomposition theorem applies to the diagram's sign pattern."""
    if isinstance(s, SeifertNegE0):
        if s.central.both_signs:
            return Mixedness.CENTRALLY_MIXED
        nodes = [s.central] + [node for leg in s.legs for node in leg.nodes]
        if _single_signed(nodes):
            return Mixedness.CANONICAL
        return Mixedness.OTHER_NEG
    if _thoroughly_mixed(s):
        return Mixedness.THOROUGHLY_MIXED
    if lightly_mixed_pairs(s):
        return Mixedness.LIGHTLY_MIXED
    return Mixedness.NEITHER_POS


def is_universally_tight_small(s: SeifertPosE0) -> bool:
    """Neither mixed and every leg single-signed (three singular fibers)."""
    if s.n != 3:
        raise DomainError("this criterion is stated for three singular fibers")
    if classify_mixedness(s) is not Mixedness.NEITHER_POS:
        return False
    return all(_single_signed(leg) for leg in s.legs)


def is_virtually_overtwisted_small(s: SeifertPosE0) -> bool:
    """Neither mixed but some leg carries both signs internally."""
    if s.n != 3:
        raise DomainError("this criterion is stated for three singular fibers")
    if classify_mixedness(s) is not Mixedness.NEITHER_POS:
        return False
    return any(not _single_signed(leg) for leg in s.legs)


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def _pos_coefficient_lists(fractions: Sequence[Rational]) -> list[tuple[int, ...]]:
    out = []
    for i, f in enumerate(fractions):
        f = Fraction(f)
        if f <= 0:
            raise DomainError(f"invariant {i}: expected a positive rational, got {f}")
        out.append(neg_cont_frac_of(Fraction(-f.denominator, f.numerator)))
    return out


def count_tight_small(fractions: Sequence[Rational]) -> int:
    """Tight structures on a small Seifert fibered space with e0 >= 0.

    |(prod(a0^i + 1) - prod(a0^i)) * prod over tails of (a_j^i + 1)|.
    """
    if len(fractions) != 3:
        raise DomainError("the count applies to three singular fibers")
    lists = _pos_coefficient_lists(fractions)
    head_plus_one = head_plain = tail_product = 1
    for coeffs in lists:
        head_plus_one *= coeffs[0] + 1
        head_plain *= coeffs[0]
        for a in coeffs[1:]:
            tail_product *= a + 1
    return abs((head_plus_one - head_plain) * tail_product)


def count_choices_neg(s: Union[SeifertNegE0, Sequence[Rational]]) -> int:
    """Stabilization choices for the e0 <= -3 diagram: |(e0+1) * prod(a_j+1)|."""
    if isinstance(s, SeifertNegE0):
        e0 = s.e0
        tails = [leg.framings for leg in s.legs]
    else:
        e0 = 0
        tails = []
        for i, f in enumerate(s):
            f = Fraction(f)
            if f >= 0:
                raise DomainError(
                    f"invariant {i}: expected a negative rational, got {f}"
                )
            coeffs = neg_cont_frac_of(f)
            e0 += coeffs[0]
            tails.append(coeffs[1:])
    prod = e0 + 1
    for tail in tails:
        for a in tail:
            prod *= a + 1
    return abs(prod)


@dataclass(frozen=True)
class CensusResult:
    """Universally tight census: an exact value or an upper bound."""

    kind: str  # "exact" or "bound"
    value: int


def ut_census_small(fractions: Sequence[Rational]) -> CensusResult:
    """Universally tight structures on a small Seifert space with e0 >= 0.

    At most 8 when e0 > 0; at most 7 when e0 = 0 and every q_i = p_i - 1;
    exactly 6 when e0 = 0 otherwise.
    """
    if len(fractions) != 3:
        raise DomainError("the census applies to three singular fibers")
    fractions = [Fraction(f) for f in fractions]
    for i, f in enumerate(fractions[:2]):
        if not 0 < f < 1:
            raise DomainError(f"invariant {i}: need 0 < q/p < 1, got {f}")
    if fractions[2] <= 0:
        raise DomainError(f"invariant 2: need a positive rational, got {fractions[2]}")
    e0 = fractions[2].numerator // fractions[2].denominator
    if e0 > 0:
        return CensusResult("bound", 8)
    if all(f.numerator == f.denominator - 1 for f in fractions):
        return CensusResult("bound", 7)
    return CensusResult("exact", 6)


# ---------------------------------------------------------------------------
# Lens normalization and star determinants
# ---------------------------------------------------------------------------

S3_MARKER = (1, 0)


def normalize_lens(p: int, q: int) -> tuple[int, int]:
    """Canonical (p, q') with 0 < q' < p; L(1, anything) is S^3, marked (1, 0)."""
    if p <= 0:
        raise DomainError(f"lens order must be positive, got p = {p}")
    if gcd(p, q) != 1:
        raise DomainError(f"L({p},{q}) needs gcd(p, q) = 1")
    if p == 1:
        return S3_MARKER
    return (p, q % p)


def star_det(center_framing: int, leg_framings: Sequence[Sequence[int]]) -> int:
    """Determinant of the star-shaped linking matrix.

    Expansion along the center: det = c * prod(d_i) - sum_i d_i' *
    prod_{j != i} d_j, with d_i the leg determinant and d_i' the determinant
    of the leg minus its first knot.
    """
    dets = [tridiagonal_det(tuple(leg)) for leg in leg_framings]
    truncated = [tridiagonal_det(tuple(leg)[1:]) for leg in leg_framings]
    total = center_framing
    for d in dets:
        total *= d
    for i, dp in enumerate(truncated):
        term = dp
        for j, d in enumerate(dets):
            if j != i:
                term *= d
        total -= term
    return total


def star_linking_matrix(s: Union[SeifertPosE0, SeifertNegE0]) -> list[list[int]]:
    """Linking matrix of the star diagram; row 0 is the central vertex.

    In the positive regime the 1-handle is traded for a 0-framed central
    unknot that every head links once.
    """
    if isinstance(s, SeifertNegE0):
        center = s.e0
        legs = [leg.framings for leg in s.legs]
    else:
        center = 0
        legs = [s.leg_framings(i) for i in range(s.n)]
    size = 1 + sum(len(leg) for leg in legs)
    matrix = [[0] * size for _ in range(size)]
    matrix[0][0] = center
    offset = 1
    for leg in legs:
        for k, framing in enumerate(leg):
            row = offset + k
            matrix[row][row] = framing
            prev = 0 if k == 0 else row - 1
            matrix[prev][row] = 1
            matrix[row][prev] = 1
        offset += len(leg)
    return matrix


# ---------------------------------------------------------------------------
# Decompositions, e0 >= 0
# ---------------------------------------------------------------------------


def merge_chains(leg_i: Sequence[KnotNode], leg_j: Sequence[KnotNode]) -> StabilizedChain:
    """Slide leg j's head over leg i's and cancel the 1-handle.

    The result is the chain [a_l^i, ..., a_1^i, a_0^i + a_0^j, a_1^j, ...,
    a_l^j]; the merged knot inherits the stabilizations of both heads, which
    exactly fills its chain budget.
    """
    leg_i, leg_j = tuple(leg_i), tuple(leg_j)
    head_i, head_j = leg_i[0], leg_j[0]
    merged = KnotNode(
        head_i.framing + head_j.framing,
        head_i.plus + head_j.plus,
        head_i.minus + head_j.minus,
    )
    return StabilizedChain(tuple(reversed(leg_i[1:])) + (merged,) + leg_j[1:])


def decompose_thoroughly(s: SeifertPosE0) -> ContactAssembly:
    """One lens component per leg: the tail chain of each, signs kept."""
    if classify_mixedness(s) is not Mixedness.THOROUGHLY_MIXED:
        raise DomainError("decompose_thoroughly needs a thoroughly mixed structure")
    return ContactAssembly(tuple(s.tail_chain(i) for i in range(s.n)))


def _lightly_parts(s: SeifertPosE0, i: int, j: int):
    parts = tuple(s.tail_chain(k) for k in range(s.n) if k not in (i, j))
    parts = parts + (merge_chains(s.legs[i], s.legs[j]),)
    deletions = tuple(
        Deletion(knot=0, slope=None, leg=k) for k in range(s.n) if k not in (i, j)
    )
    return parts, deletions


def decompose_lightly(
    s: SeifertPosE0, i: Optional[int] = None, j: Optional[int] = None
) -> ContactAssembly:
    """Delete the both-signs heads; merge legs i and j across the 1-handle."""
    pairs = lightly_mixed_pairs(s)
    if classify_mixedness(s) is not Mixedness.LIGHTLY_MIXED:
        raise DomainError("decompose_lightly needs a lightly mixed structure")
    if i is None and j is None:
        i, j = pairs[0]
    elif (i, j) not in pairs:
        raise DomainError(f"structure is not lightly mixed about legs ({i}, {j})")
    parts, _ = _lightly_parts(s, i, j)
    return ContactAssembly(parts)


def _split_leg(leg: Leg, knot: int) -> tuple[Optional[Leg], StabilizedChain]:
    """Delete one knot of a leg: (surviving upper part or None, lens below)."""
    below = StabilizedChain(tuple(leg[knot + 1:]))
    upper = leg[:knot] if knot > 0 else None
    return upper, below


def _collapse_star(legs: Sequence[Leg]) -> list:
    """Components of a star whose legs have dwindled to the given list."""
    legs = list(legs)
    if len(legs) >= 3:
        return [SeifertPosE0(tuple(legs))]
    if len(legs) == 2:
        return [merge_chains(legs[0], legs[1])]
    if len(legs) == 1:
        # Cancelling the lone head against the 1-handle leaves its tail.
        return [StabilizedChain(tuple(legs[0][1:]))]
    return [S1xS2()]


def _simultaneous_children(s: SeifertPosE0):
    """Split every sign-mixed leg at its mixed locus, all at once.

    Each mixed leg contributes its own deletion choices (one for a
    both-signs knot, m+2 for an opposite pair); children are the cartesian
    product across legs.  The surviving star has every leg single-signed.
    """
    per_leg = []
    for i, leg in enumerate(s.legs):
        locus = mixed_locus_of_nodes(leg)
        if locus is None:
            continue
        options = [
            Deletion(knot=d.knot, slope=d.slope, leg=i)
            for d in deletions_for_locus(leg, locus)
        ]
        per_leg.append(options)
    if not per_leg:
        raise DomainError("no sign-mixed leg to split")
    children = []
    for combo in product(*per_leg):
        chosen = {d.leg: d for d in combo}
        surviving = []
        parts = []
        for i, leg in enumerate(s.legs):
            if i in chosen:
                upper, below = _split_leg(leg, chosen[i].knot)
                parts.append(below)
                if upper is not None:
                    surviving.append(upper)
            else:
                surviving.append(leg)
        parts.extend(_collapse_star(surviving))
        children.append((tuple(parts), tuple(combo)))
    return children


# ---------------------------------------------------------------------------
# Decompositions, e0 <= -3
# ---------------------------------------------------------------------------


def decompose_centrally(s: SeifertNegE0) -> ContactAssembly:
    """Delete the both-signs central knot; the legs split off verbatim."""
    if classify_mixedness(s) is not Mixedness.CENTRALLY_MIXED:
        raise DomainError("decompose_centrally needs a centrally mixed structure")
    return ContactAssembly(tuple(s.legs))


def _first_mixed_leg(s: SeifertNegE0) -> Optional[int]:
    for i, leg in enumerate(s.legs):
        if mixed_locus_of_nodes(leg.nodes) is not None:
            return i
    return None


def _first_opposed_leg(s: SeifertNegE0) -> Optional[int]:
    central_sign = s.central.sign()
    for i, leg in enumerate(s.legs):
        for node in leg.nodes:
            if node.sign() == -central_sign and node.stabilized:
                return i
    return None


def _amputation_parts(s: SeifertNegE0, leg: int, knot: int):
    chain = s.legs[leg]
    below = StabilizedChain(chain.nodes[knot + 1:])
    truncated = StabilizedChain(chain.nodes[:knot])
    new_legs = s.legs[:leg] + (truncated,) + s.legs[leg + 1:]
    return (below, SeifertNegE0(s.central, new_legs))


def amputate_leg(s: SeifertNegE0, leg: int, knot: int) -> ContactAssembly:
    """Delete one knot inside a sign-mixed leg.

    The knots below the deleted one split off as a lens chain; the Seifert
    structure keeps the part of the leg above it.  The admissible knots are
    the mixed-locus deletion choices of the leg.
    """
    if not 0 <= leg < s.n:
        raise DomainError(f"leg index {leg} out of range")
    locus = mixed_locus_of_nodes(s.legs[leg].nodes)
    if locus is None:
        raise DomainError(f"leg {leg} has no mixed locus")
    admissible = {d.knot for d in deletions_for_locus(s.legs[leg].nodes, locus)}
    if knot not in admissible:
        raise DomainError(
            f"knot {knot} is not an admissible deletion for leg {leg}; "
            f"choices are {sorted(admissible)}"
        )
    return ContactAssembly(_amputation_parts(s, leg, knot))


def _cleaning_children(s: SeifertNegE0, leg: int):
    central_sign = s.central.sign()
    first = _first_stabilized(s.legs[leg].nodes)
    m = first  # unstabilized knots between the central knot and the first stabilized
    children = []
    central_slope = 0 if central_sign > 0 else m + 1
    deletion = Deletion(knot=0, slope=central_slope, leg=None)
    children.append((tuple(s.legs), (deletion,)))
    for k in range(first + 1):
        slope = (k + 1) if central_sign > 0 else (m - k)
        deletion = Deletion(knot=k, slope=slope, leg=leg)
        children.append((_amputation_parts(s, leg, k), (deletion,)))
    return children


def clean_leg_vs_center(s: SeifertNegE0, leg: int) -> list[ContactAssembly]:
    """Alternatives for a single-signed leg opposing the central knot.

    With m unstabilized knots before the leg's first stabilized one there
    are m+2 choices: delete the central knot (the star falls apart into its
    legs), an intermediate unstabilized knot, or the first stabilized knot.
    """
    if classify_mixedness(s) is not Mixedness.OTHER_NEG:
        raise DomainError("cleaning applies to a single-signed central knot "
                          "with an opposing leg")
    if not 0 <= leg < s.n:
        raise DomainError(f"leg index {leg} out of range")
    nodes = s.legs[leg].nodes
    if mixed_locus_of_nodes(nodes) is not None:
        raise DomainError(f"leg {leg} is itself sign-mixed; amputate it first")
    opposed = any(
        node.stabilized and node.sign() == -s.central.sign() for node in nodes
    )
    if not opposed:
        raise DomainError(f"leg {leg} does not oppose the central knot")
    return [ContactAssembly(parts) for parts, _ in _cleaning_children(s, leg)]


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def build_seifert_tree(
    s: Union[SeifertPosE0, SeifertNegE0],
    lightly_pair: Optional[tuple[int, int]] = None,
) -> DecompositionTree:
    """Full decomposition tree of a Seifert structure.

    Expands until every leaf component is a universally tight lens space, a
    canonical negative-regime structure, or a universally tight small
    Seifert space.  ``lightly_pair`` pins the merged pair when the root is
    lightly mixed about several; by default the least pair is used.
    """
    root_children = None
    if lightly_pair is not None:
        if not isinstance(s, SeifertPosE0):
            raise DomainError("lightly_pair only applies to the e0 >= 0 regime")
        i, j = lightly_pair
        if (i, j) not in lightly_mixed_pairs(s) or classify_mixedness(
            s
        ) is not Mixedness.LIGHTLY_MIXED:
            raise DomainError(f"structure is not lightly mixed about legs ({i}, {j})")
        root_children = [_lightly_parts(s, i, j)]
    return build_assembly_tree(ContactAssembly((s,)), root_children=root_children)
