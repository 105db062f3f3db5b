"""Linear chains of stabilized unknots: the surgery-diagram model of tight
lens spaces.

A chain carries one node per surgery coefficient a <= -2; the knot is
stabilized -2-a times, split between plus and minus stabilizations.  The
structure is universally tight exactly when every stabilization across the
whole chain has a single sign; otherwise it is virtually overtwisted and
contains a mixed locus: either a single knot stabilized both ways, or an
adjacent pair of opposite-sign knots separated only by unstabilized ones.

The empty chain is (S^3, xi_std).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .arith import DomainError, eval_cont_frac, neg_cont_frac


class ContactClass(Enum):
    UNIVERSALLY_TIGHT = "universally tight"
    VIRTUALLY_OVERTWISTED = "virtually overtwisted"


@dataclass(frozen=True)
class KnotNode:
    """One unknot: surgery framing plus a (plus, minus) stabilization split."""

    framing: int
    plus: int
    minus: int

    def __post_init__(self):
        if self.plus < 0 or self.minus < 0:
            raise DomainError(f"negative stabilization count on {self}")

    @property
    def budget(self) -> int:
        return self.plus + self.minus

    @property
    def stabilized(self) -> bool:
        return self.budget > 0

    @property
    def both_signs(self) -> bool:
        return self.plus > 0 and self.minus > 0

    def sign(self) -> int:
        """+1, -1 for single-signed stabilized nodes; 0 otherwise."""
        if self.plus > 0 and self.minus == 0:
            return 1
        if self.minus > 0 and self.plus == 0:
            return -1
        return 0

    def flipped(self) -> "KnotNode":
        return KnotNode(self.framing, self.minus, self.plus)


@dataclass(frozen=True)
class BothSignsKnot:
    """Mixed locus: node ``index`` is stabilized both ways."""

    index: int


@dataclass(frozen=True)
class AdjacentPair:
    """Mixed locus: opposite single-signed nodes with m unstabilized between."""

    left: int
    right: int
    m: int


MixedLocus = Union[BothSignsKnot, AdjacentPair, None]


@dataclass(frozen=True)
class Deletion:
    """One knot removed by a splitting; ``slope`` is None for the
    both-signs case, where the decomposition has a single branch."""

    knot: int
    slope: Optional[int]
    leg: Optional[int] = None


@dataclass(frozen=True)
class StabilizedChain:
    """Ordered chain of stabilized unknots; empty means (S^3, xi_std)."""

    nodes: tuple[KnotNode, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        for i, node in enumerate(self.nodes):
            if node.framing > -2:
                raise DomainError(
                    f"chain framing must be <= -2, got {node.framing} at index {i}"
                )
            if node.budget != -2 - node.framing:
                raise DomainError(
                    f"node {i}: {node.plus}+{node.minus} stabilizations, "
                    f"budget of framing {node.framing} is {-2 - node.framing}"
                )

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def framings(self) -> tuple[int, ...]:
        return tuple(node.framing for node in self.nodes)

    @property
    def is_s3(self) -> bool:
        return not self.nodes

    def pq(self) -> tuple[int, int]:
        """(p, q) with the chain evaluating to -p/q; S^3 reports (1, 0)."""
        if not self.nodes:
            return (1, 0)
        value = eval_cont_frac(self.framings)
        return (-value.numerator, value.denominator)

    @property
    def p(self) -> int:
        return self.pq()[0]

    @property
    def q(self) -> int:
        return self.pq()[1]

    def total_plus(self) -> int:
        return sum(node.plus for node in self.nodes)

    def total_minus(self) -> int:
        return sum(node.minus for node in self.nodes)

    def flipped(self) -> "StabilizedChain":
        return StabilizedChain(tuple(node.flipped() for node in self.nodes))

    def reversed(self) -> "StabilizedChain":
        return StabilizedChain(tuple(reversed(self.nodes)))

    # -- component protocol used by the decomposition trees ----------------

    def kind(self) -> str:
        return "s3" if self.is_s3 else "lens"

    def sort_key(self) -> tuple:
        if self.is_s3:
            return (0,)
        p, q = self.pq()
        signs = tuple(x for node in self.nodes for x in (node.plus, node.minus))
        return (2, p, q) + signs

    def is_terminal(self) -> bool:
        return classify(self) is ContactClass.UNIVERSALLY_TIGHT

    def h1_order(self) -> int:
        return h1_order(self)

    def describe(self) -> str:
        if self.is_s3:
            return "S^3"
        p, q = self.pq()
        return f"L({p},{q})[{format_signs(self)}]"

    def decomposition_children(self) -> list[tuple[tuple, tuple[Deletion, ...]]]:
        """Component replacements for one splitting step, with edge data."""
        return [
            ((left, right), (deletion,))
            for left, right, deletion in child_splits(self)
        ]

    def decomposition_kind(self) -> str:
        locus = find_mixed_locus(self)
        return "both-signs" if isinstance(locus, BothSignsKnot) else "adjacent-pair"


def format_signs(chain: StabilizedChain) -> str:
    """Compact sign notation: '1+1-/2+/0/2-' style, one field per knot."""
    parts = []
    for node in chain.nodes:
        if node.budget == 0:
            parts.append("0")
        else:
            field = ""
            if node.plus:
                field += f"{node.plus}+"
            if node.minus:
                field += f"{node.minus}-"
            parts.append(field)
    return "/".join(parts)


def make_lens(p: int, q: int, signs: Sequence[tuple[int, int]]) -> StabilizedChain:
    """Chain for L(p, q) with the given per-knot (plus, minus) stabilizations."""
    coeffs = neg_cont_frac(p, q)
    if len(signs) != len(coeffs):
        raise DomainError(
            f"L({p},{q}) expands to {len(coeffs)} knots, got {len(signs)} sign pairs"
        )
    nodes = tuple(
        KnotNode(a, plus, minus) for a, (plus, minus) in zip(coeffs, signs)
    )
    return StabilizedChain(nodes)


def classify(chain: StabilizedChain) -> ContactClass:
    """Universally tight iff all stabilizations share one sign."""
    if chain.total_plus() == 0 or chain.total_minus() == 0:
        return ContactClass.UNIVERSALLY_TIGHT
    return ContactClass.VIRTUALLY_OVERTWISTED


def count_tight(p: int, q: int) -> int:
    """Number of tight contact structures on L(p, q) up to isotopy."""
    prod = 1
    for a in neg_cont_frac(p, q):
        prod *= a + 1
    return abs(prod)


def mixed_locus_of_nodes(nodes: Sequence[KnotNode]) -> MixedLocus:
    """Leftmost both-signs node, else leftmost opposite adjacent pair."""
    for i, node in enumerate(nodes):
        if node.both_signs:
            return BothSignsKnot(i)
    stabilized = [i for i, node in enumerate(nodes) if node.stabilized]
    for left, right in zip(stabilized, stabilized[1:]):
        if nodes[left].sign() != nodes[right].sign():
            return AdjacentPair(left, right, right - left - 1)
    return None


def find_mixed_locus(chain: StabilizedChain) -> MixedLocus:
    """Where the chain splits; None exactly when universally tight."""
    return mixed_locus_of_nodes(chain.nodes)


def split_at(chain: StabilizedChain, j: int) -> tuple[StabilizedChain, StabilizedChain]:
    """Delete knot j; the two remaining subchains keep their sign data."""
    if not 0 <= j < len(chain):
        raise DomainError(f"knot index {j} out of range for chain of length {len(chain)}")
    return (
        StabilizedChain(chain.nodes[:j]),
        StabilizedChain(chain.nodes[j + 1:]),
    )


def deletions_for_locus(nodes: Sequence[KnotNode], locus) -> list[Deletion]:
    """Deletion choices for a mixed locus, slope 0 at the positive endpoint."""
    if isinstance(locus, BothSignsKnot):
        return [Deletion(knot=locus.index, slope=None)]
    if isinstance(locus, AdjacentPair):
        left, right = locus.left, locus.right
        positive_left = nodes[left].sign() > 0
        return [
            Deletion(knot=k, slope=(k - left) if positive_left else (right - k))
            for k in range(left, right + 1)
        ]
    raise DomainError("no mixed locus: structure is universally tight")


def child_splits(chain: StabilizedChain) -> list[tuple[StabilizedChain, StabilizedChain, Deletion]]:
    """All one-step splittings of a virtually overtwisted chain.

    A both-signs knot gives a single branch; an adjacent opposite pair with
    m unstabilized knots between gives the m+2 branches with slopes 0..m+1.
    """
    locus = find_mixed_locus(chain)
    if locus is None:
        raise DomainError("cannot split a universally tight chain")
    out = []
    for deletion in deletions_for_locus(chain.nodes, locus):
        left, right = split_at(chain, deletion.knot)
        out.append((left, right, deletion))
    return out


def fossati_count(chain: StabilizedChain) -> int:
    """Exact filling count for a virtually overtwisted two-knot chain.

    Two fillings exactly when some framing is -4 and that knot's
    stabilizations are single-signed; otherwise the filling is unique.
    """
    if len(chain) != 2:
        raise DomainError(f"need a chain of length 2, got {len(chain)}")
    if classify(chain) is not ContactClass.VIRTUALLY_OVERTWISTED:
        raise DomainError("the two-knot count applies to virtually overtwisted chains")
    for node in chain.nodes:
        if node.framing == -4 and not node.both_signs:
            return 2
    return 1


def linking_matrix(chain: StabilizedChain) -> list[list[int]]:
    """Tridiagonal linking matrix: framings on the diagonal, 1 off it."""
    n = len(chain)
    matrix = [[0] * n for _ in range(n)]
    for i, node in enumerate(chain.nodes):
        matrix[i][i] = node.framing
        if i + 1 < n:
            matrix[i][i + 1] = 1
            matrix[i + 1][i] = 1
    return matrix


def tridiagonal_det(diagonal: Sequence[int]) -> int:
    """Determinant of the chain's linking matrix via the 3-term recurrence."""
    prev, cur = 0, 1
    for a in diagonal:
        prev, cur = cur, a * cur - prev
    return cur


def h1_order(chain: StabilizedChain) -> int:
    """|H_1| of the chain's boundary: |det| of the linking matrix; equals p."""
    return abs(tridiagonal_det(chain.framings))
