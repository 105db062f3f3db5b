"""Disjoint unions of contact pieces and their decomposition trees.

An assembly is a multiset of components (chains, Seifert structures, and the
occasional S^1 x S^2 left behind when every strand over a 1-handle has been
deleted), kept in a fixed canonical order so identical inputs always produce
byte-identical output.  A decomposition tree expands the leftmost
non-terminal component of each assembly, one component per level, until
every leaf consists of universally tight lens spaces, canonical or
universally tight Seifert pieces, S^3s, and S^1 x S^2s.

Components plug in through a small informal protocol: ``sort_key``,
``kind``, ``describe``, ``h1_order``, ``is_terminal`` and
``decomposition_children`` (replacement components plus the deletions that
produced them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import DomainError
from .chains import (
    ContactClass,
    Deletion,
    StabilizedChain,
    classify,
    deletions_for_locus,
    find_mixed_locus,
    split_at,
)


@dataclass(frozen=True)
class S1xS2:
    """S^1 x S^2 with its unique tight structure (a bare 1-handle)."""

    def kind(self) -> str:
        return "s1xs2"

    def sort_key(self) -> tuple:
        return (1,)

    def is_terminal(self) -> bool:
        return True

    def h1_order(self) -> int:
        return 0  # H_1 = Z; 0 is the linking-matrix determinant convention

    def describe(self) -> str:
        return "S^1xS^2"


@dataclass(frozen=True)
class ContactAssembly:
    """Disjoint union of components in canonical sorted order."""

    components: tuple

    def __post_init__(self):
        ordered = tuple(sorted(self.components, key=lambda c: c.sort_key()))
        object.__setattr__(self, "components", ordered)
        if not self.components:
            raise DomainError("an assembly needs at least one component")

    def __len__(self) -> int:
        return len(self.components)

    def replace(self, index: int, parts: Iterable) -> "ContactAssembly":
        rest = self.components[:index] + self.components[index + 1:]
        return ContactAssembly(rest + tuple(parts))

    def all_terminal(self) -> bool:
        return all(c.is_terminal() for c in self.components)

    def leftmost_expandable(self) -> Optional[int]:
        for i, c in enumerate(self.components):
            if not c.is_terminal():
                return i
        return None

    def describe(self) -> str:
        return "{" + ", ".join(c.describe() for c in self.components) + "}"

    def p_values(self) -> tuple[int, ...]:
        return tuple(c.h1_order() for c in self.components)


def assembly(*components) -> ContactAssembly:
    return ContactAssembly(tuple(components))


@dataclass(frozen=True)
class TreeEdge:
    parent: int
    child: int
    component: int  # index of the expanded component in the parent assembly
    deletions: tuple[Deletion, ...]
    kind: str

    def describe(self) -> str:
        parts = []
        for d in self.deletions:
            where = f"k_{d.knot}" if d.leg is None else f"leg {d.leg} k_{d.knot}"
            if d.slope is None:
                parts.append(f"delete {where}")
            else:
                parts.append(f"delete {where} @ slope {d.slope}")
        return ", ".join(parts)


@dataclass
class DecompositionTree:
    """Rooted tree of assemblies; node 0 is the root, ids follow BFS order."""

    nodes: list[ContactAssembly] = field(default_factory=list)
    edges: list[TreeEdge] = field(default_factory=list)

    @property
    def root(self) -> ContactAssembly:
        return self.nodes[0]

    def children_of(self, node_id: int) -> list[int]:
        return [e.child for e in self.edges if e.parent == node_id]

    def leaf_ids(self) -> list[int]:
        parents = {e.parent for e in self.edges}
        return [i for i in range(len(self.nodes)) if i not in parents]

    def leaves(self) -> list[ContactAssembly]:
        return [self.nodes[i] for i in self.leaf_ids()]

    def depth(self) -> int:
        depths = {0: 0}
        for e in self.edges:  # BFS order: parents precede children
            depths[e.child] = depths[e.parent] + 1
        return max(depths.values())


def _expand(component) -> list[tuple[tuple, tuple[Deletion, ...], str]]:
    """Children of one component: (replacement parts, deletions, step kind)."""
    specs = component.decomposition_children()
    kind = getattr(component, "decomposition_kind", lambda: "split")()
    return [(parts, deletions, kind) for parts, deletions in specs]


def build_assembly_tree(
    root: ContactAssembly,
    max_nodes: int = 100_000,
    root_children=None,
) -> DecompositionTree:
    """Expand leftmost non-terminal components until every leaf is terminal.

    ``root_children`` optionally pins the root's expansion to the given
    (parts, deletions) list instead of the component's own choice.
    """
    tree = DecompositionTree(nodes=[root])
    queue = [0]
    while queue:
        node_id = queue.pop(0)
        node = tree.nodes[node_id]
        index = node.leftmost_expandable()
        if index is None:
            continue
        if node_id == 0 and root_children is not None:
            kind = getattr(
                node.components[index], "decomposition_kind", lambda: "split"
            )()
            expansions = [(parts, dels, kind) for parts, dels in root_children]
        else:
            expansions = _expand(node.components[index])
        for parts, deletions, kind in expansions:
            child = node.replace(index, parts)
            child_id = len(tree.nodes)
            if child_id > max_nodes:
                raise DomainError("decomposition tree exceeded the node limit")
            tree.nodes.append(child)
            tree.edges.append(
                TreeEdge(
                    parent=node_id,
                    child=child_id,
                    component=index,
                    deletions=deletions,
                    kind=kind,
                )
            )
            queue.append(child_id)
    return tree


def children(chain: StabilizedChain) -> list[tuple[ContactAssembly, TreeEdge]]:
    """One-step splittings of a virtually overtwisted chain, as assemblies.

    A both-signs knot gives exactly one child; an adjacent opposite-signed
    pair with m unstabilized knots between gives m+2 children, the slope
    label 0 deleting the positively stabilized endpoint and m+1 the
    negative one.
    """
    if classify(chain) is not ContactClass.VIRTUALLY_OVERTWISTED:
        raise DomainError("children() applies to virtually overtwisted chains")
    locus = find_mixed_locus(chain)
    out = []
    for deletion in deletions_for_locus(chain.nodes, locus):
        left, right = split_at(chain, deletion.knot)
        edge = TreeEdge(
            parent=0,
            child=len(out) + 1,
            component=0,
            deletions=(deletion,),
            kind="both-signs" if deletion.slope is None else "adjacent-pair",
        )
        out.append((assembly(left, right), edge))
    return out


def build_tree(chain: StabilizedChain) -> DecompositionTree:
    """Full decomposition tree of a lens-space chain.

    Leaves are disjoint unions of universally tight lens spaces (S^3 for the
    empty chain); a universally tight input gives the single-node tree.
    """
    return build_assembly_tree(assembly(chain))


# ---------------------------------------------------------------------------
# Filling counts for fully reduced assemblies
# ---------------------------------------------------------------------------

UNKNOWN = None


def component_filling_count(component) -> Optional[int]:
    """Exact filling count for the families with a known classification.

    S^3 and S^1 x S^2 have unique exact fillings; L(4,1) has two when
    universally tight, one otherwise; L(p,1) for p != 4 and L(3,2) have one;
    anything else reports None (unknown here).
    """
    kind = component.kind()
    if kind in ("s3", "s1xs2"):
        return 1
    if kind != "lens":
        return UNKNOWN
    p, q = component.pq()
    tight_class = classify(component)
    if (p, q) == (4, 1):
        return 2 if tight_class is ContactClass.UNIVERSALLY_TIGHT else 1
    if q == 1:
        return 1
    if (p, q) == (3, 2):
        return 1
    return UNKNOWN


def leaf_filling_count(a: ContactAssembly) -> Optional[int]:
    """Product of the component counts; None as soon as one is unknown."""
    total = 1
    for component in a.components:
        count = component_filling_count(component)
        if count is UNKNOWN:
            return UNKNOWN
        total *= count
    return total
