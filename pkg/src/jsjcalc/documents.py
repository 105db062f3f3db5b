"""Parsing, canonical serialization, and tree export.

Structures travel either as JSON documents or in a compact inline notation:
framings as a comma list ("-4,-4,-2,-4") and stabilizations as slash-joined
fields ("1+1-/2+/0/2-", one field per knot, 0 for unstabilized); Seifert
legs are joined with ";".  Serialization is canonical (sorted keys, fixed
separators), so identical inputs produce byte-identical output and
serialize(parse(serialize(x))) == serialize(x).

Trees export as JSON, Graphviz DOT (plain quoted labels), or an indented
text listing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Union

from .arith import DomainError
from .bundles import BundleInput
from .cables import CableInput
from .chains import KnotNode, StabilizedChain, classify
from .seifert import SeifertNegE0, SeifertPosE0, classify_mixedness
from .trees import DecompositionTree, leaf_filling_count

SCHEMA_ERROR = "SCHEMA_ERROR"
BUDGET_MISMATCH = "BUDGET_MISMATCH"
NONCANONICAL_FRAMING = "NONCANONICAL_FRAMING"
BAD_FRACTION = "BAD_FRACTION"
INVARIANT_ERROR = "INVARIANT_ERROR"


class InputError(ValueError):
    """Invalid input document; carries an error code and a field path."""

    def __init__(self, code: str, message: str, field: Optional[str] = None):
        self.code = code
        self.field = field
        where = f" at {field}" if field else ""
        super().__init__(f"{code}{where}: {message}")


Structure = Union[StabilizedChain, SeifertPosE0, SeifertNegE0, CableInput, BundleInput]


@dataclass(frozen=True)
class StructureDocument:
    kind: str  # lens | seifert-pos | seifert-neg | cable | bundle
    structure: Structure


# ---------------------------------------------------------------------------
# Inline notation
# ---------------------------------------------------------------------------

_SIGN_FIELD = re.compile(r"^(?:(\d+)\+)?(?:(\d+)-)?$")


def parse_signs_field(field: str, where: str) -> tuple[int, int]:
    if field == "0":
        return (0, 0)
    match = _SIGN_FIELD.match(field)
    if not match or (match.group(1) is None and match.group(2) is None):
        raise InputError(
            SCHEMA_ERROR, f"cannot read stabilization field {field!r}", where
        )
    plus = int(match.group(1) or 0)
    minus = int(match.group(2) or 0)
    if plus == minus == 0:
        raise InputError(
            SCHEMA_ERROR, f"use '0' for unstabilized knots, not {field!r}", where
        )
    return (plus, minus)


def parse_signs_spec(text: str, where: str = "signs") -> list[tuple[int, int]]:
    return [
        parse_signs_field(field.strip(), f"{where}[{i}]")
        for i, field in enumerate(text.split("/"))
    ]


def parse_framings_spec(text: str, where: str = "chain") -> list[int]:
    out = []
    for i, piece in enumerate(x.strip() for x in text.split(",")):
        try:
            out.append(int(piece))
        except ValueError:
            raise InputError(
                SCHEMA_ERROR, f"framing {piece!r} is not an integer", f"{where}[{i}]"
            ) from None
    return out


def chain_from_data(
    framings: list[int], signs: list[tuple[int, int]], where: str = "chain"
) -> StabilizedChain:
    for i, a in enumerate(framings):
        if a > -2:
            raise InputError(
                NONCANONICAL_FRAMING,
                f"framing {a} must be <= -2",
                f"{where}[{i}]",
            )
    if len(signs) != len(framings):
        raise InputError(
            BUDGET_MISMATCH,
            f"{len(framings)} knots but {len(signs)} stabilization fields",
            where,
        )
    for i, (a, (plus, minus)) in enumerate(zip(framings, signs)):
        if plus + minus != -2 - a:
            raise InputError(
                BUDGET_MISMATCH,
                f"knot with framing {a} takes {-2 - a} stabilizations, "
                f"got {plus}+{minus}",
                f"{where}[{i}]",
            )
    return StabilizedChain(
        tuple(KnotNode(a, p, m) for a, (p, m) in zip(framings, signs))
    )


def parse_chain_spec(chain_text: str, signs_text: str) -> StabilizedChain:
    """Inline lens-space input: framings list plus stabilization fields."""
    framings = parse_framings_spec(chain_text)
    signs = parse_signs_spec(signs_text)
    return chain_from_data(framings, signs)


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(SCHEMA_ERROR, f"missing key {key!r}", where)
    return obj[key]


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise InputError(SCHEMA_ERROR, "expected a list of integers", where)
    return value


def _sign_pairs(value, where: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise InputError(SCHEMA_ERROR, "expected a list of [plus, minus] pairs", where)
    out = []
    for i, pair in enumerate(value):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and x >= 0 for x in pair)
        ):
            raise InputError(
                SCHEMA_ERROR, "expected [plus, minus] with nonnegative integers",
                f"{where}[{i}]",
            )
        out.append((pair[0], pair[1]))
    return out


def _leg_from_obj(obj, where: str) -> tuple[list[int], list[tuple[int, int]]]:
    if not isinstance(obj, dict):
        raise InputError(SCHEMA_ERROR, "expected a leg object", where)
    framings = _int_list(_require(obj, "framings", where), f"{where}.framings")
    signs = _sign_pairs(_require(obj, "signs", where), f"{where}.signs")
    if len(framings) != len(signs):
        raise InputError(
            BUDGET_MISMATCH,
            f"{len(framings)} knots but {len(signs)} sign pairs",
            where,
        )
    return framings, signs


def structure_from_obj(obj) -> StructureDocument:
    if not isinstance(obj, dict):
        raise InputError(SCHEMA_ERROR, "expected a JSON object", "$")
    kind = _require(obj, "kind", "$")
    if kind == "lens":
        framings = _int_list(_require(obj, "framings", "$"), "framings")
        signs = _sign_pairs(_require(obj, "signs", "$"), "signs")
        return StructureDocument("lens", chain_from_data(framings, signs))
    if kind == "seifert-pos":
        legs_obj = _require(obj, "legs", "$")
        if not isinstance(legs_obj, list):
            raise InputError(SCHEMA_ERROR, "expected a list of legs", "legs")
        legs = []
        for i, leg_obj in enumerate(legs_obj):
            framings, signs = _leg_from_obj(leg_obj, f"legs[{i}]")
            legs.append(
                tuple(KnotNode(a, p, m) for a, (p, m) in zip(framings, signs))
            )
        try:
            return StructureDocument("seifert-pos", SeifertPosE0(tuple(legs)))
        except DomainError as err:
            raise InputError(_classify_domain_error(err), str(err), "legs") from err
    if kind == "seifert-neg":
        central_obj = _require(obj, "central", "$")
        if not isinstance(central_obj, dict):
            raise InputError(SCHEMA_ERROR, "expected a central-knot object", "central")
        framing = _require(central_obj, "framing", "central")
        plus = _require(central_obj, "plus", "central")
        minus = _require(central_obj, "minus", "central")
        legs_obj = _require(obj, "legs", "$")
        legs = []
        for i, leg_obj in enumerate(legs_obj):
            framings, signs = _leg_from_obj(leg_obj, f"legs[{i}]")
            legs.append(chain_from_data(framings, signs, f"legs[{i}]"))
        try:
            central = KnotNode(framing, plus, minus)
            return StructureDocument("seifert-neg", SeifertNegE0(central, tuple(legs)))
        except DomainError as err:
            raise InputError(_classify_domain_error(err), str(err), "central") from err
    if kind == "cable":
        try:
            return StructureDocument(
                "cable",
                CableInput(
                    tb=_require(obj, "tb", "$"),
                    p=_require(obj, "p", "$"),
                    q=_require(obj, "q", "$"),
                ),
            )
        except DomainError as err:
            raise InputError(BAD_FRACTION, str(err), "$") from err
    if kind == "bundle":
        try:
            return StructureDocument(
                "bundle",
                BundleInput(
                    genus=_require(obj, "genus", "$"),
                    euler=_require(obj, "euler", "$"),
                ),
            )
        except DomainError as err:
            raise InputError(SCHEMA_ERROR, str(err), "$") from err
    raise InputError(SCHEMA_ERROR, f"unknown structure kind {kind!r}", "kind")


def _classify_domain_error(err: DomainError) -> str:
    text = str(err)
    if "stabilization" in text or "budget" in text:
        return BUDGET_MISMATCH
    if "framing" in text:
        return NONCANONICAL_FRAMING
    return INVARIANT_ERROR


def parse_structure(text: str) -> StructureDocument:
    """Validated structure from a JSON document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(SCHEMA_ERROR, f"invalid JSON: {err}", "$") from err
    return structure_from_obj(obj)


def component_to_obj(component) -> dict:
    kind = component.kind()
    if kind in ("s3", "lens"):
        obj = {"kind": kind}
        if kind == "lens":
            p, q = component.pq()
            obj.update(
                framings=list(component.framings),
                signs=[[n.plus, n.minus] for n in component.nodes],
                p=p,
                q=q,
            )
        return obj
    if kind == "s1xs2":
        return {"kind": kind}
    if kind == "seifert-pos":
        return {
            "kind": kind,
            "legs": [
                {
                    "framings": [n.framing for n in leg],
                    "signs": [[n.plus, n.minus] for n in leg],
                }
                for leg in component.legs
            ],
        }
    return {
        "kind": kind,
        "central": {
            "framing": component.central.framing,
            "plus": component.central.plus,
            "minus": component.central.minus,
        },
        "legs": [
            {
                "framings": list(leg.framings),
                "signs": [[n.plus, n.minus] for n in leg.nodes],
            }
            for leg in component.legs
        ],
    }


def structure_to_obj(doc: StructureDocument) -> dict:
    s = doc.structure
    if doc.kind == "lens":
        return {
            "kind": "lens",
            "framings": list(s.framings),
            "signs": [[n.plus, n.minus] for n in s.nodes],
        }
    if doc.kind in ("seifert-pos", "seifert-neg"):
        return component_to_obj(s)
    if doc.kind == "cable":
        return {"kind": "cable", "tb": s.tb, "p": s.p, "q": s.q}
    return {"kind": "bundle", "genus": s.genus, "euler": s.euler}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def serialize(doc: StructureDocument) -> str:
    return canonical_json(structure_to_obj(doc))


# ---------------------------------------------------------------------------
# Tree export
# ---------------------------------------------------------------------------


def _component_classification(component) -> str:
    kind = component.kind()
    if kind in ("s3", "lens"):
        return classify(component).value
    if kind == "s1xs2":
        return "universally tight"
    if kind == "seifert-pos":
        return "universally tight small Seifert" if component.is_terminal() else (
            classify_mixedness(component).value
        )
    return classify_mixedness(component).value


def tree_to_obj(tree: DecompositionTree) -> dict:
    nodes = []
    for i, assembly in enumerate(tree.nodes):
        nodes.append(
            {
                "id": i,
                "label": assembly.describe(),
                "components": [component_to_obj(c) for c in assembly.components],
            }
        )
    edges = []
    for e in tree.edges:
        edge = {
            "parent": e.parent,
            "child": e.child,
            "component": e.component,
            "kind": e.kind,
            "deletions": [
                {"leg": d.leg, "knot": d.knot, "slope": d.slope} for d in e.deletions
            ],
        }
        if len(e.deletions) == 1:
            edge["deleted_knot_index"] = e.deletions[0].knot
            edge["slope"] = e.deletions[0].slope
        edges.append(edge)
    leaves = []
    for i in tree.leaf_ids():
        assembly = tree.nodes[i]
        leaves.append(
            {
                "id": i,
                "classification": [
                    _component_classification(c) for c in assembly.components
                ],
                "filling_count": leaf_filling_count(assembly)
                if assembly.all_terminal()
                else None,
            }
        )
    return {"nodes": nodes, "edges": edges, "leaves": leaves}


def tree_to_dot(tree: DecompositionTree) -> str:
    lines = ["digraph decomposition {"]
    for i, assembly in enumerate(tree.nodes):
        label = assembly.describe().replace('"', r"\"")
        lines.append(f'  n{i} [label="{label}"];')
    for e in tree.edges:
        label = e.describe().replace('"', r"\"")
        lines.append(f'  n{e.parent} -> n{e.child} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_text(tree: DecompositionTree) -> str:
    lines = []

    def visit(node_id: int, depth: int, via: str):
        prefix = "  " * depth
        arrow = f" <- {via}" if via else ""
        star = "" if tree.children_of(node_id) else " *"
        lines.append(f"{prefix}{tree.nodes[node_id].describe()}{arrow}{star}")
        for e in tree.edges:
            if e.parent == node_id:
                visit(e.child, depth + 1, e.describe())

    visit(0, 0, "")
    lines.append("(* = leaf)")
    return "\n".join(lines) + "\n"


def emit_tree(tree: DecompositionTree, format: str = "json") -> str:
    """Deterministic tree rendering: json, dot, or text."""
    if format == "json":
        return canonical_json(tree_to_obj(tree))
    if format == "dot":
        return tree_to_dot(tree)
    if format == "text":
        return tree_to_text(tree)
    raise InputError(SCHEMA_ERROR, f"unknown format {format!r}", "format")
