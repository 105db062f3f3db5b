"""Command-line surface.

    jsjcalc lens classify|count|tree|fossati ...
    jsjcalc seifert classify|count|decompose|tree|census ...
    jsjcalc cable report|slopes ...
    jsjcalc bundle classify ...
    jsjcalc selftest [--seed N]

Exit codes: 0 on success, 2 on invalid input, 3 on an internal-assertion
failure (an identity that should be a theorem did not hold).
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .arith import DomainError, eval_cont_frac, neg_cont_frac
from .bundles import BundleInput, bundle_classify
from .cables import CableInput, cable_report, cable_slope_check
from .chains import (
    StabilizedChain,
    classify,
    count_tight,
    fossati_count,
    h1_order,
    linking_matrix,
    split_at,
)
from .documents import (
    InputError,
    StructureDocument,
    canonical_json,
    component_to_obj,
    emit_tree,
    parse_chain_spec,
    parse_signs_spec,
    parse_structure,
    structure_to_obj,
)
from .seifert import (
    Mixedness,
    SeifertPosE0,
    build_seifert_tree,
    classify_mixedness,
    count_choices_neg,
    count_tight_small,
    make_seifert_neg,
    make_seifert_pos,
    ut_census_small,
)
from .slopes import InternalCheckError, MixedTorusData, splitting_data
from .trees import ContactAssembly, build_tree

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INTERNAL = 3


def _read_input(args) -> str:
    if args.infile == "-":
        return sys.stdin.read()
    with open(args.infile, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_output(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _chain_from_args(args) -> StabilizedChain:
    if args.infile:
        doc = parse_structure(_read_input(args))
        if doc.kind != "lens":
            raise InputError("SCHEMA_ERROR", f"expected a lens document, got {doc.kind}")
        return doc.structure
    if args.chain is None or args.signs is None:
        raise InputError("SCHEMA_ERROR", "need --chain and --signs (or --in)")
    return parse_chain_spec(args.chain, args.signs)


def _seifert_from_args(args):
    if args.infile:
        doc = parse_structure(_read_input(args))
        if doc.kind not in ("seifert-pos", "seifert-neg"):
            raise InputError(
                "SCHEMA_ERROR", f"expected a Seifert document, got {doc.kind}"
            )
        return doc.structure
    if not args.fractions:
        raise InputError("SCHEMA_ERROR", "need --fractions (or --in)")
    fractions = _parse_fractions(args.fractions)
    negative = all(f < 0 for f in fractions)
    if not negative and any(f < 0 for f in fractions):
        raise InputError("SCHEMA_ERROR", "invariants must all have the same sign")
    if args.signs is None:
        raise InputError("SCHEMA_ERROR", "need --signs with --fractions")
    leg_signs = [parse_signs_spec(leg, f"legs[{i}]") for i, leg in enumerate(args.signs.split(";"))]
    try:
        if negative:
            central = (
                parse_signs_spec(args.central)[0] if args.central else (0, 0)
            )
            return make_seifert_neg(fractions, central, leg_signs)
        return make_seifert_pos(fractions, leg_signs)
    except DomainError as err:
        raise InputError("INVARIANT_ERROR", str(err)) from err


def _parse_fractions(text: str) -> list[Fraction]:
    out = []
    for i, piece in enumerate(x.strip() for x in text.split(",")):
        try:
            out.append(Fraction(piece))
        except (ValueError, ZeroDivisionError):
            raise InputError(
                "BAD_FRACTION", f"cannot read {piece!r} as a rational", f"fractions[{i}]"
            ) from None
    return out


def _assembly_obj(assembly) -> dict:
    return {
        "label": assembly.describe(),
        "components": [component_to_obj(c) for c in assembly.components],
    }


# ---------------------------------------------------------------------------
# lens subcommands
# ---------------------------------------------------------------------------


def cmd_lens_classify(args) -> str:
    chain = _chain_from_args(args)
    result = classify(chain).value
    if args.format == "json":
        return canonical_json(
            {"structure": structure_to_obj(StructureDocument("lens", chain)),
             "classification": result}
        )
    return f"{chain.describe()}: {result}"


def cmd_lens_count(args) -> str:
    count = count_tight(args.p, args.q)
    if args.format == "json":
        return canonical_json({"p": args.p, "q": args.q, "tight_structures": count})
    return str(count)


def cmd_lens_tree(args) -> str:
    chain = _chain_from_args(args)
    tree = build_tree(chain)
    fmt = "text" if args.format == "text" else args.format
    return emit_tree(tree, fmt)


def cmd_lens_fossati(args) -> str:
    chain = _chain_from_args(args)
    count = fossati_count(chain)
    if args.format == "json":
        return canonical_json(
            {"structure": structure_to_obj(StructureDocument("lens", chain)),
             "exact_fillings": count}
        )
    plural = "s" if count != 1 else ""
    return f"{chain.describe()}: {count} exact filling{plural}, up to diffeomorphism"


# ---------------------------------------------------------------------------
# seifert subcommands
# ---------------------------------------------------------------------------


def cmd_seifert_classify(args) -> str:
    s = _seifert_from_args(args)
    mixedness = classify_mixedness(s)
    if args.format == "json":
        return canonical_json(
            {"structure": _assembly_obj_single(s), "mixedness": mixedness.name.lower()}
        )
    return f"{s.describe()}: {mixedness.value}"


def _assembly_obj_single(s) -> dict:
    return component_to_obj(s)


def cmd_seifert_count(args) -> str:
    fractions = _parse_fractions(args.fractions)
    if all(f < 0 for f in fractions):
        count = count_choices_neg(fractions)
        label = "stabilization choices"
    else:
        count = count_tight_small(fractions)
        label = "tight structures"
    if args.format == "json":
        return canonical_json(
            {"fractions": [str(f) for f in fractions], label.replace(" ", "_"): count}
        )
    return str(count)


def cmd_seifert_census(args) -> str:
    fractions = _parse_fractions(args.fractions)
    result = ut_census_small(fractions)
    if args.format == "json":
        return canonical_json(
            {"fractions": [str(f) for f in fractions],
             "universally_tight": {"kind": result.kind, "value": result.value}}
        )
    word = "precisely" if result.kind == "exact" else "at most"
    return f"{word} {result.value} universally tight structures"


def cmd_seifert_decompose(args) -> str:
    s = _seifert_from_args(args)
    mixedness = classify_mixedness(s)
    if mixedness in (Mixedness.CANONICAL,) or (
        isinstance(s, SeifertPosE0) and s.is_terminal()
    ):
        if args.format == "json":
            return canonical_json({"mixedness": mixedness.name.lower(), "children": []})
        return f"{s.describe()}: {mixedness.value}; nothing to decompose"
    children = [
        ContactAssembly(tuple(parts))
        for parts, _deletions in s.decomposition_children()
    ]
    if args.format == "json":
        return canonical_json(
            {
                "mixedness": mixedness.name.lower(),
                "children": [_assembly_obj(a) for a in children],
            }
        )
    lines = [f"{s.describe()}: {mixedness.value}"]
    for i, a in enumerate(children):
        lines.append(f"  [{i}] {a.describe()}")
    return "\n".join(lines)


def cmd_seifert_tree(args) -> str:
    s = _seifert_from_args(args)
    pair = None
    if args.pair:
        i, j = (int(x) for x in args.pair.split(","))
        pair = (i, j)
    tree = build_seifert_tree(s, lightly_pair=pair)
    return emit_tree(tree, args.format if args.format != "text" else "text")


# ---------------------------------------------------------------------------
# cable / bundle subcommands
# ---------------------------------------------------------------------------


def cmd_cable_report(args) -> str:
    report = cable_report(CableInput(tb=args.tb, p=args.p, q=args.q))
    if args.format == "json":
        return canonical_json(
            {
                "tb_cable": report.tb_cable,
                "torus_knot_param": report.torus_knot_param,
                "lens": list(report.lens),
                "surgery_coeff": str(report.surgery_coeff),
            }
        )
    p, q = report.lens
    lens = "S^3" if (p, q) == (1, 0) else f"L({p},{q})"
    return (
        f"tb(cable) = {report.tb_cable}; fillings factor through {lens}; "
        f"surgery coefficient {report.surgery_coeff} on the companion"
    )


def cmd_cable_slopes(args) -> str:
    evidence = cable_slope_check(CableInput(tb=args.tb, p=args.p, q=args.q))
    if args.format == "json":
        return canonical_json(
            {
                "gamma_l": str(evidence.gamma_l),
                "gamma_sl": "inf",
                "meridian_vector": list(evidence.meridian_vector),
                "meridian_slope": str(evidence.meridian_slope),
                "window_slope": str(evidence.window_slope),
                "m": evidence.m,
            }
        )
    return (
        f"meridian vector {evidence.meridian_vector}, window slope "
        f"{evidence.window_slope} in (-1, 0); gluing slope m = {evidence.m}"
    )


def cmd_bundle_classify(args) -> str:
    report = bundle_classify(BundleInput(genus=args.g, euler=args.e))
    if args.format == "json":
        obj = {
            "genus": report.genus,
            "euler": report.euler,
            "budget": report.budget,
            "total": report.total,
            "ut": report.ut,
            "vot": report.vot,
            "vot_verdict": report.vot_verdict,
            "zero_twisting_verdict": report.zero_twisting_verdict,
        }
        if report.lens:
            obj["lens"] = list(report.lens)
        if report.note:
            obj["note"] = report.note
        return canonical_json(obj)
    if report.total is None:
        return report.note or report.vot_verdict
    return (
        f"{report.total} tight, {report.ut} UT, {report.vot} VOT "
        f"({report.vot_verdict})"
    )


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def cmd_selftest(args) -> str:
    """Randomized spot-checks of the main identities."""
    rng = random.Random(args.seed)
    lines = []

    failures = 0
    for _ in range(500):
        p = rng.randint(2, 2000)
        q = rng.choice([x for x in range(1, p) if _coprime(x, p)])
        coeffs = neg_cont_frac(p, q)
        if eval_cont_frac(coeffs) != Fraction(-p, q) or any(a > -2 for a in coeffs):
            failures += 1
    lines.append(_report("continued-fraction round trip (500 samples)", failures))

    failures = 0
    for _ in range(500):
        prefix = tuple(rng.randint(-9, -2) for _ in range(rng.randint(0, 6)))
        pivot = rng.randint(-9, -3)
        if pivot == -3 and not prefix:
            prefix = (-2,)
        m = rng.randint(0, 6)
        try:
            got = splitting_data(MixedTorusData(prefix=prefix, pivot=pivot, m=m))
            if got.branch_count != m + 2:
                failures += 1
        except InternalCheckError:
            failures += 1
    lines.append(_report("splitting-slope identities (500 samples)", failures))

    failures = 0
    for _ in range(200):
        length = rng.randint(1, 6)
        framings = [rng.randint(-9, -2) for _ in range(length)]
        chain = _random_chain(rng, framings)
        matrix = linking_matrix(chain)
        for j in range(length):
            left, right = split_at(chain, j)
            minor = _minor_det(matrix, j)
            if h1_order(left) * h1_order(right) != abs(minor):
                failures += 1
    lines.append(_report("linking-matrix minor conservation (200 chains)", failures))

    failures = 0
    for _ in range(200):
        tb = rng.randint(-20, 20)
        q = rng.randint(1, 20)
        p_max = q * (tb - 2) - 1
        p = rng.randint(p_max - 40, p_max)
        if _coprime(p, q):
            try:
                if cable_slope_check(CableInput(tb=tb, p=p, q=q)).m != 0:
                    failures += 1
            except (DomainError, InternalCheckError):
                failures += 1
    lines.append(_report("cable slope window (200 samples)", failures))

    total_failures = sum(1 for line in lines if "FAIL" in line)
    if total_failures:
        raise InternalCheckError("\n".join(lines))
    return "\n".join(lines)


def _report(name: str, failures: int) -> str:
    status = "ok" if failures == 0 else f"FAIL ({failures} failures)"
    return f"selftest: {name}: {status}"


def _coprime(a, b):
    from math import gcd

    return gcd(a, b) == 1


def _random_chain(rng, framings):
    from .chains import KnotNode

    nodes = []
    for a in framings:
        plus = rng.randint(0, -2 - a)
        nodes.append(KnotNode(a, plus, -2 - a - plus))
    return StabilizedChain(tuple(nodes))


def _minor_det(matrix, j):
    keep = [i for i in range(len(matrix)) if i != j]
    sub = [[matrix[r][c] for c in keep] for r in keep]
    # Bareiss, small sizes only
    n = len(sub)
    if n == 0:
        return 1
    sign, prev = 1, 1
    a = [row[:] for row in sub]
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for c in range(k + 1, n):
                a[i][c] = (a[i][c] * a[k][k] - a[i][k] * a[k][c]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_io_flags(parser):
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--in", dest="infile", default=None, metavar="FILE",
                        help="read a structure document (JSON); '-' for stdin")
    parser.add_argument("--out", default="-", metavar="FILE",
                        help="write output here; '-' for stdout")


def _add_chain_flags(parser):
    parser.add_argument("--chain", help="framings, e.g. '-4,-4,-2,-4'")
    parser.add_argument("--signs", help="stabilizations, e.g. '1+1-/2+/0/2-'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jsjcalc",
        description="Decomposition calculus for symplectic fillings of tight "
        "lens spaces, Seifert fibered spaces, cables, and circle bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lens = sub.add_parser("lens", help="lens-space chains")
    lens_sub = lens.add_subparsers(dest="subcommand", required=True)
    for name, func in (
        ("classify", cmd_lens_classify),
        ("tree", cmd_lens_tree),
        ("fossati", cmd_lens_fossati),
    ):
        p = lens_sub.add_parser(name)
        _add_chain_flags(p)
        _add_io_flags(p)
        p.set_defaults(func=func)
    p = lens_sub.add_parser("count")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    _add_io_flags(p)
    p.set_defaults(func=cmd_lens_count)

    seifert = sub.add_parser("seifert", help="Seifert fibered structures")
    seifert_sub = seifert.add_subparsers(dest="subcommand", required=True)
    for name, func, needs_signs in (
        ("classify", cmd_seifert_classify, True),
        ("decompose", cmd_seifert_decompose, True),
        ("tree", cmd_seifert_tree, True),
    ):
        p = seifert_sub.add_parser(name)
        p.add_argument("--fractions", help="e.g. '1/3,1/2,1/2' or '-1/2,-1/2,-2/3'")
        p.add_argument("--signs", help="per-leg fields joined by ';'")
        p.add_argument("--central", help="central stabilizations (negative regime)")
        if name == "tree":
            p.add_argument("--pair", help="pin the lightly mixed pair, e.g. '1,2'")
        _add_io_flags(p)
        p.set_defaults(func=func)
    for name, func in (
        ("count", cmd_seifert_count),
        ("census", cmd_seifert_census),
    ):
        p = seifert_sub.add_parser(name)
        p.add_argument("--fractions", required=True)
        _add_io_flags(p)
        p.set_defaults(func=func)

    cable = sub.add_parser("cable", help="Legendrian negative cables")
    cable_sub = cable.add_subparsers(dest="subcommand", required=True)
    for name, func in (("report", cmd_cable_report), ("slopes", cmd_cable_slopes)):
        p = cable_sub.add_parser(name)
        p.add_argument("--tb", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        _add_io_flags(p)
        p.set_defaults(func=func)

    bundle = sub.add_parser("bundle", help="circle bundles over surfaces")
    bundle_sub = bundle.add_subparsers(dest="subcommand", required=True)
    p = bundle_sub.add_parser("classify")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    _add_io_flags(p)
    p.set_defaults(func=cmd_bundle_classify)

    p = sub.add_parser("selftest", help="randomized identity checks")
    p.add_argument("--seed", type=int, default=0)
    _add_io_flags(p)
    p.set_defaults(func=cmd_selftest)

    return parser


_VALUE_FLAGS = {
    "--chain", "--signs", "--central", "--fractions", "--pair",
    "--in", "--out", "--format",
}


def _join_flag_values(argv):
    """Turn ['--chain', '-4,-2'] into ['--chain=-4,-2'].

    Framing lists start with '-', which argparse would otherwise read as an
    unknown option.
    """
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_flag_values(list(argv)))
    try:
        output = args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except DomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except InternalCheckError as err:
        print(f"internal check failed: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    _write_output(args, output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
