"""Command-line front end: ``weyl <command> SYSTEM.json [options]``.

Exit status: 0 success, 1 input error, 2 a computation limit was hit,
3 an internal cross-check failed.
"""
from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction
from pathlib import Path

from . import catalog, davis, decompose, invariants, words
from .core import CoxeterSystem, format_label, parse_system
from .cosetgraph import chamber_graph, coset_graph, ends_estimate, is_tree_within_ball
from .errors import InvariantViolation, LimitExceeded, WeylError

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3

PREDICATES = {
    "spherical": decompose.SPHERICAL,
    "affine": decompose.SPHERICAL_OR_AFFINE,
    "one-ended": decompose.AT_MOST_ONE_END,
}


def _subsets(sys: CoxeterSystem, sets):
    return [list(sys.ordered(J)) for J in sets]


def cmd_classify(sys, args):
    comps = []
    for C, label in catalog.component_types(sys):
        comps.append({
            "generators": list(sys.ordered(C)),
            "family": label.family,
            "name": label.name,
            "signature_agrees": label.signature_agrees,
        })
    return {
        "spherical": catalog.is_spherical(sys),
        "order": format_label(catalog.group_order(sys)),
        "components": comps,
        "maximal_spherical_subsets": _subsets(sys, catalog.maximal_spherical_subsets(sys)),
        "signature": list(catalog.bilinear_signature(sys)),
        "provenance": {"type": "CATALOG", "signature": "EIGENVALUE_CROSS_CHECK"},
    }


def cmd_invariants(sys, args):
    q = _thickness(args.thickness) if args.thickness else None
    return invariants.invariant_report(sys, q).to_dict()


def cmd_ends(sys, args):
    e = decompose.ends(sys)
    dec = decompose.find_spherical_infinity_decomposition(sys)
    out = {
        "ends": e.value if e.value != decompose.INFINITY else "inf",
        "provenance": {"rules": list(e.provenance), "route": "XI_J_ROUTE"},
        "decomposition": None,
    }
    if dec is not None:
        out["decomposition"] = {
            "down": list(sys.ordered(dec.down)),
            "up": list(sys.ordered(dec.up)),
            "meet": list(sys.ordered(dec.meet)),
        }
    return out


def cmd_decompose(sys, args):
    if args.strategy == "clique-tree":
        gog = decompose.visual_decomposition(sys, PREDICATES[args.predicate])
    else:
        gog = decompose.accessibility_tree(sys)
    if args.format == "dot":
        return gog.to_dot(sys)
    return gog.to_dict(sys)


def cmd_davis(sys, args):
    table = davis.cohomology_table(sys)
    if args.format == "tsv":
        width = max(len(d) for d in table.values())
        lines = ["J\t" + "\t".join(f"H{k}" for k in range(width))]
        for J, dims in table.items():
            lines.append(",".join(sys.ordered(J)) + "\t" + "\t".join(map(str, dims)))
        return "\n".join(lines) + "\n"
    return {
        "rational_cd": davis.rational_cd(sys),
        "relative_cohomology": [
            {"J": list(sys.ordered(J)), "dims": dims} for J, dims in table.items()
        ],
        "more_than_one_end": davis.more_than_one_end_h1(sys),
        "provenance": {"rational_cd": "DAVIS_ROUTE"},
    }


def cmd_growth(sys, args):
    b = words.ball(sys, args.radius)
    counts = sorted(b.descent_counts.items(), key=lambda kv: (len(kv[0]), list(sys.ordered(kv[0]))))
    out = {
        "radius": args.radius,
        "sphere_sizes": list(b.sphere_sizes),
        "ball_size": len(b),
        "descent_counts": [{"descent": list(sys.ordered(d)), "count": c} for d, c in counts],
    }
    if args.t is not None:
        value = words.poincare_partial(sys, args.radius, args.t)
        out["partial_growth_series"] = {"t": str(args.t), "value": str(value)}
    out["convergence_exponent"] = words.convergence_exponent(sys)
    return out


def _thickness(text):
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise argparse.ArgumentTypeError(f"bad thickness JSON: {exc}") from None
        return doc
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"thickness entry {part!r} is not name=value")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise argparse.ArgumentTypeError(f"thickness of {k!r} is not an integer") from None
    return out


def cmd_double_cosets(sys, args):
    counts = words.double_coset_counts(sys, _thickness(args.thickness), args.max)
    return {
        "max": args.max,
        "radius": args.max.bit_length() - 1,
        "counts": {str(n): c for n, c in counts.items()},
        "total": sum(counts.values()),
    }


def _load_gog(sys, path):
    return decompose.GraphOfSpecialSubgroups.from_json(sys, Path(path).read_text(encoding="utf-8"))


def cmd_coset_graph(sys, args):
    if args.gog:
        gog = _load_gog(sys, args.gog)
    else:
        gog = decompose.visual_decomposition(sys, PREDICATES[args.predicate])
    g = coset_graph(sys, gog, args.radius)
    if args.format == "dot":
        return g.to_dot()
    v = is_tree_within_ball(g)
    out = g.to_dict()
    out["verdict"] = v.verdict
    out["witness"] = None if v.witness is None else [[k, list(r.word)] for k, r in v.witness]
    out["caveat"] = v.caveat
    return out


def cmd_chamber_graph(sys, args):
    g = chamber_graph(sys, args.radius)
    if args.format == "dot":
        return g.to_dot()
    return {
        "radius": g.radius,
        "vertices": [list(v.word) for v in g.vertices],
        "edges": [[list(u.word), list(v.word), s] for u, v, s in g.edges],
    }


def cmd_ends_estimate(sys, args):
    g = chamber_graph(sys, args.R)
    est = ends_estimate(g, args.r, args.R)
    return {
        "estimate": est.value,
        "r": est.r,
        "R": est.R,
        "provenance": "BALL_COMPLEMENT_LOWER_BOUND",
    }


COMMANDS = {
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "ends": cmd_ends,
    "decompose": cmd_decompose,
    "davis": cmd_davis,
    "growth": cmd_growth,
    "double-cosets": cmd_double_cosets,
    "coset-graph": cmd_coset_graph,
    "chamber-graph": cmd_chamber_graph,
    "ends-estimate": cmd_ends_estimate,
}


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(_sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input", help="system JSON file, or a directory with --each")
    common.add_argument("--each", action="store_true",
                        help="treat INPUT as a directory and run on every *.json inside")
    common.add_argument("--ball-cap", type=_positive, default=words.BALL_CAP)
    common.add_argument("--braid-cap", type=_positive, default=words.BRAID_CLASS_CAP)
    common.add_argument("--config", help="JSON file with option defaults (same names as flags)")

    p = _Parser(prog="weyl", description="Weyl invariants of Coxeter systems")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("classify", parents=[common])
    s = sub.add_parser("invariants", parents=[common])
    s.add_argument("--json", action="store_true", help="JSON output (the default)")
    s.add_argument("--thickness", help="q values as a=2,b=3 or a JSON object")
    sub.add_parser("ends", parents=[common])
    s = sub.add_parser("decompose", parents=[common])
    s.add_argument("--predicate", choices=sorted(PREDICATES), default="spherical")
    s.add_argument("--strategy", choices=["clique-tree", "iterated-split"], default="clique-tree")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s = sub.add_parser("davis", parents=[common])
    s.add_argument("--table", action="store_true", help="print the full table (always included)")
    s.add_argument("--format", choices=["json", "tsv"], default="json")
    s = sub.add_parser("growth", parents=[common])
    s.add_argument("--radius", type=_nonneg, default=4)
    s.add_argument("--t", type=_fraction, help="evaluate the truncated growth series at t (e.g. 1/4)")
    s = sub.add_parser("double-cosets", parents=[common])
    s.add_argument("--thickness", "--q", dest="thickness", required=True,
                   help="q values as s=2,t=3 or a JSON object")
    s.add_argument("--max", "--N", dest="max", type=_positive, required=True)
    s = sub.add_parser("coset-graph", parents=[common])
    s.add_argument("--gog", help="graph-of-groups JSON; default: spherical clique tree")
    s.add_argument("--predicate", choices=sorted(PREDICATES), default="spherical")
    s.add_argument("--radius", type=_nonneg, default=3)
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s = sub.add_parser("chamber-graph", parents=[common])
    s.add_argument("--radius", type=_nonneg, default=3)
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s = sub.add_parser("ends-estimate", parents=[common])
    s.add_argument("--r", type=_nonneg, default=1)
    s.add_argument("--R", type=_positive, default=6)
    return p


def _apply_config(parser, argv, args):
    if not args.config:
        return args
    try:
        doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(doc, dict):
        parser.error("config must be a JSON object")
    known = vars(args)
    defaults = {}
    for key, val in doc.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("command", "input", "config"):
            parser.error(f"unknown config key {key!r}")
        defaults[dest] = val
    # explicit flags win over the config file
    sub = parser._subparsers._group_actions[0].choices[args.command]
    sub.set_defaults(**defaults)
    new = parser.parse_args(argv)
    for dest in ("ball_cap", "braid_cap"):
        v = getattr(new, dest)
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            parser.error(f"{dest} must be a positive integer")
    return new


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _run_one(path: Path, args) -> tuple[int, object]:
    try:
        sys = parse_system(path.read_bytes())
        return EXIT_OK, COMMANDS[args.command](sys, args)
    except OSError as exc:
        return EXIT_INPUT, {"error": "IO", "message": str(exc)}
    except argparse.ArgumentTypeError as exc:
        return EXIT_INPUT, {"error": "MALFORMED", "message": str(exc)}
    except LimitExceeded as exc:
        return EXIT_LIMIT, {"error": exc.code, "message": str(exc)}
    except InvariantViolation as exc:
        return EXIT_INTERNAL, {"error": exc.code, "message": str(exc)}
    except WeylError as exc:
        return EXIT_INPUT, {"error": exc.code, "message": str(exc)}


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(_sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    args = _apply_config(parser, argv, args)
    words.set_limits(braid_class=args.braid_cap, ball=args.ball_cap)

    target = Path(args.input)
    if args.each:
        if not target.is_dir():
            print(f"weyl: {target} is not a directory", file=_sys.stderr)
            return EXIT_INPUT
        results, worst = {}, EXIT_OK
        for f in sorted(target.glob("*.json")):
            code, out = _run_one(f, args)
            results[f.name] = {"exit": code, "result": out}
            worst = max(worst, code)
        _sys.stdout.write(_render(results))
        return worst

    code, out = _run_one(target, args)
    if code == EXIT_OK:
        _sys.stdout.write(_render(out))
    else:
        print(f"weyl: {out['error']}: {out['message']}", file=_sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
