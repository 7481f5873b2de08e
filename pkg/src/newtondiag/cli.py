"""Command-line front end.

Every subcommand parses flags, calls one library operation and serialises
the result.  ``--json`` prints a versioned report; exit codes are 0 success,
1 input error or failed verdict, 2 theorem contradiction, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import crmap as crmap_mod
from . import diagram as dg
from . import faces2d, oracle, whitney
from .errors import BudgetExceeded, NotInHError, PolynomialSyntaxError, TheoremContradiction
from .polynomial import divide_by_hyperplane, format_polynomial, is_in_H, parse

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_CONTRADICTION, EXIT_BUDGET = 0, 1, 2, 3


class VerdictFailure(Exception):
    """A check ran cleanly but its verdict is negative."""


def _frac(x):
    return str(x) if getattr(x, "denominator", 1) != 1 else int(x)


def _report(command, inputs, verdicts, result, fixtures=(), timings=None):
    rep = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "verdicts": verdicts,
        "result": result,
        "fixtures": list(fixtures),
    }
    if timings is not None:
        rep["timings"] = timings
    return rep


def _read_poly(args):
    if args.file:
        text = Path(args.file).read_text()
        fixtures = [args.file]
    elif args.poly is not None:
        text, fixtures = args.poly, []
    else:
        raise ValueError("give a polynomial or --file")
    return parse(text.strip(), args.dim), text.strip(), fixtures


# -- commands -------------------------------------------------------------------

def cmd_check(args):
    p, text, fx = _read_poly(args)
    membership = is_in_H(p)
    verdicts = {"in_H": membership.in_h}
    result = {"polynomial": format_polynomial(p), "N": len(p), "d": p.degree}
    lines = [f"p = {format_polynomial(p, aliases=True)}", f"in-H: {str(membership.in_h).lower()}"]
    if not membership:
        if membership.negative_term is not None:
            result["witness"] = {"negative_term": list(membership.negative_term)}
            lines.append(f"  negative coefficient at {membership.negative_term}")
        else:
            result["witness"] = {"point": [_frac(v) for v in membership.point]}
            lines.append(f"  p != 1 at hyperplane point ({', '.join(str(v) for v in membership.point)})")
        return _report("check", {"polynomial": text, "dim": args.dim}, verdicts, result, fx), lines, False
    rep = whitney.check_degree_bound(p)
    D = dg.NewtonDiagram.from_polynomial(p)
    nodes = D.node_count()
    verdicts.update({
        "bound_holds": True,
        "tight": rep.tight,
        "sharp_whitney": whitney.is_sharp_whitney(p),
        "unique_source": dg.check_sink_source_structure(D),
        "nodes_minus_one_le_N": nodes - 1 <= len(p),
    })
    result.update(rep.to_dict())
    result["node_count"] = nodes
    lines.append(f"d={rep.d}, N={rep.N}, bound {_frac(rep.bound)}, {'tight' if rep.tight else 'not tight'}")
    lines.append(f"sharp generalized Whitney: {str(verdicts['sharp_whitney']).lower()}")
    lines.append(f"#(D) = {nodes}")
    ok = verdicts["unique_source"] and verdicts["nodes_minus_one_le_N"]
    return _report("check", {"polynomial": text, "dim": args.dim}, verdicts, result, fx), lines, ok


def cmd_quotient(args):
    p, text, fx = _read_poly(args)
    q, r = divide_by_hyperplane(p)
    result = {"q": format_polynomial(q), "r": format_polynomial(r)}
    lines = [f"q = {format_polynomial(q, aliases=True)}", f"r = {format_polynomial(r, aliases=True)}"]
    return _report("quotient", {"polynomial": text, "dim": args.dim}, {"divisible": r.is_zero()}, result, fx), lines, True


def _diagram_for(args):
    p, text, fx = _read_poly(args)
    D = dg.NewtonDiagram.from_polynomial(p)
    if getattr(args, "size", None) is not None and D.size != args.size:
        raise ValueError(f"diagram has size {D.size}, expected {args.size}")
    return D, text, fx


def cmd_diagram(args):
    D, text, fx = _diagram_for(args)
    dump = D.dump()
    verdicts = {"unique_source": dg.check_sink_source_structure(D)}
    lines = [D.ascii(), f"size {D.size}, #(D) = {D.node_count()}"]
    lines += [f"  {r.kind:<6} {r.position} {r.geometry}" for r in D.nodes()]
    return _report("diagram", {"polynomial": text, "dim": args.dim}, verdicts, dump, fx), lines, True


def cmd_view(args):
    D, text, fx = _diagram_for(args)
    V = dg.view(D, args.from_, args.to)
    hidden = D.node_count() - V.node_count()
    verdicts = {"view_le_diagram": hidden >= 0, "unique_source": dg.check_sink_source_structure(V)}
    result = {"view": V.dump(), "hidden_nodes": hidden}
    lines = [V.ascii(), f"#(D) = {D.node_count()}, #(V) = {V.node_count()}, hidden {hidden}"]
    inputs = {"polynomial": text, "dim": args.dim, "from": args.from_, "to": args.to}
    return _report("view", inputs, verdicts, result, fx), lines, hidden >= 0


def cmd_whitney(args):
    trace = whitney.generate(args.dim, args.degree, args.chooser)
    p = trace.polynomial
    rep = whitney.check_degree_bound(p) if p.degree >= 1 else None
    D = dg.NewtonDiagram.from_polynomial(p)
    verdicts = {
        "in_H": is_in_H(p).in_h,
        "term_count_ok": len(p) == args.degree * (args.dim - 1) + 1,
        "sharp_whitney": whitney.is_sharp_whitney(p),
        "node_count_ok": D.node_count() == (args.dim - 1) * args.degree + 2,
    }
    result = {"polynomial": format_polynomial(p), "moves": [list(m) for m in trace.moves],
              "report": rep.to_dict(), "node_count": D.node_count()}
    lines = [format_polynomial(p), json.dumps(rep.to_dict())]
    inputs = {"dim": args.dim, "degree": args.degree, "chooser": args.chooser}
    return _report("whitney", inputs, verdicts, result), lines, all(verdicts.values())


def cmd_crmap(args):
    f = crmap_mod.parse_map(Path(args.file).read_text(), args.dim)
    p = crmap_mod.squared_norm(f)
    proper = crmap_mod.is_proper(f)
    result = {"squared_norm": format_polynomial(p)}
    verdicts = {"proper": proper}
    if proper:
        rep = crmap_mod.corollary_report(f)
        result.update(rep.to_dict())
        verdicts["holds"] = rep.holds
        lines = [json.dumps(rep.to_dict())]
    else:
        lines = [f"not proper: ||f||^2 = {format_polynomial(p)} is not 1 on the sphere"]
    return _report("crmap", {"file": args.file, "dim": f.dimension}, verdicts, result, [args.file]), lines, proper


def cmd_search(args):
    t0 = time.perf_counter()
    if args.symmetric:
        rep = oracle.symmetric_check(args.size)
        result = rep.to_dict()
        lines = [f"symmetric d={args.size}: {rep.diagrams} diagrams, {rep.single_point} with #(D)=3, "
                 f"min deficit otherwise {rep.min_deficit}"]
        verdicts = {"dichotomy": True}
        inputs = {"symmetric": True, "size": args.size}
    else:
        rep = oracle.verify_bound(args.dim, args.size, workers=args.workers, prune=not args.no_prune,
                                  budget=args.budget)
        result = rep.to_dict()
        top = rep.top
        verdicts = {"bound_holds": True}
        if args.dim >= 4:
            verdicts["all_minimizers_one_point_per_degree"] = top.non_whitney == 0
        lines = [f"n={args.dim} size={args.size}: min #(D) = {rep.min_node_count} (bound {rep.bound}), "
                 f"{top.minimizers} minimizers, {top.one_point_per_degree} one-point-per-degree"]
        for s in sorted(rep.sizes):
            r = rep.sizes[s]
            lines.append(f"  size {s}: {r.diagrams} diagrams, min {r.min_node_count}")
        if args.audit:
            audit = oracle.hidden_node_audit(args.dim, args.size, budget=args.budget)
            result["audit"] = audit.to_dict()
            verdicts["hidden_node_audit"] = True
            lines.append(f"hidden-node audit: {audit.diagrams} diagrams, "
                         f"{audit.strengthened} strengthened cases, min slack {audit.min_slack}")
        if args.dump_minimizers:
            dumps = [D.dump() for D in rep.minimizer_diagrams()]
            Path(args.dump_minimizers).write_text(json.dumps(dumps, indent=1) + "\n")
        inputs = {"dim": args.dim, "size": args.size}
    timings = {"seconds": round(time.perf_counter() - t0, 3)} if args.timings else None
    return _report("search", inputs, verdicts, result, timings=timings), lines, True


def cmd_lemma42(args):
    extra = []
    if args.random:
        rng = random.Random(args.seed)
        extra = [oracle.random_simple_diagram(rng) for _ in range(args.random)]
    rep = oracle.lemma_check(args.height, args.width, extra)
    lines = [f"{rep.diagrams} simple diagrams, {len(rep.failures)} bound failures, "
             f"{len(rep.fill_failures)} fill failures, min slack {rep.min_slack}"]
    if rep.failures:
        raise TheoremContradiction("2f+e+c < height+1", rep.failures[0])
    inputs = {"height": args.height, "width": args.width, "random": args.random, "seed": args.seed}
    return _report("lemma42", inputs, {"lemma": not rep.failures, "fill": not rep.fill_failures},
                   rep.to_dict()), lines, rep.ok


def cmd_faces(args):
    D, text, fx = _diagram_for(args)
    fs = dg.faces(D)
    result = {"faces": [f.to_dict() for f in fs]}
    lines = [f"{f.kind:<10} axes {f.axes} fixed {f.fixed} nodes {f.node_count}: {list(f.points)}" for f in fs]
    if dg.check_sink_source_structure(D):
        sets = {}
        for k, m in dg.view_pairs(D.dimension):
            members = faces2d.complete_simple_set(D, k, m)
            sets[f"{k},{m}"] = [
                {"fixed": list(F.fixed), "start_degree": F.start_degree, "height": F.height,
                 "grid": F.simple.grid(), "count": vars(faces2d.face_node_count(F.simple))}
                for F in members
            ]
            lines.append(f"edge ({k},{m}): heights {[F.height for F in members]}")
        result["complete_simple_sets"] = sets
    return _report("faces", {"polynomial": text, "dim": args.dim}, {}, result, fx), lines, True


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="newtondiag", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, poly=True):
        p.add_argument("--json", action="store_true", help="print the JSON report")
        if poly:
            p.add_argument("poly", nargs="?", help="polynomial text, e.g. 'x^3+3*x*y+y^3'")
            p.add_argument("--dim", type=int, required=True)
            p.add_argument("--file", help="read the polynomial from a file")
        return p

    common(sub.add_parser("check", help="membership in H, degree bound, Whitney test")).set_defaults(fn=cmd_check)
    common(sub.add_parser("quotient", help="q and r from dividing p-1 by s-1")).set_defaults(fn=cmd_quotient)
    p = common(sub.add_parser("diagram", help="Newton diagram dump"))
    p.add_argument("--size", type=int, help="require this diagram size")
    p.set_defaults(fn=cmd_diagram)
    p = common(sub.add_parser("view", help="V(D, k, m)"))
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--size", type=int, help="require this diagram size")
    p.set_defaults(fn=cmd_view)
    p = common(sub.add_parser("faces", help="faces and complete simple sets"))
    p.set_defaults(fn=cmd_faces)

    p = common(sub.add_parser("whitney", help="build a sharp generalized Whitney polynomial"), poly=False)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--chooser", default="lex", help="lex or seed:<int>")
    p.set_defaults(fn=cmd_whitney)

    p = common(sub.add_parser("crmap", help="monomial map properness and degree bound"), poly=False)
    p.add_argument("--file", required=True)
    p.add_argument("--dim", type=int, help="source dimension (default: largest z index)")
    p.set_defaults(fn=cmd_crmap)

    p = common(sub.add_parser("search", help="exhaustive diagram search"), poly=False)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-minimizers", help="write minimizer diagrams as JSON")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--budget", type=int, default=oracle.BUDGET)
    p.add_argument("--audit", action="store_true", help="also run the hidden-node audit (n >= 4)")
    p.add_argument("--symmetric", action="store_true", help="check symmetric 2-D diagrams of degree --size")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = common(sub.add_parser("lemma42", help="2f+e+c >= height+1 on small simple diagrams"), poly=False)
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--random", type=int, default=0, help="also check this many random simple diagrams")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_lemma42)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, lines, ok = args.fn(args)
    except TheoremContradiction as exc:
        print(f"THEOREM CONTRADICTION: {exc}", file=sys.stderr)
        if exc.dump is not None:
            print(json.dumps(exc.dump, indent=1), file=sys.stderr)
        return EXIT_CONTRADICTION
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PolynomialSyntaxError, NotInHError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        print("\n".join(lines))
    return EXIT_OK if ok else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
