"""Command-line front end: compute tables, verify theorems, inspect maps.

Exit codes: 0 success, 1 parse/input errors, 2 precondition violations or
failed verifications.  With --format json the output is deterministic for a
fixed configuration (including the seed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import complexes
from .bicomplex import COHOMEOLOGY, HOMEOLOGY, build, build_relative
from .blocks import (
    block_bicomplex,
    block_complex_from_json,
    subdivision_block_complex,
    trivial_block_complex,
)
from .chains import chain_complex, cochain_complex, homology, relative_complex
from .errors import HomeolabError
from .exact import Z, parse_coefficients
from .morphisms import check_solid, graph_map, induced_page_map, make_monotone
from .spectral import PageComputation, limit, pages_for
from . import harness


def _parse_gen(text):
    if ":" in text:
        kind, _, arg = text.partition(":")
        return complexes.generate(kind, int(arg))
    if text == "point":
        return complexes.generate("points", 1)
    return complexes.generate(text, 0)


def _load_complex(args, attr="input", gen_attr="gen"):
    path = getattr(args, attr, None)
    gen = getattr(args, gen_attr, None)
    if (path is None) == (gen is None):
        raise SystemExit2("exactly one of --input and --gen is required", 1)
    if gen is not None:
        return _parse_gen(gen)
    text = open(path).read()
    if path.endswith(".json"):
        return complexes.from_json(text)
    return complexes.from_text(text)


class SystemExit2(SystemExit):
    def __init__(self, message, code):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(code)


def _group_str(g):
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    parts.extend(f"Z/{d}" for d in g.torsion)
    return " + ".join(parts) if parts else "0"


def _print_bigraded(groups, fmt, page=None, differentials=None):
    if fmt == "json":
        payload = {"page": page,
                   "groups": {f"{s},{t}": {"free_rank": g.free_rank,
                                           "torsion": list(g.torsion)}
                              for (s, t), g in sorted(groups.items())}}
        if differentials:
            payload["differentials"] = {
                f"{s},{t}": m.to_triplets() for (s, t), m in sorted(differentials.items())}
        print(json.dumps(payload, sort_keys=True))
        return
    for (s, t) in sorted(groups):
        g = groups[(s, t)]
        if not g.is_trivial:
            print(f"({s},{t}): {_group_str(g)}")


def _print_graded(groups, fmt):
    if fmt == "json":
        print(json.dumps({str(k): {"free_rank": g.free_rank, "torsion": list(g.torsion)}
                          for k, g in sorted(groups.items())}, sort_keys=True))
        return
    for k in sorted(groups):
        if not groups[k].is_trivial:
            print(f"degree {k}: {_group_str(groups[k])}")


def cmd_compute(args):
    K = _load_complex(args)
    coeff = parse_coefficients(args.coeff)
    theory = args.theory
    reduced = args.reduced
    sub = None
    if args.relative:
        text = open(args.relative).read()
        sub = (complexes.from_json(text) if args.relative.endswith(".json")
               else complexes.from_text(text))
    if theory in ("homology", "cohomology"):
        if sub is not None:
            C = relative_complex(K, sub, "homological" if theory == "homology"
                                 else "cohomological", reduced)
        else:
            C = chain_complex(K, reduced) if theory == "homology" \
                else cochain_complex(K, reduced)
        _print_graded(homology(C, coeff), args.format)
        return 0
    variant = COHOMEOLOGY if theory == "cohomeology" else HOMEOLOGY
    if args.block:
        if args.block == "trivial":
            B = trivial_block_complex(K)
        else:
            B = block_complex_from_json(json.loads(open(args.block).read()))
        bic = block_bicomplex(B, variant, reduced)
    elif sub is not None:
        bic = build_relative(K, sub, variant, reduced)
    else:
        bic = build(K, variant, reduced)
    if args.limit:
        lim = limit(bic, coeff)
        _print_graded(lim.groups, args.format)
        return 0
    comp = PageComputation(bic, coeff, r_max=args.page)
    pg = comp.pages[args.page]
    _print_bigraded(pg.groups, args.format, page=args.page,
                    differentials=pg.differentials if args.differentials else None)
    return 0


def cmd_verify(args):
    coeff = parse_coefficients(args.coeff)
    sub = args.what
    if sub == "invariance":
        rep = harness.verify_invariance(seed=args.seed, trials=args.trials,
                                        log=lambda line: print(line))
    elif sub == "convergence":
        rep = harness.verify_convergence(_load_complex(args))
    elif sub == "page0":
        rep = harness.verify_page0(_load_complex(args))
    elif sub == "cm":
        rep = harness.verify_cm(seed=args.seed)
    elif sub == "blocks":
        rep = harness.verify_blocks(seed=args.seed)
    elif sub == "sequences":
        rep = harness.verify_sequences(_load_complex(args))
    elif sub == "lefschetz":
        rep = harness.verify_lefschetz(coeff)
    elif sub == "fixtures":
        rep = harness.verify_fixture_tables(coeff)
    else:
        raise SystemExit2(f"unknown verification {sub!r}", 1)
    if args.format == "json":
        print(json.dumps({"passed": rep.passed, "failures": rep.failures,
                          "details": _jsonable(rep.details)}, sort_keys=True))
    else:
        print(f"{sub}: {'PASS' if rep.passed else 'FAIL'}")
        for f in rep.failures:
            print(f"  {f}")
    return 0 if rep.passed else 2


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool, float)) or x is None:
        return x
    return str(x)


def cmd_map(args):
    data = json.loads(open(args.map).read())
    source = complexes.from_json_dict(data["source"])
    target = complexes.from_json_dict(data["target"])
    vm = {k: v for k, v in data["vertex_map"].items()}
    coeff = parse_coefficients(args.coeff)
    if args.graph:
        f = check_solid(source, target, vm) if not args.allow_collapse else None
        if f is None:
            from .morphisms import SolidMap
            vmap = tuple(target.index_of(vm[name]) for name in source.vertices)
            f = SolidMap(source, target, vmap)
        if not f.is_monotone:
            f = make_monotone(f)
        g = graph_map(f)
        print("graph map is solid: source", g.source.f_vector(),
              "-> product", g.target.f_vector())
        return 0
    f = check_solid(source, target, vm)
    print("map is solid")
    variant = COHOMEOLOGY if args.theory == "cohomeology" else HOMEOLOGY
    pm = induced_page_map(f, args.page, coeff, variant, args.reduced)
    for st in sorted(pm.blocks):
        print(f"({st[0]},{st[1]}): {pm.matrix(st).to_triplets()}")
    ok = pm.commutes_with_differentials()
    print(f"commutes with page differentials: {ok}")
    return 0 if ok else 2


def build_parser():
    p = argparse.ArgumentParser(prog="homeolab",
                                description="Exact (co)homeology computations "
                                            "on finite simplicial complexes")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("HOMEOLAB_THREADS", "1")),
                   help="cap on harness parallelism (runs are sequential and "
                        "deterministic; values > 1 are accepted and capped)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="print a group table")
    c.add_argument("--input", help="complex file (.json or facet text)")
    c.add_argument("--gen", help="builtin generator, e.g. disk:3, cycle:5, point")
    c.add_argument("--theory", default="cohomeology",
                   choices=["homology", "cohomology", "homeology", "cohomeology"])
    c.add_argument("--reduced", action="store_true")
    c.add_argument("--relative", help="subcomplex file for relative theories")
    c.add_argument("--block", help="'trivial' or a block-complex JSON file")
    c.add_argument("--page", type=int, default=1)
    c.add_argument("--limit", action="store_true",
                   help="print the convergence groups instead of a page")
    c.add_argument("--differentials", action="store_true")
    c.add_argument("--coeff", default="Z")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--format", default="table", choices=["table", "json"])
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification harness")
    v.add_argument("what", choices=["invariance", "convergence", "page0", "cm",
                                    "blocks", "sequences", "lefschetz", "fixtures"])
    v.add_argument("--input", help="complex file for the single-complex checks")
    v.add_argument("--gen", help="builtin generator for the single-complex checks")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--coeff", default="Z")
    v.add_argument("--format", default="table", choices=["table", "json"])
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("map", help="induced maps of a solid map")
    m.add_argument("--map", required=True, help="JSON with source/target/vertex_map")
    m.add_argument("--graph", action="store_true", help="build the graph map instead")
    m.add_argument("--allow-collapse", action="store_true",
                   help="with --graph: accept simplicial maps that collapse")
    m.add_argument("--theory", default="cohomeology",
                   choices=["homeology", "cohomeology"])
    m.add_argument("--reduced", action="store_true")
    m.add_argument("--page", type=int, default=1)
    m.add_argument("--coeff", default="Z")
    m.set_defaults(func=cmd_map)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0   # parse errors exit 1, --help exits 0
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except SystemExit2:
        raise
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as e:
        print(f"error: bad JSON input: {e}", file=sys.stderr)
        return 1
    except HomeolabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
