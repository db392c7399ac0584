"""Command-line interface: ``pddkit <command> ...``.

Exit codes: 0 ok, 1 verdict "no" under ``--exit-verdict``, 2 error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import PDDError
from .foodweb import is_directed_bipartite
from .formats import parse_fraction, parse_graph, parse_instance, parse_taxon_list, write_instance
from .generate import random_instance
from .instance import ViabilityMode
from .kernel import find_clique_modulator, kernelize
from .oracle import brute_force_oracle
from .reductions import (
    clique_gadget_d,
    clique_gadget_dbar,
    cross_compose,
    eps_to_alpha,
    one_to_alpha_variant_a,
    one_to_alpha_variant_b,
)
from .solver import solve_exact


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, path: str | None, fallback=None):
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        (fallback or sys.stdout).write(text)


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    if args.oracle:
        out = brute_force_oracle(inst)
    else:
        out = solve_exact(inst, prune=not args.no_prune, jobs=args.jobs)
    print("YES" if out.verdict else "NO")
    if out.witness is not None:
        print("witness: " + " ".join(out.witness.sorted_taxa()))
        print(f"pd: {out.witness.pd_value}")
    print(f"explored: {out.explored}")
    if args.exit_verdict and not out.verdict:
        return 1
    return 0


def cmd_kernelize(args) -> int:
    inst = parse_instance(_read(args.file))
    if args.modulator:
        Z = parse_taxon_list(_read(args.modulator))
    else:
        Z = find_clique_modulator(inst.web)
    reduced, trace = kernelize(inst, Z)
    _emit(write_instance(reduced), args.output)
    _emit(trace.report(), args.report, sys.stderr)
    return 0


def cmd_reduce(args) -> int:
    inst = parse_instance(_read(args.file))
    alpha = parse_fraction(args.alpha)
    if args.kind == "one-to-alpha":
        fn = one_to_alpha_variant_a if args.variant == "a" else one_to_alpha_variant_b
        if not inst.mode.is_one:
            raise PDDError(f"one-to-alpha expects a 'mode alpha 1/1' instance, got mode {inst.mode}")
    else:
        fn = eps_to_alpha
        if inst.mode.kind != "epsilon":
            raise PDDError(f"eps-to-alpha expects a 'mode epsilon' instance, got mode {inst.mode}")
    reduced, receipt = fn(inst, alpha)
    _emit(write_instance(reduced), args.output)
    _emit(receipt.report(), args.report, sys.stderr)
    return 0


def cmd_gadget(args) -> int:
    g = parse_graph(_read(args.graph))
    fn = clique_gadget_d if args.kind == "clique-d" else clique_gadget_dbar
    _emit(write_instance(fn(g)), args.output)
    return 0


def cmd_compose(args) -> int:
    graphs = [parse_graph(_read(p), k=args.k) for p in args.graphs]
    inst, receipt = cross_compose(graphs)
    _emit(write_instance(inst), args.output)
    _emit(receipt.report(), args.report, sys.stderr)
    return 0


def cmd_verify(args) -> int:
    a = brute_force_oracle(parse_instance(_read(args.a)))
    b = brute_force_oracle(parse_instance(_read(args.b)))
    same = a.verdict == b.verdict
    print("EQUIVALENT" if same else "DIFFER")
    print(f"verdicts: {'YES' if a.verdict else 'NO'} / {'YES' if b.verdict else 'NO'}")
    if args.exit_verdict and not same:
        return 1
    return 0


def cmd_stats(args) -> int:
    inst = parse_instance(_read(args.file))
    web = inst.web
    Z = find_clique_modulator(web)
    print(f"taxa: {len(inst.taxa)}")
    print(f"tree edges: {len(inst.tree.edges)}")
    print(f"star: {'yes' if inst.tree.is_star() else 'no'}")
    print(f"food-web edges: {len(web.edges)}")
    print(f"sources: {len(web.sources())}")
    print(f"max in-degree: {web.max_in_degree()}")
    print(f"directed bipartite: {'yes' if is_directed_bipartite(web) else 'no'}")
    print(f"clique modulator size: {len(Z)}")
    print(f"mode: {inst.mode}")
    print(f"k: {inst.k}  D: {inst.D}")
    print(f"k_bar: {inst.k_bar}  D_bar: {inst.D_bar}")
    return 0


def _mode(text: str) -> ViabilityMode:
    toks = text.split()
    if toks and toks[0] == "alpha" and len(toks) == 2:
        return ViabilityMode.of_alpha(parse_fraction(toks[1]))
    if len(toks) == 1 and toks[0] in ("epsilon", "gamma"):
        return ViabilityMode(toks[0])
    if len(toks) == 1:
        return ViabilityMode.of_alpha(parse_fraction(toks[0]))
    raise argparse.ArgumentTypeError(f"bad mode {text!r}")


def cmd_gen(args) -> int:
    inst = random_instance(
        args.taxa,
        args.edges,
        args.seed,
        star_tree=not args.tree,
        gamma=args.gamma,
        k=args.k,
        D=args.D,
        mode=args.mode,
    )
    _emit(write_instance(inst), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pddkit", description="Phylogenetic diversity with food-web dependencies.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="use the unpruned brute-force oracle")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exit-verdict", action="store_true", help="exit 1 on NO")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="distance-to-clique kernel (mode alpha 1/1)")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--modulator", help="file listing the modulator taxa")
    g.add_argument("--auto", action="store_true", help="search for a modulator (default)")
    p.add_argument("-o", "--output")
    p.add_argument("--report", help="trace report file (default: stderr)")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("reduce", help="transform to an alpha-viability instance")
    p.add_argument("kind", choices=["one-to-alpha", "eps-to-alpha"])
    p.add_argument("file")
    p.add_argument("--alpha", required=True, help="rational p/q")
    p.add_argument("--variant", choices=["a", "b"], default="a")
    p.add_argument("-o", "--output")
    p.add_argument("--report", help="receipt file (default: stderr)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gadget", help="clique gadget instance from a graph file")
    p.add_argument("kind", choices=["clique-d", "clique-dbar"])
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("compose", help="OR-compose clique instances")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("graphs", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--report", help="receipt file (default: stderr)")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="compare oracle verdicts of two instances")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--exit-verdict", action="store_true", help="exit 1 on DIFFER")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="summary numbers for an instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="seeded random instance")
    p.add_argument("--taxa", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    shape = p.add_mutually_exclusive_group()
    shape.add_argument("--star", action="store_true", help="star tree (default)")
    shape.add_argument("--tree", action="store_true", help="random multifurcating tree")
    p.add_argument("--gamma", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--D", type=int)
    p.add_argument("--mode", type=_mode, help="epsilon | gamma | alpha p/q")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PDDError, ValueError, OSError) as err:
        print(f"pddkit {args.command}: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
