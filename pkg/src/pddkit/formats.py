"""Plain-text instance and graph files.

Instance file::

    # comment
    mode alpha 1/2          # or: mode epsilon | mode gamma
    k 3
    D 10
    tree
    rho a 3                 # parent child weight
    foodweb
    a b                     # prey predator [gamma as p/q]

A ``root NAME`` header line is written only for trees without edges.

Graph file::

    k 3
    vertex w                # isolated vertex
    u v                     # undirected edge
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FormatError, PDDError
from .foodweb import FoodWeb
from .instance import Instance, ViabilityMode, validate_instance
from .reductions import CliqueInput
from .tree import PhyloTree


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", no) from None


def parse_fraction(tok: str, no: int | None = None) -> Fraction:
    num, sep, den = tok.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"expected a rational p/q, got {tok!r}", no) from None


def format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_instance(text: str) -> Instance:
    mode = k = D = root = None
    tree_edges: list[tuple[str, str, int]] = []
    web_edges: list[tuple[str, str]] = []
    gamma: dict = {}
    saw_gamma = saw_plain = False
    section = "header"
    web_line: dict[tuple[str, str], int] = {}
    for no, toks in _lines(text):
        head = toks[0]
        if head == "tree" and len(toks) == 1:
            section = "tree"
            continue
        if head == "foodweb" and len(toks) == 1:
            section = "foodweb"
            continue
        if section == "header":
            if head == "mode":
                if len(toks) == 2 and toks[1] in ("epsilon", "gamma"):
                    mode = ViabilityMode(toks[1])
                elif len(toks) == 3 and toks[1] == "alpha":
                    try:
                        mode = ViabilityMode.of_alpha(parse_fraction(toks[2], no))
                    except ValueError as err:
                        raise FormatError(str(err), no) from None
                else:
                    raise FormatError("mode line must be 'mode epsilon', 'mode gamma' or 'mode alpha p/q'", no)
            elif head in ("k", "D") and len(toks) == 2:
                v = _int(toks[1], no, head)
                if v < 0:
                    raise FormatError(f"{head} must be nonnegative", no)
                if head == "k":
                    k = v
                else:
                    D = v
            elif head == "root" and len(toks) == 2:
                root = toks[1]
            else:
                raise FormatError(f"unexpected header line {' '.join(toks)!r}", no)
        elif section == "tree":
            if len(toks) != 3:
                raise FormatError("tree lines are 'parent child weight'", no)
            w = _int(toks[2], no, "edge weight")
            if w < 1:
                raise FormatError("weights are positive integers", no)
            tree_edges.append((toks[0], toks[1], w))
        else:
            if len(toks) not in (2, 3):
                raise FormatError("foodweb lines are 'prey predator [p/q]'", no)
            e = (toks[0], toks[1])
            if e in web_line:
                raise FormatError(f"duplicate food-web edge (first on line {web_line[e]})", no)
            web_line[e] = no
            web_edges.append(e)
            if len(toks) == 3:
                g = parse_fraction(toks[2], no)
                if not 0 < g <= 1:
                    raise FormatError(f"gamma {toks[2]} outside (0, 1]", no)
                gamma[e] = g
                saw_gamma = True
            else:
                saw_plain = True
    for name, val in (("mode", mode), ("k", k), ("D", D)):
        if val is None:
            raise FormatError(f"missing '{name}' header line")
    if saw_gamma and saw_plain:
        raise FormatError("either every food-web edge carries gamma or none does")
    try:
        tree = PhyloTree(tree_edges, root=root)
    except PDDError as err:
        raise FormatError(str(err)) from None
    for e, no in web_line.items():
        for x in e:
            if x not in tree.taxa:
                raise FormatError(f"food-web taxon {x!r} is not a leaf of the tree", no)
    # an edgeless gamma web still carries an (empty) gamma map
    has_gamma = saw_gamma or (mode.kind == "gamma" and not saw_plain)
    web = FoodWeb(tree.taxa, web_edges, gamma if has_gamma else None)
    inst = Instance(tree, web, k, D, mode)
    problems = validate_instance(inst)
    if problems:
        raise FormatError("; ".join(problems))
    return inst


def write_instance(inst: Instance) -> str:
    out = [f"mode {inst.mode}", f"k {inst.k}", f"D {inst.D}"]
    if not inst.tree.edges:
        out.append(f"root {inst.tree.root}")
    out.append("tree")
    for v in inst.tree.preorder():
        for c in inst.tree.children(v):
            out.append(f"{v} {c} {inst.tree.weight((v, c))}")
    out.append("foodweb")
    gamma = inst.web.gamma
    for u, v in sorted(inst.web.edges):
        line = f"{u} {v}"
        if gamma is not None:
            line += " " + format_fraction(gamma[(u, v)])
        out.append(line)
    return "\n".join(out) + "\n"


def parse_graph(text: str, k: int | None = None) -> CliqueInput:
    """Read a graph file; ``k`` overrides (or replaces a missing) ``k`` line."""
    vertices: set[str] = set()
    edges: list[frozenset[str]] = []
    seen: dict[frozenset[str], int] = {}
    k_file = None
    for no, toks in _lines(text):
        if toks[0] == "k" and len(toks) == 2:
            k_file = _int(toks[1], no, "k")
        elif toks[0] == "vertex" and len(toks) == 2:
            vertices.add(toks[1])
        elif len(toks) == 2:
            u, v = toks
            if u == v:
                raise FormatError(f"self-loop at {u}", no)
            e = frozenset((u, v))
            if e in seen:
                raise FormatError(f"duplicate edge (first on line {seen[e]})", no)
            seen[e] = no
            edges.append(e)
            vertices.update(e)
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no)
    k = k if k is not None else k_file
    if k is None:
        raise FormatError("missing 'k' line")
    try:
        return CliqueInput(vertices, edges, k)
    except PDDError as err:
        raise FormatError(str(err)) from None


def write_graph(g: CliqueInput) -> str:
    out = [f"k {g.k}"]
    covered = {x for e in g.edges for x in e}
    out += [f"vertex {x}" for x in sorted(g.vertices - covered)]
    out += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def parse_taxon_list(text: str) -> frozenset[str]:
    return frozenset(tok for _, toks in _lines(text) for tok in toks)
