"""Command-line front end: ``lrplanarity test|embed|certify|gen|bench``.

Graph files are edge lists: ``#`` starts a comment line, the first other
line is ``n m`` and the next ``m`` lines are ``u v`` with ``1 <= u, v <= n``.
Exit status is 0 whenever a verdict was printed and 2 on usage, parse or
IO errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .embed import (
    InvalidRotation,
    RotationSystem,
    certify,
    format_rotation,
    parse_rotation,
    trace_faces,
)
from .graph import Graph, build_graph
from .lrtest import format_trace
from .oracle import GenSpec, InvalidSpec, generate, subdivide
from .pipeline import check_planarity


class InputError(ValueError):
    pass


@dataclass
class EdgeList:
    n: int
    pairs: list[tuple[int, int]]  # 1-based, file order

    @property
    def loops(self) -> list[int]:
        return [i for i, (u, v) in enumerate(self.pairs) if u == v]

    def graph(self, *, allow_loops: bool = False) -> Graph:
        return build_graph(self.n, self.pairs, allow_loops=allow_loops)

    def without_loops(self) -> tuple[Graph, np.ndarray]:
        """Loopless graph plus, per edge, its 0-based index in the file."""
        keep = np.array([i for i, (u, v) in enumerate(self.pairs) if u != v], dtype=np.int64)
        return build_graph(self.n, [self.pairs[i] for i in keep.tolist()]), keep


def parse_edge_list(text: str) -> EdgeList:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("missing 'n m' header")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise InputError(f"bad header {lines[0]!r}") from None
    if n < 1 or m < 0:
        raise InputError("need n >= 1 and m >= 0")
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"expected {m} edge lines, found {len(body)}")
    pairs = []
    for ln in body:
        try:
            u, v = (int(x) for x in ln.split())
        except ValueError:
            raise InputError(f"bad edge line {ln!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge {u} {v} outside 1..{n}")
        pairs.append((u, v))
    return EdgeList(n, pairs)


def format_edge_list(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edge_list()]
    return "\n".join(rows) + "\n"


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str) -> tuple[EdgeList, Graph, np.ndarray]:
    el = parse_edge_list(_read(path))
    g, keep = el.without_loops()
    nloops = len(el.pairs) - g.m
    if nloops:
        print(f"{nloops} loop{'s' if nloops > 1 else ''} ignored", file=sys.stderr)
    return el, g, keep


def embed_with_loops(el: EdgeList, g: Graph, keep: np.ndarray,
                     rot: RotationSystem) -> tuple[Graph, RotationSystem]:
    """Rotation of the full file graph: each loop's two half-edges sit next
    to each other right after the first half-edge at their vertex."""
    full = el.graph(allow_loops=True)
    per_vertex: list[list[int]] = []
    for v in range(g.n):
        per_vertex.append([2 * int(keep[d >> 1]) + (d & 1) for d in rot.at(v)])
    for e in el.loops:
        v = el.pairs[e][0] - 1
        at = 1 if per_vertex[v] else 0
        per_vertex[v][at:at] = [2 * e, 2 * e + 1]
    return full, RotationSystem.from_lists(full, per_vertex)


def cmd_test(args) -> int:
    el, g, keep = _load(args.input)
    res = check_planarity(g, embed=False, trace=args.trace)
    if args.trace:
        for line in format_trace(res.tremaux, res.outcome.trace):
            print(line)
    if args.json:
        print(json.dumps({"planar": res.planar, "loops": len(el.loops)}))
    else:
        print(res.outcome.verdict)
    return 0


def cmd_embed(args) -> int:
    el, g, keep = _load(args.input)
    res = check_planarity(g, trace=args.trace)
    if args.trace:
        for line in format_trace(res.tremaux, res.outcome.trace):
            print(line)
    if not res.planar:
        if args.json:
            print(json.dumps({"planar": False, "rotation": None, "faces": None, "lambda": None}))
        else:
            print("nonplanar")
        return 0
    full, rot = embed_with_loops(el, g, keep, res.rotation)
    faces = trace_faces(full, rot).count
    if args.json:
        lam = res.outcome.lam
        doc = {
            "planar": True,
            "rotation": [[(d >> 1) + 1 for d in rot.at(v)] for v in range(full.n)],
            "faces": faces,
            "lambda": {str(int(keep[e]) + 1): int(lam[e])
                       for e in np.flatnonzero(~res.tremaux.is_tree).tolist()},
        }
        print(json.dumps(doc))
    else:
        for line in format_rotation(full, rot):
            print(line)
        print(f"faces: {faces}")
    return 0


def cmd_certify(args) -> int:
    el = parse_edge_list(_read(args.graph))
    g = el.graph(allow_loops=True)
    try:
        rot = parse_rotation(g, _read(args.rotation).splitlines())
    except InvalidRotation as exc:
        raise InputError(f"rotation does not match the graph: {exc}") from None
    cert = certify(g, rot)
    if args.json:
        comps = [{"vertices": c.vertices, "edges": c.edges, "faces": c.faces}
                 for c in cert.components]
        print(json.dumps({"genus0": cert.genus0, "components": comps}))
    else:
        print("genus-0" if cert.genus0 else "not-genus-0")
    return 0


_GEN_ARITY = {"complete": 1, "bipartite": 2, "triangulation": 1, "random": 2}


def cmd_gen(args) -> int:
    want = _GEN_ARITY[args.kind]
    if len(args.params) != want:
        raise InputError(f"{args.kind} takes {want} integer parameter(s)")
    p = args.params
    spec = {
        "complete": lambda: GenSpec.complete(p[0]),
        "bipartite": lambda: GenSpec.complete_bipartite(p[0], p[1]),
        "triangulation": lambda: GenSpec.triangulation(p[0], args.seed),
        "random": lambda: GenSpec.random_connected(p[0], p[1], args.seed),
    }[args.kind]()
    try:
        g = generate(spec)
        if args.subdivide:
            g = subdivide(g, args.subdivide)
    except InvalidSpec as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(format_edge_list(g))
    return 0


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise InputError("sizes must be positive integers")
    return sizes


def bench_rows(sizes: list[int], seed: int = 0, repeat: int = 3) -> list[tuple[int, int, float]]:
    """(n, m, best milliseconds) for test plus embedding of triangulations."""
    check_planarity(generate(GenSpec.triangulation(8, seed)))  # compile outside timing
    rows = []
    for n in sizes:
        g = generate(GenSpec.triangulation(n, seed))
        best = float("inf")
        for _ in range(max(1, repeat)):
            t0 = time.perf_counter()
            check_planarity(g)
            best = min(best, time.perf_counter() - t0)
        rows.append((n, g.m, best * 1e3))
    return rows


def cmd_bench(args) -> int:
    sizes = _sizes(args.sizes)
    rows = bench_rows(sizes, args.seed, args.repeat)
    print("n\tm\tms\tedges_per_sec")
    for n, m, ms in rows:
        rate = m / (ms / 1e3) if ms > 0 else float("inf")
        print(f"{n}\t{m}\t{ms:.3f}\t{rate:.0f}")
    if args.figure:
        from .report import scaling_figure

        scaling_figure(rows, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrplanarity", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="print planar or nonplanar")
    p.add_argument("input", help="edge-list file, '-' for stdin")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="print every constraint system")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("embed", help="print a planar rotation system")
    p.add_argument("input", help="edge-list file, '-' for stdin")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="print every constraint system")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("certify", help="check a rotation system with Euler's formula")
    p.add_argument("graph")
    p.add_argument("rotation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("kind", choices=sorted(_GEN_ARITY))
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subdivide", type=int, default=0, metavar="K",
                   help="replace every edge by a path with K inner vertices")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time test plus embedding on triangulations (TSV)")
    p.add_argument("--sizes", default="100000,200000,400000,800000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--figure", metavar="PATH", help="also save a scaling plot")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
