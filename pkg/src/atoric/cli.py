"""Command-line interface.

Subcommands: ``hj`` (continued fractions), ``chain`` (discrepancies),
``tdata`` (T-family and fibre invariants), ``pres`` (P-resolutions),
``seq`` (Markov / recursion / ladder), ``diagram`` (create, apply moves,
classify, render), ``serve`` (HTTP service).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio, service
from .cqs import (DegenerateChainError, fibre_label, hj_eval, hj_expand,
                  milnor_invariants, t_classify, type_label)
from .presolution import (PartialResolution, enumerate_p_resolutions,
                          monotone_type)
from .render import render_svg
from .resolution import Chain, maximal_resolution, singularity_class
from .sequences import markov_triples, mori_extend, quintic_ladder


def _parse_rays(text: str) -> tuple[tuple[int, int], ...]:
    rays = []
    for part in text.split(";"):
        part = part.strip().strip("()[]")
        if not part:
            continue
        x, y = (int(c) for c in part.split(","))
        rays.append((x, y))
    return tuple(rays)


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    return [tuple(int(c) for c in part.split(","))
            for part in text.split(";") if part.strip()]


def _print_chain(c: Chain):
    print("b:", " ".join(str(b) for b in c.bs))
    print("k:", " ".join(str(k) for k in c.ks))
    print("alpha:", " ".join(str(a) for a in c.alphas))
    print("class:", singularity_class(c.ks))


def _out(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_diagram(path):
    data = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return jsonio.diagram_from_json(json.loads(data))


def _cmd_hj(args) -> int:
    if args.action == "expand":
        print(" ".join(str(b) for b in hj_expand(args.n, args.a)) or "smooth")
    else:
        try:
            n, a = hj_eval(args.b)
        except DegenerateChainError:
            print("degenerate")
            return 1
        print(f"{n} {a}")
    return 0


def _cmd_chain(args) -> int:
    c = maximal_resolution(args.n, args.a) if args.maximal else Chain.minimal(args.n, args.a)
    if not c.bs:
        print("smooth")
        return 0
    _print_chain(c)
    return 0


def _cmd_tdata(args) -> int:
    t = t_classify(args.n, args.a)
    print("type:", type_label(args.n, args.a))
    if t is None:
        print("T: no")
        return 0
    m = milnor_invariants(t)
    print(f"T: yes d={t.d} p={t.p} q={t.q}")
    print("fibre:", fibre_label(t))
    print(f"h1_order: {m.h1_order}")
    print(f"h2_rank: {m.h2_rank}")
    print("rational_ball:", "yes" if m.rational_ball else "no")
    return 0


def _cmd_pres(args) -> int:
    if args.action == "enumerate":
        entries = enumerate_p_resolutions(args.n, args.a)
        if args.json:
            items = [{"kept": [list(r) for r in e.pr.kept],
                      "vertex_types": [list(t) for t in e.vertex_types],
                      "k_degrees": [str(x) for x in e.k_degrees]}
                     for e in entries]
            print(json.dumps({"n": args.n, "a": args.a,
                              "count": len(items), "items": items}))
            return 0
        print(f"{len(entries)} P-resolution(s) of 1/{args.n}(1,{args.a})")
        for e in entries:
            kept = " ".join(f"({x},{y})" for x, y in e.pr.kept) or "(none)"
            types = " ".join(type_label(n, a) for n, a in e.vertex_types)
            degs = " ".join(str(x) for x in e.k_degrees) or "-"
            print(f"  kept: {kept} | corners: {types} | degrees: {degs}")
        return 0
    pr = PartialResolution(args.n, args.a, _parse_rays(args.rays))
    if args.action == "check":
        from .presolution import is_p_resolution
        ok, cert = is_p_resolution(pr)
        print("p-resolution:", "yes" if ok else "no")
        if cert:
            print("witness:", json.dumps(cert, default=str))
        return 0
    rep = monotone_type(pr)
    print("signs:", " ".join(str(s) for s in rep.k_signs))
    print("classification:", rep.classification)
    return 0


def _cmd_seq(args) -> int:
    if args.action == "markov":
        for t in markov_triples(args.bound):
            print(*t)
        return 0
    if args.action == "mori":
        pairs = mori_extend(_parse_pairs(args.seed), args.steps, args.delta)
        for p, q in pairs:
            print(p, q)
        return 0
    r = quintic_ladder(args.steps, args.n, args.a,
                       Fraction(args.c_len),
                       Fraction(args.height) if args.height else None)
    for p, q in r.pairs:
        print(p, q)
    if r.blocked:
        print("blocked:", r.reason)
        return 1
    return 0


def _cmd_diagram(args) -> int:
    if args.action == "new":
        if args.template == "wedge":
            spec = {"kind": "wedge", "n": args.n, "a": args.a}
        else:
            spec = {"kind": "pi-minus", "n": args.n, "a": args.a,
                    "c_len": args.c_len, "height": args.height}
        d = jsonio.template_diagram(spec)
        _out(json.dumps(jsonio.diagram_to_json(d), indent=2), args.output)
        return 0
    d = _load_diagram(args.file)
    if args.action == "apply":
        d = jsonio.apply_move(d, json.loads(args.move))
        _out(json.dumps(jsonio.diagram_to_json(d), indent=2), args.output)
        return 0
    if args.action == "classify":
        for v in d.classify_vertices():
            x, y = v.point
            print(f"{v.index}: ({x},{y}) {v.mark} {v.label}")
        return 0
    window = tuple(Fraction(x) for x in args.window.split(",")) if args.window else None
    svg = render_svg(d, width=args.width, height=args.height, window=window)
    _out(svg, args.output)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="atoric",
                                 description="exact toolkit for cyclic quotient "
                                             "surfaces and almost-toric diagrams")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("hj", help="negative continued fractions")
    hs = p.add_subparsers(dest="action", required=True)
    h1 = hs.add_parser("expand", help="expand n/a")
    h1.add_argument("n", type=int)
    h1.add_argument("a", type=int)
    h2 = hs.add_parser("eval", help="contract a chain")
    h2.add_argument("b", type=int, nargs="+")
    p.set_defaults(fn=_cmd_hj)

    p = sub.add_parser("chain", help="chain with discrepancies")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.add_argument("--maximal", action="store_true",
                   help="blow up until no admissible point remains")
    p.set_defaults(fn=_cmd_chain)

    p = sub.add_parser("tdata", help="T-family test and fibre invariants")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.set_defaults(fn=_cmd_tdata)

    p = sub.add_parser("pres", help="P-resolutions")
    ps = p.add_subparsers(dest="action", required=True)
    p1 = ps.add_parser("enumerate")
    p1.add_argument("n", type=int)
    p1.add_argument("a", type=int)
    p1.add_argument("--json", action="store_true")
    for name in ("check", "monotone"):
        pc = ps.add_parser(name)
        pc.add_argument("n", type=int)
        pc.add_argument("a", type=int)
        pc.add_argument("--rays", required=True,
                        help='kept rays; use the = form for a leading minus, '
                             'e.g. --rays="0,1;-1,4"')
    p.set_defaults(fn=_cmd_pres)

    p = sub.add_parser("seq", help="Markov triples, recursions, ladder")
    ss = p.add_subparsers(dest="action", required=True)
    s1 = ss.add_parser("markov")
    s1.add_argument("bound", type=int)
    s2 = ss.add_parser("mori")
    s2.add_argument("--steps", type=int, required=True)
    s2.add_argument("--seed", default="5,3;14,9")
    s2.add_argument("--delta", type=int, default=3)
    s3 = ss.add_parser("ladder")
    s3.add_argument("--steps", type=int, required=True)
    s3.add_argument("--n", type=int, default=11)
    s3.add_argument("--a", type=int, default=3)
    s3.add_argument("--height", default=None)
    s3.add_argument("--c-len", default="1")
    p.set_defaults(fn=_cmd_seq)

    p = sub.add_parser("diagram", help="create and edit diagram files")
    ds = p.add_subparsers(dest="action", required=True)
    d1 = ds.add_parser("new")
    d1.add_argument("--template", choices=["wedge", "pi-minus"], default="wedge")
    d1.add_argument("--n", type=int, default=11)
    d1.add_argument("--a", type=int, default=3)
    d1.add_argument("--height", default=None)
    d1.add_argument("--c-len", dest="c_len", default="1")
    d1.add_argument("-o", "--output", default=None)
    d2 = ds.add_parser("apply")
    d2.add_argument("file")
    d2.add_argument("move", help='move JSON, e.g. \'{"move":"mutate","cut":0}\'')
    d2.add_argument("-o", "--output", default=None)
    d3 = ds.add_parser("classify")
    d3.add_argument("file")
    d4 = ds.add_parser("render")
    d4.add_argument("file")
    d4.add_argument("-o", "--output", default=None)
    d4.add_argument("--width", type=int, default=480)
    d4.add_argument("--height", type=int, default=360)
    d4.add_argument("--window", default=None, help='"x0,y0,x1,y1"')
    p.set_defaults(fn=_cmd_diagram)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8323)
    p.add_argument("--state", default=None)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=None)

    args = ap.parse_args(argv)
    if args.cmd == "serve":
        service.main(["--host", args.host, "--port", str(args.port)]
                     + (["--state", args.state] if args.state else [])
                     + (["--verbose"] if args.verbose else []))
        return 0
    try:
        return args.fn(args)
    except (ValueError, KeyError, IndexError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
