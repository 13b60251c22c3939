"""Command-line front end.  All data travels as JSON through files or
stdin/stdout; outputs are sorted by canonical key so they are byte-stable.

Exit status 1 reports law failures; 2 reports rejected input or
configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import doubling as D
from . import envelope as E
from . import hopf as Hf
from . import prelie as P
from .algebra import LinComb, Monomial
from .canon import CanonSizeError
from .graph import GraphError, to_dot, validate
from .harness import LAWS, SUITE, Bounds, Policy, gen_corpus, verify
from .specified import SpecifiedGraph, from_json
from .theory import TheoryError, load_theory


class InputError(Exception):
    """Bad input; reported with exit status 2."""


# ---------------------------------------------------------------- input


def _read(path: str) -> Any:
    where = "stdin" if path == "-" else path
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"{where}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _graph(doc, theory) -> SpecifiedGraph:
    if not isinstance(doc, dict):
        raise InputError("expected a specified graph object")
    return from_json(doc, theory)


def _pair(doc, theory) -> D.Pair:
    if not isinstance(doc, dict):
        raise InputError("expected a pair object")
    return D.pair_from_json(doc, theory)


def _mono(doc, theory, leaf) -> Monomial:
    """A monomial is ``{"monomial": [...]}``; a bare object is a one-factor monomial."""
    if isinstance(doc, dict) and "monomial" in doc:
        return Monomial(leaf(d, theory) for d in doc["monomial"])
    x = leaf(doc, theory)
    return Monomial(x.factors()) if isinstance(x, SpecifiedGraph) else Monomial((x,))


def _load(path, theory, kind):
    doc = _read(path)
    if kind == "graph":
        return _graph(doc, theory)
    if kind == "pair":
        return _pair(doc, theory)
    if kind == "mono":
        return _mono(doc, theory, _graph)
    return _mono(doc, theory, _pair)


# ---------------------------------------------------------------- output


def _render(obj) -> Any:
    if isinstance(obj, Monomial):
        return {"monomial": [f.to_json() for f in obj.factors]}
    if hasattr(obj, "parts"):
        return {"tensor": [_render(p) for p in obj.parts]}
    return obj.to_json()


def _emit(data: Any, out: str | None = None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_lc(lc: LinComb, args) -> None:
    _emit(lc.to_json(_render), args.output)


# ---------------------------------------------------------------- commands


def cmd_canon(args, T):
    doc = _read(args.input)
    g = _graph(doc, T)
    _emit({"key": g.key, "graph": g.to_json()}, args.output)


def cmd_coproduct(args, T):
    x = _load(args.input, T, "mono")
    lc = Hf.coproduct_reduced(x, T) if args.reduced else Hf.coproduct_full(x, T)
    _emit_lc(lc, args)


def cmd_antipode(args, T):
    _emit_lc(Hf.antipode(_load(args.input, T, "mono"), T), args)


def cmd_insert(args, T):
    _emit_lc(P.insert(_load(args.x, T, "graph"), _load(args.y, T, "graph")), args)


def cmd_insert_at(args, T):
    x, y = _load(args.x, T, "graph"), _read(args.y)
    # the vertex index refers to the labeling given in the file
    g = validate(y, T)
    yg = _graph(y, T)
    if not 0 <= args.vertex < g.n_vertices:
        raise InputError(f"vertex {args.vertex} out of range 0..{g.n_vertices - 1}")
    _emit_lc(P.insert_at(x, args.vertex, SpecifiedGraph(g, yg.spec)), args)


def cmd_bracket(args, T):
    _emit_lc(P.bracket(_load(args.x, T, "graph"), _load(args.y, T, "graph")), args)


def cmd_odot(args, T):
    _emit_lc(D.odot(_load(args.p, T, "pair"), _load(args.q, T, "pair")), args)


def cmd_act(args, T):
    _emit_lc(D.act(_load(args.x, T, "graph"), _load(args.q, T, "pair")), args)


def cmd_dcoproduct(args, T):
    _emit_lc(D.doubling_coproduct(_load(args.input, T, "pmono"), T), args)


def cmd_p2(args, T):
    _emit_lc(D.P2(_load(args.input, T, "pmono")), args)


def cmd_star(args, T):
    _emit_lc(E.star(_load(args.a, T, "mono"), _load(args.b, T, "mono")), args)


def cmd_bigstar(args, T):
    _emit_lc(E.bigstar(_load(args.a, T, "pmono"), _load(args.b, T, "pmono")), args)


def cmd_ext_insert(args, T):
    _emit_lc(E.ext_triangleright(_load(args.a, T, "mono"), _load(args.b, T, "mono")), args)


def _policy(args) -> Policy:
    base = Policy()
    return Policy(
        base_vertices=args.base_vertices if args.base_vertices is not None else base.base_vertices,
        env_vertices=args.env_vertices if args.env_vertices is not None else base.env_vertices,
        samples=args.samples if args.samples is not None else base.samples,
    )


def cmd_verify(args, T):
    names = list(SUITE) if args.law == "suite" else list(LAWS) if args.law == "all" else [args.law]
    for name in names:
        if name not in LAWS:
            raise InputError(f"unknown law {name!r}; known: {', '.join(sorted(LAWS))}, suite, all")
    corpus = gen_corpus(T, args.max_loops, seed=args.seed)
    reports = [verify(n, corpus, args.mode, args.seed, _policy(args)) for n in names]
    for r in reports:
        print(f"{r.text()} in {r.wall_time:.1f}s", file=sys.stderr)
    if args.json:
        _emit({"corpus": corpus.summary(), "reports": [r.to_json() for r in reports]}, args.json)
    return 0 if all(r.ok for r in reports) else 1


def cmd_gen_corpus(args, T):
    c = gen_corpus(T, args.max_loops, Bounds(args.max_loops, args.max_vertices, args.max_half_edges),
                   with_pairs=not args.no_pairs)
    data = {"summary": c.summary(), "graphs": [g.to_json() for g in c.graphs]}
    if not args.no_pairs:
        data["pairs"] = [p.to_json() for p in c.pairs]
    _emit(data, args.output)


def cmd_render(args, T):
    doc = _read(args.input)
    g = validate(doc, T)
    text = to_dot(g) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feynhopf", description="Hopf and pre-Lie algebras of specified Feynman graphs")
    ap.add_argument("--theory", default="phi3", help="phi3, qed, or a theory JSON file (default phi3)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, inputs, helptext):
        p = sub.add_parser(name, help=helptext)
        for i in inputs:
            p.add_argument(i, help="JSON file, or - for stdin")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.set_defaults(fn=fn)
        return p

    add("canon", cmd_canon, ["input"], "canonical key and form of a specified graph")
    add("coproduct", cmd_coproduct, ["input"], "coproduct of a graph or monomial").add_argument(
        "--reduced", action="store_true", help="in the quotient by the residue ideal")
    add("antipode", cmd_antipode, ["input"], "antipode in the quotient Hopf algebra")
    add("insert", cmd_insert, ["x", "y"], "x ▷ y")
    add("insert-at", cmd_insert_at, ["x", "y"], "x inserted at one vertex of y").add_argument(
        "--vertex", type=int, required=True, help="vertex index in y's file labeling")
    add("bracket", cmd_bracket, ["x", "y"], "x ▷ y − y ▷ x")
    add("odot", cmd_odot, ["p", "q"], "p ⊙ q on pairs")
    add("act", cmd_act, ["x", "q"], "x → q")
    add("dcoproduct", cmd_dcoproduct, ["input"], "coproduct of a pair or pair monomial")
    add("p2", cmd_p2, ["input"], "projection of a pair monomial to its inner graphs")
    add("star", cmd_star, ["a", "b"], "a ★ b on graph monomials")
    add("bigstar", cmd_bigstar, ["a", "b"], "a ⋆ b on pair monomials")
    add("ext-insert", cmd_ext_insert, ["a", "b"], "extended insertion a ▷ b on monomials")

    v = sub.add_parser("verify", help="check a law over the generated corpus")
    v.add_argument("--law", required=True, help="law name, 'suite' for the acceptance suite, or 'all'")
    v.add_argument("--max-loops", type=int, default=2)
    v.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, help="tuples per law part in sampled mode")
    v.add_argument("--base-vertices", type=int, help="vertex cap of the tuple base")
    v.add_argument("--env-vertices", type=int, help="vertex cap for symmetric-algebra arguments")
    v.add_argument("--json", help="write the JSON report here (- for stdout)")
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("gen-corpus", help="enumerate the corpus as JSON")
    g.add_argument("--max-loops", type=int, default=2)
    g.add_argument("--max-vertices", type=int, default=Bounds.max_vertices)
    g.add_argument("--max-half-edges", type=int, default=Bounds.max_half_edges)
    g.add_argument("--no-pairs", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(fn=cmd_gen_corpus)

    r = sub.add_parser("render", help="render a graph")
    r.add_argument("--dot", action="store_true", required=True, help="Graphviz DOT output")
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.set_defaults(fn=cmd_render)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        theory = load_theory(args.theory)
        return args.fn(args, theory) or 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except TheoryError as exc:
        print(f"theory error: {exc}", file=sys.stderr)
    except GraphError as exc:  # includes specification and pair errors
        print(f"invalid input: {exc}", file=sys.stderr)
    except (CanonSizeError, E.RecursionBound) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
