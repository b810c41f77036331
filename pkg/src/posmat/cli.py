"""Command-line interface: ``posmat VERB [options]``.

Exit codes: 0 when the command succeeds and the property asked about holds,
1 when the property is false (a certificate is printed), 2 on usage errors,
unreadable input, unmet hypotheses or exceeded enumeration caps.

Matrix arguments are file paths (``-`` reads stdin) or ``fixture:ID`` for a
built-in fixture.  ``--json`` switches every verb to the versioned JSON
schema, which is deterministic for a given ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from . import bounds, classes, fixtures, generators, graphs, io
from .errors import HypothesisError, PosmatError, TheoremViolation
from .gk import gk_index, is_gk

__all__ = ["main", "build_parser"]

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2
SEED_MAX = 2**64 - 1


class UsageError(PosmatError):
    """Bad command-line input that argparse itself cannot catch."""


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subparsers repeat the global flags with SUPPRESS so a flag given after
    # the verb does not reset one given before it
    d = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--json", action="store_true", help="emit JSON", **d)
    parser.add_argument("--pattern", action="store_true", help="read matrix input as a */0 grid", **d)
    parser.add_argument("--seed", type=_seed, help="unsigned 64-bit seed (default 0)",
                        **(d or {"default": 0}))
    parser.add_argument("--max-n", type=_positive, dest="max_n",
                        help="override every enumeration cap", **(d or {"default": None}))
    parser.add_argument("--certificates", action="store_true", help="include certificates", **d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posmat", description="Positivity and structure of nonnegative matrices.")
    _globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("classify", "run every predicate on a square matrix")
    p.add_argument("file")

    p = add("gk", "test whether a matrix is a g_k matrix")
    p.add_argument("file")
    p.add_argument("--k", type=_positive, required=True)

    p = add("gk-index", "largest k with the matrix a g_k matrix")
    p.add_argument("file")

    p = add("gamma", "exponent of primitivity")
    p.add_argument("file")

    p = add("bounds", "evaluate every applicable exponent bound")
    p.add_argument("file")
    p.add_argument("--k", type=_positive)

    p = add("verify", "check one registered bound on given or random instances")
    p.add_argument("theorem", choices=sorted(bounds.THEOREMS))
    p.add_argument("files", nargs="*", help="one matrix, or the factors of a product in order")
    p.add_argument("--k", type=_positive)
    p.add_argument("--m", type=_positive, help="leading block size")
    p.add_argument("--n", type=_positive, help="matrix size, for the Wielandt check")
    p.add_argument("--w", help="comma-separated index set W, default the positive diagonal")
    p.add_argument("--variant", choices=("head", "tail"), default="head")
    p.add_argument("--random", type=_positive, metavar="N", help="verify N random instances")
    p.add_argument("--size", type=_positive, action="append", help="instance size (repeatable)")

    p = add("graph", "vertex connectivity of an undirected graph")
    gsub = p.add_subparsers(dest="graph_verb", required=True, metavar="ACTION")
    g = gsub.add_parser("kappa", parents=[common], help="connectivity and a minimum cut")
    g.add_argument("file")
    g = gsub.add_parser("check-k", parents=[common], help="k-connectivity via the adjacency matrix")
    g.add_argument("file")
    g.add_argument("k", type=_positive)
    g = gsub.add_parser("audit", parents=[common], help="compare four characterisations of k-connectivity")
    g.add_argument("file")
    g.add_argument("k", type=_positive, nargs="?", help="default: every k in 1..n-1")

    p = add("generate", "write a generated matrix to stdout")
    gen = p.add_subparsers(dest="gen_verb", required=True, metavar="KIND")
    g = gen.add_parser("wielandt", parents=[common], help="the Wielandt pattern")
    g.add_argument("n", type=_positive)
    g = gen.add_parser("periodic-block", parents=[common], help="cyclic all-ones blocks")
    g.add_argument("sizes", type=_positive, nargs="+")
    g = gen.add_parser("random", parents=[common], help="seeded random matrix")
    g.add_argument("kind", choices=generators.KINDS)
    g.add_argument("n", type=_positive)
    g.add_argument("--density", default="1/2")
    g.add_argument("--filter", choices=generators.FILTERS)
    g.add_argument("--k", type=_positive)
    g.add_argument("--budget", type=_positive, default=10000)
    g = gen.add_parser("fixture", parents=[common], help="a built-in fixture, or all of them")
    g.add_argument("id", nargs="?", choices=sorted(fixtures.FIXTURES))
    g.add_argument("--out", help="directory to write every fixture into")

    p = add("limit", "limit of the powers of a stochastic matrix")
    p.add_argument("file")
    p.add_argument("--tolerance", default="1/1000000000000")
    p.add_argument("--max-iter", type=_positive, default=1000, dest="max_iter")
    return parser


@contextmanager
def _cap_override(max_n):
    if max_n is None:
        yield
        return
    old = os.environ.get("POSMAT_MAX_N")
    os.environ["POSMAT_MAX_N"] = str(max_n)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("POSMAT_MAX_N", None)
        else:
            os.environ["POSMAT_MAX_N"] = old


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text()


def load_matrix(source: str, pattern: bool = False):
    """A matrix from a path, ``-`` or ``fixture:ID``."""
    if source.startswith("fixture:"):
        fx = fixtures.get_fixture(source[len("fixture:"):])
        if fx.kind != "matrix":
            raise UsageError(f"fixture {fx.id} is a {fx.kind}, not a single matrix")
        return fx.payload
    return io.parse_any(_read_text(source), pattern)


def load_graph(source: str) -> graphs.Graph:
    if source.startswith("fixture:"):
        fx = fixtures.get_fixture(source[len("fixture:"):])
        if fx.kind != "graph":
            raise UsageError(f"fixture {fx.id} is not a graph")
        return fx.payload
    return io.parse_graph(_read_text(source))


class _Out:
    """Collects the human-readable lines and the JSON result of one command."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []

    def finish(self, command: str, result, code: int) -> int:
        if self.args.json:
            print(io.dumps(command, result))
        elif self.lines:
            print("\n".join(self.lines))
        return code


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if v is None:
        return "-"
    return str(v)


def cmd_classify(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    rep = classes.classify(P, args.max_n)
    result = io.to_jsonable(rep)
    if not args.certificates:
        result.pop("certificates")
    for key in result:
        if key != "certificates":
            out.lines.append(f"{key}: {_fmt(getattr(rep, key))}")
    if args.certificates:
        for key, value in rep.certificates.items():
            out.lines.append(f"certificate {key}: {value}")
    return out.finish("classify", result, EXIT_TRUE)


def cmd_gk(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    rep = is_gk(P, args.k, args.max_n)
    if rep.is_gk:
        out.lines.append(f"g_{args.k}: yes")
    else:
        out.lines.append(f"g_{args.k}: no")
        out.lines.append(f"F = {rep.counterexample}, D_F = {rep.deficiency}, "
                         f"|D_F| = {len(rep.deficiency)} < {min(args.k, P.nrows - len(rep.counterexample))}")
    return out.finish("gk", rep, EXIT_TRUE if rep.is_gk else EXIT_FALSE)


def cmd_gk_index(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    k = gk_index(P, args.max_n)
    out.lines.append(str(k))
    return out.finish("gk-index", {"gk_index": k}, EXIT_TRUE)


def cmd_gamma(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    if not classes.is_primitive(P):
        cert = classes.reducibility_certificate(P)
        if cert is not None:
            why = {"reason": "reducible", "invariant_set": list(cert.invariant_set)}
        else:
            why = {"reason": "periodic", "period": classes.period(P)}
        out.lines.append(f"not primitive ({why['reason']})")
        out.lines += [f"{k}: {v}" for k, v in why.items() if k != "reason"]
        return out.finish("gamma", {"primitive": False, "gamma": None, **why}, EXIT_FALSE)
    g = classes.gamma(P)
    out.lines.append(str(g))
    return out.finish("gamma", {"primitive": True, "gamma": g}, EXIT_TRUE)


def _result_line(r: bounds.BoundResult) -> str:
    if not r.hypotheses_met:
        return f"{r.theorem_id}: hypotheses not met ({r.detail})"
    status = "holds" if r.conclusion_holds else "VIOLATED"
    if r.theorem_id == "wielandt":
        return f"wielandt: gamma={r.attained_value}, bound {r.bound_value}, slack {r.slack}, {status}"
    line = f"{r.theorem_id}: bound {_fmt(r.bound_value)}, attained {_fmt(r.attained_value)}, slack {_fmt(r.slack)}, {status}"
    return line + (f" [{r.detail}]" if r.detail else "")


def cmd_bounds(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    results = bounds.applicable_bounds(P, args.k)
    out.lines += [_result_line(r) for r in results]
    code = EXIT_FALSE if any(r.violated for r in results) else EXIT_TRUE
    return out.finish("bounds", results, code)


_ARG_NAMES = {"k": "k", "m": "m_block", "n": "n"}


def cmd_verify(args, out: _Out) -> int:
    info = bounds.THEOREMS[args.theorem]
    if args.random:
        sizes = tuple(args.size) if args.size else (3, 4, 5, 6, 7)
        results = bounds.sweep(args.theorem, args.random, sizes, args.seed)
        met = [r for r in results if r.hypotheses_met]
        bad = [i for i, r in enumerate(results) if r.violated]
        out.lines.append(f"{args.theorem}: {len(results)} instances, {len(met)} with hypotheses met, "
                         f"{len(bad)} violations")
        out.lines += [f"violation at trial {i}: {_result_line(results[i])}" for i in bad]
        summary = {"theorem_id": args.theorem, "trials": len(results), "hypotheses_met": len(met),
                   "violations": bad, "sizes": list(sizes), "seed": args.seed}
        if args.certificates:
            summary["results"] = results
        return out.finish("verify", summary, EXIT_FALSE if bad else EXIT_TRUE)

    kwargs = {}
    for name in info.cli_args:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"{args.theorem} needs --{name}")
        kwargs[_ARG_NAMES[name]] = value
    if args.theorem == "wielandt":
        if args.files:
            raise UsageError("the Wielandt check takes --n, not matrix files")
        result = info.verifier(**kwargs)
    else:
        if not args.files:
            raise UsageError(f"{args.theorem} needs at least one matrix file, or --random N")
        mats = [load_matrix(f, args.pattern) for f in args.files]
        operand = mats[0] if len(mats) == 1 else mats
        if args.w is not None:
            kwargs["W"] = [int(x) for x in args.w.split(",") if x.strip()]
        if args.theorem == "gk-partial-diagonal-product":
            kwargs["variant"] = args.variant
        result = info.verifier(operand, **kwargs)
    out.lines.append(_result_line(result))
    if not result.hypotheses_met:
        code = EXIT_ERROR
    else:
        code = EXIT_TRUE if result.conclusion_holds else EXIT_FALSE
    return out.finish("verify", result, code)


def cmd_graph(args, out: _Out) -> int:
    G = load_graph(args.file)
    if args.graph_verb == "kappa":
        rep = graphs.connectivity_bruteforce(G, args.max_n)
        out.lines.append(str(rep.kappa))
        out.lines.append(f"minimum cut: {rep.min_cut if rep.min_cut is not None else 'none (complete graph)'}")
        return out.finish("graph kappa", rep, EXIT_TRUE)
    if args.graph_verb == "check-k":
        ok = graphs.is_k_connected_via_gk(G, args.k)
        out.lines.append(f"{args.k}-connected: {'yes' if ok else 'no'}")
        result = {"k": args.k, "k_connected": ok}
        if not ok:
            rep = is_gk(graphs.adjacency_matrix(G), args.k, args.max_n)
            result["vertex_set"] = rep.counterexample
            result["neighbours_outside"] = rep.deficiency
            out.lines.append(f"Y = {rep.counterexample} has only {len(rep.deficiency)} outside neighbours {rep.deficiency}")
        return out.finish("graph check-k", result, EXIT_TRUE if ok else EXIT_FALSE)
    ks = [args.k] if args.k is not None else list(range(1, G.n))
    kappa = graphs.connectivity_bruteforce(G, args.max_n).kappa
    reports = [graphs.equivalence_audit(G, k, kappa) for k in ks]
    for r in reports:
        out.lines.append(f"k={r.k}: cut {r.cut_based}, matrix {r.matrix_based}, "
                         f"witness {r.witness_based}, deficiency {r.deficiency_based}, "
                         f"{'agree' if r.agree else 'DISAGREE'}")
    agree = all(r.agree for r in reports)
    return out.finish("graph audit", {"kappa": kappa, "audits": reports, "agree": agree},
                      EXIT_TRUE if agree else EXIT_FALSE)


def _emit(M, args, out: _Out, command: str, extra=None) -> int:
    text = io.emit_pattern(M) if args.pattern else io.emit_matrix(M)
    out.lines.append(text.rstrip("\n"))
    result = {"matrix": M, "text": text}
    if extra:
        result.update(extra)
    return out.finish(command, result, EXIT_TRUE)


def cmd_generate(args, out: _Out) -> int:
    if args.gen_verb == "wielandt":
        return _emit(generators.generate_wielandt(args.n), args, out, "generate wielandt")
    if args.gen_verb == "periodic-block":
        return _emit(generators.generate_periodic_block(args.sizes), args, out, "generate periodic-block")
    if args.gen_verb == "random":
        M = generators.generate_random(args.kind, args.n, args.density, args.seed,
                                       filter=args.filter, k=args.k, budget=args.budget)
        return _emit(M, args, out, "generate random", {"seed": args.seed})
    if args.out:
        paths = fixtures.write_fixtures(args.out)
        out.lines += [str(p) for p in paths]
        return out.finish("generate fixture", {"written": [str(p) for p in paths]}, EXIT_TRUE)
    if args.id is None:
        out.lines += [f"{fx.id}: {fx.description}" for fx in fixtures.FIXTURES.values()]
        return out.finish("generate fixture", {"fixtures": list(fixtures.FIXTURES)}, EXIT_TRUE)
    fx = fixtures.get_fixture(args.id)
    texts = fixtures.fixture_texts(fx)
    out.lines.append("\n".join(t.rstrip("\n") for t in texts))
    return out.finish("generate fixture", {"id": fx.id, "kind": fx.kind, "texts": texts}, EXIT_TRUE)


def cmd_limit(args, out: _Out) -> int:
    P = load_matrix(args.file, args.pattern)
    res = classes.power_limit(P, args.tolerance, args.max_iter)
    out.lines.append(f"converged: {'yes' if res.converged else 'no'} after {res.iterations} steps")
    out.lines.append(io.emit_matrix(res.matrix).rstrip("\n"))
    out.lines.append("approximately:")
    out.lines += [" ".join(f"{float(x):.12g}" for x in r) for r in res.matrix.rows]
    return out.finish("limit", res, EXIT_TRUE if res.converged else EXIT_FALSE)


_COMMANDS = {
    "classify": cmd_classify,
    "gk": cmd_gk,
    "gk-index": cmd_gk_index,
    "gamma": cmd_gamma,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "generate": cmd_generate,
    "limit": cmd_limit,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_TRUE
    out = _Out(args)
    try:
        with _cap_override(args.max_n):
            return _COMMANDS[args.verb](args, out)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (PosmatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
