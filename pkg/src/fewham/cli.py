"""Command-line entry point.

Every subcommand writes its primary output (one record per line) to stdout
or ``--output`` and a JSON run manifest to stderr or ``--manifest``.
Exit codes: 0 success, 2 usage or precondition error, 3 validation
failure, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__, _config, bounds, kernels
from .composition import (chain_copies, dagger, double_rewire, expand_triangle,
                          subdivide_cycle_edges)
from .constructions import fig1_blueprint, fig1_count, fig10_graphs, petersen
from .domset import amplify_family, search_pairs
from .enumeration import (CycleCertificate, count_ham_cycles, count_ham_st_paths,
                          enumerate_ham_cycles)
from .errors import CapExceeded, FewhamError, PreconditionError, ValidationError
from .generation import (ANY, BIREGULAR, NEARLY, REGULAR, GenerationSpec, compute_hn,
                         compute_hn2, generate_graphs)
from .graph import MultiGraph
from .graph_io import iter_records, parse_graph, write_graph, write_graph6

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_CAP = 0, 2, 3, 4

ALGO_NAMES = {"backtrack": "backtrack", "held-karp": "held_karp", "auto": "auto", "both": "both"}


@dataclass
class RunManifest:
    command: list[str]
    config: dict
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    elapsed: float = 0.0
    workers: int = 1
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class _Run:
    """Collects inputs, sidecar outputs, and the worker count for one invocation."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.jobs = max(1, args.jobs)
        self.inputs: dict[str, str] = {}
        self.sidecars: dict[str, str] = {}

    def records(self) -> list[str]:
        """Graph records from ``--graph`` strings and input files (stdin when neither is given)."""
        out: list[str] = []
        for i, rec in enumerate(self.args.graph or []):
            self.inputs[f"graph[{i}]"] = _sha256(rec.encode())
            out.append(rec.strip())
        paths = list(getattr(self.args, "inputs", None) or [])
        if not paths and not out:
            paths = ["-"]
        for p in paths:
            if p == "-":
                text = sys.stdin.read()
            else:
                with open(p, encoding="ascii") as fh:
                    text = fh.read()
            self.inputs[p] = _sha256(text.encode())
            out.extend(iter_records(text.splitlines()))
        return out

    def graphs(self) -> list[MultiGraph]:
        return [parse_graph(r) for r in self.records()]

    def write_sidecar(self, path: str, text: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
        self.sidecars[path] = _sha256(text.encode())

    def map(self, fn: Callable, items: Sequence) -> list:
        """Order-preserving map, in worker processes when ``--jobs`` > 1."""
        items = list(items)
        if self.jobs == 1 or len(items) <= 1:
            return [fn(x) for x in items]
        chunk = max(1, len(items) // (self.jobs * 8))
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(fn, items, chunksize=chunk))


# -- workers (module level so they pickle) ------------------------------------


def _count_one(task: tuple[str, str, tuple[int, int] | None]) -> str:
    rec, algo, path = task
    g = parse_graph(rec)

    def run(a: str) -> int:
        if path is None:
            return count_ham_cycles(g, a).value
        return count_ham_st_paths(g, path[0], path[1], a).value

    if algo != "both":
        return str(run(algo))
    bt, hk = run("backtrack"), run("held_karp")
    if bt != hk:
        raise ValidationError(f"backtrack {bt} != held_karp {hk} on {rec}")
    return f"{bt}\tbacktrack,held_karp"


def _enumerate_one(rec: str) -> list[str]:
    return [c.to_text() for c in enumerate_ham_cycles(parse_graph(rec))]


def _table_row(task: tuple[tuple[int, ...], int, bool, bool, bool]) -> dict:
    degrees, n, two_conn, bipartite, force = task
    if two_conn:
        res = compute_hn2(degrees[0], n, force=force)
    else:
        res = compute_hn(degrees, n, force=force, bipartite_only=bipartite)
    return {
        "n": n,
        "k": ",".join(map(str, degrees)),
        "value": res.value_text(),
        "witness_count": len(res.witnesses),
        "witnesses": [write_graph(w) for w in res.witnesses],
        "examined": res.examined,
        "hamiltonian": res.hamiltonian,
    }


def _domset_row(task: tuple[int, int, bool, bool, bool]) -> tuple[dict, list[str]]:
    r, n, bip, conn, force = task
    res = search_pairs(r, n, bipartite_only=bip, connected_only=conn, force=force)
    row = {"n": n, "r": r, "class": "bipartite" if bip else "general",
           "pairs": res.pairs, "orbit_pairs": res.orbit_pairs, "green_graphs": res.green_graphs}
    return row, [rep.to_text() for rep in res.reports]


def _verify_one(rec: str) -> int:
    """0 when both cycle counters agree."""
    g = parse_graph(rec)
    bt = count_ham_cycles(g, "backtrack").value
    hk = count_ham_cycles(g, "held_karp").value
    return 0 if bt == hk else 1


def _construct_one(task: tuple[str, str, dict]) -> str:
    kind, rec, opts = task
    g = parse_graph(rec)
    if kind == "dagger":
        out = dagger(g, opts.get("x"), opts.get("edge"))
    elif kind == "double":
        out = double_rewire(g, opts.get("v"))
    elif kind == "triangle":
        if opts.get("v") is None:
            raise PreconditionError("triangle needs --v")
        out = expand_triangle(g, opts["v"])
    else:
        h = _cycle_for(g, opts.get("cycle"))
        if kind == "subdivide":
            out = subdivide_cycle_edges(g, h, keep_one=opts.get("keep_one", False))
        else:
            e = opts.get("edge") or h.steps()[0]
            out = chain_copies(g, h, e, opts.get("m", 2))
    return _graph_line(out, opts.get("count", False))


def _cycle_for(g: MultiGraph, text: str | None) -> CycleCertificate:
    if text:
        h = CycleCertificate.from_text(text)
        if not h.is_valid_for(g):
            raise PreconditionError("--cycle is not a hamiltonian cycle of the input")
        return h
    for h in enumerate_ham_cycles(g):
        return h
    raise PreconditionError("input graph is not hamiltonian")


def _graph_line(g: MultiGraph, with_count: bool) -> str:
    s = write_graph(g)
    if with_count:
        s += f"\t{count_ham_cycles(g).value}"
    return s


def _family_inequality_row(d: int) -> str:
    return f"{d}\t{bounds.theorem2_comparison(d).verdict}"


# -- subcommands ---------------------------------------------------------------


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = text.replace(",", "-").split("-")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u-v', got {text!r}")


def cmd_count(run: _Run, out: io.StringIO) -> None:
    a = run.args
    algo = ALGO_NAMES[a.algo]
    path = tuple(a.paths) if a.paths else None
    tasks = [(rec, algo, path) for rec in run.records()]
    for line in run.map(_count_one, tasks):
        out.write(line + "\n")


def cmd_enumerate(run: _Run, out: io.StringIO) -> None:
    results = run.map(_enumerate_one, run.records())
    for i, certs in enumerate(results):
        if i:
            out.write("\n")
        for c in certs:
            out.write(c + "\n")


def _spec_from(a: argparse.Namespace) -> GenerationSpec:
    if a.any:
        kind = ANY
    elif a.nearly:
        kind = NEARLY
    elif a.l is not None and a.l != a.k:
        kind = BIREGULAR
    else:
        kind = REGULAR
    if kind != ANY and a.k is None:
        raise PreconditionError("--k is required unless --any is given")
    return GenerationSpec(a.n, kind, a.k or 0, a.l if kind == BIREGULAR else None,
                          connected=not a.disconnected, bipartite_only=a.bipartite)


def cmd_generate(run: _Run, out: io.StringIO) -> None:
    spec = _spec_from(run.args)
    for g in generate_graphs(spec, force=run.args.force):
        out.write(write_graph6(g) + "\n")


def cmd_table(run: _Run, out: io.StringIO) -> None:
    a = run.args
    degrees = (a.k,) if a.l is None or a.l == a.k else tuple(sorted((a.k, a.l)))
    if a.two_connected and len(degrees) != 1:
        raise PreconditionError("--two-connected tables are defined for regular classes")
    n_min = a.n_min if a.n_min is not None else max(degrees) + 1
    tasks = [(degrees, n, a.two_connected, a.bipartite, a.force) for n in range(n_min, a.n_max + 1)]
    rows = run.map(_table_row, tasks)
    out.write("n\tk\tvalue\twitnesses\n")
    for r in rows:
        out.write(f"{r['n']}\t{r['k']}\t{r['value']}\t{r['witness_count']}\n")
    if a.json:
        run.write_sidecar(a.json, json.dumps(rows, indent=1, sort_keys=True) + "\n")


def cmd_domset(run: _Run, out: io.StringIO) -> None:
    a = run.args
    n_min = a.n_min if a.n_min is not None else a.n_max
    tasks = [(a.r, n, a.bipartite, a.connected, a.force) for n in range(n_min, a.n_max + 1)]
    results = run.map(_domset_row, tasks)
    out.write("n\tr\tclass\tpairs\torbit_pairs\tgreen_graphs\n")
    reports: list[str] = []
    for row, reps in results:
        out.write("{n}\t{r}\t{class}\t{pairs}\t{orbit_pairs}\t{green_graphs}\n".format(**row))
        reports.extend(reps)
    if a.reports:
        run.write_sidecar(a.reports, "".join(rep + "\n\n" for rep in reports))


def cmd_construct(run: _Run, out: io.StringIO) -> None:
    a = run.args
    kind = a.kind
    if kind == "fig1":
        if a.d is None:
            raise PreconditionError("fig1 needs --d")
        bp = fig1_blueprint(a.d)
        line = write_graph(bp.graph)
        if a.count:
            line += f"\t{fig1_count(bp).value}"
        out.write(line + "\n")
        return
    if kind == "petersen":
        out.write(_graph_line(petersen(), a.count) + "\n")
        return
    if kind == "fig10":
        gs = fig10_graphs()
        if a.index is not None:
            if not 1 <= a.index <= len(gs):
                raise PreconditionError(f"--index must lie in 1..{len(gs)}")
            gs = [gs[a.index - 1]]
        for line in run.map(_fig10_line, [(write_graph(g), a.count) for g in gs]):
            out.write(line + "\n")
        return
    opts = {"x": a.x, "edge": a.edge, "v": a.v, "keep_one": a.keep_one, "m": a.m,
            "cycle": a.cycle, "count": a.count}
    for line in run.map(_construct_one, [(kind, rec, opts) for rec in run.records()]):
        out.write(line + "\n")


def _fig10_line(task: tuple[str, bool]) -> str:
    rec, with_count = task
    return _graph_line(parse_graph(rec), with_count)


def _verdict_cols(v: bounds.IntervalVerdict) -> str:
    return "\t".join([str(v.holds).lower(), *v.left, *v.right, str(v.prec)])


def cmd_bounds(run: _Run, out: io.StringIO) -> None:
    a = run.args
    what = a.what
    if what == "conjecture":
        ks = range(a.k, (a.k_max if a.k_max is not None else a.k) + 1)
        out.write("d\tk\tverdict\n")
        for k in ks:
            out.write(f"{a.d}\t{k}\t{bounds.conjecture_bound_compare(a.d, k).verdict}\n")
    elif what == "family-inequality":
        lo = a.d_min if a.d_min is not None else 5
        hi = a.d_max if a.d_max is not None else 59
        out.write("d\tverdict\n")
        for line in run.map(_family_inequality_row, range(lo, hi + 1)):
            out.write(line + "\n")
    elif what == "corollary":
        out.write("d\tk_max\tholds\n")
        for d in ([a.d] if a.d is not None else [5, 6, 7]):
            ok = bounds.corollary_identity_check(d, a.k_max if a.k_max is not None else 50)
            out.write(f"{d}\t{a.k_max if a.k_max is not None else 50}\t{str(ok).lower()}\n")
    elif what == "lll-condition":
        if a.d is None:
            raise PreconditionError("lll-condition needs --d")
        out.write("d\teps\tholds\tlhs_lo\tlhs_hi\trhs_lo\trhs_hi\tprec\n")
        v = bounds.lll_condition_detail(a.d, a.eps, a.base)
        out.write(f"{a.d}\t{a.eps}\t{_verdict_cols(v)}\n")
    elif what == "lll-min":
        m = bounds.lll_min_d0(a.eps, a.base)
        out.write("eps\tbase\td0\tholds_at_d0\tholds_below\n")
        below = "none" if m.below is None else str(m.below.holds).lower()
        out.write(f"{a.eps}\t{a.base}\t{m.d0}\t{str(m.at_d0.holds).lower()}\t{below}\n")
    elif what == "lll-verify":
        if a.d is None:
            raise PreconditionError("lll-verify needs --d")
        chk = bounds.lll_verify_parameters(a.d, a.eps)
        out.write("d\teps\tinequality\tholds\tlhs_lo\tlhs_hi\trhs_lo\trhs_hi\tprec\n")
        out.write(f"{a.d}\t{a.eps}\tedge\t{_verdict_cols(chk.edge)}\n")
        out.write(f"{a.d}\t{a.eps}\tvertex\t{_verdict_cols(chk.vertex)}\n")


def random_corpus(count: int, n_lo: int, n_hi: int, seed: int) -> list[str]:
    """graph6 records of G(n, p) samples with n uniform in [n_lo, n_hi] and p uniform in [0.2, 0.9]."""
    rng = np.random.default_rng(seed)
    recs = []
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.2, 0.9))
        iu = np.triu_indices(n, 1)
        keep = rng.random(len(iu[0])) < p
        edges = list(zip(iu[0][keep].tolist(), iu[1][keep].tolist()))
        recs.append(write_graph6(MultiGraph(n, edges)))
    return recs


def cmd_verify(run: _Run, out: io.StringIO) -> None:
    a = run.args
    out.write("corpus\tparam\tgraphs\tmismatches\n")
    bad = 0
    for n in range(1, a.n_max + 1):
        recs = [write_graph6(g) for g in generate_graphs(GenerationSpec(n, ANY))]
        miss = sum(run.map(_verify_one, recs))
        bad += miss
        out.write(f"connected\tn={n}\t{len(recs)}\t{miss}\n")
    if a.random:
        recs = random_corpus(a.random, a.random_n_min, a.random_n_max, a.seed)
        miss = sum(run.map(_verify_one, recs))
        bad += miss
        out.write(f"random\tseed={a.seed}\t{len(recs)}\t{miss}\n")
    if a.graph or a.inputs:
        recs = run.records()
        miss = sum(run.map(_verify_one, recs))
        bad += miss
        out.write(f"input\t-\t{len(recs)}\t{miss}\n")
    if bad:
        out.flush()
        raise ValidationError(f"{bad} graphs with disagreeing counts")


# -- parser ---------------------------------------------------------------------


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="*", help="graph files (graph6 or 'n; u-v ...' lines); '-' for stdin")
    p.add_argument("-g", "--graph", action="append", help="inline graph record (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("-o", "--output", help="write primary output here instead of stdout")
    common.add_argument("--manifest", help="write the run manifest here instead of stderr")
    common.add_argument("--no-manifest", action="store_true", help="do not emit a run manifest")

    parser = argparse.ArgumentParser(prog="fewham", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fewham {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count hamiltonian cycles or s-t paths")
    _add_inputs(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--cycles", action="store_true", help="count cycles (default)")
    mode.add_argument("--paths", nargs=2, type=int, metavar=("S", "T"), help="count s-t paths")
    p.add_argument("--algo", choices=list(ALGO_NAMES), default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="list hamiltonian cycle certificates")
    _add_inputs(p)
    p.set_defaults(func=cmd_enumerate)

    def gen_args(q: argparse.ArgumentParser) -> None:
        q.add_argument("--k", type=int)
        q.add_argument("--l", type=int, help="second degree of a bi-regular class")
        q.add_argument("--bipartite", action="store_true")
        q.add_argument("--force", action="store_true", help="lift the desk-scale order cap")

    p = sub.add_parser("generate", parents=[common], help="stream a degree-constrained class as graph6")
    p.add_argument("--n", type=int, required=True)
    gen_args(p)
    p.add_argument("--nearly", action="store_true", help="nearly k-regular class")
    p.add_argument("--any", action="store_true", help="every graph of order n")
    p.add_argument("--disconnected", action="store_true", help="include disconnected graphs")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("table", parents=[common], help="minimum cycle counts over n as TSV")
    gen_args(p)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--two-connected", action="store_true", help="restrict to connectivity exactly 2")
    p.add_argument("--json", help="JSON sidecar with exact values and witnesses")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("domset-search", parents=[common], help="count pairs without any independent dominating set")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", "--n", type=int, required=True, dest="n_max")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--connected", action="store_true", help="only connected regular graphs")
    p.add_argument("--force", action="store_true")
    p.add_argument("--reports", help="write one report per pair to this file")
    p.set_defaults(func=cmd_domset)

    p = sub.add_parser("construct", parents=[common], help="build a named construction")
    p.add_argument("kind", choices=["fig1", "petersen", "fig10", "dagger", "double", "triangle", "subdivide", "chain"])
    _add_inputs(p)
    p.add_argument("--d", type=int)
    p.add_argument("--index", type=int, help="1-based member of the fig10 list")
    p.add_argument("--x", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--edge", type=_parse_pair)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--cycle", help="cycle certificate text for subdivide/chain")
    p.add_argument("--keep-one", action="store_true")
    p.add_argument("--count", action="store_true", help="append the cycle count to each graph")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-bounds", parents=[common], help="exact and interval-certified inequalities")
    p.add_argument("what", choices=["conjecture", "family-inequality", "corollary", "lll-condition", "lll-min", "lll-verify"])
    p.add_argument("--d", type=int)
    p.add_argument("--d-min", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--k-max", type=int)
    p.add_argument("--eps", default="1")
    p.add_argument("--base", choices=["e", "2", "10"], default="e")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="cross-check the two cycle counters on a corpus")
    _add_inputs(p)
    p.add_argument("--n-max", type=int, default=7, help="exhaustive connected graphs up to this order")
    p.add_argument("--random", type=int, default=0, help="number of random graphs")
    p.add_argument("--random-n-min", type=int, default=8)
    p.add_argument("--random-n-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _manifest_argv(argv: Iterable[str]) -> list[str]:
    return ["fewham", *argv]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(args)
    if args.command == "check-bounds" and args.what == "conjecture" and args.d is None:
        parser.error("conjecture needs --d")
    start = time.perf_counter()
    buf = io.StringIO()
    code = EXIT_OK
    try:
        args.func(run, buf)
    except (PreconditionError, ValueError) as exc:
        print(f"fewham: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except CapExceeded as exc:
        print(f"fewham: cap exceeded: {exc}", file=sys.stderr)
        code = EXIT_CAP
    except (ValidationError, FewhamError) as exc:
        print(f"fewham: validation failed: {exc}", file=sys.stderr)
        code = EXIT_VALIDATION
    except OSError as exc:
        print(f"fewham: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    if not args.no_manifest:
        cfg = _config.snapshot()
        cfg["kernels"] = "jit" if kernels.USING_JIT else "fallback"
        outputs = {args.output or "stdout": _sha256(text.encode()), **run.sidecars}
        man = RunManifest(_manifest_argv(argv), cfg, run.inputs, outputs,
                          round(time.perf_counter() - start, 6), run.jobs)
        if args.manifest:
            with open(args.manifest, "w", encoding="ascii") as fh:
                fh.write(man.to_json() + "\n")
        else:
            print(man.to_json(), file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
