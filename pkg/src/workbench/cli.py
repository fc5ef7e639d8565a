"""``workbench`` command line.

Pipeline: ``fixtures`` -> ``parse`` -> ``extract`` -> ``cluster`` ->
``suggest``; plus ``matrix verify|bench|invert`` for the exact kernel.

Exit codes: 0 ok, 2 usage, 3 parse/format, 4 verification failure,
5 clustering precondition. Errors print one line,
``error[<Code>]: <message>``, on stderr.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import errors
from .clustering import ALGORITHMS, BACKEND_LABELS, ClusterParams, dumps_report, loads_report, run_repeated, suggest
from .errors import WorkbenchError
from .features import ExtractionConfig, extract_corpus, read_features, write_features
from .fixtures import FixtureSpec, with_family_sizes, write_fixtures
from .kernel import GF, QQ, cfast_invmx, dumps_matrix, fast_invmx, invmx, loads_matrix, mx_of_seqmx, seqmx_of_mx
from .kernel.bench import run_bench
from .kernel.verify import verify
from .parser import dumps_corpus, grammar_ebnf, loads_corpus, parse_corpus


def default_seed(fallback=42):
    env = os.environ.get("WORKBENCH_SEED")
    if env is None:
        return fallback
    try:
        return int(env)
    except ValueError:
        raise WorkbenchError(f"WORKBENCH_SEED must be an integer, got {env!r}") from None


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.IOFailure(f"{path}: {exc.strerror or exc}") from exc


def _field(args):
    if args.field == "q":
        return QQ
    if args.prime is None:
        raise WorkbenchError("--field gfp needs --prime")
    return GF(args.prime)


def _collect_sources(inputs):
    files = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            files.extend(sorted(p.glob("*.vp")))
        else:
            files.append(p)
    return [(str(f), _read(f)) for f in files]


def cmd_parse(args):
    if not args.inputs:
        args.parser.print_usage(sys.stderr)
        raise WorkbenchError("no input files given")
    corpus = parse_corpus(_collect_sources(args.inputs))
    _emit(dumps_corpus(corpus), args.output)
    return 0


def cmd_extract(args):
    corpus = loads_corpus(_read(args.corpus))
    table = extract_corpus(corpus, ExtractionConfig(steps_k=args.steps))
    _emit(write_features(table), args.output)
    return 0


def cmd_cluster(args):
    table = read_features(_read(args.features))
    params = ClusterParams(
        algorithm=args.algorithm,
        granularity=args.granularity,
        runs=args.runs,
        seed=args.seed if args.seed is not None else default_seed(),
        freq_threshold=args.freq_threshold,
        prox_threshold=args.prox_threshold,
    )
    report = run_repeated(table, params, jobs=args.jobs)
    _emit(dumps_report(report), args.output)
    return 0


def render_suggestions(lemma, entries, statements=None):
    statements = statements or {}
    lines = [f"Suggestions for Lemma {lemma}:"]
    if not entries:
        lines.append("  no suggestions pass thresholds")
    for others, freq, prox in entries:
        for name in others:
            line = f"  {name}  frequency={freq:.3f}  proximity={prox:.3f}"
            if name in statements:
                line += f"  : {statements[name]}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_suggest(args):
    report = loads_report(_read(args.report))
    statements = None
    if args.corpus:
        corpus = loads_corpus(_read(args.corpus))
        statements = {lem.name: lem.statement_text() for lem in corpus.lemmas}
    entries = suggest(report, args.lemma)
    sys.stdout.write(render_suggestions(args.lemma, entries, statements))
    return 0


def cmd_fixtures(args):
    seed = args.seed if args.seed is not None else default_seed(0)
    if args.family_sizes:
        try:
            sizes = [int(x) for x in args.family_sizes.split(",")]
        except ValueError:
            raise WorkbenchError("--family-sizes takes comma-separated integers") from None
        spec = with_family_sizes(sizes, noise=args.noise, seed=seed, files=args.files)
    else:
        spec = FixtureSpec(noise=args.noise, seed=seed, files=args.files)
    for path in write_fixtures(args.outdir, spec):
        print(path)
    return 0


def cmd_matrix_verify(args):
    F = _field(args)
    seed = args.seed if args.seed is not None else default_seed(0)
    report = verify(F, max_size=args.max_size, cases=args.cases, seed=seed)
    width = max([len(r[0]) for r in report.rows()] + [9])
    print(f"{'invariant':<{width}}  result  passed/total")
    for name, passed, total in report.rows():
        status = "PASS" if passed == total else "FAIL"
        print(f"{name:<{width}}  {status:<6}  {passed}/{total}")
    if not report.ok:
        name, ctx = report.failures[0]
        raise errors.VerificationFailed(f"{len(report.failures)} invariant failures; first: {name} on {ctx}")
    return 0


def cmd_matrix_bench(args):
    if args.size < 1:
        raise WorkbenchError("--size must be >= 1")
    F = _field(args)
    seed = args.seed if args.seed is not None else default_seed(0)
    rows = run_bench(F, args.size, cutoff=args.cutoff, seed=seed)
    if args.json:
        print(json.dumps({"size": args.size, "field": repr(F), "cutoff": args.cutoff, "results": rows}, indent=2))
    else:
        print(f"size={args.size} field={F!r} cutoff={args.cutoff}")
        print(f"{'operation':<16} {'seconds':>10} {'scalar mults':>14}")
        for r in rows:
            print(f"{r['op']:<16} {r['seconds']:>10.4f} {r['mults']:>14,}")
    return 0


def cmd_matrix_invert(args):
    M = loads_matrix(_read(args.input))
    if args.method == "fast":
        inv = mx_of_seqmx(M.n, cfast_invmx(seqmx_of_mx(M)))
    elif args.method == "fast-abstract":
        inv = fast_invmx(M)
    else:
        inv = invmx(M)
    _emit(dumps_matrix(inv) + "\n", args.output)
    return 0


def cmd_grammar(args):
    sys.stdout.write(grammar_ebnf())
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="workbench", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse .vp sources into corpus JSON")
    p.add_argument("inputs", nargs="*", help=".vp files or directories of them")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_parse, parser=p)

    p = sub.add_parser("extract", help="corpus JSON -> feature CSV")
    p.add_argument("corpus")
    p.add_argument("--steps", type=int, default=5, help="proof steps encoded (default 5)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("cluster", help="feature CSV -> cluster report JSON")
    p.add_argument("features")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="kmeans-pp",
                   help="; ".join(f"{k} ~ {v}" for k, v in BACKEND_LABELS.items()))
    p.add_argument("--granularity", type=int, default=3)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--seed", type=int, default=None, help="master seed (default: $WORKBENCH_SEED or 42)")
    p.add_argument("--freq-threshold", type=float, default=0.6)
    p.add_argument("--prox-threshold", type=float, default=0.5)
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output is identical for any value")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("suggest", help="list lemmas clustered with a query lemma")
    p.add_argument("report")
    p.add_argument("--lemma", required=True)
    p.add_argument("--corpus", help="corpus JSON, to show statements next to suggestions")
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("fixtures", help="write the synthetic .vp corpus")
    p.add_argument("outdir")
    p.add_argument("--seed", type=int, default=None, help="generator seed (default: $WORKBENCH_SEED or 0)")
    p.add_argument("--noise", type=int, default=20)
    p.add_argument("--files", type=int, default=6)
    p.add_argument("--family-sizes", help="five comma-separated sizes for the non-refinement families")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("grammar", help="print the .vp grammar in EBNF")
    p.set_defaults(func=cmd_grammar)

    mx = sub.add_parser("matrix", help="exact matrix kernel")
    msub = mx.add_subparsers(dest="matrix_command", required=True)

    def field_opts(q):
        q.add_argument("--field", choices=("q", "gfp"), default="q")
        q.add_argument("--prime", type=int)
        q.add_argument("--seed", type=int, default=None)

    q = msub.add_parser("verify", help="check the refinement invariants on random matrices")
    field_opts(q)
    q.add_argument("--max-size", type=int, default=16)
    q.add_argument("--cases", type=int, default=100)
    q.set_defaults(func=cmd_matrix_verify)

    q = msub.add_parser("bench", help="time and count scalar multiplications")
    field_opts(q)
    q.add_argument("--size", type=int, default=128)
    q.add_argument("--cutoff", type=int, default=64)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_matrix_bench)

    q = msub.add_parser("invert", help="invert a matrix given in matrix JSON")
    q.add_argument("input")
    q.add_argument("--method", choices=("fast", "fast-abstract", "gauss"), default="fast")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_matrix_invert)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error[{exc.code}]: " + " ".join(str(exc).split()), file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error[BadArgument]: {exc}", file=sys.stderr)
        return errors.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
