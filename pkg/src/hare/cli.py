"""Command-line entry points: `hare sim` and `hare serve`.

`hare sim` runs policies against simulated readers over a corpus and
writes a results table; `hare serve` exposes live reading sessions over
HTTP for the browser reader.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import load_corpus
from .embedding import embed_corpus, make_file_provider, make_hashed_provider
from .errors import ConfigError, EmptyCorpus, HareError, ParseError
from .harness import ResultsTable, emit_report, grid_search, run_experiment
from .sample_data import load_sample_corpus


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hare", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("sim", help="run simulated reading experiments")
    sim.add_argument("--corpus", required=True,
                     help="corpus file path, or 'sample' for the bundled corpus")
    sim.add_argument("--provider", default="hashed",
                     help="'hashed' or 'file:PATH' with precomputed vectors")
    sim.add_argument("--policy", help="policy spec, e.g. hide_all_similar:threshold=0.5")
    sim.add_argument("--grid", help="'appendixA' or a grid file of policy patterns")
    sim.add_argument("--noise", default="0.01,0.1",
                     help="comma-separated feedback noise levels (sharp first)")
    sim.add_argument("--trials", type=int, default=3)
    sim.add_argument("--seed", type=int, default=42)
    sim.add_argument("--k-user", type=int, default=4, dest="k_user",
                     help="number of interest concepts per simulated user")
    sim.add_argument("--min-sentences", type=int, default=10, dest="min_sentences")
    sim.add_argument("--max-docs", type=int, default=None, dest="max_docs",
                     help="limit to the first N documents")
    sim.add_argument("--out", default="results.csv")
    sim.add_argument("--format", default="csv", choices=["csv", "markdown"])
    sim.add_argument("--timings", action="store_true",
                     help="include wall-clock ms per session (breaks byte-identical output)")

    serve = sub.add_parser("serve", help="serve live reading sessions over HTTP")
    serve.add_argument("--corpus", default="sample")
    serve.add_argument("--provider", default="hashed")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--seed", type=int, default=42)
    serve.add_argument("--min-sentences", type=int, default=1, dest="min_sentences")
    serve.add_argument("--log", default=None, help="append-only study event log path")
    return parser


def _load(args) -> tuple:
    if args.corpus == "sample":
        corpus = load_sample_corpus(min_sentences=args.min_sentences)
    else:
        corpus = load_corpus(args.corpus, min_sentences=args.min_sentences)
    max_docs = getattr(args, "max_docs", None)
    if max_docs is not None:
        from .corpus import Corpus

        corpus = Corpus(corpus.documents[:max_docs], corpus.provenance,
                        corpus.dropped_count)
        if len(corpus) == 0:
            raise EmptyCorpus("--max-docs left no documents")
    if args.provider == "hashed":
        provider = make_hashed_provider(corpus, seed=args.seed)
    elif args.provider.startswith("file:"):
        provider = make_file_provider(args.provider[len("file:"):])
    else:
        raise ConfigError(f"provider must be 'hashed' or 'file:PATH', got {args.provider!r}")
    return corpus, provider


def _run_sim(args) -> int:
    if (args.policy is None) == (args.grid is None):
        raise ConfigError("exactly one of --policy or --grid is required")
    noise = tuple(float(x) for x in args.noise.split(",") if x.strip())
    if not noise:
        raise ConfigError("--noise must list at least one level")
    corpus, provider = _load(args)
    edocs = embed_corpus(provider, corpus)
    if args.policy is not None:
        row = run_experiment(edocs, args.policy, noise_levels=noise,
                             trials=args.trials, k_user=args.k_user, seed=args.seed)
        table = ResultsTable([row])
    else:
        table = grid_search(edocs, args.grid, noise_levels=noise,
                            trials=args.trials, k_user=args.k_user, seed=args.seed)
    emit_report(table, format=args.format, path=args.out, include_timings=args.timings)
    print(f"wrote {len(table)} row(s) to {args.out}")
    return 0


def _run_serve(args) -> int:
    import uvicorn

    from .service import create_app

    corpus, provider = _load(args)
    app = create_app(corpus=corpus, provider=provider, event_log_path=args.log)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sim":
            return _run_sim(args)
        return _run_serve(args)
    except (ConfigError, ParseError, EmptyCorpus, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
