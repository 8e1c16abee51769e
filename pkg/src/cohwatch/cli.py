"""Command-line pipeline: mine, score, monitor, evaluate, report.

Stages communicate through files (JSON Lines stores and score files) so
every step is auditable and resumable.  Data goes to stdout only when
--out is absent; diagnostics always go to stderr.  Every file written
with --out gets a sibling ``<out>.manifest.json`` recording the exact
invocation that produced it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .cpp import ExtractionError, extract_functions
from .evaluate import (
    CALIBRATION_METRICS,
    RANKING_METRICS,
    EVALUATION_CSV_COLUMNS,
    EvaluationConfig,
    EvaluationError,
    build_pairs,
    evaluate,
    pair_id_for,
    parse_ratio,
)
from .inject import SnippetCorpusError, load_snippets
from .metrics import (
    cohesion_histogram,
    fit_bucket_stats,
    make_delta,
    pearson_with_p,
    size_bucket_curves,
    standardize,
    write_deltas_csv,
)
from .mining import (
    MiningConfig,
    MiningError,
    StoreFormatError,
    load_store,
    mine_repository,
    save_store,
)
from .mining.store import dumps_store
from .scoring import (
    BackendError,
    MockBackend,
    RemoteBackend,
    ScoreRow,
    load_scores,
    score_function,
    score_key,
)

log = logging.getLogger("cohwatch")

# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

EXIT_OK = 0
EXIT_FATAL = 2            # unusable inputs, I/O failure, usage errors
EXIT_BACKEND = 3          # scoring backend unreachable
EXIT_MISSING_SCORES = 4   # score file absent, unreadable, or empty join
EXIT_EVAL_CONFIG = 5      # evaluation parameters unusable
EXIT_SNIPPETS = 6         # snippet corpus unusable

BACKEND_URL_ENV = "COHESION_BACKEND_URL"


# ---------------------------------------------------------------------------
# manifests and output plumbing
# ---------------------------------------------------------------------------


def _config_snapshot(args):
    keep = {}
    for key, value in vars(args).items():
        if key == "handler":
            continue
        if isinstance(value, (str, int, float, bool)) or value is None:
            keep[key] = value
        else:
            keep[key] = repr(value)
    return keep


def write_manifest(out_path, args, inputs, outputs):
    manifest = {
        "subcommand": args.command,
        "config": _config_snapshot(args),
        "inputs": inputs,
        "outputs": outputs,
        "seed": getattr(args, "seed", None),
        "tool_version": __version__,
        "created_at": datetime.now(timezone.utc).isoformat(
            timespec="seconds"),
    }
    path = Path(str(out_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")
    return path


def _emit(text, out_path, args, inputs):
    """Write text to --out (plus manifest) or to stdout."""
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
        write_manifest(out_path, args, inputs, {"out": str(out_path)})
    else:
        sys.stdout.write(text)


def _make_backend(args):
    """Backend from --mock / --backend-url / the environment, else None."""
    if getattr(args, "mock", False):
        return MockBackend(seed=0)
    url = getattr(args, "backend_url", None) or os.environ.get(
        BACKEND_URL_ENV)
    if url:
        return RemoteBackend(url)
    return None


def _load_store_or_exit(path):
    try:
        return load_store(path)
    except (OSError, StoreFormatError) as exc:
        log.error("cannot read store %s: %s", path, exc)
        raise SystemExit(EXIT_FATAL)


def _load_scores_or_exit(path):
    try:
        return load_scores(path)
    except (OSError, ValueError) as exc:
        log.error("cannot read scores %s: %s", path, exc)
        raise SystemExit(EXIT_MISSING_SCORES)


# ---------------------------------------------------------------------------
# mine
# ---------------------------------------------------------------------------


def cmd_mine(args):
    config = MiningConfig(rev=args.rev)
    try:
        store = mine_repository(args.repo, config)
    except MiningError as exc:
        log.error("mining failed: %s", exc)
        return EXIT_FATAL

    log.info("mined %d functions, %d versions, %d consecutive pairs",
             len(store.histories), store.version_count(), store.pair_count())
    if store.skipped:
        log.info("skipped %d snapshots", len(store.skipped))

    if args.out:
        save_store(store, args.out)
        skip_path = Path(str(args.out) + ".skipped.txt")
        skip_path.write_text(
            "".join(str(s) + "\n" for s in store.skipped), encoding="utf-8")
        write_manifest(args.out, args, {"repo": str(args.repo)},
                       {"store": str(args.out), "skips": str(skip_path)})
    else:
        sys.stdout.write(dumps_store(store))
        for entry in store.skipped:
            log.info("skip %s", entry)
    return EXIT_OK


# ---------------------------------------------------------------------------
# score
# ---------------------------------------------------------------------------


def _score_store(store, backend, existing):
    """Score every stored version, reusing rows already on disk.

    Returns (rows, scored, reused, failed); rows come out in canonical
    (key, version) order regardless of resume state.
    """
    info = backend.info()
    rows, scored, reused, failed = [], 0, 0, 0
    for hist in store.iter_histories():
        for i, version in enumerate(hist.versions):
            prior = existing.get(score_key(hist.key, i))
            if prior is not None:
                rows.append(prior)
                reused += 1
                continue
            try:
                fns = extract_functions(version.body_text)
            except ExtractionError as exc:
                log.warning("unscorable %s@%d: %s", hist.key, i, exc)
                failed += 1
                continue
            if len(fns) != 1:
                log.warning("unscorable %s@%d: not a single function",
                            hist.key, i)
                failed += 1
                continue
            score = score_function(fns[0], backend)
            rows.append(ScoreRow(
                key=hist.key,
                version=i,
                commit_id=version.commit_id,
                body_line_count=version.body_line_count,
                score=score,
                backend_id=info.model_id,
            ))
            scored += 1
    return rows, scored, reused, failed


def cmd_score(args):
    store = _load_store_or_exit(args.store)
    backend = _make_backend(args)
    if backend is None:
        log.error("no backend: pass --mock, --backend-url, or set %s",
                  BACKEND_URL_ENV)
        return EXIT_FATAL

    existing = {}
    if args.out and Path(args.out).exists():
        existing = _load_scores_or_exit(args.out)

    try:
        rows, scored, reused, failed = _score_store(store, backend, existing)
    except BackendError as exc:
        log.error("backend error: %s", exc)
        return EXIT_BACKEND if exc.unreachable else EXIT_FATAL

    log.info("scored %d versions (%d reused, %d unscorable)",
             scored, reused, failed)
    text = "".join(row.to_json() + "\n" for row in rows)
    _emit(text, args.out, args, {"store": str(args.store)})
    return EXIT_OK


# ---------------------------------------------------------------------------
# monitor
# ---------------------------------------------------------------------------


def _join_deltas(store, scores):
    """Standardized deltas for every fully scored consecutive pair."""
    deltas, excerpts, dropped = [], {}, 0
    for key, i, _v1, v2 in store.list_version_pairs():
        s1 = scores.get(score_key(key, i))
        s2 = scores.get(score_key(key, i + 1))
        if s1 is None or s2 is None:
            dropped += 1
            continue
        pid = pair_id_for(key, i)
        deltas.append(make_delta(pid, s1.score, s2.score))
        excerpts[pid] = v2.body_text.split("\n", 1)[0]
    return deltas, excerpts, dropped


def cmd_monitor(args):
    store = _load_store_or_exit(args.store)
    scores = _load_scores_or_exit(args.scores)
    deltas, excerpts, dropped = _join_deltas(store, scores)
    if dropped:
        log.warning("%d pairs lack scores and were dropped", dropped)
    if not deltas:
        log.error("no scored pairs to rank")
        return EXIT_MISSING_SCORES

    stats = fit_bucket_stats(deltas)
    ranked = sorted(
        (standardize(d, stats) for d in deltas),
        key=lambda d: (-getattr(d, args.metric), d.pair_id))
    top = ranked[:args.top]

    if args.out:
        buf = io.StringIO()
        write_deltas_csv(top, buf)
        _emit(buf.getvalue(), args.out, args,
              {"store": str(args.store), "scores": str(args.scores)})
        for rank, d in enumerate(top, start=1):
            log.info("#%d %s %s=%.4f", rank, d.pair_id, args.metric,
                     getattr(d, args.metric))
    else:
        lines = [f"top {len(top)} of {len(deltas)} pairs by {args.metric}"]
        for rank, d in enumerate(top, start=1):
            lines.append(
                f"{rank:3d}. {d.pair_id}  {args.metric}="
                f"{getattr(d, args.metric):+.4f}  "
                f"npc {d.npc1:.3f} -> {d.npc2:.3f}  cd={d.cd:+.3f}")
            lines.append(f"      {excerpts[d.pair_id][:72]}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


def _evaluation_csv(result):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EVALUATION_CSV_COLUMNS)
    writer.writerows(result.csv_rows())
    return buf.getvalue()


def cmd_evaluate(args):
    store = _load_store_or_exit(args.store)
    scores = _load_scores_or_exit(args.scores)
    pairs, dropped = build_pairs(store, scores)
    if dropped:
        log.warning("%d pairs lack scores and were dropped", dropped)
    if not pairs:
        log.error("no scored pairs to evaluate")
        return EXIT_MISSING_SCORES

    metrics = (args.calibration,) if args.calibration else RANKING_METRICS
    try:
        config = EvaluationConfig(
            ratio=parse_ratio(args.ratio),
            trials=args.trials,
            metrics=metrics,
            high_cohesion_only=args.high_cohesion_only,
            k=args.k,
            master_seed=args.seed,
            contaminated_stats=args.contaminated_stats,
        )
    except EvaluationError as exc:
        log.error("bad evaluation config: %s", exc)
        return EXIT_EVAL_CONFIG

    corpus = None
    backend = None
    if any(m in RANKING_METRICS for m in metrics):
        try:
            corpus, rejected = load_snippets(args.snippets)
        except SnippetCorpusError as exc:
            log.error("snippet corpus unusable: %s", exc)
            return EXIT_SNIPPETS
        for sid, reason in rejected:
            log.warning("snippet %s rejected: %s", sid, reason)
        backend = _make_backend(args)
        if backend is None:
            log.error("no backend: pass --mock, --backend-url, or set %s",
                      BACKEND_URL_ENV)
            return EXIT_EVAL_CONFIG

    try:
        result = evaluate(pairs, corpus, config, backend)
    except EvaluationError as exc:
        log.error("evaluation failed: %s", exc)
        return EXIT_EVAL_CONFIG
    except BackendError as exc:
        log.error("backend error: %s", exc)
        return EXIT_BACKEND if exc.unreachable else EXIT_FATAL

    for metric in metrics:
        log.info("%s: raw P@%d %.4f, adjusted %.4f", metric, config.k,
                 result.raw_p_at_k[metric], result.adjusted_p_at_k[metric])
    text = result.to_json() + "\n"
    if args.out:
        _emit(text, args.out, args,
              {"store": str(args.store), "scores": str(args.scores)})
        csv_path = Path(args.out).with_suffix(".csv")
        csv_path.write_text(_evaluation_csv(result), encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _report_histogram(scores):
    rows = cohesion_histogram([row.score.npc for row in scores.values()])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("npc_bucket_lo", "count"))
    for lo, count in rows:
        writer.writerow((repr(lo), count))
    return buf.getvalue()


def _report_size_buckets(scores):
    samples = [(row.body_line_count, row.score.npc)
               for row in scores.values()]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("lines_lo", "count", "mean_npc", "std_npc"))
    for lo, count, mean, std in size_bucket_curves(samples):
        writer.writerow((lo, count, repr(mean), repr(std)))
    return buf.getvalue()


def _report_correlation(store, scores):
    pairs, _dropped = build_pairs(store, scores)
    if len(pairs) < 3:
        raise ValueError("need at least 3 scored pairs for correlations")
    npc1 = [p.npc1 for p in pairs]
    series = [
        ("npc1", "cd", npc1, [p.npc1 - p.npc2 for p in pairs]),
        ("npc1", "otcd", npc1, [p.npc1 - p.pinned2 for p in pairs]),
        ("npc", "lines", [row.score.npc for row in scores.values()],
         [float(row.body_line_count) for row in scores.values()]),
    ]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("x", "y", "r", "p", "n"))
    for x_name, y_name, xs, ys in series:
        r, p = pearson_with_p(xs, ys)
        writer.writerow((x_name, y_name, repr(r), repr(p), len(xs)))
    return buf.getvalue()


def cmd_report(args):
    scores = _load_scores_or_exit(args.scores)
    if not scores:
        log.error("score file is empty")
        return EXIT_MISSING_SCORES

    try:
        if args.kind == "histogram":
            text = _report_histogram(scores)
        elif args.kind == "size-buckets":
            text = _report_size_buckets(scores)
        else:
            if not args.store:
                log.error("--kind correlation requires --store")
                return EXIT_FATAL
            store = _load_store_or_exit(args.store)
            text = _report_correlation(store, scores)
    except ValueError as exc:
        log.error("report failed: %s", exc)
        return EXIT_FATAL

    inputs = {"scores": str(args.scores)}
    if args.store:
        inputs["store"] = str(args.store)
    _emit(text, args.out, args, inputs)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cohwatch",
        description="Track name-prediction cohesion of C++ functions "
                    "across git history and flag suspicious drops.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="extract function histories from a repo")
    p.add_argument("--repo", required=True, help="path to a git repository")
    p.add_argument("--rev", default="HEAD", help="branch or commit to walk")
    p.add_argument("--out", help="store output path (stdout when absent)")
    p.set_defaults(handler=cmd_mine)

    p = sub.add_parser("score", help="score every stored function version")
    p.add_argument("--store", required=True, help="mined store path")
    p.add_argument("--mock", action="store_true",
                   help="use the deterministic hash backend")
    p.add_argument("--backend-url",
                   help=f"model server URL (or ${BACKEND_URL_ENV})")
    p.add_argument("--out", help="score file path; resumes if it exists")
    p.set_defaults(handler=cmd_score)

    p = sub.add_parser("monitor", help="rank version pairs by cohesion drop")
    p.add_argument("--store", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--metric", default="cdz", choices=RANKING_METRICS)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--out", help="CSV output path (pretty text otherwise)")
    p.set_defaults(handler=cmd_monitor)

    p = sub.add_parser("evaluate",
                       help="run seeded injection-simulation trials")
    p.add_argument("--store", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--snippets", help="snippet dir (default: built-in)")
    p.add_argument("--ratio", default="1:100",
                   help="malicious-to-benign ratio, e.g. 1:100")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--high-cohesion-only", action="store_true",
                   help="only consider pairs with npc1 > 0.5")
    p.add_argument("--calibration", choices=CALIBRATION_METRICS,
                   help="rank by a calibration metric instead")
    p.add_argument("--contaminated-stats", action="store_true",
                   help="fit bucket stats on injected pairs too")
    p.add_argument("--mock", action="store_true")
    p.add_argument("--backend-url")
    p.add_argument("--out", help="result JSON path; CSV lands beside it")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("report", help="summaries of a score file")
    p.add_argument("--scores", required=True)
    p.add_argument("--store", help="needed for --kind correlation")
    p.add_argument("--kind", required=True,
                   choices=("histogram", "size-buckets", "correlation"))
    p.add_argument("--out")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    except Exception as exc:    # pragma: no cover - last-resort guard
        log.error("unexpected failure: %s", exc)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
