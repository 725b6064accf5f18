"""Command-line front end: ingest rating files, run evaluation sweeps,
print recommendations.

Every command is deterministic given its input files, flags, and seed.
Errors exit nonzero with a single machine-parsable line on stderr of the
form ``<error-class>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .datasets import (
    DatasetSpec,
    builtin_spec,
    builtin_specs,
    ingest_summary,
    parse_ratings,
    write_normalized,
)
from .errors import (
    ConfigError,
    EvaluationError,
    LevelcfError,
    ParseError,
    ScaleError,
    SplitError,
    UnknownUserError,
)
from .evaluation import SplitSpec, sweep, write_reports_csv, write_reports_jsonl
from .ratings import RatingScale
from .recommend import top_n
from .similarity import MultiLevelConfig, SimilarityMeasure, WpccConfig

DEFAULT_KS = (5, 10, 20, 40, 60, 80, 100)
DEFAULT_TOPN = ((5, 5), (10, 10))
DEFAULT_MEASURES = ("pcc", "wpcc", "spcc", "jaccard", "multilevel", "hybrid")
DEFAULT_SEED = 0
DEFAULT_TRAIN_FRACTION = 0.8

# Significance-weighting default: 50 for the MovieLens files, 5 for the
# sparser/denser alternates.
DEFAULT_WPCC_THRESHOLD = {
    "ml-100k": 50,
    "ml-1m": 50,
    "jester": 5,
    "epinions": 5,
    "movietweetings": 5,
}

_EXIT_CODES = {
    "config-error": 2,
    "parse-error": 3,
    "data-error": 4,
    "io-error": 5,
}


def _error_class(exc: Exception) -> str:
    if isinstance(exc, ConfigError):
        return "config-error"
    if isinstance(exc, ParseError):
        return "parse-error"
    if isinstance(exc, (UnknownUserError, ScaleError, SplitError, EvaluationError)):
        return "data-error"
    if isinstance(exc, OSError):
        return "io-error"
    return "data-error"


def parse_measure_flag(text: str, dataset_id: str | None = None) -> SimilarityMeasure:
    """Build a measure from ``kind[:key=value,...]`` flag syntax.

    Example: ``multilevel:y=0.4,t1=60``.  The wpcc threshold defaults per
    dataset id when none is given inline.
    """
    kind, _, override_text = text.partition(":")
    kind = kind.strip()
    overrides: dict[str, str] = {}
    if override_text:
        for pair in override_text.split(","):
            key, sep, value = pair.partition("=")
            if not sep or not key.strip() or not value.strip():
                raise ConfigError(f"bad measure override {pair!r} in {text!r}; expected key=value")
            overrides[key.strip()] = value.strip()

    if kind == "wpcc":
        default_t = DEFAULT_WPCC_THRESHOLD.get(dataset_id or "", 50)
        threshold = _pop_int(overrides, "T", _pop_int(overrides, "threshold", default_t))
        _reject_leftovers(kind, overrides)
        return SimilarityMeasure("wpcc", wpcc=WpccConfig(threshold=threshold))
    if kind in ("multilevel", "hybrid"):
        defaults = MultiLevelConfig()
        cfg = MultiLevelConfig(
            t1=_pop_int(overrides, "t1", defaults.t1),
            t2=_pop_int(overrides, "t2", defaults.t2),
            t3=_pop_int(overrides, "t3", defaults.t3),
            t4=_pop_int(overrides, "t4", defaults.t4),
            x1=_pop_float(overrides, "x1", defaults.x1),
            x2=_pop_float(overrides, "x2", defaults.x2),
            x3=_pop_float(overrides, "x3", defaults.x3),
            x4=_pop_float(overrides, "x4", defaults.x4),
            y=_pop_float(overrides, "y", defaults.y),
        )
        _reject_leftovers(kind, overrides)
        return SimilarityMeasure(kind, multilevel=cfg)
    _reject_leftovers(kind, overrides)
    return SimilarityMeasure(kind)


def _pop_int(overrides: dict[str, str], key: str, default: int) -> int:
    raw = overrides.pop(key, None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"measure override {key}={raw!r} is not an integer") from None


def _pop_float(overrides: dict[str, str], key: str, default: float) -> float:
    raw = overrides.pop(key, None)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"measure override {key}={raw!r} is not a number") from None


def _reject_leftovers(kind: str, overrides: dict[str, str]) -> None:
    if overrides:
        raise ConfigError(f"measure {kind!r} does not accept overrides: {sorted(overrides)}")


def load_custom_spec(path: str) -> DatasetSpec:
    """Read a DatasetSpec from a JSON file.

    Keys: id, delimiter, scale_min, scale_max; optional relevance_threshold,
    user_col, item_col, rating_col, max_records.
    """
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    try:
        scale = RatingScale(
            raw["scale_min"], raw["scale_max"], raw.get("relevance_threshold")
        )
        return DatasetSpec(
            id=raw["id"],
            delimiter=raw["delimiter"],
            scale=scale,
            user_col=raw.get("user_col", 0),
            item_col=raw.get("item_col", 1),
            rating_col=raw.get("rating_col", 2),
            max_records=raw.get("max_records"),
        )
    except KeyError as missing:
        raise ConfigError(f"dataset spec {path} is missing key {missing}") from None


def _resolve_spec(args: argparse.Namespace) -> DatasetSpec:
    if args.spec:
        return load_custom_spec(args.spec)
    return builtin_spec(args.dataset)


def _parse_input(path: str, spec: DatasetSpec):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_ratings(handle, spec)


def _parse_topn(text: str) -> tuple[int, int]:
    k_text, sep, n_text = text.partition("x")
    try:
        if not sep:
            raise ValueError
        return int(k_text), int(n_text)
    except ValueError:
        raise ConfigError(f"bad --topn value {text!r}; expected KxN, e.g. 5x5") from None


def _cmd_ingest(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    result = _parse_input(args.input, spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            write_normalized(result.matrix, handle)
    summary = ingest_summary(result.matrix)
    print(
        f"{summary.users} users, {summary.items} items, {summary.ratings} ratings "
        f"(rejected: {result.malformed} malformed, {result.out_of_scale} out-of-scale)"
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    measures = [
        parse_measure_flag(text, spec.id) for text in (args.measure or DEFAULT_MEASURES)
    ]
    ks = args.k or list(DEFAULT_KS)
    topn_specs = [_parse_topn(t) for t in args.topn] if args.topn else list(DEFAULT_TOPN)
    if args.no_topn:
        topn_specs = []
    split_spec = SplitSpec(train_fraction=args.split, seed=args.seed)
    result = _parse_input(args.input, spec)

    def progress(report) -> None:
        if report.n is None:
            print(
                f"[levelcf] {report.measure} k={report.k}: mae={report.mae:.6f} "
                f"fallbacks={report.fallbacks}/{report.predictions}",
                file=sys.stderr,
            )
        else:
            print(
                f"[levelcf] {report.measure} k={report.k} n={report.n}: "
                f"precision={report.precision:.6f} recall={report.recall:.6f}",
                file=sys.stderr,
            )

    reports = sweep(
        result.matrix,
        measures,
        ks,
        topn_specs,
        split_spec,
        dataset=spec.id,
        progress=progress,
    )
    writer = write_reports_csv if args.format == "csv" else write_reports_jsonl
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer(reports, handle)
    else:
        writer(reports, sys.stdout)
    return 0


def _cmd_recommend(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    measure = parse_measure_flag(args.measure, spec.id)
    result = _parse_input(args.input, spec)
    recommendations = top_n(result.matrix, measure, args.user, args.k, args.n)
    for item, value in recommendations:
        print(f"{item}\t{value!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelcf",
        description="User-based collaborative filtering experiments on rating triples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    known_ids = [s.id for s in builtin_specs()]

    def add_spec_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="path to the rating file")
        p.add_argument(
            "--dataset",
            default="ml-100k",
            help=f"builtin dataset layout ({', '.join(known_ids)})",
        )
        p.add_argument("--spec", help="path to a custom dataset spec (JSON)")

    p_ingest = sub.add_parser("ingest", help="normalize a rating file and print a summary")
    add_spec_flags(p_ingest)
    p_ingest.add_argument("--out", help="write normalized triples to this path")
    p_ingest.set_defaults(func=_cmd_ingest)

    p_eval = sub.add_parser("evaluate", help="run an evaluation sweep, emit a report table")
    add_spec_flags(p_eval)
    p_eval.add_argument(
        "--measure",
        action="append",
        help="measure to evaluate, with optional overrides, e.g. multilevel:y=0.4 "
        "(repeatable; default: all six)",
    )
    p_eval.add_argument("--k", action="append", type=int, help="neighborhood size (repeatable)")
    p_eval.add_argument(
        "--topn", action="append", help="top-N run as KxN, e.g. 5x5 (repeatable)"
    )
    p_eval.add_argument("--no-topn", action="store_true", help="skip top-N runs entirely")
    p_eval.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_eval.add_argument(
        "--split", type=float, default=DEFAULT_TRAIN_FRACTION, help="train fraction"
    )
    p_eval.add_argument("--out", help="report path (default: stdout)")
    p_eval.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_rec = sub.add_parser("recommend", help="print top-N recommendations for one user")
    add_spec_flags(p_rec)
    p_rec.add_argument("--user", type=int, required=True)
    p_rec.add_argument("--measure", default="hybrid")
    p_rec.add_argument("--k", type=int, default=10)
    p_rec.add_argument("--n", type=int, default=10)
    p_rec.set_defaults(func=_cmd_recommend)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LevelcfError, OSError) as exc:
        error_class = _error_class(exc)
        print(f"{error_class}: {exc}", file=sys.stderr)
        return _EXIT_CODES[error_class]


if __name__ == "__main__":
    sys.exit(main())
