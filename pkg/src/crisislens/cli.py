"""``crisislens`` command line.

Subcommands: ``ingest``, ``sentiment``, ``shift`` and ``graph`` (with
``build``, ``metrics``, ``communities``, ``filter``, ``ego``,
``timeseries``). Each run writes its outputs plus ``run_manifest.json``
into ``--out``. Nothing is written when the run fails.

Exit codes: 0 success, 2 configuration/argument error, 3 I/O error,
4 empty result.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .config import Config, load_config
from .errors import (
    BadInput,
    ConfigError,
    CrisisLensError,
    EgoAbsent,
    EmptyAfterMask,
    EmptyCommunity,
    EmptyDistribution,
    MalformedRecord,
)
from .hedonometer import SentimentSeries, daily_series, distribution_of, lens_sweep, parse_grid, series_difference
from .ingest import (
    TweetRecord,
    bucket_by_day,
    expand_user_sample,
    extract_seed_users,
    filter_dates,
    format_timestamp,
    keyword_filter,
    language_bin,
    read_records,
    victim_filter,
)
from .lexicon import LensMask, load_lexicon
from .netgraph import (
    CommunityPartition,
    HashtagGraph,
    InteractionGraph,
    build_hashtag_network,
    build_interaction_graph,
    community_topic_shares,
    daily_ego_networks,
    daily_top50_table,
    drop_ego_lcc,
    load_labels,
    louvain,
    summary,
    superimpose,
    topic_filter,
)
from .netgraph.metrics import PATH_MODES, in_degree_distribution
from .netgraph.topics import TopicFilterResult
from .render import degree_svg, fmt, line_chart_svg, stacked_bars_svg, wordshift_svg
from .wordshift import jsd_shift, sentiment_shift, shift_document

log = logging.getLogger("crisislens")

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_EMPTY = 0, 2, 3, 4
FORMATS = ("csv", "json", "svg")
MANIFEST = "run_manifest.json"


class EmptyResult(Exception):
    pass


class InputError(Exception):
    pass


# ------------------------------------------------------------------ output staging


@dataclass
class Run:
    """Collects outputs in memory; they reach disk only if the command succeeds."""

    command: str
    config: Config
    out_dir: Path
    formats: set[str]
    inputs: list[str] = field(default_factory=list)
    outputs: dict[str, bytes] = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def wants(self, kind: str) -> bool:
        return kind in self.formats

    def add(self, name: str, content: str | bytes):
        self.outputs[name] = content.encode("utf-8") if isinstance(content, str) else content

    def add_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence]):
        if not self.wants("csv"):
            return
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
        self.add(name, buf.getvalue())

    def add_json(self, name: str, obj, force: bool = False):
        if force or self.wants("json"):
            self.add(name, dumps(obj))

    def add_svg(self, name: str, svg: str):
        if self.wants("svg"):
            self.add(name, svg)

    def commit(self, started: datetime) -> list[Path]:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for name in sorted(self.outputs):
            path = self.out_dir / name
            path.write_bytes(self.outputs[name])
            written.append(path)
        manifest = {
            "command": self.command,
            "version": __version__,
            "config_source": self.config.source,
            "config_hash": self.config.digest,
            "parameters": self.parameters,
            "input_files": self.inputs,
            "started": format_timestamp(started),
            "finished": format_timestamp(_now()),
            "output_files": sorted(self.outputs),
            "notes": self.notes,
        }
        (self.out_dir / MANIFEST).write_text(dumps(manifest), encoding="utf-8")
        return written


def _now() -> datetime:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        return datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    return datetime.now(timezone.utc)


def _clean(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if obj == obj and obj not in (float("inf"), float("-inf")) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (date, datetime)):
        return obj.isoformat()
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), ensure_ascii=False, indent=2) + "\n"


# ------------------------------------------------------------------ inputs


def _parse_date(value: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {value!r}") from None


def _check_inputs(paths: Sequence[str]):
    for p in paths:
        if p != "-" and not Path(p).is_file():
            raise InputError(f"input file not found: {p}")


def _lines(paths: Sequence[str]):
    for p in paths:
        if p == "-":
            yield from sys.stdin
        else:
            with open(p, encoding="utf-8") as fh:
                yield from fh


def load_records(run: Run, paths: Sequence[str], strict: bool = False) -> list[TweetRecord]:
    _check_inputs(paths)
    run.inputs.extend(paths)
    stats: dict = {}
    try:
        records = list(read_records(_lines(paths), strict=strict, stats=stats))
    except UnicodeDecodeError as exc:
        raise InputError(f"input is not UTF-8: {exc}") from None
    if stats:
        run.notes["skipped_lines"] = stats
    return records


def _range(args, cfg: Config) -> tuple[date, date]:
    start = args.date_from or cfg.collection.date_start
    end = args.date_to or cfg.collection.date_end
    if start > end:
        raise ConfigError("--from is after --to")
    return start, end


def _languages(args, cfg: Config) -> list[str]:
    if args.lang:
        return [x for item in args.lang for x in item.split(",") if x]
    return list(cfg.collection.languages)


def _lexicons(args, cfg: Config, languages: Sequence[str]):
    paths = dict(cfg.lexicons)
    for item in args.lexicon or ():
        lang, sep, path = item.partition("=")
        if not sep:
            raise ConfigError(f"--lexicon expects LANG=PATH, got {item!r}")
        paths[lang] = path
    lexes = {}
    for lang in languages:
        if lang not in paths:
            raise ConfigError(f"no lexicon configured for language {lang!r}")
        try:
            lexes[lang] = load_lexicon(paths[lang], lang)
        except OSError as exc:
            raise InputError(f"cannot read lexicon {paths[lang]}: {exc.strerror}") from None
    return lexes


def _lens(args, cfg: Config) -> LensMask:
    radius = cfg.lens if args.lens is None else args.lens
    try:
        return LensMask(radius)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _seed(args, cfg: Config) -> int:
    return cfg.seed if args.seed is None else args.seed


# ------------------------------------------------------------------ ingest


def cmd_ingest(args, run: Run):
    cfg = run.config
    start, end = _range(args, cfg)
    languages = _languages(args, cfg)
    records = load_records(run, args.inputs, strict=args.strict)
    run.parameters.update(mode=args.mode, date_from=start, date_to=end, languages=languages)

    in_range = list(filter_dates(records, start, end))
    if args.mode == "keyword":
        keywords = args.keywords.split(",") if args.keywords else cfg.collection.keywords
        run.parameters["keywords"] = keywords
        kept = list(keyword_filter(in_range, keywords))
        bins = language_bin(kept, languages)
        if not args.keep_other:
            kept = [r for lang in languages for r in bins[lang]]
            kept.sort(key=lambda r: (r.timestamp, r.id))
    elif args.mode == "victim":
        region = cfg.region
        seeds = extract_seed_users(records, region, cfg.seed_dates)
        run.notes["seed_users"] = len(seeds)
        if not seeds:
            raise EmptyResult("no geolocated seed users inside the region on the seed dates")
        sample = expand_user_sample(records, seeds, (start, end))
        run.notes["user_sample"] = len(sample)
        kept = list(victim_filter(in_range, sample, cfg.collection.victim_keywords, cfg.collection.victim_language))
        run.add("user_sample.txt", "".join(f"{h}\n" for h in sorted(sample)))
        bins = language_bin(kept, languages)
    else:
        kept = in_range
        bins = language_bin(kept, languages)

    if not kept:
        raise EmptyResult("no records survived the filters")
    run.add("records.ndjson", "".join(r.to_json() + "\n" for r in kept))
    buckets = bucket_by_day(kept, start, end)
    run.add_csv("buckets.csv", ["date", "count"], ((d.isoformat(), len(rs)) for d, rs in buckets.items()))
    run.add_csv("languages.csv", ["language", "count"], ((k, len(v)) for k, v in bins.items()))
    run.notes["input_records"] = len(records)
    run.notes["output_records"] = len(kept)


# ------------------------------------------------------------------ sentiment


def _series_rows(series: SentimentSeries):
    return ((p.day.isoformat(), p.sentiment, p.tokens) for p in series.points)


def cmd_sentiment(args, run: Run):
    cfg = run.config
    start, end = _range(args, cfg)
    languages = _languages(args, cfg)
    if len(languages) != 2:
        raise ConfigError("sentiment compares exactly two languages; pass --lang A,B")
    lexes = _lexicons(args, cfg, languages)
    mask = _lens(args, cfg)
    records = load_records(run, args.inputs)
    run.parameters.update(languages=languages, lens=mask.radius, date_from=start, date_to=end)

    bins = language_bin(filter_dates(records, start, end), languages)
    if not any(bins[lang] for lang in languages):
        raise EmptyResult("no records in the requested languages and dates")
    series = {}
    for lang in languages:
        buckets = bucket_by_day(bins[lang], start, end)
        series[lang] = daily_series(buckets, lexes[lang], mask)
        run.add_csv(f"series_{lang}.csv", ["date", "sentiment", "tokens"], _series_rows(series[lang]))
    diff = series_difference(series[languages[0]], series[languages[1]])
    run.add_csv("series_diff.csv", ["date", "sentiment", "tokens"], _series_rows(diff))
    if all(p.sentiment is None for s in series.values() for p in s.points):
        raise EmptyResult("no day has scored tokens surviving the lens")

    labels = [d.isoformat() for d in diff.days]
    run.add_svg(
        "sentiment.svg",
        line_chart_svg(
            labels,
            {**{lang: s.values() for lang, s in series.items()}, "diff": diff.values()},
            f"Daily average happiness (lens {fmt(mask.radius)})",
            "adjusted happiness",
        ),
    )

    if args.sweep:
        try:
            grid = parse_grid(args.sweep)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if grid[-1] > 4.0:
            raise ConfigError("sweep radii must not exceed 4")
        run.parameters["sweep"] = args.sweep
        sweeps = {}
        for lang in languages:
            buckets = bucket_by_day(bins[lang], start, end)
            sweeps[lang] = lens_sweep(buckets, lexes[lang], grid)
            run.add_csv(
                f"sweep_{lang}.csv",
                ["radius", "mean", "variance", "days"],
                ((p.radius, p.mean, p.variance, p.days) for p in sweeps[lang]),
            )
        radii = [fmt(r) for r in grid]
        run.add_svg(
            "sweep.svg",
            line_chart_svg(
                radii,
                {
                    **{f"{lang} mean": [p.mean for p in sweeps[lang]] for lang in languages},
                    **{f"{lang} variance": [p.variance for p in sweeps[lang]] for lang in languages},
                },
                "Daily sentiment mean and variance by lens radius",
            ),
        )


# ------------------------------------------------------------------ shift


def _read_partition(path: str) -> CommunityPartition:
    _check_inputs([path])
    assignment = {}
    with open(path, encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            try:
                assignment[row["node"]] = int(row["community"])
            except (KeyError, ValueError):
                raise ConfigError(f"{path}: expected node,community columns") from None
    return CommunityPartition(assignment, float("nan"))


def _select_corpora(args, run: Run, records: list[TweetRecord]):
    cfg = run.config
    if args.partition:
        if args.a_community is None or args.b_community is None:
            raise ConfigError("--partition needs --a-community and --b-community")
        part = _read_partition(args.partition)
        run.inputs.append(args.partition)
        a = [r for r in records if part.assignment.get(r.author) == args.a_community]
        b = [r for r in records if part.assignment.get(r.author) == args.b_community]
        return a, b, [f"community {args.a_community}", f"community {args.b_community}"]
    if args.before or args.after:
        if not (args.before and args.after):
            raise ConfigError("--before and --after go together")
        a = [r for r in records if r.day <= args.before]
        b = [r for r in records if r.day >= args.after]
        return a, b, [f"through {args.before}", f"from {args.after}"]
    langs = [args.a_lang or cfg.collection.languages[0], args.b_lang or cfg.collection.languages[1]]
    a = [r for r in records if r.language == langs[0]]
    b = [r for r in records if r.language == langs[1]]
    return a, b, langs


def cmd_shift(args, run: Run):
    cfg = run.config
    start, end = _range(args, cfg)
    records = load_records(run, args.inputs)
    records = list(filter_dates(records, start, end))
    if args.lang:
        keep = set(_languages(args, cfg))
        records = [r for r in records if r.language in keep]
    top = cfg.shift_top if args.top is None else args.top
    a, b, labels = _select_corpora(args, run, records)
    if not a or not b:
        raise EmptyResult(f"empty corpus selection: {len(a)} vs {len(b)} records")
    run.parameters.update(kind=args.kind, top=top, labels=labels, date_from=start, date_to=end)

    if args.kind == "sentiment":
        la = args.a_lang or cfg.collection.languages[0]
        lb = args.b_lang or cfg.collection.languages[1]
        lexes = _lexicons(args, cfg, [la, lb])
        mask = _lens(args, cfg)
        run.parameters["lens"] = mask.radius
        dist_a, dist_b = distribution_of(a), distribution_of(b)
        entries = sentiment_shift(dist_a, dist_b, lexes[la], mask, k=top, lex_b=lexes[lb])
        full = sentiment_shift(dist_a, dist_b, lexes[la], mask, k=None, lex_b=lexes[lb])
        extra = {"lens": mask.radius, "difference": sum(e.contribution for e in full)}
    else:
        entries = jsd_shift(a, b, k=top)
        extra = {}
    doc = shift_document(args.kind, labels, top, entries, **extra)
    run.add_json("shift.json", doc, force=True)
    run.add_svg("shift.svg", wordshift_svg(entries, f"{args.kind} shift", labels, args.kind))


# ------------------------------------------------------------------ graph


def _edge_rows(g):
    return ((s, t, w) for (s, t), w in sorted(g.edges.items()))


def _graph_doc(g, kind: str, partition: CommunityPartition | None = None, metrics: dict | None = None) -> dict:
    doc = {
        "kind": kind,
        "directed": g.directed,
        "nodes": g.sorted_nodes(),
        "edges": [{"source": s, "target": t, "weight": w} for (s, t), w in sorted(g.edges.items())],
    }
    if partition is not None:
        doc["partition"] = {"modularity": partition.modularity, "assignment": dict(sorted(partition.assignment.items()))}
    if metrics is not None:
        doc["metrics"] = metrics
    return doc


def _read_graph(run: Run, path: str, kind: str):
    """Load a graph from an edge-list CSV, a graph JSON document, or NDJSON records."""
    _check_inputs([path])
    run.inputs.append(path)
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        g = InteractionGraph() if kind == "interaction" else HashtagGraph()
        with open(path, encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                try:
                    g.add_edge(row["source"], row["target"], int(row.get("weight") or 1))
                except (KeyError, ValueError):
                    raise ConfigError(f"{path}: expected source,target,weight columns") from None
        return g, None
    if suffix == ".json":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: {exc}") from None
        g = InteractionGraph() if doc.get("directed", True) else HashtagGraph()
        g.nodes.update(doc.get("nodes", []))
        for e in doc.get("edges", []):
            g.add_edge(e["source"], e["target"], int(e.get("weight", 1)))
        return g, None
    run.inputs.pop()
    records = load_records(run, [path])
    if kind == "hashtag":
        return build_hashtag_network(records), records
    return build_interaction_graph(records), records


def cmd_graph_build(args, run: Run):
    records = load_records(run, args.inputs)
    start, end = _range(args, run.config)
    records = list(filter_dates(records, start, end))
    g = build_hashtag_network(records) if args.kind == "hashtag" else build_interaction_graph(records)
    if g.n == 0:
        raise EmptyResult("graph has no nodes")
    run.parameters.update(kind=args.kind, date_from=start, date_to=end)
    run.add_csv("edges.csv", ["source", "target", "weight"], _edge_rows(g))
    run.add_json("graph.json", _graph_doc(g, args.kind))


def _metrics_outputs(run: Run, g, mode: str, prefix: str = ""):
    metrics = summary(g, mode)
    run.add_json(f"{prefix}metrics.json", metrics, force=True)
    hist = in_degree_distribution(g, weighted=True)
    run.add_csv(f"{prefix}in_degree.csv", ["degree", "nodes"], hist.items())
    run.add_svg(f"{prefix}in_degree.svg", degree_svg(hist, "In-degree distribution"))
    return metrics


def cmd_graph_metrics(args, run: Run):
    g, _ = _read_graph(run, args.input, args.kind)
    if g.n == 0:
        raise EmptyResult("graph has no nodes")
    mode = args.path_mode or run.config.path_mode
    if mode not in PATH_MODES:
        raise ConfigError(f"unknown path mode {mode!r}")
    run.parameters.update(kind=args.kind, path_mode=mode)
    _metrics_outputs(run, g, mode)


def _partition_outputs(run: Run, g, part: CommunityPartition, prefix: str = ""):
    run.add_csv(f"{prefix}partition.csv", ["node", "community"], sorted(part.assignment.items()))
    run.add_json(
        f"{prefix}communities.json",
        {
            "modularity": part.modularity,
            "communities": [
                {"id": c, "size": len(m), "members": m} for c, m in part.communities().items()
            ],
        },
        force=True,
    )


def cmd_graph_communities(args, run: Run):
    g, _ = _read_graph(run, args.input, args.kind)
    if g.n == 0:
        raise EmptyResult("graph has no nodes")
    seed = _seed(args, run.config)
    run.parameters.update(kind=args.kind, seed=seed)
    _partition_outputs(run, g, louvain(g, seed=seed))


def cmd_graph_filter(args, run: Run):
    cfg = run.config
    records = load_records(run, args.inputs)
    start, end = _range(args, cfg)
    records = list(filter_dates(records, start, end))
    g = build_interaction_graph(records)
    if g.n == 0:
        raise EmptyResult("graph has no nodes")
    seed = _seed(args, cfg)
    if args.partition:
        part = _read_partition(args.partition)
        run.inputs.append(args.partition)
    else:
        part = louvain(g, seed=seed)
    terms = args.terms.split(",") if args.terms else cfg.topic_terms
    if not terms:
        raise ConfigError("no topic terms configured")
    confidence = cfg.confidence if args.confidence is None else args.confidence
    reference = args.reference
    result = None
    if reference is None:
        shares = community_topic_shares(part, terms, records)
        sizes = part.sizes()
        reference = min(
            (c for c, s in shares.items() if s.records),
            key=lambda c: (-(shares[c].proportion or 0.0), -sizes[c], c),
            default=None,
        )
        if reference is None:
            raise EmptyResult("no community authored any record")
        if shares[reference].matches == 0:
            # nothing mentions a term: a zero bound would remove every community
            result = TopicFilterResult(g, None, shares, [])
            run.notes["no_topic_matches"] = True
    if result is None:
        result = topic_filter(g, part, reference, terms, confidence, records)
    run.parameters.update(seed=seed, terms=terms, confidence=confidence, reference=reference)
    kept = result.graph
    kept_records = [r for r in records if r.author in kept.nodes]
    run.add("records.ndjson", "".join(r.to_json() + "\n" for r in kept_records))
    run.add_csv("edges.csv", ["source", "target", "weight"], _edge_rows(kept))
    run.add_csv(
        "community_shares.csv",
        ["community", "records", "matches", "proportion", "removed"],
        (
            (c, s.records, s.matches, s.proportion, c in result.removed)
            for c, s in result.shares.items()
        ),
    )
    run.add_json(
        "filter.json",
        {
            "reference_community": reference,
            "confidence": confidence,
            "threshold": result.threshold,
            "removed_communities": result.removed,
            "nodes_before": g.n,
            "nodes_after": kept.n,
            "links_before": g.m,
            "links_after": kept.m,
        },
        force=True,
    )
    if kept.n == 0:
        raise EmptyResult("every community was removed")
    _metrics_outputs(run, kept, cfg.path_mode)


def cmd_graph_ego(args, run: Run):
    cfg = run.config
    records = load_records(run, args.inputs)
    start, end = _range(args, cfg)
    records = list(filter_dates(records, start, end))
    ego = (args.ego or cfg.ego).lstrip("#").lower()
    daily = daily_ego_networks(records, ego)
    if not daily:
        raise EmptyResult(f"#{ego} never co-occurs with another hashtag")
    g = superimpose(daily.values())
    run.parameters.update(ego=ego, drop_ego=args.drop_ego, date_from=start, date_to=end)
    run.notes["days_with_ego"] = len(daily)
    if args.drop_ego:
        g = drop_ego_lcc(g, ego)
    seed = _seed(args, cfg)
    part = louvain(g, seed=seed)
    run.parameters["seed"] = seed
    run.add_csv("edges.csv", ["source", "target", "weight"], _edge_rows(g))
    run.add_json("ego.json", _graph_doc(g, "hashtag", part), force=True)
    _partition_outputs(run, g, part)


def cmd_graph_timeseries(args, run: Run):
    cfg = run.config
    records = load_records(run, args.inputs)
    start, end = _range(args, cfg)
    records = list(filter_dates(records, start, end))
    if not args.labels:
        raise ConfigError("timeseries needs --labels")
    _check_inputs([args.labels])
    run.inputs.append(args.labels)
    try:
        labels = load_labels(args.labels)
    except BadInput as exc:
        raise ConfigError(str(exc)) from None
    top = cfg.top_accounts if args.top is None else args.top
    import warnings

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        table = daily_top50_table(records, labels, top, start, end)
    if caught:
        run.notes["warnings"] = [str(w.message) for w in caught]
    if not table.accounts:
        raise EmptyResult("no mentioned or retweeted accounts")
    run.parameters.update(top=top, date_from=start, date_to=end)
    days = [d.isoformat() for d in table.days]
    types = table.types
    by_type = table.by_type
    run.add_csv("timeseries_types.csv", ["date", *types], ([d.isoformat(), *(by_type[d][t] for t in types)] for d in table.days))
    run.add_csv(
        "timeseries_accounts.csv",
        ["date", *table.accounts],
        ([d.isoformat(), *(table.by_account[d][h] for h in table.accounts)] for d in table.days),
    )
    run.add_csv("top_accounts.csv", ["handle", "type"], ((h, table.account_types[h]) for h in table.accounts))
    run.add_svg(
        "timeseries.svg",
        stacked_bars_svg(days, {t: [by_type[d][t] for d in table.days] for t in types}, "Daily in-degree of top accounts by type"),
    )


# ------------------------------------------------------------------ parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="TOML config (default: $CRISISLENS_CONFIG or the built-in one)")
    p.add_argument("--from", dest="date_from", type=_parse_date, help="first UTC day, inclusive")
    p.add_argument("--to", dest="date_to", type=_parse_date, help="last UTC day, inclusive")
    p.add_argument("--lang", action="append", help="language tag(s), comma-separated or repeated")
    p.add_argument("--lens", type=float, help="neutral lens radius (default from config, 1.0)")
    p.add_argument("--seed", type=int, help="Louvain seed")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", action="append", choices=FORMATS, help="output kinds to write (default: all)")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crisislens", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="filter NDJSON archives into a corpus")
    _common(p)
    p.add_argument("inputs", nargs="+", help="NDJSON files, or - for stdin")
    p.add_argument("--mode", choices=("keyword", "victim", "all"), default="keyword")
    p.add_argument("--keywords", help="comma-separated keyword override")
    p.add_argument("--keep-other", action="store_true", help="keep records outside the configured languages")
    p.add_argument("--strict", action="store_true", help="fail on the first malformed line")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("sentiment", help="daily sentiment series, difference and lens sweep")
    _common(p)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lexicon", action="append", metavar="LANG=PATH")
    p.add_argument("--sweep", nargs="?", const="0:3:0.1", metavar="START:STOP:STEP")
    p.set_defaults(func=cmd_sentiment)

    p = sub.add_parser("shift", help="sentiment or divergence word shift between two corpora")
    _common(p)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--kind", choices=("sentiment", "jsd"), default="sentiment")
    p.add_argument("--top", type=int)
    p.add_argument("--lexicon", action="append", metavar="LANG=PATH")
    p.add_argument("--a-lang")
    p.add_argument("--b-lang")
    p.add_argument("--before", type=_parse_date, help="corpus A: days up to and including this one")
    p.add_argument("--after", type=_parse_date, help="corpus B: days from this one on")
    p.add_argument("--partition", help="partition CSV (node,community) for community corpora")
    p.add_argument("--a-community", type=int)
    p.add_argument("--b-community", type=int)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("graph", help="network construction and analysis")
    gsub = p.add_subparsers(dest="graph_command", required=True)

    g = gsub.add_parser("build", help="edge list and graph JSON from records")
    _common(g)
    g.add_argument("inputs", nargs="+")
    g.add_argument("--kind", choices=("interaction", "hashtag"), default="interaction")
    g.set_defaults(func=cmd_graph_build)

    g = gsub.add_parser("metrics", help="density, path length and in-degree distribution")
    _common(g)
    g.add_argument("input", help="edge CSV, graph JSON or NDJSON records")
    g.add_argument("--kind", choices=("interaction", "hashtag"), default="interaction")
    g.add_argument("--path-mode", choices=PATH_MODES)
    g.set_defaults(func=cmd_graph_metrics)

    g = gsub.add_parser("communities", help="Louvain partition")
    _common(g)
    g.add_argument("input")
    g.add_argument("--kind", choices=("interaction", "hashtag"), default="interaction")
    g.set_defaults(func=cmd_graph_communities)

    g = gsub.add_parser("filter", help="remove off-topic communities by Wilson bound")
    _common(g)
    g.add_argument("inputs", nargs="+")
    g.add_argument("--partition")
    g.add_argument("--reference", type=int, help="reference community id (default: most on-topic)")
    g.add_argument("--terms", help="comma-separated topic terms")
    g.add_argument("--confidence", type=float)
    g.set_defaults(func=cmd_graph_filter)

    g = gsub.add_parser("ego", help="superimposed daily hashtag ego network")
    _common(g)
    g.add_argument("inputs", nargs="+")
    g.add_argument("--ego")
    g.add_argument("--drop-ego", action="store_true", help="remove the ego and keep the largest component")
    g.set_defaults(func=cmd_graph_ego)

    g = gsub.add_parser("timeseries", help="daily in-degree of top accounts by type")
    _common(g)
    g.add_argument("inputs", nargs="+")
    g.add_argument("--labels", help="handle,type CSV")
    g.add_argument("--top", type=int)
    g.set_defaults(func=cmd_graph_timeseries)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    started = _now()
    command = args.command if args.command != "graph" else f"graph {args.graph_command}"
    try:
        cfg = load_config(args.config)
        run = Run(command, cfg, Path(args.out), set(args.format or FORMATS))
        args.func(args, run)
        run.commit(started)
    except (ConfigError, BadInput, MalformedRecord, EgoAbsent) as exc:
        print(f"crisislens: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputError, OSError) as exc:
        print(f"crisislens: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (EmptyResult, EmptyAfterMask, EmptyDistribution, EmptyCommunity) as exc:
        print(f"crisislens: empty result, nothing written: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except CrisisLensError as exc:
        print(f"crisislens: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
