"""Command-line interface: preprocessing, clustering, benchmarking, and
metric computation over CSV inputs.

Configuration comes from flat `key = value` files plus command-line flags;
flags win over file entries, which win over built-in defaults. All output
files are byte-reproducible for a fixed seed, so wall-clock timing goes to
stderr only and report.json carries runtime_ms as null.

Exit codes: 0 success, 2 configuration or input problems, 3 degenerate
data, 4 any other pipeline failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .consensus import LabelingSet, coassociation, consensus
from .core import Labeling, Method, ViewMatrix, affinity_to_distance
from .errors import (
    ConfigError,
    DegenerateDataError,
    InputError,
    MvecError,
    ParseError,
)
from .fusion import FusionConfig
from .hclust import cluster, euclidean_distances
from .metrics import (
    ari,
    logrank_test,
    load_survival_csv,
    nmi,
    silhouette,
    survival_records,
)
from .optimizer import GaParams
from .pipeline import (
    PipelineResult,
    resolve_k,
    parea_hc1,
    parea_hc1_opt,
    parea_hc2,
    parea_hc2_opt,
)
from .preprocess import (
    filter_missing,
    knn_impute,
    load_csv,
    top_variance_select,
    zscore_normalize,
)
from .seeding import derive_seed

PIPELINE_METHODS = ("parea1", "parea2", "consensus-baseline")

# parea2 runs without an explicit genome cycle these linkages over the views
DEFAULT_PAREA2_CYCLE = (Method.WARD_D, Method.WARD_D2, Method.AVERAGE)


def _check_method_name(name: str) -> str:
    if name in PIPELINE_METHODS:
        return name
    if name.startswith("single:"):
        Method.parse(name.split(":", 1)[1])
        return name
    raise ConfigError(
        f"unknown method {name!r}; expected parea1, parea2, "
        "consensus-baseline, or single:<linkage>"
    )


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for the cluster and benchmark commands.

    `method` may hold several comma-separated entries for benchmark runs;
    the cluster command requires exactly one.
    """

    views: tuple[str, ...]
    method: str = "parea1"
    k: int | str = "auto"
    k_max: int = 10
    iterations: int = 30
    seed: int = 0
    methods: tuple[Method, ...] | None = None
    optimize: bool = False
    ga: GaParams = GaParams()
    survival: str | None = None
    truth_labels: str | None = None
    outdir: str = "."
    subsample: int = 100
    repeats: int = 30
    has_header: bool = True

    def __post_init__(self):
        if not self.views:
            raise ConfigError("at least one view CSV is required")
        if self.k_max < 2:
            raise ConfigError(f"k_max must be >= 2, got {self.k_max}")
        if self.k != "auto" and int(self.k) < 1:
            raise ConfigError(f"k must be >= 1 or 'auto', got {self.k}")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.subsample < 2:
            raise ConfigError("subsample must be >= 2")
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        for name in self.method_list():
            _check_method_name(name)

    def method_list(self) -> tuple[str, ...]:
        return tuple(
            part.strip() for part in self.method.split(",") if part.strip()
        )

    def as_dict(self) -> dict:
        return {
            "views": list(self.views),
            "method": self.method,
            "k": self.k,
            "k_max": self.k_max,
            "iterations": self.iterations,
            "seed": self.seed,
            "methods": None
            if self.methods is None
            else [m.value for m in self.methods],
            "optimize": self.optimize,
            "ga": {
                "population": self.ga.population,
                "generations": self.ga.generations,
                "tournament": self.ga.tournament,
                "mutation_rate": self.ga.mutation_rate,
                "elitism": self.ga.elitism,
                "seed": self.ga.seed,
            },
            "survival": self.survival,
            "truth_labels": self.truth_labels,
            "outdir": self.outdir,
            "subsample": self.subsample,
            "repeats": self.repeats,
            "has_header": self.has_header,
        }


def read_config_file(path) -> dict[str, str]:
    """Parse a flat `key = value` config file; blank lines and lines
    starting with # are ignored, later keys override earlier ones."""
    values: dict[str, str] = {}
    with open(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected `key = value`")
            values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = frozenset(
    {
        "views", "method", "k", "k_max", "iterations", "seed", "methods",
        "optimize", "survival", "truth_labels", "outdir", "subsample",
        "repeats", "has_header", "ga_population", "ga_generations",
        "ga_tournament", "ga_mutation_rate", "ga_elitism",
    }
)


def _to_int(value, key) -> int:
    if isinstance(value, int):
        return value
    try:
        return int(str(value))
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from exc


def _to_float(value, key) -> float:
    if isinstance(value, float):
        return value
    try:
        return float(str(value))
    except ValueError as exc:
        raise ConfigError(f"{key} must be a number, got {value!r}") from exc


def _to_bool(value, key) -> bool:
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def _to_paths(value) -> tuple[str, ...]:
    if isinstance(value, (tuple, list)):
        return tuple(value)
    return tuple(p.strip() for p in str(value).split(",") if p.strip())


def _to_k(value):
    if value == "auto":
        return "auto"
    return _to_int(value, "k")


def _to_methods(value) -> tuple[Method, ...] | None:
    if value is None:
        return None
    if isinstance(value, (tuple, list)):
        names = list(value)
    else:
        names = [p.strip() for p in str(value).split(",") if p.strip()]
    return tuple(Method.parse(name) for name in names)


def build_run_config(args) -> RunConfig:
    """Merge built-in defaults, the optional config file, and CLI flags."""
    file_values = read_config_file(args.config) if args.config else {}
    unknown = sorted(set(file_values) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    def pick(key, fallback=None):
        from_cli = getattr(args, key, None)
        if from_cli is not None:
            return from_cli
        if key in file_values:
            return file_values[key]
        return fallback

    views = pick("views")
    if views is None:
        raise ConfigError("no views given (flag --views or config key views)")
    ga = GaParams(
        population=_to_int(pick("ga_population", 20), "ga_population"),
        generations=_to_int(pick("ga_generations", 10), "ga_generations"),
        tournament=_to_int(pick("ga_tournament", 3), "ga_tournament"),
        mutation_rate=_to_float(pick("ga_mutation_rate", 0.1), "ga_mutation_rate"),
        elitism=_to_int(pick("ga_elitism", 1), "ga_elitism"),
        seed=_to_int(pick("seed", 0), "seed"),
    )
    return RunConfig(
        views=_to_paths(views),
        method=str(pick("method", "parea1")),
        k=_to_k(pick("k", "auto")),
        k_max=_to_int(pick("k_max", 10), "k_max"),
        iterations=_to_int(pick("iterations", 30), "iterations"),
        seed=_to_int(pick("seed", 0), "seed"),
        methods=_to_methods(pick("methods")),
        optimize=_to_bool(pick("optimize", False), "optimize"),
        ga=ga,
        survival=pick("survival"),
        truth_labels=pick("truth_labels"),
        outdir=str(pick("outdir", ".")),
        subsample=_to_int(pick("subsample", 100), "subsample"),
        repeats=_to_int(pick("repeats", 30), "repeats"),
        has_header=_to_bool(pick("has_header", True), "has_header"),
    )


def load_view(path, has_header: bool = True) -> ViewMatrix:
    """Load a complete (no missing values) view CSV as a ViewMatrix."""
    raw = load_csv(path, has_header=has_header)
    if raw.missing.any():
        raise InputError(
            f"{path}: view contains missing values; run `mvec preprocess` first"
        )
    return ViewMatrix(raw.sample_ids, raw.values, feature_ids=raw.feature_ids)


def _load_views(cfg: RunConfig) -> list[ViewMatrix]:
    return [load_view(path, cfg.has_header) for path in cfg.views]


def concatenated_distances(views: Sequence[ViewMatrix]):
    """Euclidean distances over all views' features stacked side by side."""
    ids = views[0].sample_ids
    for v in views[1:]:
        if v.sample_ids != ids:
            raise InputError("views do not share the same sample ids")
    stacked = np.hstack([v.values for v in views])
    return euclidean_distances(ViewMatrix(ids, stacked))


def run_consensus_baseline(views, k, k_max: int) -> PipelineResult:
    """Consensus over all eight single-linkage labelings of the
    concatenated-feature distance matrix."""
    distances = concatenated_distances(views)
    resolved = resolve_k(k, distances, Method.AVERAGE, k_max)
    members = LabelingSet(
        tuple(cluster(distances, m, resolved) for m in Method)
    )
    labels = consensus(members, resolved)
    fused = coassociation(members)
    fitness = (
        silhouette(affinity_to_distance(fused), labels)
        if resolved >= 2
        else math.nan
    )
    return PipelineResult(
        labels=labels,
        k=resolved,
        fused=fused,
        methods=tuple(Method),
        fitness=fitness,
    )


def run_single_method(views, method: Method, k, k_max: int) -> PipelineResult:
    """One linkage method on the concatenated-feature distance matrix."""
    distances = concatenated_distances(views)
    resolved = resolve_k(k, distances, method, k_max)
    labels = cluster(distances, method, resolved)
    fused = coassociation(LabelingSet((labels,)))
    fitness = silhouette(distances, labels) if resolved >= 2 else math.nan
    return PipelineResult(
        labels=labels, k=resolved, fused=fused, methods=(method,), fitness=fitness
    )


def _parea2_genome(cfg: RunConfig, n_views: int) -> tuple[Method, ...]:
    if cfg.methods is not None:
        if len(cfg.methods) != n_views:
            raise ConfigError(
                f"methods lists {len(cfg.methods)} linkages for {n_views} views"
            )
        return cfg.methods
    cycle = DEFAULT_PAREA2_CYCLE
    return tuple(cycle[i % len(cycle)] for i in range(n_views))


def run_method(
    name: str, views: Sequence[ViewMatrix], cfg: RunConfig, seed: int
) -> PipelineResult:
    """Run one named method over the given views with a specific seed."""
    fusion = FusionConfig(iterations=cfg.iterations, seed=seed)
    if name == "parea1":
        if cfg.optimize:
            return parea_hc1_opt(
                views, k=cfg.k, cfg=fusion, ga=cfg.ga, k_max=cfg.k_max
            ).result
        if cfg.methods is not None and len(cfg.methods) != 2:
            raise ConfigError("parea1 needs exactly 2 methods")
        hc1, hc2 = cfg.methods or (Method.WARD_D, Method.WARD_D2)
        return parea_hc1(views, hc1, hc2, k=cfg.k, cfg=fusion, k_max=cfg.k_max)
    if name == "parea2":
        if cfg.optimize:
            return parea_hc2_opt(
                views, k=cfg.k, cfg=fusion, ga=cfg.ga, k_max=cfg.k_max
            ).result
        genome = _parea2_genome(cfg, len(views))
        return parea_hc2(views, genome, k=cfg.k, cfg=fusion, k_max=cfg.k_max)
    if name == "consensus-baseline":
        return run_consensus_baseline(views, cfg.k, cfg.k_max)
    if name.startswith("single:"):
        return run_single_method(
            views, Method.parse(name.split(":", 1)[1]), cfg.k, cfg.k_max
        )
    raise ConfigError(f"unknown method {name!r}")


# ---------------------------------------------------------------------------
# output writers

def write_labels_csv(path, labeling: Labeling) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["sample_id", "label"])
        for sample, label in zip(labeling.sample_ids, labeling.labels):
            writer.writerow([sample, int(label)])


def write_affinity_csv(path, affinity) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["sample_id", *affinity.sample_ids])
        for sample, row in zip(affinity.sample_ids, affinity.values):
            writer.writerow([sample, *(repr(float(x)) for x in row)])


def read_labels_csv(path) -> dict[str, str]:
    """Read a sample_id,label file; labels may be arbitrary strings."""
    table: dict[str, str] = {}
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path}: empty labels file")
        lowered = [h.strip().lower() for h in header]
        try:
            id_col = lowered.index("sample_id")
            label_col = lowered.index("label")
        except ValueError as exc:
            raise ParseError(
                f"{path}: header must contain sample_id and label"
            ) from exc
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            sample = row[id_col].strip()
            if sample in table:
                raise ParseError(f"{path}:{lineno}: duplicate sample id {sample!r}")
            table[sample] = row[label_col].strip()
    if not table:
        raise ParseError(f"{path}: no label rows")
    return table


def truth_labeling(table: dict[str, str], sample_ids) -> Labeling:
    missing = [s for s in sample_ids if s not in table]
    if missing:
        raise InputError(f"no ground-truth label for sample {missing[0]!r}")
    return Labeling.from_assignments(
        sample_ids, [table[s] for s in sample_ids]
    )


def _write_report(path, payload: dict) -> None:
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


# ---------------------------------------------------------------------------
# commands

def cmd_preprocess(args) -> int:
    raw = load_csv(args.input, has_header=not args.no_header)
    before_n, before_p = raw.n, raw.p
    filtered = filter_missing(raw, max_frac=args.max_missing)
    if args.knn > 0:
        view = knn_impute(filtered, k=min(args.knn, filtered.n - 1))
    else:
        if filtered.missing.any():
            raise InputError(
                "missing values remain but imputation is disabled (--knn 0)"
            )
        view = ViewMatrix(
            filtered.sample_ids, filtered.values, feature_ids=filtered.feature_ids
        )
    if args.top_variance > 0:
        view = top_variance_select(view, n_keep=args.top_variance)
    if args.zscore:
        view = zscore_normalize(view)
    with open(args.output, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["sample_id", *view.feature_ids])
        for sample, row in zip(view.sample_ids, view.values):
            writer.writerow([sample, *(repr(float(x)) for x in row)])
    print(
        f"dropped {before_n - view.n} of {before_n} samples and "
        f"{before_p - view.p} of {before_p} features; wrote {args.output} "
        f"({view.n} x {view.p})"
    )
    return 0


def cmd_cluster(args) -> int:
    cfg = build_run_config(args)
    names = cfg.method_list()
    if len(names) != 1:
        raise ConfigError("cluster needs exactly one method")
    views = _load_views(cfg)
    started = time.perf_counter()
    result = run_method(names[0], views, cfg, seed=cfg.seed)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_labels_csv(outdir / "labels.csv", result.labels)
    write_affinity_csv(outdir / "fused_affinity.csv", result.fused)
    report = {
        "command": "cluster",
        "config": cfg.as_dict(),
        "k": result.k,
        "methods": [m.value for m in result.methods],
        "fitness": None if math.isnan(result.fitness) else result.fitness,
        "seed": cfg.seed,
        # wall time varies run to run; kept out of the file so reruns are
        # byte-identical (it is logged to stderr instead)
        "runtime_ms": None,
        "per_repeat": [],
    }
    _write_report(outdir / "report.json", report)
    print(f"cluster: finished in {elapsed_ms:.0f} ms", file=sys.stderr)
    print(f"k = {result.k}")
    print(f"methods = {'+'.join(m.value for m in result.methods)}")
    print(f"fitness = {result.fitness!r}")
    return 0


def cmd_benchmark(args) -> int:
    cfg = build_run_config(args)
    if cfg.truth_labels is None and cfg.survival is None:
        raise ConfigError(
            "benchmark needs ground-truth labels (truth_labels) or a "
            "survival file (survival)"
        )
    names = cfg.method_list()
    views = _load_views(cfg)
    truth = read_labels_csv(cfg.truth_labels) if cfg.truth_labels else None
    survival = load_survival_csv(cfg.survival) if cfg.survival else None
    n = views[0].n
    size = min(cfg.subsample, n)
    started = time.perf_counter()
    rows: list[dict] = []
    for repeat in range(cfg.repeats):
        base = derive_seed(cfg.seed, "repeat", repeat)
        rng = np.random.default_rng(derive_seed(base, "subsample"))
        picked = np.sort(rng.choice(n, size=size, replace=False))
        sub_views = [v.take(picked) for v in views]
        for name in names:
            result = run_method(
                name, sub_views, cfg, seed=derive_seed(base, "fusion")
            )
            if truth is not None:
                reference = truth_labeling(truth, result.labels.sample_ids)
                rows.append(_row(name, repeat, "ari", ari(result.labels, reference)))
                rows.append(_row(name, repeat, "nmi", nmi(result.labels, reference)))
            if survival is not None:
                chi2, p = logrank_test(survival_records(result.labels, survival))
                rows.append(_row(name, repeat, "logrank_chi2", chi2))
                rows.append(_row(name, repeat, "logrank_p", p))
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    summary = summarize(rows)
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "per_repeat.csv", "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["method", "repeat", "metric", "value"])
        for row in rows:
            writer.writerow(
                [row["method"], row["repeat"], row["metric"], repr(row["value"])]
            )
    with open(outdir / "summary.csv", "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["method", "metric", "median"])
        for (name, metric), median in summary.items():
            writer.writerow([name, metric, repr(median)])
    report = {
        "command": "benchmark",
        "config": cfg.as_dict(),
        "k": cfg.k,
        "methods": list(names),
        "fitness": None,
        "seed": cfg.seed,
        "runtime_ms": None,
        "per_repeat": rows,
        "summary": [
            {"method": name, "metric": metric, "median": median}
            for (name, metric), median in summary.items()
        ],
    }
    _write_report(outdir / "report.json", report)
    print(f"benchmark: finished in {elapsed_ms:.0f} ms", file=sys.stderr)
    for (name, metric), median in summary.items():
        print(f"{name} median {metric} = {median!r}")
    return 0


def _row(method: str, repeat: int, metric: str, value) -> dict:
    return {
        "method": method,
        "repeat": repeat,
        "metric": metric,
        "value": float(value),
    }


def summarize(rows: Sequence[dict]) -> dict[tuple[str, str], float]:
    """Median of each (method, metric) series, in first-appearance order."""
    grouped: dict[tuple[str, str], list[float]] = {}
    for row in rows:
        grouped.setdefault((row["method"], row["metric"]), []).append(row["value"])
    return {
        key: float(statistics.median(values)) for key, values in grouped.items()
    }


def cmd_metrics(args) -> int:
    predicted_table = read_labels_csv(args.labels)
    sample_ids = tuple(predicted_table)
    predicted = Labeling.from_assignments(
        sample_ids, [predicted_table[s] for s in sample_ids]
    )
    produced = False
    if args.truth:
        reference = truth_labeling(read_labels_csv(args.truth), sample_ids)
        print(f"ari = {ari(predicted, reference)!r}")
        print(f"nmi = {nmi(predicted, reference)!r}")
        produced = True
    if args.views:
        views = [
            load_view(path, not args.no_header)
            for path in _to_paths(args.views)
        ]
        distances = concatenated_distances(views)
        if distances.sample_ids != sample_ids:
            raise InputError("views and labels list different sample ids")
        print(f"silhouette = {silhouette(distances, predicted)!r}")
        produced = True
    if args.survival:
        survival = load_survival_csv(args.survival)
        chi2, p = logrank_test(survival_records(predicted, survival))
        print(f"logrank_chi2 = {chi2!r}")
        print(f"logrank_p = {p!r}")
        produced = True
    if not produced:
        raise ConfigError(
            "nothing to compute: pass --truth, --views, and/or --survival"
        )
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--views", help="comma-separated view CSV paths")
    parser.add_argument("--method", help="parea1 | parea2 | consensus-baseline | single:<linkage>")
    parser.add_argument("--k", help='cluster count or "auto"')
    parser.add_argument("--k-max", dest="k_max", type=int, help="largest k scanned when k=auto")
    parser.add_argument("--iterations", type=int, help="fusion iterations")
    parser.add_argument("--seed", type=int, help="root random seed")
    parser.add_argument("--methods", help="comma-separated linkage methods (genome)")
    parser.add_argument(
        "--optimize",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="pick linkages by genetic search instead of the fixed genome",
    )
    parser.add_argument("--survival", help="survival CSV (sample_id,time,event)")
    parser.add_argument("--truth-labels", dest="truth_labels", help="ground-truth labels CSV")
    parser.add_argument("--outdir", help="output directory")
    parser.add_argument("--subsample", type=int, help="samples drawn per benchmark repeat")
    parser.add_argument("--repeats", type=int, help="benchmark repeats")
    parser.add_argument(
        "--header",
        dest="has_header",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="whether view CSVs start with a header row",
    )
    parser.add_argument("--ga-population", dest="ga_population", type=int)
    parser.add_argument("--ga-generations", dest="ga_generations", type=int)
    parser.add_argument("--ga-tournament", dest="ga_tournament", type=int)
    parser.add_argument("--ga-mutation-rate", dest="ga_mutation_rate", type=float)
    parser.add_argument("--ga-elitism", dest="ga_elitism", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvec",
        description="Multi-view hierarchical ensemble clustering",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    pre = commands.add_parser("preprocess", help="filter, impute, select, and scale a view CSV")
    pre.add_argument("input", help="raw view CSV")
    pre.add_argument("-o", "--output", required=True, help="processed CSV path")
    pre.add_argument("--max-missing", type=float, default=0.2,
                     help="drop samples/features missing more than this fraction")
    pre.add_argument("--knn", type=int, default=5,
                     help="neighbors for imputation (0 disables)")
    pre.add_argument("--top-variance", type=int, default=5000,
                     help="keep this many highest-variance features (0 keeps all)")
    pre.add_argument("--zscore", action="store_true",
                     help="z-score features after selection")
    pre.add_argument("--no-header", action="store_true",
                     help="input has no header row")
    pre.set_defaults(func=cmd_preprocess)

    clu = commands.add_parser("cluster", help="run one clustering method, write labels and report")
    _add_run_flags(clu)
    clu.set_defaults(func=cmd_cluster)

    ben = commands.add_parser("benchmark", help="repeated subsampled evaluation of one or more methods")
    _add_run_flags(ben)
    ben.set_defaults(func=cmd_benchmark)

    met = commands.add_parser("metrics", help="score an existing labels file")
    met.add_argument("--labels", required=True, help="labels CSV to score")
    met.add_argument("--truth", help="ground-truth labels CSV (ARI/NMI)")
    met.add_argument("--views", help="view CSVs for silhouette, comma-separated")
    met.add_argument("--survival", help="survival CSV for the log-rank test")
    met.add_argument("--no-header", action="store_true",
                     help="view CSVs have no header row")
    met.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateDataError as exc:
        print(f"error: degenerate data: {exc}", file=sys.stderr)
        return 3
    except MvecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
