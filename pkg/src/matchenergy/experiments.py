"""Reproducible Monte Carlo and exact-asymptotic experiments.

Every run is a pure function of its configuration.  Trial ``t`` at the
``i``-th order and ``j``-th probability of a config draws its graph from

    SeedSpec(master_seed, (crc32(name), i, j, t))

so trials can execute in any order (or in parallel) without changing
results.  Rows are always emitted sorted by ``(n, p, trial_index)``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import semicircle
from .emd import EmpiricalDistribution
from .errors import DomainError, MatchEnergyError
from .graph import Graph, gen_gnp
from .mpoly import matching_polynomial
from .rng import SeedSpec, SplitMix64, derive_seed, label_of
from .roots import complete_spectrum_fast, matching_energy, normalize, spectrum_of_graph
from .treewalk import count_tree_like, power_sums

log = logging.getLogger(__name__)

MOMENTS = (2, 4, 6)
CSV_COLUMNS = (
    "n", "p", "trial_index", "seed", "edges", "me", "me_ratio",
    "moment_2", "moment_4", "moment_6", "ks", "error",
)


def fmt(x) -> str:
    """17 significant digits, the frozen float format of all artifacts."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass
class ExperimentConfig:
    name: str
    n_list: list[int]
    p_list: list[float]
    trials: int
    master_seed: int
    engine: str = "auto"
    output_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        self.n_list = [int(n) for n in self.n_list]
        self.p_list = [float(p) for p in self.p_list]
        if not self.n_list:
            raise DomainError("n_list must be nonempty")
        if not self.p_list:
            raise DomainError("p_list must be nonempty")
        if any(n < 1 for n in self.n_list):
            raise DomainError("every n must be positive")
        if any(not 0.0 < p <= 1.0 for p in self.p_list):
            raise DomainError("every p must lie in (0, 1]")
        if self.trials < 1:
            raise DomainError("trials must be at least 1")

    @classmethod
    def from_json(cls, text: str) -> ExperimentConfig:
        return cls(**json.loads(text))

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("workers")  # execution detail, not part of the result
        d.pop("output_path")
        return d

    def seed(self, n_index: int, p_index: int, trial: int) -> SeedSpec:
        return SeedSpec(self.master_seed, (label_of(self.name), n_index, p_index, trial))


@dataclass
class TrialResult:
    n: int
    p: float
    trial_index: int
    seed: int
    edges: int
    me: float
    me_ratio: float
    moments: dict[int, float]
    ks: float
    elapsed: float = field(default=0.0, compare=False)
    error: str = ""

    def csv_row(self) -> list[str]:
        return [
            fmt(self.n), fmt(self.p), fmt(self.trial_index), fmt(self.seed), fmt(self.edges),
            fmt(self.me), fmt(self.me_ratio),
            *(fmt(self.moments.get(k, math.nan)) for k in MOMENTS),
            fmt(self.ks), self.error,
        ]


def run_trial(config: ExperimentConfig, n_index: int, p_index: int, trial: int) -> TrialResult:
    n, p = config.n_list[n_index], config.p_list[p_index]
    spec = config.seed(n_index, p_index, trial)
    t0 = time.perf_counter()
    g = gen_gnp(n, p, spec)
    try:
        spectrum = spectrum_of_graph(g, config.engine)
    except MatchEnergyError as exc:
        nan = math.nan
        return TrialResult(n, p, trial, spec.derived(), g.m, nan, nan,
                           {k: nan for k in MOMENTS}, nan,
                           time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    me = matching_energy(spectrum)
    dist = EmpiricalDistribution.from_spectrum(normalize(spectrum, n, p))
    return TrialResult(
        n, p, trial, spec.derived(), g.m, me, me / (n**1.5 * math.sqrt(p)),
        {k: dist.moment(k) for k in MOMENTS}, dist.ks_distance(),
        time.perf_counter() - t0,
    )


def _run_task(args):
    return run_trial(*args)


def run_trials(config: ExperimentConfig) -> list[TrialResult]:
    tasks = [
        (config, i, j, t)
        for i in range(len(config.n_list))
        for j in range(len(config.p_list))
        for t in range(config.trials)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            rows = list(pool.map(_run_task, tasks, chunksize=16))
    else:
        rows = [_run_task(task) for task in tasks]
    rows.sort(key=lambda r: (r.n, r.p, r.trial_index))
    return rows


def _stats(values) -> dict:
    v = np.array([x for x in values if not math.isnan(x)], dtype=float)
    if len(v) == 0:
        return {"mean": math.nan, "std": math.nan, "min": math.nan, "max": math.nan}
    return {
        "mean": float(np.mean(v)),
        "std": float(np.std(v, ddof=1)) if len(v) > 1 else 0.0,
        "min": float(np.min(v)),
        "max": float(np.max(v)),
    }


def _groups(rows):
    key = lambda r: (r.n, r.p)  # noqa: E731
    for (n, p), grp in itertools.groupby(sorted(rows, key=key), key=key):
        yield n, p, list(grp)


@dataclass
class ConvergenceRun:
    config: ExperimentConfig
    rows: list[TrialResult]
    aggregates: list[dict]

    def aggregate(self, n: int, p: float) -> dict:
        for a in self.aggregates:
            if a["n"] == n and a["p"] == p:
                return a
        raise KeyError((n, p))

    def mean(self, metric: str, n: int, p: float) -> float:
        return self.aggregate(n, p)[metric]["mean"]

    def csv_text(self) -> str:
        return rows_to_csv(CSV_COLUMNS, [r.csv_row() for r in self.rows])

    def json_text(self) -> str:
        return dumps({"experiment": "convergence", "config": self.config.to_dict(),
                      "limit": semicircle.abs_moment(), "aggregates": self.aggregates})

    def write(self, path: str | Path) -> tuple[Path, Path]:
        return write_pair(path, self.csv_text(), self.json_text())


def aggregate_rows(rows: list[TrialResult]) -> list[dict]:
    out = []
    for n, p, grp in _groups(rows):
        out.append({
            "n": n,
            "p": p,
            "trials": len(grp),
            "errors": sum(1 for r in grp if r.error),
            "me": _stats(r.me for r in grp),
            "me_ratio": _stats(r.me_ratio for r in grp),
            **{f"moment_{k}": _stats(r.moments[k] for r in grp) for k in MOMENTS},
            "ks": _stats(r.ks for r in grp),
        })
    return out


def run_convergence(config: ExperimentConfig) -> ConvergenceRun:
    """ME ratio, EMD moments and KS distance per trial, plus per-(n, p) aggregates."""
    rows = run_trials(config)
    return ConvergenceRun(config, rows, aggregate_rows(rows))


# ---------------------------------------------------------------------------
# lower bound sqrt(p)/pi n^{3/2}


@dataclass
class LowerBoundRun:
    config: ExperimentConfig
    rows: list[dict]
    summary: list[dict]

    def fraction_positive(self, n: int, p: float) -> float:
        for s in self.summary:
            if s["n"] == n and s["p"] == p:
                return s["fraction_positive"]
        raise KeyError((n, p))

    def csv_text(self) -> str:
        cols = ("n", "p", "trial_index", "me", "bound", "margin", "error")
        return rows_to_csv(cols, [[fmt(r[c]) for c in cols] for r in self.rows])

    def json_text(self) -> str:
        return dumps({"experiment": "lower_bound", "config": self.config.to_dict(),
                      "summary": self.summary})

    def write(self, path):
        return write_pair(path, self.csv_text(), self.json_text())


def run_lower_bound(config: ExperimentConfig, rows: list[TrialResult] | None = None) -> LowerBoundRun:
    """Margin ME - (sqrt(p)/pi) n^{3/2} per trial.

    ``rows`` may carry trials already produced by :func:`run_trials` for the
    same config; they are identical to a fresh run.
    """
    rows = run_trials(config) if rows is None else rows
    out = []
    for r in rows:
        bound = math.sqrt(r.p) / math.pi * r.n**1.5
        out.append({"n": r.n, "p": r.p, "trial_index": r.trial_index, "me": r.me,
                    "bound": bound, "margin": r.me - bound, "error": r.error})
    summary = []
    key = lambda r: (r["n"], r["p"])  # noqa: E731
    for (n, p), grp in itertools.groupby(out, key=key):
        grp = list(grp)
        summary.append({
            "n": n, "p": p, "trials": len(grp),
            "fraction_positive": sum(1 for r in grp if r["margin"] > 0) / len(grp),
            "margin": _stats(r["margin"] for r in grp),
        })
    return LowerBoundRun(config, out, summary)


# ---------------------------------------------------------------------------
# variance decay of EMD moments


@dataclass
class VarianceDecay:
    config: ExperimentConfig
    k: int
    variances: list[dict]
    slopes: dict[float, float]

    @property
    def slope(self) -> float:
        if len(self.slopes) != 1:
            raise ValueError("slope is ambiguous for several probabilities; use slopes")
        return next(iter(self.slopes.values()))

    def csv_text(self) -> str:
        cols = ("n", "p", "trials", "variance")
        return rows_to_csv(cols, [[fmt(v[c]) for c in cols] for v in self.variances])

    def json_text(self) -> str:
        return dumps({"experiment": "variance_decay", "config": self.config.to_dict(),
                      "k": self.k, "variances": self.variances,
                      "slopes": {fmt(p): s for p, s in self.slopes.items()}})

    def write(self, path):
        return write_pair(path, self.csv_text(), self.json_text())


def log_log_slope(ns, values) -> float:
    """OLS slope of log(values) against log(ns); NaN if any value is not positive."""
    values = np.asarray(values, dtype=float)
    if len(values) < 2 or np.any(values <= 0):
        return math.nan
    return float(np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(values), 1)[0])


def run_variance_decay(config: ExperimentConfig, rows: list[TrialResult] | None = None,
                       k: int = 2) -> VarianceDecay:
    """Across-trial variance of the k-th EMD moment per n and its log-log slope in n."""
    if k not in MOMENTS:
        raise DomainError(f"k must be one of {MOMENTS}")
    rows = run_trials(config) if rows is None else rows
    variances = []
    for n, p, grp in _groups(rows):
        vals = np.array([r.moments[k] for r in grp if not r.error])
        var = float(np.var(vals, ddof=1)) if len(vals) > 1 else math.nan
        variances.append({"n": n, "p": p, "trials": len(vals), "variance": var})
    slopes = {}
    for p in config.p_list:
        sel = [v for v in variances if v["p"] == p]
        slopes[p] = log_log_slope([v["n"] for v in sel], [v["variance"] for v in sel])
    return VarianceDecay(config, k, variances, slopes)


# ---------------------------------------------------------------------------
# K_n asymptotics


@dataclass
class KnFit:
    rows: list[dict]
    a: float
    b: float

    @property
    def remainders(self) -> np.ndarray:
        return np.array([r["remainder"] for r in self.rows])

    def csv_text(self) -> str:
        cols = ("n", "me", "ratio", "remainder", "residual")
        return rows_to_csv(cols, [[fmt(r[c]) for c in cols] for r in self.rows])

    def json_text(self) -> str:
        rem = self.remainders
        return dumps({"experiment": "kn_asymptotics", "a": self.a, "b": self.b,
                      "limit": semicircle.abs_moment(),
                      "relative_error_a": self.a / semicircle.abs_moment() - 1.0,
                      "remainder_min": float(rem.min()), "remainder_max": float(rem.max())})

    def write(self, path):
        return write_pair(path, self.csv_text(), self.json_text())


def run_kn_asymptotics(n_min: int, n_max: int, step: int = 1) -> KnFit:
    """Exact ME(K_n) over a range of n, fitted by a n^{3/2} + b n."""
    if not 1 <= n_min <= n_max:
        raise DomainError("need 1 <= n_min <= n_max")
    ns = np.arange(n_min, n_max + 1, step)
    me = np.array([matching_energy(complete_spectrum_fast(int(n))) for n in ns])
    design = np.column_stack([ns**1.5, ns.astype(float)])
    (a, b), *_ = np.linalg.lstsq(design, me, rcond=None)
    resid = me - design @ np.array([a, b])
    limit = semicircle.abs_moment()
    rows = [
        {"n": int(n), "me": float(e), "ratio": float(e / n**1.5),
         "remainder": float((e - limit * n**1.5) / n), "residual": float(r)}
        for n, e, r in zip(ns, me, resid)
    ]
    return KnFit(rows, float(a), float(b))


# ---------------------------------------------------------------------------
# tree-like walks vs power sums


@dataclass
class GodsilRun:
    rows: list[dict]

    @property
    def passed(self) -> bool:
        return all(r["equal"] for r in self.rows)

    def csv_text(self) -> str:
        cols = ("graph", "n", "edges", "k", "walks", "power_sum", "equal")
        return rows_to_csv(cols, [[fmt(r[c]) for c in cols] for r in self.rows])

    def json_text(self) -> str:
        return dumps({"experiment": "godsil", "graphs": len({r["graph"] for r in self.rows}),
                      "checks": len(self.rows), "passed": self.passed})

    def write(self, path):
        return write_pair(path, self.csv_text(), self.json_text())


def exhaustive_graphs(n: int):
    """Every labelled graph on ``n`` vertices (one per edge subset)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def random_corpus(n_values, size: int, seed: int):
    """``size`` random graphs with n drawn from ``n_values`` and p from [0.1, 0.9]."""
    rng = SplitMix64(derive_seed(seed, label_of("corpus")))
    n_values = list(n_values)
    for i in range(size):
        n = n_values[rng.randbelow(len(n_values))]
        p = 0.1 + 0.8 * rng.random()
        yield gen_gnp(n, p, SeedSpec(seed, (label_of("corpus"), i)))


def run_godsil_verification(n_max: int = 7, k_max: int = 8, corpus_size: int = 500,
                            seed: int = 0, exhaustive_max: int = 5) -> GodsilRun:
    """Compare tree-like walk counts with matching-root power sums, exactly.

    The corpus holds every labelled graph on 1..min(exhaustive_max, n_max)
    vertices and ``corpus_size`` random graphs on exhaustive_max+1..n_max
    vertices.  All lengths 1..k_max are checked; odd ones must give 0.
    """
    if n_max > 7 or k_max > 8:
        raise DomainError("godsil verification is budgeted for n_max <= 7, k_max <= 8")
    graphs = []
    for n in range(1, min(exhaustive_max, n_max) + 1):
        graphs.extend(exhaustive_graphs(n))
    if n_max > exhaustive_max:
        graphs.extend(random_corpus(range(exhaustive_max + 1, n_max + 1), corpus_size, seed))
    rows = []
    for gid, g in enumerate(graphs):
        sums = power_sums(matching_polynomial(g), k_max)
        for k in range(1, k_max + 1):
            walks = count_tree_like(g, k)
            rows.append({"graph": gid, "n": g.n, "edges": g.m, "k": k, "walks": walks,
                         "power_sum": sums[k - 1], "equal": walks == sums[k - 1]})
    return GodsilRun(rows)


# ---------------------------------------------------------------------------
# artifacts


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_pair(path, csv_text: str, json_text: str) -> tuple[Path, Path]:
    """Write ``<path>`` (CSV) and the sibling ``.json`` summary."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    json_path = path.with_suffix(".json")
    path.write_text(csv_text)
    json_path.write_text(json_text)
    log.info("wrote %s and %s", path, json_path)
    return path, json_path
