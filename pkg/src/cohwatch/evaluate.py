"""Seeded injection-simulation experiments over a scored pair corpus.

Each trial selects a fraction of consecutive version pairs, replaces the
newer side with an injected variant of the older one, rescores only the
injected texts, refits bucket statistics on the untouched pairs, ranks
everything by each delta metric, and measures precision at k.  Results
are averaged over many trials, all derived from one master seed.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field

import numpy as np

from .cpp import ExtractionError, extract_functions
from .inject import InjectionError, inject_random
from .metrics import fit_bucket_stats_arrays, standardize_arrays
from .scoring import score_function, score_key

# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

HIGH_COHESION_NPC = 0.5

RANKING_METRICS = ("cd", "otcd", "cdz", "otcdz")
CALIBRATION_METRICS = ("oracle", "constant")


class EvaluationError(Exception):
    """Raised for unusable configurations or unscorable selections."""


def parse_ratio(text):
    """Parse a malicious-to-benign ratio like "1:100" into (num, den)."""
    parts = str(text).replace(",", "").split(":")
    if len(parts) != 2:
        raise EvaluationError(f"ratio must look like A:B, got {text!r}")
    try:
        num, den = int(parts[0]), int(parts[1])
    except ValueError:
        raise EvaluationError(f"ratio must be integral, got {text!r}")
    if num < 1 or den < 1:
        raise EvaluationError(f"ratio parts must be >= 1, got {text!r}")
    return num, den


@dataclass(frozen=True)
class EvaluationConfig:
    ratio: tuple = (1, 100)            # malicious per benign, as (num, den)
    trials: int = 1000
    metrics: tuple = RANKING_METRICS   # any of cd/otcd/cdz/otcdz/oracle/constant
    high_cohesion_only: bool = False
    k: int = 100
    master_seed: int = 0
    contaminated_stats: bool = False   # fit buckets on injected pairs too

    def __post_init__(self):
        if self.trials < 1:
            raise EvaluationError("trials must be >= 1")
        if self.k < 1:
            raise EvaluationError("k must be >= 1")
        if len(self.ratio) != 2 or min(self.ratio) < 1:
            raise EvaluationError(f"bad ratio {self.ratio!r}")
        known = RANKING_METRICS + CALIBRATION_METRICS
        for m in self.metrics:
            if m not in known:
                raise EvaluationError(f"unknown metric {m!r}")
        if not self.metrics:
            raise EvaluationError("at least one metric required")

    @property
    def ratio_text(self):
        return f"{self.ratio[0]}:{self.ratio[1]}"


# ---------------------------------------------------------------------------
# scored pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScoredPair:
    """One consecutive version pair with both sides' cached scores."""

    pair_id: str
    key: str
    index: int                # older version index i; pair is (i, i+1)
    npc1: float
    otc1: int
    npc2: float
    per_n2: tuple
    v1_text: str = ""         # older version's source, injection target

    @property
    def pinned2(self):
        """Newer side's confidence at the older side's optimal n."""
        return self.per_n2[self.otc1 - 1]


def pair_id_for(key, index):
    return f"{key}#{index}:{index + 1}"


def build_pairs(store, scores):
    """Join store histories with cached scores into ScoredPair records.

    Pairs missing a score on either side are dropped and counted, per
    the delta bookkeeping rules.
    """
    pairs, dropped = [], 0
    for key, i, v1, v2 in store.list_version_pairs():
        s1 = scores.get(score_key(key, i))
        s2 = scores.get(score_key(key, i + 1))
        if s1 is None or s2 is None:
            dropped += 1
            continue
        pairs.append(ScoredPair(
            pair_id=pair_id_for(key, i),
            key=key,
            index=i,
            npc1=s1.score.npc,
            otc1=s1.score.otc,
            npc2=s2.score.npc,
            per_n2=tuple(s2.score.per_n),
            v1_text=v1.body_text,
        ))
    return pairs, dropped


# ---------------------------------------------------------------------------
# trial mechanics
# ---------------------------------------------------------------------------


def derive_trial_seed(master_seed, trial_index):
    digest = hashlib.sha256(f"{master_seed}:{trial_index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def resolve_n_malicious(n_pairs, ratio):
    """Injected pair count for a corpus size, truncating fractions."""
    num, den = ratio
    n = (n_pairs * num) // den
    if n < 1:
        raise EvaluationError(
            f"ratio {num}:{den} selects zero pairs out of {n_pairs}")
    if n >= n_pairs:
        raise EvaluationError(
            f"ratio {num}:{den} selects all {n_pairs} pairs; "
            f"no benign pairs would remain")
    return n


def adjusted_p_at_k(raw_precision, n_malicious, k):
    """Precision divided by the best achievable precision at k."""
    best = min(n_malicious, k) / k
    return raw_precision / best


class _PairArrays:
    """Column layout of a pair list, precomputed once per evaluation."""

    def __init__(self, pairs):
        self.n = len(pairs)
        self.npc1 = np.array([p.npc1 for p in pairs], dtype=np.float64)
        self.npc2 = np.array([p.npc2 for p in pairs], dtype=np.float64)
        self.pinned2 = np.array([p.pinned2 for p in pairs], dtype=np.float64)
        order = np.argsort(np.array([p.pair_id for p in pairs]))
        self.pid_rank = np.empty(self.n, dtype=np.int64)
        self.pid_rank[order] = np.arange(self.n)


def _rank_precision(values, pid_rank, labels, k):
    """Malicious fraction of the top k, descending with pair_id ties."""
    order = np.lexsort((pid_rank, -values))
    top = order[:k]
    return float(labels[top].sum()) / k


def _rescore_injected(pair, corpus, rng, backend):
    try:
        fns = extract_functions(pair.v1_text)
    except ExtractionError as exc:
        raise EvaluationError(
            f"stored text for {pair.pair_id} no longer parses: {exc}")
    if len(fns) != 1:
        raise EvaluationError(
            f"stored text for {pair.pair_id} is not a single function")
    try:
        record = inject_random(fns[0], corpus, rng)
    except InjectionError as exc:
        raise EvaluationError(f"cannot inject {pair.pair_id}: {exc}")
    score = score_function(record.function, backend)
    return record, score


def run_trial(pairs, corpus, config, trial_seed, backend=None,
              arrays=None, n_malicious=None):
    """One seeded trial: select, inject, rescore, refit, rank, measure.

    Returns {metric: (raw_p_at_k, adjusted_p_at_k)}.  Calibration
    metrics (oracle/constant) rank synthetic values and skip the
    injection pass entirely.
    """
    if arrays is None:
        arrays = _PairArrays(pairs)
    if n_malicious is None:
        n_malicious = resolve_n_malicious(len(pairs), config.ratio)

    rng = random.Random(trial_seed)
    selected = sorted(rng.sample(range(len(pairs)), n_malicious))
    labels = np.zeros(arrays.n, dtype=bool)
    labels[selected] = True

    need_injection = any(m in RANKING_METRICS for m in config.metrics)
    values_by_metric = {}

    if need_injection:
        if backend is None:
            raise EvaluationError("ranking metrics require a backend")
        if not corpus:
            raise EvaluationError("ranking metrics require a snippet corpus")
        npc2 = arrays.npc2.copy()
        pinned2 = arrays.pinned2.copy()
        for idx in selected:
            pair = pairs[idx]
            _, score = _rescore_injected(pair, corpus, rng, backend)
            npc2[idx] = score.npc
            pinned2[idx] = score.per_n[pair.otc1 - 1]
        cd = arrays.npc1 - npc2
        otcd = arrays.npc1 - pinned2
        if config.contaminated_stats:
            stats = fit_bucket_stats_arrays(arrays.npc1, cd, otcd)
        else:
            benign = ~labels
            stats = fit_bucket_stats_arrays(
                arrays.npc1[benign], cd[benign], otcd[benign])
        values_by_metric["cd"] = cd
        values_by_metric["otcd"] = otcd
        values_by_metric["cdz"] = standardize_arrays(
            arrays.npc1, cd, stats, "cd")
        values_by_metric["otcdz"] = standardize_arrays(
            arrays.npc1, otcd, stats, "otcd")

    out = {}
    for metric in config.metrics:
        if metric == "oracle":
            values = labels.astype(np.float64)
        elif metric == "constant":
            values = np.zeros(arrays.n, dtype=np.float64)
        else:
            values = values_by_metric[metric]
        raw = _rank_precision(values, arrays.pid_rank, labels, config.k)
        out[metric] = (raw, adjusted_p_at_k(raw, n_malicious, config.k))
    return out


# ---------------------------------------------------------------------------
# full evaluation
# ---------------------------------------------------------------------------

EVALUATION_CSV_COLUMNS = (
    "ratio", "high_cohesion_only", "metric",
    "raw_p_at_k", "adjusted_p_at_k",
    "n_malicious_per_trial", "trials", "n_pairs", "k",
)


@dataclass(frozen=True)
class EvaluationResult:
    config: EvaluationConfig
    n_pairs: int
    n_malicious_per_trial: int
    trials_run: int
    raw_p_at_k: dict = field(default_factory=dict)       # metric -> mean
    adjusted_p_at_k: dict = field(default_factory=dict)  # metric -> mean

    def to_json_dict(self):
        cfg = self.config
        return {
            "config": {
                "ratio": cfg.ratio_text,
                "trials": cfg.trials,
                "metrics": list(cfg.metrics),
                "high_cohesion_only": cfg.high_cohesion_only,
                "k": cfg.k,
                "master_seed": cfg.master_seed,
                "contaminated_stats": cfg.contaminated_stats,
            },
            "n_pairs": self.n_pairs,
            "n_malicious_per_trial": self.n_malicious_per_trial,
            "trials_run": self.trials_run,
            "raw_p_at_k": dict(sorted(self.raw_p_at_k.items())),
            "adjusted_p_at_k": dict(sorted(self.adjusted_p_at_k.items())),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def csv_rows(self):
        """One row per metric, mirroring the fixed column order."""
        cfg = self.config
        rows = []
        for metric in cfg.metrics:
            rows.append((
                cfg.ratio_text,
                str(cfg.high_cohesion_only).lower(),
                metric,
                repr(self.raw_p_at_k[metric]),
                repr(self.adjusted_p_at_k[metric]),
                str(self.n_malicious_per_trial),
                str(self.trials_run),
                str(self.n_pairs),
                str(cfg.k),
            ))
        return rows


def high_cohesion_pairs(pairs):
    return [p for p in pairs if p.npc1 > HIGH_COHESION_NPC]


def evaluate(pairs, corpus, config, backend=None):
    """Run config.trials seeded trials and average the precisions."""
    if config.high_cohesion_only:
        pairs = high_cohesion_pairs(pairs)
    if not pairs:
        raise EvaluationError("no candidate pairs after filtering")
    n_malicious = resolve_n_malicious(len(pairs), config.ratio)
    arrays = _PairArrays(pairs)

    raw_sums = {m: 0.0 for m in config.metrics}
    adj_sums = {m: 0.0 for m in config.metrics}
    for i in range(config.trials):
        seed = derive_trial_seed(config.master_seed, i)
        result = run_trial(pairs, corpus, config, seed, backend,
                           arrays=arrays, n_malicious=n_malicious)
        for metric, (raw, adj) in result.items():
            raw_sums[metric] += raw
            adj_sums[metric] += adj

    trials = config.trials
    return EvaluationResult(
        config=config,
        n_pairs=len(pairs),
        n_malicious_per_trial=n_malicious,
        trials_run=trials,
        raw_p_at_k={m: raw_sums[m] / trials for m in config.metrics},
        adjusted_p_at_k={m: adj_sums[m] / trials for m in config.metrics},
    )
