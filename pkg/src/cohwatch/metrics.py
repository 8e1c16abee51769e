"""Delta metrics over consecutive version pairs, plus small statistics.

The raw drop cd = npc(old) - npc(new) compares each version at its own
best mask count.  The sharper otcd = npc(old) - confidence(new, otc(old))
pins the new version to the old version's optimal mask count, punishing
changes that shift where the name "fits".  Both are standardized per
starting-cohesion bucket because high-cohesion functions move less: a drop
of 0.11 means little from npc 0.95 and a lot from npc 0.40.
"""

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

# ---------------------------------------------------------------------------
# raw deltas
# ---------------------------------------------------------------------------


def cohesion_delta(score1, score2):
    """cd: drop in cohesion from the older to the newer version."""
    return score1.npc - score2.npc


def pinned_cohesion_delta(score1, score2):
    """otcd: drop with the newer version pinned to the older otc."""
    return score1.npc - score2.per_n[score1.otc - 1]


@dataclass(frozen=True)
class VersionPairDelta:
    pair_id: str
    npc1: float
    npc2: float
    cd: float
    otcd: float
    cdz: float = None
    otcdz: float = None
    label: str = "benign"


def make_delta(pair_id, score1, score2, label="benign"):
    return VersionPairDelta(
        pair_id=pair_id,
        npc1=score1.npc,
        npc2=score2.npc,
        cd=cohesion_delta(score1, score2),
        otcd=pinned_cohesion_delta(score1, score2),
        label=label,
    )


# ---------------------------------------------------------------------------
# bucket standardization
# ---------------------------------------------------------------------------

BUCKET_WIDTH = 0.05
BUCKET_COUNT = 20
SIGMA_FLOOR = 1e-6


def bucket_index(npc1):
    """Index of the 0.05-wide starting-cohesion bucket, clamped to [0, 19].

    npc1 * 20 equals npc1 / 0.05 exactly in real arithmetic but rounds
    more kindly at bucket boundaries; the clamp puts npc1 = 1.0 in the
    top bucket.
    """
    idx = int(npc1 * BUCKET_COUNT)
    if idx < 0:
        return 0
    if idx >= BUCKET_COUNT:
        return BUCKET_COUNT - 1
    return idx


@dataclass(frozen=True)
class BucketStats:
    """Per-bucket mean/sigma of cd and otcd fitted on benign pairs.

    Empty buckets carry count 0; standardization against them falls back
    to the global mean/sigma over all fitted pairs.  Sigmas are floored at
    SIGMA_FLOOR so constant buckets cannot divide by zero.
    """

    count: tuple
    cd_mean: tuple
    cd_std: tuple
    otcd_mean: tuple
    otcd_std: tuple
    global_cd_mean: float
    global_cd_std: float
    global_otcd_mean: float
    global_otcd_std: float
    total: int

    def params(self, metric, bucket):
        """(mean, sigma) for a metric in a bucket, with global fallback."""
        if metric == "cd":
            if self.count[bucket] > 0:
                return self.cd_mean[bucket], self.cd_std[bucket]
            return self.global_cd_mean, self.global_cd_std
        if metric == "otcd":
            if self.count[bucket] > 0:
                return self.otcd_mean[bucket], self.otcd_std[bucket]
            return self.global_otcd_mean, self.global_otcd_std
        raise ValueError(f"unknown metric {metric!r}")


def fit_bucket_stats_arrays(npc1, cd, otcd):
    """Fit BucketStats from parallel arrays of benign pair values."""
    npc1 = np.asarray(npc1, dtype=np.float64)
    cd = np.asarray(cd, dtype=np.float64)
    otcd = np.asarray(otcd, dtype=np.float64)
    if npc1.size == 0:
        raise ValueError("cannot fit bucket stats on zero pairs")
    idx = np.clip((npc1 * BUCKET_COUNT).astype(np.int64), 0, BUCKET_COUNT - 1)
    count = np.bincount(idx, minlength=BUCKET_COUNT)

    def _moments(values):
        sums = np.bincount(idx, weights=values, minlength=BUCKET_COUNT)
        sqs = np.bincount(idx, weights=values * values,
                          minlength=BUCKET_COUNT)
        safe = np.maximum(count, 1)
        mean = sums / safe
        var = np.maximum(sqs / safe - mean * mean, 0.0)
        std = np.maximum(np.sqrt(var), SIGMA_FLOOR)
        g_mean = float(values.mean())
        g_std = max(float(values.std()), SIGMA_FLOOR)
        return mean, std, g_mean, g_std

    cd_mean, cd_std, g_cd_mean, g_cd_std = _moments(cd)
    otcd_mean, otcd_std, g_otcd_mean, g_otcd_std = _moments(otcd)
    return BucketStats(
        count=tuple(int(c) for c in count),
        cd_mean=tuple(float(x) for x in cd_mean),
        cd_std=tuple(float(x) for x in cd_std),
        otcd_mean=tuple(float(x) for x in otcd_mean),
        otcd_std=tuple(float(x) for x in otcd_std),
        global_cd_mean=g_cd_mean,
        global_cd_std=g_cd_std,
        global_otcd_mean=g_otcd_mean,
        global_otcd_std=g_otcd_std,
        total=int(npc1.size),
    )


def fit_bucket_stats(deltas):
    """Fit BucketStats from VersionPairDelta records labelled benign."""
    rows = [(d.npc1, d.cd, d.otcd) for d in deltas]
    if not rows:
        raise ValueError("cannot fit bucket stats on zero pairs")
    npc1, cd, otcd = (np.array(col) for col in zip(*rows))
    return fit_bucket_stats_arrays(npc1, cd, otcd)


def standardize_value(metric, npc1, value, stats):
    mean, std = stats.params(metric, bucket_index(npc1))
    return (value - mean) / std


def standardize(delta, stats):
    """Return the delta with cdz/otcdz filled in from the fitted stats."""
    return replace(
        delta,
        cdz=standardize_value("cd", delta.npc1, delta.cd, stats),
        otcdz=standardize_value("otcd", delta.npc1, delta.otcd, stats),
    )


def standardize_arrays(npc1, values, stats, metric):
    """Vectorized standardization used by the evaluation loop."""
    npc1 = np.asarray(npc1, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    idx = np.clip((npc1 * BUCKET_COUNT).astype(np.int64), 0, BUCKET_COUNT - 1)
    if metric == "cd":
        mean = np.array(stats.cd_mean)
        std = np.array(stats.cd_std)
        g_mean, g_std = stats.global_cd_mean, stats.global_cd_std
    elif metric == "otcd":
        mean = np.array(stats.otcd_mean)
        std = np.array(stats.otcd_std)
        g_mean, g_std = stats.global_otcd_mean, stats.global_otcd_std
    else:
        raise ValueError(f"unknown metric {metric!r}")
    count = np.array(stats.count)
    have = count[idx] > 0
    mu = np.where(have, mean[idx], g_mean)
    sigma = np.where(have, std[idx], g_std)
    return (values - mu) / sigma


# ---------------------------------------------------------------------------
# statistics helpers
# ---------------------------------------------------------------------------


def pearson_r(xs, ys):
    """Pearson correlation; errors out rather than returning NaN.

    Requires at least three points and nonzero variance on both sides:
    correlation against a constant column is a caller bug, not a zero.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("pearson_r needs columns of equal length")
    if x.size < 3:
        raise ValueError("pearson_r needs at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("pearson_r is undefined for a constant column")
    return float((dx * dy).sum()) / (sx * sy)


def pearson_with_p(xs, ys):
    """(r, two-sided p) with a normal-tail approximation.

    The t statistic r * sqrt((n-2) / (1-r^2)) is mapped through the normal
    tail; accurate for the sample sizes this pipeline works at (hundreds
    and up), indicative below that.
    """
    r = pearson_r(xs, ys)
    n = len(xs)
    if abs(r) >= 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = math.erfc(abs(t) / math.sqrt(2.0))
    return r, p


def one_sided_sign_test(wins, n):
    """P(X >= wins) for X ~ Binomial(n, 1/2); exact."""
    if not (0 <= wins <= n) or n <= 0:
        raise ValueError("need 0 <= wins <= n with n > 0")
    total = sum(math.comb(n, k) for k in range(wins, n + 1))
    return total / float(2 ** n)


def histogram(values, bin_width, lo, hi):
    """Counts per [lo + i*w, lo + (i+1)*w) bin; out-of-range values drop.

    The sum of counts equals the number of in-range values.
    """
    if bin_width <= 0 or hi <= lo:
        raise ValueError("need bin_width > 0 and hi > lo")
    nbins = int(round((hi - lo) / bin_width))
    counts = [0] * nbins
    for v in values:
        if not (lo <= v < hi):
            continue
        idx = int((v - lo) / bin_width)
        if idx >= nbins:
            idx = nbins - 1
        counts[idx] += 1
    return [(lo + i * bin_width, counts[i]) for i in range(nbins)]


def cohesion_histogram(npc_values):
    """20-bucket cohesion histogram; npc = 1.0 lands in the top bucket."""
    counts = [0] * BUCKET_COUNT
    for v in npc_values:
        counts[bucket_index(v)] += 1
    return [(round(i * BUCKET_WIDTH, 2), counts[i])
            for i in range(BUCKET_COUNT)]


def size_bucket_curves(pairs, width=5):
    """Mean/sigma of a value, grouped into `width`-line size buckets.

    ``pairs`` holds (line_count, value); returns rows of
    (bucket_lo, count, mean, std) sorted by bucket.
    """
    if width <= 0:
        raise ValueError("bucket width must be positive")
    groups = {}
    for lines, value in pairs:
        groups.setdefault((int(lines) // width) * width, []).append(value)
    rows = []
    for lo in sorted(groups):
        arr = np.array(groups[lo], dtype=np.float64)
        rows.append((lo, arr.size, float(arr.mean()), float(arr.std())))
    return rows


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

DELTA_CSV_COLUMNS = (
    "pair_id", "npc1", "npc2", "cd", "otcd", "cdz", "otcdz", "label",
)


def write_deltas_csv(deltas, fh):
    """Write deltas with the frozen column order; missing z-scores blank."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(DELTA_CSV_COLUMNS)
    for d in deltas:
        writer.writerow([
            d.pair_id,
            repr(d.npc1), repr(d.npc2), repr(d.cd), repr(d.otcd),
            "" if d.cdz is None else repr(d.cdz),
            "" if d.otcdz is None else repr(d.otcdz),
            d.label,
        ])


__all__ = [
    "BUCKET_COUNT", "BUCKET_WIDTH", "DELTA_CSV_COLUMNS", "SIGMA_FLOOR",
    "BucketStats", "VersionPairDelta", "bucket_index", "cohesion_delta",
    "cohesion_histogram", "fit_bucket_stats", "fit_bucket_stats_arrays",
    "histogram", "make_delta", "one_sided_sign_test", "pearson_r",
    "pearson_with_p", "pinned_cohesion_delta", "size_bucket_curves",
    "standardize", "standardize_arrays", "standardize_value",
    "write_deltas_csv",
]
