"""Ground truth: exhaustive top-k motif search and random-sampling reference.

The exhaustive search enumerates every valid coordinate tuple, evaluates the
same measure object the swarm uses, and extracts the non-overlapping top-k
with the same greedy scan, so any disagreement with the swarm isolates the
search strategy rather than the fitness. Memory stays bounded by retaining
only the ``keep`` lowest dissimilarities seen so far; the final extraction
verifies that nothing discarded could have entered the result.
"""

import time
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, InfeasibleTaskError
from .store import Motif, MotifSet, _greedy_select
from .swarm import _valid_mask, draw_positions

__all__ = [
    "OracleResult",
    "SampleReference",
    "count_motif_space",
    "brute_force_topk",
    "random_sample_reference",
]


@dataclass(frozen=True)
class OracleResult:
    """Exact motif set plus the cost of producing it."""

    motifs: MotifSet
    evaluations: int
    elapsed_seconds: float


@dataclass(frozen=True)
class SampleReference:
    """Percentile summary of dissimilarities over uniformly sampled motifs."""

    count: int
    minimum: float
    p5: float
    p50: float
    p95: float
    maximum: float

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")

    @property
    def as_row(self):
        return (self.count, self.minimum, self.p5, self.p50, self.p95, self.maximum)


def _length_pairs(w_min, w_max, equal_lengths, max_stretch):
    for w_a in range(w_min, w_max + 1):
        if equal_lengths:
            yield w_a, w_a
            continue
        for w_b in range(w_min, w_max + 1):
            if max_stretch is not None and abs(w_a - w_b) > max_stretch:
                continue
            yield w_a, w_b


def count_motif_space(n, w_min, w_max, equal_lengths=False, max_stretch=None):
    """Closed-form count of valid ``(a, w_a, b, w_b)`` tuples.

    For one length pair the count is ``m (m + 1) / 2`` with
    ``m = n - w_a - w_b``: each start ``a`` leaves ``m - a + 1`` second
    starts in ``(a + w_a, n - w_b + 1]``.
    """
    if w_min > w_max or w_min < 1:
        raise ValueError("invalid length window [%r, %r]" % (w_min, w_max))
    total = 0
    for w_a, w_b in _length_pairs(w_min, w_max, equal_lengths, max_stretch):
        m = n - w_a - w_b
        if m >= 1:
            total += m * (m + 1) // 2
    return total


def brute_force_topk(series, measure, w_min, w_max, k, equal_lengths=False,
                     max_stretch=None, overlap_fraction=0.0, budget=10**8,
                     keep=500_000, clock=None):
    """Exact non-overlapping top-k by full enumeration of the motif space.

    Raises
    ------
    BudgetExceededError
        When the enumeration would need more than ``budget`` evaluations,
        before any work is done.
    InfeasibleTaskError
        When no valid motif exists.
    """
    n = series.n
    if k < 1:
        raise ValueError("k must be >= 1")
    total = count_motif_space(n, w_min, w_max, equal_lengths, max_stretch)
    if total == 0:
        raise InfeasibleTaskError("no valid motif for n=%d, w=[%d, %d]" % (n, w_min, w_max))
    if total > budget:
        raise BudgetExceededError(
            "exhaustive search needs %d evaluations, budget is %d" % (total, budget)
        )
    if clock is None:
        clock = time.monotonic
    started = clock()

    keep = max(int(keep), 10 * k)
    chunk = min(total, max(keep, 1 << 20))
    d_kept = np.empty(0)
    c_kept = np.empty((0, 4), dtype=np.int64)
    s_kept = np.empty(0, dtype=np.int64)
    d_buf = np.empty(chunk)
    c_buf = np.empty((chunk, 4), dtype=np.int64)
    s_buf = np.empty(chunk, dtype=np.int64)
    fill = 0
    seq = 0
    discard_floor = np.inf  # smallest dissimilarity ever discarded
    evaluate = measure.evaluate

    def compact(d_k, c_k, s_k, floor_):
        d_all = np.concatenate((d_k, d_buf[:fill]))
        c_all = np.concatenate((c_k, c_buf[:fill]))
        s_all = np.concatenate((s_k, s_buf[:fill]))
        if d_all.size > keep:
            part = np.argpartition(d_all, keep - 1)
            kept_idx, dropped_idx = part[:keep], part[keep:]
            floor_ = min(floor_, float(d_all[dropped_idx].min()))
            d_all, c_all, s_all = d_all[kept_idx], c_all[kept_idx], s_all[kept_idx]
        return d_all, c_all, s_all, floor_

    for w_a, w_b in _length_pairs(w_min, w_max, equal_lengths, max_stretch):
        m = n - w_a - w_b
        for a in range(1, m + 1):
            for b in range(a + w_a + 1, n - w_b + 2):
                if fill == chunk:
                    d_kept, c_kept, s_kept, discard_floor = compact(
                        d_kept, c_kept, s_kept, discard_floor
                    )
                    fill = 0
                d_buf[fill] = evaluate(series, a, w_a, b, w_b)
                c_buf[fill, 0] = a
                c_buf[fill, 1] = w_a
                c_buf[fill, 2] = b
                c_buf[fill, 3] = w_b
                s_buf[fill] = seq
                fill += 1
                seq += 1
    d_kept, c_kept, s_kept, discard_floor = compact(d_kept, c_kept, s_kept, discard_floor)
    assert seq == total

    order = np.lexsort((s_kept, d_kept))
    motifs = [
        Motif(int(c_kept[i, 0]), int(c_kept[i, 1]), int(c_kept[i, 2]), int(c_kept[i, 3]), float(d_kept[i]))
        for i in order
    ]
    idx = _greedy_select(motifs, k, n, overlap_fraction)
    chosen = [motifs[i] for i in idx]
    if np.isfinite(discard_floor):
        incomplete = len(chosen) < k or max(m.d for m in chosen) >= discard_floor
        if incomplete:
            raise BudgetExceededError(
                "retention bound keep=%d too small for an exact top-%d; rerun larger" % (keep, k)
            )
    return OracleResult(
        motifs=MotifSet(tuple(chosen), requested_k=k),
        evaluations=total,
        elapsed_seconds=clock() - started,
    )


def random_sample_reference(series, measure, w_min, w_max, count=None, seed=0,
                            equal_lengths=False, max_stretch=None):
    """Dissimilarity percentiles over uniform random samples of the motif space.

    Sampling uses the same triangular-corrected position distribution as
    swarm initialization; draws whose floored coordinates are invalid are
    rejected and redrawn. ``count`` defaults to the series length.
    """
    n = series.n
    if n < 2 * w_min + 1:
        raise InfeasibleTaskError("no valid motif for n=%d, w_min=%d" % (n, w_min))
    if count is None:
        count = n
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    values = np.empty(count)
    have = 0
    batches = 0
    while have < count:
        batches += 1
        if batches > 10_000:
            raise RuntimeError("sampling keeps rejecting; task is near-infeasible")
        x = draw_positions(rng, max(count - have, 256), n, w_min, w_max,
                           equal_lengths, max_stretch)
        F = np.floor(x)
        good = F[_valid_mask(F, n, w_min, w_max, equal_lengths, max_stretch)]
        for row in good.astype(np.int64).tolist():
            values[have] = measure.evaluate(series, row[0], row[1], row[2], row[3])
            have += 1
            if have == count:
                break
    p5, p50, p95 = (float(v) for v in np.percentile(values, (5, 50, 95)))
    return SampleReference(
        count=count,
        minimum=float(values.min()),
        p5=p5,
        p50=p50,
        p95=p95,
        maximum=float(values.max()),
    )
