"""Shared helpers: independent reference implementations and fixtures.

The reference implementations here deliberately avoid the package's own code
paths (plain Python loops, math.fsum) so that agreement between the two is
meaningful. They are the oracles the main suite and the acceptance suite
check against.
"""

import math

import numpy as np
import pytest

import motifswarm as ms


# ---------------------------------------------------------------------------
# independent reference implementations


def ref_znorm(values):
    """Pure-Python z-normalization (population standard deviation)."""
    xs = [float(v) for v in values]
    w = len(xs)
    mu = math.fsum(xs) / w
    var = math.fsum((v - mu) ** 2 for v in xs) / w
    sigma = math.sqrt(var)
    if sigma == 0.0:
        return [0.0] * w
    return [(v - mu) / sigma for v in xs]


def ref_upsample(values, target):
    """Pure-Python linear interpolation over the index axis."""
    xs = [float(v) for v in values]
    m = len(xs)
    if target == m:
        return list(xs)
    out = []
    for t in range(target):
        pos = (m - 1) * t / (target - 1)
        k = min(int(math.floor(pos)), m - 2)
        frac = pos - k
        out.append(xs[k] + (xs[k + 1] - xs[k]) * frac)
    out[-1] = xs[-1]
    return out


def ref_znorm_euclidean(x, y):
    """Definitional z-normalize / upsample / distance-over-length pipeline."""
    zx = ref_znorm(x)
    zy = ref_znorm(y)
    if len(zx) < len(zy):
        zx = ref_upsample(zx, len(zy))
    elif len(zy) < len(zx):
        zy = ref_upsample(zy, len(zx))
    w = len(zx)
    return math.sqrt(math.fsum((a - b) ** 2 for a, b in zip(zx, zy))) / w


def ref_norm_dtw(x, y, band=None):
    """Full-matrix quadratic DTW on already-normalized inputs."""
    lx, ly = len(x), len(y)
    half = None
    if band is not None:
        half = max(band, abs(lx - ly))
    inf = float("inf")
    dp = [[inf] * (ly + 1) for _ in range(lx + 1)]
    dp[0][0] = 0.0
    for i in range(1, lx + 1):
        for j in range(1, ly + 1):
            if half is not None and abs(i - j) > half:
                continue
            c = (x[i - 1] - y[j - 1]) ** 2
            dp[i][j] = c + min(dp[i - 1][j], dp[i][j - 1], dp[i - 1][j - 1])
    return math.sqrt(dp[lx][ly]) / max(lx, ly)


def ref_top_k_nonoverlapping(motifs, k, max_overlap_fraction=0.0):
    """Quadratic pairwise-comparison extractor (no occupancy array)."""
    chosen = []
    for m in sorted(motifs, key=lambda m: m.d):
        if any(ms.overlaps(m, c, max_overlap_fraction) for c in chosen):
            continue
        chosen.append(m)
        if len(chosen) == k:
            break
    return chosen


def segment_overlap_fraction(found, planted_start, planted_len):
    """Sample overlap between a found interval and a planted one.

    Returns intersection divided by the larger of the two lengths, so a found
    segment must both cover the planted one and not balloon past it.
    """
    lo, hi = found
    p_lo, p_hi = planted_start, planted_start + planted_len - 1
    inter = min(hi, p_hi) - max(lo, p_lo) + 1
    if inter <= 0:
        return 0.0
    return inter / max(hi - lo + 1, planted_len)


def random_valid_motif(rng, n, w_min, w_max, d=None):
    """One uniformly chosen valid motif tuple for queue/extractor fuzzing."""
    while True:
        w_a = int(rng.integers(w_min, w_max + 1))
        w_b = int(rng.integers(w_min, w_max + 1))
        if n - w_a - w_b < 1:
            continue
        a = int(rng.integers(1, n - w_a - w_b + 1))
        b = int(rng.integers(a + w_a + 1, n - w_b + 2))
        dd = float(rng.random()) if d is None else d
        return ms.Motif(a, w_a, b, w_b, dd)


class CountingMeasure:
    """Wraps a measure and counts actual evaluate() invocations."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0
        self.seen = []

    def evaluate(self, series, a, w_a, b, w_b):
        self.calls += 1
        self.seen.append((a, w_a, b, w_b))
        return self.inner.evaluate(series, a, w_a, b, w_b)


@pytest.fixture(scope="session")
def walk500():
    return ms.generate_random_walk(500, seed=42)


@pytest.fixture(scope="session")
def zeuclid():
    return ms.get_measure("zeuclid")


@pytest.fixture(scope="session")
def dtw():
    return ms.get_measure("dtw")
