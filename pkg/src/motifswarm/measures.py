"""Length-normalized segment dissimilarity measures.

Two measures are provided, selectable by name:

``"zeuclid"``
    Euclidean distance between z-normalized segments, divided by the common
    segment length. Unequal lengths are reconciled by linearly upsampling the
    shorter z-normalized segment to the longer length.

``"dtw"``
    Dynamic time warping with squared-difference local cost on z-normalized
    segments, square-rooted at the end and divided by the larger of the two
    lengths. Handles unequal lengths natively; an optional Sakoe-Chiba band
    limits the warping window.

Both are deterministic, symmetric, non-negative, and zero exactly for
identical (post-normalization) segments, which is what lets them act as a
fitness function over the motif coordinate space.
"""

import math

import numpy as np
from numba import njit

from .series import upsample, z_normalize

__all__ = [
    "znorm_euclidean",
    "norm_dtw",
    "ZNormEuclidean",
    "NormalizedDTW",
    "get_measure",
    "slice_landscape",
]


def znorm_euclidean(x, y):
    """Length-normalized Euclidean distance between z-normalized vectors.

    Each input is z-normalized on its own; if the lengths differ, the shorter
    normalized vector is linearly upsampled to the longer length. The
    Euclidean distance is then divided by the common (post-upsampling) length.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size == 0 or y.size == 0:
        raise ValueError("empty input vector")
    zx = z_normalize(x)
    zy = z_normalize(y)
    if zx.size < zy.size:
        zx = upsample(zx, zy.size)
    elif zy.size < zx.size:
        zy = upsample(zy, zx.size)
    w = zx.size
    return float(np.sqrt(np.sum((zx - zy) ** 2)) / w)


@njit(cache=True)
def _dtw_sq(x, y, band):
    """Squared-cost DTW table value at the corner, rolling two rows.

    ``band < 0`` disables the window constraint. Otherwise the effective
    half-width is ``max(band, |len(x) - len(y)|)`` so the corner stays
    reachable.
    """
    lx = x.size
    ly = y.size
    if band >= 0:
        half = band if band > abs(lx - ly) else abs(lx - ly)
    else:
        half = -1
    prev = np.full(ly + 1, np.inf)
    curr = np.full(ly + 1, np.inf)
    prev[0] = 0.0
    for i in range(1, lx + 1):
        curr[:] = np.inf
        if half >= 0:
            jlo = i - half if i - half > 1 else 1
            jhi = i + half if i + half < ly else ly
        else:
            jlo = 1
            jhi = ly
        for j in range(jlo, jhi + 1):
            c = x[i - 1] - y[j - 1]
            c = c * c
            m = prev[j]
            if prev[j - 1] < m:
                m = prev[j - 1]
            if curr[j - 1] < m:
                m = curr[j - 1]
            curr[j] = c + m
        prev, curr = curr, prev
    return prev[ly]


def norm_dtw(x, y, band=None):
    """Length-normalized DTW between vectors already z-normalized by the caller.

    Classic dynamic program with unit step weights and squared-difference
    local cost; the accumulated cost is square-rooted and divided by
    ``max(len(x), len(y))``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.size == 0 or y.size == 0:
        raise ValueError("empty input vector")
    b = -1 if band is None else int(band)
    if band is not None and b < 0:
        raise ValueError("band must be >= 0")
    return float(math.sqrt(_dtw_sq(x, y, b)) / max(x.size, y.size))


@njit(cache=True)
def _znorm_into(z, i0, w, out):
    """z-normalize the 0-based segment ``[i0, i0 + w)`` into ``out``."""
    mu = 0.0
    for t in range(w):
        mu += z[i0 + t]
    mu /= w
    s2 = 0.0
    for t in range(w):
        d = z[i0 + t] - mu
        s2 += d * d
    sigma = math.sqrt(s2 / w)
    if sigma == 0.0:
        for t in range(w):
            out[t] = 0.0
    else:
        for t in range(w):
            out[t] = (z[i0 + t] - mu) / sigma


@njit(cache=True)
def _zeuclid_unequal(z, i0, w_a, j0, w_b):
    """Unequal-length path: normalize, upsample the shorter, distance / length.

    Mirrors the definitional linspace/interp computation (endpoint pinned
    exactly) so both paths agree to float rounding.
    """
    if w_a >= w_b:
        li, lw, si, sw = i0, w_a, j0, w_b
    else:
        li, lw, si, sw = j0, w_b, i0, w_a
    xl = np.empty(lw)
    xs = np.empty(sw)
    _znorm_into(z, li, lw, xl)
    _znorm_into(z, si, sw, xs)
    step = (sw - 1.0) / (lw - 1.0)
    acc = 0.0
    for t in range(lw):
        pos = sw - 1.0 if t == lw - 1 else t * step
        k = int(pos)
        if k + 1 <= sw - 1:
            v = xs[k] + (xs[k + 1] - xs[k]) * (pos - k)
        else:
            v = xs[sw - 1]
        diff = v - xl[t]
        acc += diff * diff
    return math.sqrt(acc) / lw


@njit(cache=True)
def _dtw_eval(z, i0, w_a, j0, w_b, band):
    """z-normalize both segments in place and run the DTW recursion."""
    x = np.empty(w_a)
    y = np.empty(w_b)
    _znorm_into(z, i0, w_a, x)
    _znorm_into(z, j0, w_b, y)
    m = w_a if w_a > w_b else w_b
    return math.sqrt(_dtw_sq(x, y, band)) / m


@njit(cache=True)
def _zeuclid_equal(z, i0, j0, w):
    """Fast path for equal-length segments, explicit normalize-and-subtract.

    ``i0``/``j0`` are 0-based segment starts. The correlation form
    ``2 w (1 - r)`` would be one pass cheaper but loses half the mantissa
    near r = 1; the explicit difference keeps near-duplicate pairs accurate
    and bit-identical segments at exactly zero.
    """
    mx = 0.0
    my = 0.0
    for t in range(w):
        mx += z[i0 + t]
        my += z[j0 + t]
    mx /= w
    my /= w
    sxx = 0.0
    syy = 0.0
    for t in range(w):
        dx = z[i0 + t] - mx
        dy = z[j0 + t] - my
        sxx += dx * dx
        syy += dy * dy
    if sxx == 0.0 and syy == 0.0:
        return 0.0
    if sxx == 0.0 or syy == 0.0:
        # one constant segment normalizes to zeros, the other to unit power
        return math.sqrt(float(w)) / w
    sx = math.sqrt(sxx / w)
    sy = math.sqrt(syy / w)
    acc = 0.0
    for t in range(w):
        diff = (z[i0 + t] - mx) / sx - (z[j0 + t] - my) / sy
        acc += diff * diff
    return math.sqrt(acc) / w


def _check_coords(n, a, w_a, b, w_b):
    if not (
        1 <= a
        and w_a >= 1
        and w_b >= 1
        and a + w_a < b
        and b + w_b - 1 <= n
    ):
        raise ValueError(
            "invalid motif coordinates (a=%r, w_a=%r, b=%r, w_b=%r) for n=%d"
            % (a, w_a, b, w_b, n)
        )


class ZNormEuclidean:
    """z-normalized, length-normalized Euclidean dissimilarity."""

    name = "zeuclid"

    def evaluate(self, series, a, w_a, b, w_b):
        """Dissimilarity of the motif ``(a, w_a, b, w_b)`` on ``series``."""
        _check_coords(series.n, a, w_a, b, w_b)
        if w_a == w_b:
            return float(_zeuclid_equal(series.values, a - 1, b - 1, int(w_a)))
        return float(_zeuclid_unequal(series.values, a - 1, int(w_a), b - 1, int(w_b)))

    def segment_distance(self, x, y):
        return znorm_euclidean(x, y)

    def __repr__(self):
        return "ZNormEuclidean()"


class NormalizedDTW:
    """z-normalized, length-normalized dynamic time warping dissimilarity."""

    name = "dtw"

    def __init__(self, band=None):
        if band is not None and int(band) < 0:
            raise ValueError("band must be >= 0")
        self.band = None if band is None else int(band)

    def evaluate(self, series, a, w_a, b, w_b):
        """Dissimilarity of the motif ``(a, w_a, b, w_b)`` on ``series``."""
        _check_coords(series.n, a, w_a, b, w_b)
        band = -1 if self.band is None else self.band
        return float(_dtw_eval(series.values, a - 1, int(w_a), b - 1, int(w_b), band))

    def segment_distance(self, x, y):
        return norm_dtw(z_normalize(x), z_normalize(y), band=self.band)

    def __repr__(self):
        return "NormalizedDTW(band=%r)" % (self.band,)


def get_measure(name, band=None):
    """Resolve a measure by its public name: ``"zeuclid"`` or ``"dtw"``."""
    if name == "zeuclid":
        return ZNormEuclidean()
    if name == "dtw":
        return NormalizedDTW(band=band)
    raise ValueError("unknown measure %r (expected 'zeuclid' or 'dtw')" % name)


def slice_landscape(series, measure, fixed_starts=None, fixed_lengths=None,
                    length_range=None, start_range=None):
    """Evaluate a 2-D slice of the 4-D motif dissimilarity landscape.

    Exactly one of the fixed pairs must be given:

    - ``fixed_starts=(a, b)`` with ``length_range=(lo, hi)``: entry ``[i, j]``
      holds the dissimilarity of ``(a, lo + i, b, lo + j)``.
    - ``fixed_lengths=(w_a, w_b)`` with ``start_range=(lo, hi)``: entry
      ``[i, j]`` holds the dissimilarity of ``(lo + i, w_a, lo + j, w_b)``.

    Ranges are inclusive. Cells whose coordinates do not form a valid motif
    are set to NaN; the matrix is intended for heatmap-style inspection.
    """
    if (fixed_starts is None) == (fixed_lengths is None):
        raise ValueError("give exactly one of fixed_starts or fixed_lengths")
    n = series.n

    if fixed_starts is not None:
        if length_range is None:
            raise ValueError("fixed_starts requires length_range")
        a, b = fixed_starts
        if not (1 <= a < b and b <= n):
            raise ValueError("invalid fixed starts %r" % (fixed_starts,))
        lo, hi = length_range
        if lo > hi or lo < 1:
            raise ValueError("empty or invalid length range %r" % (length_range,))
        lens = range(int(lo), int(hi) + 1)
        out = np.full((len(lens), len(lens)), np.nan)
        for i, wa in enumerate(lens):
            for j, wb in enumerate(lens):
                if a + wa < b and b + wb - 1 <= n:
                    out[i, j] = measure.evaluate(series, a, wa, b, wb)
        return out

    if start_range is None:
        raise ValueError("fixed_lengths requires start_range")
    wa, wb = fixed_lengths
    if wa < 1 or wb < 1 or wa + wb >= n:
        raise ValueError("invalid fixed lengths %r" % (fixed_lengths,))
    lo, hi = start_range
    if lo > hi or lo < 1:
        raise ValueError("empty or invalid start range %r" % (start_range,))
    starts = range(int(lo), int(hi) + 1)
    out = np.full((len(starts), len(starts)), np.nan)
    for i, a in enumerate(starts):
        for j, b in enumerate(starts):
            if a + wa < b and b + wb - 1 <= n:
                out[i, j] = measure.evaluate(series, a, wa, b, wb)
    return out
