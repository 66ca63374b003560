"""Time series container, segment primitives, and synthetic generators.

All public segment addressing is 1-based: a segment of length ``w`` starting
at ``a`` covers samples ``a .. a + w - 1`` (inclusive), with ``1 <= a`` and
``a + w - 1 <= n``.
"""

import csv
import math

import numpy as np

from .errors import IngestError

__all__ = [
    "TimeSeries",
    "load_csv",
    "generate_random_walk",
    "generate_planted_pair",
    "z_normalize",
    "upsample",
]

#: cell contents treated as missing values during CSV ingestion
MISSING_TOKENS = frozenset({"", "na", "nan", "null", "none", "n/a", "?"})


class TimeSeries:
    """Immutable 1-D array of float64 samples.

    Parameters
    ----------
    values : array_like
        Sample values. Must be finite and contain at least two samples.
    """

    __slots__ = ("values", "n")

    def __init__(self, values):
        arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size < 2:
            raise ValueError("a series needs at least two samples, got %d" % arr.size)
        if not np.all(np.isfinite(arr)):
            raise ValueError("series contains NaN or infinite samples")
        arr.setflags(write=False)
        self.values = arr
        self.n = int(arr.size)

    def segment(self, a, w):
        """Return the segment of length ``w`` starting at 1-based index ``a``.

        The result is a read-only view into the series.
        """
        if w < 1:
            raise ValueError("segment length must be >= 1, got %r" % (w,))
        if a < 1 or a + w - 1 > self.n:
            raise ValueError(
                "segment [%r, %r] out of bounds for series of length %d"
                % (a, a + w - 1, self.n)
            )
        return self.values[a - 1 : a - 1 + w]

    def __len__(self):
        return self.n

    def __repr__(self):
        return "TimeSeries(n=%d)" % self.n


def z_normalize(x):
    """Normalize ``x`` to zero mean and unit population standard deviation.

    Constant inputs (zero standard deviation) map to the all-zeros vector so
    that downstream dissimilarities stay defined everywhere.
    """
    x = np.asarray(x, dtype=np.float64)
    mu = x.mean()
    sigma = x.std()
    if sigma == 0.0:
        return np.zeros_like(x)
    return (x - mu) / sigma


def upsample(x, target_len):
    """Linearly interpolate ``x`` up to ``target_len`` samples.

    Endpoints are preserved exactly; ``target_len == len(x)`` is the identity.
    """
    x = np.asarray(x, dtype=np.float64)
    m = x.size
    if target_len < m:
        raise ValueError("target length %d below input length %d" % (target_len, m))
    if target_len == m:
        return x.copy()
    return np.interp(np.linspace(0.0, m - 1.0, target_len), np.arange(m), x)


def generate_random_walk(n, seed=0):
    """Generate a random walk of length ``n``: first sample 0, unit Gaussian steps.

    Deterministic for a fixed ``(n, seed)`` pair.
    """
    if n < 2:
        raise ValueError("random walk needs n >= 2, got %d" % n)
    rng = np.random.default_rng(seed)
    z = np.empty(n, dtype=np.float64)
    z[0] = 0.0
    np.cumsum(rng.standard_normal(n - 1), out=z[1:])
    return TimeSeries(z)


def generate_planted_pair(n, motif_len=60, noise=0.05, seed=0, locations=None, cycles=3):
    """Build a white-noise series with two noisy copies of one sine burst.

    The same ``cycles``-cycle unit-amplitude sine burst is written at two
    non-overlapping locations, each copy perturbed by independent Gaussian
    noise of standard deviation ``noise`` (relative to the unit amplitude).
    The background is standard Gaussian noise.

    Returns
    -------
    (TimeSeries, (int, int))
        The series and the 1-based start indices of the two planted segments.
    """
    if motif_len < 4 or n < 4 * motif_len:
        raise ValueError("series too short for the requested planted pair")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n)
    if locations is None:
        locations = (n // 4, (3 * n) // 4 - motif_len)
    a, b = locations
    if not (1 <= a and a + motif_len <= b and b + motif_len - 1 <= n):
        raise ValueError("planted locations %r do not fit in n=%d" % (locations, n))
    burst = np.sin(np.linspace(0.0, 2.0 * math.pi * cycles, motif_len))
    z[a - 1 : a - 1 + motif_len] = burst + noise * rng.standard_normal(motif_len)
    z[b - 1 : b - 1 + motif_len] = burst + noise * rng.standard_normal(motif_len)
    return TimeSeries(z), (a, b)


def _parse_cell(text):
    text = text.strip()
    if text.lower() in MISSING_TOKENS:
        return None
    try:
        return float(text)
    except ValueError:
        raise IngestError("non-numeric cell %r" % text) from None


def load_csv(path, column=0, policy="strict", header=None):
    """Load one column of a CSV file as a :class:`TimeSeries`.

    Parameters
    ----------
    path : str or path-like
        File to read, UTF-8, one sample per row.
    column : int or str
        Column index (0-based) or, when the file has a header row, a column
        name.
    policy : {"strict", "drop", "interpolate"}
        Missing-value handling: fail, drop the row, or fill by linear
        interpolation over the surviving sample index (edge gaps take the
        nearest finite value).
    header : bool or None
        Force the presence/absence of a header row. ``None`` auto-detects by
        attempting to parse the first row.
    """
    if policy not in ("strict", "drop", "interpolate"):
        raise ValueError("unknown missing-value policy %r" % policy)
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise IngestError("cannot read %s: %s" % (path, exc)) from exc
    with fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise IngestError("%s: no data rows" % path)

    col_idx = column
    first = rows[0]
    if isinstance(column, str):
        if header is False:
            raise ValueError("column selected by name but header=False")
        try:
            col_idx = first.index(column)
        except ValueError:
            raise IngestError("column %r not found in header %r" % (column, first)) from None
        rows = rows[1:]
    elif header is True:
        rows = rows[1:]
    elif header is None:
        # header row detected when the selected cell is neither numeric nor a
        # missing-value marker
        try:
            cell = first[col_idx]
        except IndexError:
            raise IngestError("row 1 has no column %d" % col_idx) from None
        if cell.strip().lower() not in MISSING_TOKENS:
            try:
                float(cell)
            except ValueError:
                rows = rows[1:]

    values = []
    for lineno, row in enumerate(rows, start=1):
        if col_idx >= len(row):
            raise IngestError("row %d has no column %d" % (lineno, col_idx))
        try:
            values.append(_parse_cell(row[col_idx]))
        except IngestError:
            if policy == "strict":
                raise
            values.append(None)

    if policy == "strict" and any(v is None for v in values):
        raise IngestError("missing values present under policy='strict'")
    if policy == "drop":
        values = [v for v in values if v is not None]
    elif policy == "interpolate":
        arr = np.array([np.nan if v is None else v for v in values], dtype=np.float64)
        good = np.flatnonzero(~np.isnan(arr))
        if good.size == 0:
            raise IngestError("no numeric samples left after ingestion")
        arr = np.interp(np.arange(arr.size), good, arr[good])
        values = arr.tolist()

    if len(values) < 2:
        raise IngestError("fewer than two samples after ingestion")
    return TimeSeries(values)
