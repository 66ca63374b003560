"""Motif records, the candidate priority queue, and anytime top-k extraction.

The queue keeps candidates sorted by dissimilarity and bounded in size. An
entry is only ever evicted when it provably does not participate in the
current greedy non-overlapping top-k, so extraction results are unaffected
by the bound. Extraction itself scans candidates in ascending dissimilarity
and uses a boolean occupancy array over the series samples, which keeps it
linear in the queue size instead of quadratic in k.
"""

import bisect
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Motif",
    "MotifSet",
    "MotifQueue",
    "PositionCache",
    "overlaps",
    "top_k_nonoverlapping",
]


@dataclass(frozen=True)
class Motif:
    """A segment pair ``(a, w_a, b, w_b)`` with its dissimilarity ``d``.

    Indices are 1-based; the first segment covers ``a .. a + w_a - 1`` and the
    second ``b .. b + w_b - 1``. ``a + w_a < b`` is enforced so the pair can
    never be a trivial self-match.
    """

    a: int
    w_a: int
    b: int
    w_b: int
    d: float

    def __post_init__(self):
        for name in ("a", "w_a", "b", "w_b"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise TypeError("%s must be an integer, got %r" % (name, v))
            object.__setattr__(self, name, int(v))
        if self.a < 1 or self.w_a < 1 or self.w_b < 1:
            raise ValueError("motif coordinates out of range: %r" % (self,))
        if self.a + self.w_a >= self.b:
            raise ValueError(
                "first segment must end strictly before the second starts: %r" % (self,)
            )
        d = float(self.d)
        if not (d >= 0.0):
            raise ValueError("dissimilarity must be non-negative, got %r" % (self.d,))
        object.__setattr__(self, "d", d)

    @property
    def coords(self):
        return (self.a, self.w_a, self.b, self.w_b)

    @property
    def segments(self):
        """Inclusive (start, end) sample intervals of the two segments."""
        return (
            (self.a, self.a + self.w_a - 1),
            (self.b, self.b + self.w_b - 1),
        )


@dataclass(frozen=True)
class MotifSet:
    """Motifs ordered from lowest to highest dissimilarity."""

    motifs: tuple
    requested_k: int

    def __post_init__(self):
        motifs = tuple(self.motifs)
        object.__setattr__(self, "motifs", motifs)
        for prev, curr in zip(motifs, motifs[1:]):
            if curr.d < prev.d:
                raise ValueError("motifs must be ordered by ascending dissimilarity")
        if self.requested_k < 0:
            raise ValueError("requested_k must be >= 0")

    @property
    def shortfall(self):
        """True when fewer motifs exist than were requested."""
        return len(self.motifs) < self.requested_k

    @property
    def dissimilarities(self):
        return [m.d for m in self.motifs]

    def __iter__(self):
        return iter(self.motifs)

    def __len__(self):
        return len(self.motifs)

    def __getitem__(self, i):
        return self.motifs[i]


def _interval_overlap(lo1, hi1, lo2, hi2):
    return min(hi1, hi2) - max(lo1, lo2) + 1


def overlaps(m1, m2, max_overlap_fraction=0.0):
    """Whether two motifs overlap beyond the allowed fraction.

    With the default fraction 0 any shared sample between any of the four
    segment pairs counts. With fraction ``f`` a segment pair only counts when
    its intersection exceeds ``f`` times the shorter of the two segments.
    """
    if not 0.0 <= max_overlap_fraction <= 1.0:
        raise ValueError("max_overlap_fraction must lie in [0, 1]")
    for lo1, hi1 in m1.segments:
        w1 = hi1 - lo1 + 1
        for lo2, hi2 in m2.segments:
            inter = _interval_overlap(lo1, hi1, lo2, hi2)
            if inter <= 0:
                continue
            if max_overlap_fraction == 0.0:
                return True
            if inter > max_overlap_fraction * min(w1, hi2 - lo2 + 1):
                return True
    return False


def _greedy_select(motifs, k, n, max_overlap_fraction):
    """Indices of the greedy non-overlapping top-k among ascending-d motifs."""
    accepted = []
    if max_overlap_fraction == 0.0:
        occupied = np.zeros(n + 2, dtype=bool)
        for idx, m in enumerate(motifs):
            (lo1, hi1), (lo2, hi2) = m.segments
            if hi2 > n:
                raise ValueError("motif %r exceeds series length %d" % (m, n))
            if occupied[lo1 : hi1 + 1].any() or occupied[lo2 : hi2 + 1].any():
                continue
            occupied[lo1 : hi1 + 1] = True
            occupied[lo2 : hi2 + 1] = True
            accepted.append(idx)
            if len(accepted) == k:
                break
    else:
        chosen = []
        for idx, m in enumerate(motifs):
            if any(overlaps(m, c, max_overlap_fraction) for c in chosen):
                continue
            chosen.append(m)
            accepted.append(idx)
            if len(accepted) == k:
                break
    return accepted


def top_k_nonoverlapping(candidates, k, n, max_overlap_fraction=0.0):
    """Extract the k best mutually non-overlapping motifs.

    ``candidates`` may be a :class:`MotifQueue` or any iterable of
    :class:`Motif`; entries are scanned in ascending dissimilarity and
    accepted greedily. Safe to call at any point during a run. Returns a
    :class:`MotifSet` whose ``shortfall`` flag is set when fewer than ``k``
    motifs could be extracted.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    motifs = sorted(candidates, key=lambda m: m.d)
    idx = _greedy_select(motifs, k, n, max_overlap_fraction)
    return MotifSet(tuple(motifs[i] for i in idx), requested_k=k)


class MotifQueue:
    """Bounded, dissimilarity-sorted store of motif candidates.

    Push cost is a binary search plus a list shift; duplicate coordinates are
    ignored. When the size bound is hit, the worst entry that is not part of
    the current greedy non-overlapping top-k is dropped, so the bound can
    never starve extraction.
    """

    def __init__(self, k, n, capacity=None, max_overlap_fraction=0.0):
        if k < 1:
            raise ValueError("k must be >= 1")
        if n < 2:
            raise ValueError("n must be >= 2")
        self.k = int(k)
        self.n = int(n)
        self.capacity = int(capacity) if capacity is not None else max(100, 20 * k)
        if self.capacity < k:
            raise ValueError("capacity below k")
        self.max_overlap_fraction = float(max_overlap_fraction)
        self._entries = []  # sorted list of (d, seq, Motif)
        self._coords = set()
        self._seq = 0
        # cached greedy-accepted keys and the (d, seq) of the k-th accept;
        # valid while no entry sorts at or before the k-th accept
        self._accepted_keys = None
        self._kth_key = None

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return (entry[2] for entry in self._entries)

    def best(self):
        """The current minimum-dissimilarity motif, or None when empty."""
        return self._entries[0][2] if self._entries else None

    def push(self, d, coords):
        """Insert a candidate; returns False for duplicate coordinates."""
        coords = tuple(int(c) for c in coords)
        if coords in self._coords:
            return False
        motif = Motif(coords[0], coords[1], coords[2], coords[3], float(d))
        if motif.b + motif.w_b - 1 > self.n:
            raise ValueError("motif %r exceeds series length %d" % (motif, self.n))
        # the unique seq component keeps tuple comparison away from the Motif
        entry = (motif.d, self._seq, motif)
        self._seq += 1
        bisect.insort(self._entries, entry)
        self._coords.add(coords)
        if self._accepted_keys is not None and (
            self._kth_key is None or entry[:2] <= self._kth_key
        ):
            self._accepted_keys = None
            self._kth_key = None
        if len(self._entries) > self.capacity:
            self._evict()
        return True

    def _refresh_accepted(self):
        motifs = [e[2] for e in self._entries]
        idx = _greedy_select(motifs, self.k, self.n, self.max_overlap_fraction)
        self._accepted_keys = {self._entries[i][:2] for i in idx}
        if len(idx) >= self.k:
            self._kth_key = self._entries[idx[-1]][:2]
        else:
            self._kth_key = None

    def _evict(self):
        if self._accepted_keys is None:
            self._refresh_accepted()
        for pos in range(len(self._entries) - 1, -1, -1):
            key = self._entries[pos][:2]
            if key not in self._accepted_keys:
                _, _, motif = self._entries.pop(pos)
                self._coords.discard(motif.coords)
                return
        raise AssertionError("queue bound smaller than its own accepted set")


class PositionCache:
    """Bounded memo of dissimilarities keyed by floored motif coordinates."""

    def __init__(self, capacity=1 << 20):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = int(capacity)
        self._map = {}
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._map)

    def get(self, key):
        """Cached value for ``key`` or None; found keys count as hits."""
        found = self._map.get(key)
        if found is not None:
            self.hits += 1
        return found

    def put(self, key, d):
        """Store a freshly computed value, evicting an arbitrary slot at capacity."""
        self.misses += 1
        if len(self._map) >= self.capacity:
            self._map.pop(next(iter(self._map)))
        self._map[key] = d

    def lookup_or_insert(self, key, compute):
        """Return the cached value for ``key`` or compute, store, and return it."""
        found = self.get(key)
        if found is not None:
            return found
        d = compute()
        self.put(key, d)
        return d

    def clear(self):
        """Drop all entries; hit/miss counters keep their totals."""
        self._map.clear()
