import numpy as np
import pytest

import motifswarm as ms
from conftest import random_valid_motif, ref_top_k_nonoverlapping


def motif(a, w_a, b, w_b, d=0.5):
    return ms.Motif(a, w_a, b, w_b, d)


class TestMotif:
    def test_valid(self):
        m = motif(1, 10, 20, 12, 0.25)
        assert m.coords == (1, 10, 20, 12)
        assert m.segments == ((1, 10), (20, 31))

    def test_trivial_match_rejected(self):
        with pytest.raises(ValueError):
            motif(1, 10, 11, 10)  # a + w_a == b
        motif(1, 10, 12, 10)  # a + w_a < b is fine

    def test_bad_fields(self):
        with pytest.raises(ValueError):
            motif(0, 10, 30, 10)
        with pytest.raises(ValueError):
            motif(1, 0, 30, 10)
        with pytest.raises(ValueError):
            motif(1, 10, 30, 10, -0.1)
        with pytest.raises(ValueError):
            motif(1, 10, 30, 10, float("nan"))
        with pytest.raises(TypeError):
            motif(1.5, 10, 30, 10)

    def test_fuzzed_invariants(self):
        # every tuple the constructor accepts satisfies the motif contract
        rng = np.random.default_rng(0)
        accepted = 0
        for _ in range(3000):
            a, w_a, b, w_b = (int(v) for v in rng.integers(-3, 40, size=4))
            d = float(rng.normal())
            try:
                m = ms.Motif(a, w_a, b, w_b, d)
            except (ValueError, TypeError):
                continue
            accepted += 1
            assert m.a >= 1 and m.w_a >= 1 and m.w_b >= 1
            assert m.a + m.w_a < m.b
            assert m.d >= 0.0
        assert accepted > 100


class TestMotifSet:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            ms.MotifSet((motif(1, 5, 10, 5, 0.9), motif(40, 5, 50, 5, 0.1)), requested_k=2)

    def test_shortfall_flag(self):
        s = ms.MotifSet((motif(1, 5, 10, 5, 0.1),), requested_k=3)
        assert s.shortfall
        assert not ms.MotifSet((motif(1, 5, 10, 5, 0.1),), requested_k=1).shortfall

    def test_sequence_protocol(self):
        s = ms.MotifSet((motif(1, 5, 10, 5, 0.1), motif(30, 5, 40, 5, 0.2)), requested_k=2)
        assert len(s) == 2
        assert s[0].d == 0.1
        assert s.dissimilarities == [0.1, 0.2]


class TestOverlaps:
    def test_disjoint(self):
        m1 = motif(1, 10, 20, 10)
        m2 = motif(40, 10, 60, 10)
        assert not ms.overlaps(m1, m2)

    def test_boundary_touch(self):
        # first segments share exactly sample 10
        m1 = motif(1, 10, 40, 10)
        m2 = motif(10, 10, 60, 10)
        assert ms.overlaps(m1, m2)

    def test_fraction_allows_small_overlap(self):
        # segments [1,10] and [8,17]: 3 shared samples < 0.5 * 10
        m1 = motif(1, 10, 40, 10)
        m2 = motif(8, 10, 60, 10)
        assert ms.overlaps(m1, m2, 0.0)
        assert not ms.overlaps(m1, m2, 0.5)

    def test_symmetric(self):
        rng = np.random.default_rng(1)
        for _ in range(300):
            m1 = random_valid_motif(rng, 80, 3, 12)
            m2 = random_valid_motif(rng, 80, 3, 12)
            f = float(rng.choice([0.0, 0.3, 0.7]))
            assert ms.overlaps(m1, m2, f) == ms.overlaps(m2, m1, f)

    def test_bad_fraction(self):
        m = motif(1, 5, 10, 5)
        with pytest.raises(ValueError):
            ms.overlaps(m, m, 1.5)


class TestTopK:
    def test_greedy_with_occupancy(self):
        q = [
            motif(1, 10, 20, 10, 0.1),
            motif(5, 10, 50, 10, 0.2),  # collides with #1 on samples 5-10
            motif(70, 10, 90, 10, 0.3),
        ]
        out = ms.top_k_nonoverlapping(q, k=2, n=100)
        assert [m.d for m in out] == [0.1, 0.3]

    def test_k1_is_minimum(self):
        rng = np.random.default_rng(2)
        motifs = [random_valid_motif(rng, 200, 5, 20) for _ in range(50)]
        out = ms.top_k_nonoverlapping(motifs, k=1, n=200)
        assert out[0].d == min(m.d for m in motifs)

    def test_matches_quadratic_reference(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = int(rng.integers(60, 200))
            motifs = [
                random_valid_motif(rng, n, 3, 15)
                for _ in range(int(rng.integers(1, 40)))
            ]
            k = int(rng.integers(1, 6))
            got = list(ms.top_k_nonoverlapping(motifs, k, n))
            want = ref_top_k_nonoverlapping(motifs, k)
            assert got == want

    def test_matches_quadratic_reference_with_fraction(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            n = int(rng.integers(60, 150))
            motifs = [
                random_valid_motif(rng, n, 4, 15)
                for _ in range(int(rng.integers(1, 30)))
            ]
            k = int(rng.integers(1, 5))
            f = float(rng.choice([0.25, 0.5, 0.9]))
            got = list(ms.top_k_nonoverlapping(motifs, k, n, f))
            want = ref_top_k_nonoverlapping(motifs, k, f)
            assert got == want

    def test_shortfall_flagged(self):
        out = ms.top_k_nonoverlapping([motif(1, 10, 20, 10, 0.1)], k=5, n=40)
        assert out.shortfall and len(out) == 1


class TestMotifQueue:
    def test_sorted_iteration(self):
        q = ms.MotifQueue(k=2, n=100)
        q.push(0.5, (1, 10, 20, 10))
        q.push(0.3, (40, 10, 60, 10))
        assert [m.d for m in q] == [0.3, 0.5]

    def test_duplicate_coordinates_ignored(self):
        q = ms.MotifQueue(k=1, n=100)
        assert q.push(0.5, (1, 10, 20, 10))
        assert not q.push(0.5, (1, 10, 20, 10))
        assert len(q) == 1

    def test_worst_evicted_at_capacity(self):
        q = ms.MotifQueue(k=1, n=1000, capacity=4)
        ds = [0.9, 0.7, 0.5, 0.6]
        for i, d in enumerate(ds):
            q.push(d, (1 + 30 * i, 10, 500 + 30 * i, 10))
        q.push(0.4, (200, 10, 800, 10))
        assert len(q) == 4
        assert max(m.d for m in q) == 0.7  # 0.9 dropped

    def test_eviction_never_starves_topk(self):
        # the worst entry is the only second non-overlapping candidate, so a
        # capacity overflow must evict something else
        q = ms.MotifQueue(k=2, n=1000, capacity=3)
        q.push(0.1, (1, 10, 50, 10))
        q.push(0.2, (5, 10, 55, 10))   # overlaps the best
        q.push(0.9, (200, 10, 300, 10))  # worst, but needed for k=2
        q.push(0.3, (8, 10, 45, 10))   # overflow, also overlaps the best
        assert len(q) == 3
        extracted = ms.top_k_nonoverlapping(q, 2, 1000)
        assert [m.d for m in extracted] == [0.1, 0.9]

    def test_extraction_unchanged_by_bound(self):
        # a bounded queue and an unbounded one agree on the final top-k
        rng = np.random.default_rng(5)
        for trial in range(30):
            n = 300
            k = int(rng.integers(1, 4))
            bounded = ms.MotifQueue(k=k, n=n, capacity=max(100, 20 * k))
            everything = []
            for _ in range(400):
                m = random_valid_motif(rng, n, 3, 12)
                bounded.push(m.d, m.coords)
                everything.append(m)
            got = list(ms.top_k_nonoverlapping(bounded, k, n))
            want = ref_top_k_nonoverlapping(everything, k)
            assert got == want

    def test_default_capacity(self):
        assert ms.MotifQueue(k=3, n=100).capacity == 100
        assert ms.MotifQueue(k=50, n=100).capacity == 1000


class TestPositionCache:
    def test_second_lookup_skips_compute(self):
        cache = ms.PositionCache()
        calls = []
        compute = lambda: calls.append(1) or 0.25  # noqa: E731
        assert cache.lookup_or_insert((1, 10, 30, 10), compute) == 0.25
        assert cache.lookup_or_insert((1, 10, 30, 10), compute) == 0.25
        assert len(calls) == 1
        assert cache.hits == 1 and cache.misses == 1

    def test_distinct_keys_both_computed(self):
        cache = ms.PositionCache()
        calls = []
        cache.lookup_or_insert((1, 10, 30, 10), lambda: calls.append(1) or 0.1)
        cache.lookup_or_insert((2, 10, 30, 10), lambda: calls.append(1) or 0.2)
        assert len(calls) == 2

    def test_capacity_two(self):
        cache = ms.PositionCache(capacity=2)
        cache.lookup_or_insert("A", lambda: 1.0)
        cache.lookup_or_insert("B", lambda: 2.0)
        cache.lookup_or_insert("C", lambda: 3.0)
        assert len(cache) == 2

    def test_clear_keeps_counters(self):
        cache = ms.PositionCache()
        cache.lookup_or_insert("A", lambda: 1.0)
        cache.lookup_or_insert("A", lambda: 1.0)
        cache.clear()
        assert len(cache) == 0
        assert cache.hits == 1 and cache.misses == 1
