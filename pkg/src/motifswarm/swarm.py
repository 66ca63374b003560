"""Niching particle-swarm search over the motif coordinate space.

Particles fly through the continuous 4-D space ``(a, w_a, b, w_b)``. A
position is floored component-wise before validity checks, caching, and
fitness evaluation. Fitness is the configured dissimilarity measure; every
personal-best improvement is pushed into a bounded candidate queue from which
the non-overlapping top-k can be extracted at any time. Velocities follow the
constriction update with a local-neighborhood social term, optionally with
velocity clamping (default on), per-component "craziness" randomization, and
a stochastic inertia variant (default off). The whole swarm is reinitialized
whenever the global best score stagnates for ``tau`` iterations; the candidate
queue survives such restarts, the position cache does not.

A single seeded generator drives every draw in a fixed order, so a run is
fully deterministic given its configuration.
"""

import math
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InfeasibleTaskError
from .store import MotifQueue, PositionCache, top_k_nonoverlapping

__all__ = [
    "SwarmConfig",
    "UpdateConstants",
    "get_constants",
    "adaptive_defaults",
    "initialize_topology",
    "valid_position",
    "draw_positions",
    "best_neighbor",
    "velocity_update",
    "velocity_range",
    "TraceSnapshot",
    "RunResult",
    "run",
]

TOPOLOGIES = ("gbest", "lbest-ring", "von-neumann", "random3", "wheel", "btree")

#: smallest swarm each topology supports
_TOPOLOGY_MIN = {
    "gbest": 2,
    "lbest-ring": 2,
    "von-neumann": 4,
    "random3": 4,
    "wheel": 2,
    "btree": 2,
}


class UpdateConstants(NamedTuple):
    c0: float
    c1: float
    c2: float


def get_constants(phi, alpha=0.5):
    """Constriction constants for the velocity update.

    ``c0 = 2 / |2 - phi - sqrt(phi^2 - 4 phi)|`` requires ``phi > 4``. The
    attraction weights split the total ``c0 * phi`` between the cognitive and
    social terms: ``c1 = c0 phi (1 - alpha)``, ``c2 = c0 phi alpha``, which at
    the default ``alpha = 0.5`` reduces to ``c1 = c2 = c0 phi / 2``.
    """
    if phi <= 4.0:
        raise ValueError("constriction requires phi > 4, got %r" % (phi,))
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1], got %r" % (alpha,))
    c0 = 2.0 / abs(2.0 - phi - math.sqrt(phi * phi - 4.0 * phi))
    return UpdateConstants(c0, c0 * phi * (1.0 - alpha), c0 * phi * alpha)


def adaptive_defaults(n, w_delta, k):
    """Particle count and stagnation threshold adapted to the task size.

    ``kappa`` grows with the series length, the width of the length window,
    and the number of requested motifs, clamped to [50, 400]; ``tau`` is
    pinned at ``20 * kappa``.
    """
    if n < 1 or w_delta < 1 or k < 1:
        raise ValueError("n, w_delta, and k must be positive")
    kappa = int(round(50 + n / 10000 + w_delta / 10 + 2 * k))
    kappa = min(400, max(50, kappa))
    return kappa, 20 * kappa


@dataclass
class SwarmConfig:
    """Search parameters. ``kappa``/``tau`` of None resolve adaptively."""

    kappa: int | None = None
    theta: str = "lbest-ring"
    phi: float = 4.05
    tau: int | None = None
    alpha: float = 0.5
    rho: float = 0.002
    clamp_velocity: bool = True
    stochastic_inertia: bool = False
    equal_lengths: bool = False
    max_stretch: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.theta not in TOPOLOGIES:
            raise ValueError("unknown topology %r (expected one of %s)" % (self.theta, ", ".join(TOPOLOGIES)))
        if self.phi <= 4.0:
            raise ValueError("phi must be > 4")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if self.kappa is not None and self.kappa < 2:
            raise ValueError("kappa must be >= 2")
        if self.tau is not None and self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.max_stretch is not None and self.max_stretch < 0:
            raise ValueError("max_stretch must be >= 0")


def initialize_topology(theta, kappa, rng=None):
    """Fixed neighbor lists (0-based particle indices) for a topology.

    - ``gbest``: every other particle.
    - ``lbest-ring``: the two ring neighbors ``i +- 1 (mod kappa)``.
    - ``von-neumann``: four lattice neighbors on the most-square wrapped grid
      whose side divides ``kappa``.
    - ``random3``: three distinct neighbors drawn once from ``rng``.
    - ``wheel``: particle 0 is a hub adjacent to all, spokes see only the hub.
    - ``btree``: parent and children under heap indexing.
    """
    if theta not in TOPOLOGIES:
        raise ValueError("unknown topology %r" % (theta,))
    if kappa < _TOPOLOGY_MIN[theta]:
        raise ValueError("topology %r needs at least %d particles" % (theta, _TOPOLOGY_MIN[theta]))
    if theta == "gbest":
        everyone = np.arange(kappa)
        return [np.delete(everyone, i) for i in range(kappa)]
    if theta == "lbest-ring":
        out = []
        for i in range(kappa):
            nbrs = {(i - 1) % kappa, (i + 1) % kappa} - {i}
            out.append(np.array(sorted(nbrs), dtype=np.int64))
        return out
    if theta == "von-neumann":
        rows = int(math.isqrt(kappa))
        while kappa % rows:
            rows -= 1
        cols = kappa // rows
        out = []
        for i in range(kappa):
            r, c = divmod(i, cols)
            nbrs = {
                ((r - 1) % rows) * cols + c,
                ((r + 1) % rows) * cols + c,
                r * cols + (c - 1) % cols,
                r * cols + (c + 1) % cols,
            } - {i}
            out.append(np.array(sorted(nbrs), dtype=np.int64))
        return out
    if theta == "random3":
        if rng is None:
            raise ValueError("random3 topology needs a generator")
        out = []
        for i in range(kappa):
            pool = np.delete(np.arange(kappa), i)
            out.append(np.sort(rng.choice(pool, size=3, replace=False)))
        return out
    if theta == "wheel":
        hub = [np.arange(1, kappa)]
        return hub + [np.array([0], dtype=np.int64) for _ in range(kappa - 1)]
    # btree: heap indexing, children 2i+1 / 2i+2, parent (i-1)//2
    out = []
    for i in range(kappa):
        nbrs = []
        if i > 0:
            nbrs.append((i - 1) // 2)
        if 2 * i + 1 < kappa:
            nbrs.append(2 * i + 1)
        if 2 * i + 2 < kappa:
            nbrs.append(2 * i + 2)
        out.append(np.array(nbrs, dtype=np.int64))
    return out


def valid_position(x, n, w_min, w_max, equal_lengths=False, max_stretch=None):
    """Whether the component-wise floor of ``x`` is a valid motif position.

    ``x`` is the continuous 4-vector ``(a, w_a, b, w_b)``. Total function:
    any floating values are accepted and simply classified.
    """
    a = math.floor(x[0])
    w_a = math.floor(x[1])
    b = math.floor(x[2])
    w_b = math.floor(x[3])
    if a < 1 or w_a < w_min or w_a > w_max or w_b < w_min or w_b > w_max:
        return False
    if a + w_a >= b or b + w_b - 1 > n:
        return False
    if equal_lengths and w_a != w_b:
        return False
    if max_stretch is not None and abs(w_a - w_b) > max_stretch:
        return False
    return True


def _valid_mask(F, n, w_min, w_max, equal_lengths, max_stretch):
    a, w_a, b, w_b = F[:, 0], F[:, 1], F[:, 2], F[:, 3]
    ok = (
        (a >= 1)
        & (w_a >= w_min)
        & (w_a <= w_max)
        & (w_b >= w_min)
        & (w_b <= w_max)
        & (a + w_a < b)
        & (b + w_b - 1 <= n)
    )
    if equal_lengths:
        ok &= w_a == w_b
    elif max_stretch is not None:
        ok &= np.abs(w_a - w_b) <= max_stretch
    return ok


def draw_positions(rng, count, n, w_min, w_max, equal_lengths=False, max_stretch=None):
    """Draw ``count`` continuous initial positions, shape (count, 4).

    Lengths are uniform over ``[w_min, w_max + 1)``. The first start uses the
    ``1 - sqrt(u)`` transform so that, paired with a conditionally uniform
    second start over the remaining room, positions cover the triangular
    feasible region uniformly. Flooring can still land individual draws on
    invalid positions; callers gate evaluation with :func:`valid_position`.
    """
    span = float(w_max + 1 - w_min)
    w_a = w_min + span * rng.random(count)
    if equal_lengths:
        w_b = w_a.copy()
    elif max_stretch is not None:
        lo = np.maximum(float(w_min), w_a - max_stretch)
        hi = np.minimum(float(w_max + 1), w_a + max_stretch + 1.0)
        w_b = lo + (hi - lo) * rng.random(count)
    else:
        w_b = w_min + span * rng.random(count)
    a = 1.0 + (n - w_a) * (1.0 - np.sqrt(rng.random(count)))
    b = 1.0 + (a + w_a) + (n - w_b - (a + w_a)) * rng.random(count)
    return np.column_stack((a, w_a, b, w_b))


def velocity_update(v, x, p_i, p_g, consts, u1, u2, inertia_u=None):
    """One constriction velocity update; broadcasts over particle rows.

    With ``inertia_u`` (the stochastic-inertia variant) the ``c0`` momentum
    term becomes ``(1 - 2 (1 - c0)) * inertia_u * v``.
    """
    pull = consts.c1 * u1 * (p_i - x) + consts.c2 * u2 * (p_g - x)
    if inertia_u is None:
        return consts.c0 * v + pull
    return (1.0 - 2.0 * (1.0 - consts.c0)) * inertia_u * v + pull


def velocity_range(n, w_delta):
    """Per-component clamp bounds: half the span of each coordinate."""
    return np.array([n, w_delta, n, w_delta], dtype=np.float64) / 2.0


def best_neighbor(i, scores, neighbors):
    """Index of the best-scoring particle among ``i`` and its neighbors.

    Scans ``neighbors[i]`` in order and keeps any neighbor whose score is
    less than *or equal to* the incumbent, so ties resolve to the
    last-scanned tied neighbor.
    """
    g = i
    for j in neighbors[i]:
        if scores[j] <= scores[g]:
            g = j
    return int(g)


def _neighbor_matrix(neighbors):
    """Pack ragged neighbor lists into (kappa, 1 + max_deg) scan rows.

    Column 0 is the particle itself; shorter rows repeat their last neighbor,
    which leaves last-tie-wins scan semantics unchanged.
    """
    kappa = len(neighbors)
    width = 1 + max(len(nb) for nb in neighbors)
    rows = np.empty((kappa, width), dtype=np.int64)
    for i, nb in enumerate(neighbors):
        rows[i, 0] = i
        rows[i, 1 : 1 + len(nb)] = nb
        rows[i, 1 + len(nb) :] = nb[-1]
    return rows


def _best_neighbors_vec(scores, rows):
    """Vectorized counterpart of :func:`best_neighbor` for all particles."""
    vals = scores[rows]
    # last occurrence of the row minimum == sequential <=-scan result
    j = vals.shape[1] - 1 - np.argmin(vals[:, ::-1], axis=1)
    return rows[np.arange(rows.shape[0]), j]


@dataclass(frozen=True)
class TraceSnapshot:
    """State of the search at one trace point."""

    iteration: int
    elapsed_ms: float
    evaluations: int
    motifs: object  # MotifSet
    d_p5: float
    d_p50: float
    d_p95: float


@dataclass(frozen=True)
class RunResult:
    """Outcome of one search run plus its instrumentation counters."""

    motifs: object  # MotifSet
    iterations: int
    evaluations: int
    cache_hits: int
    restarts: int
    crazy_redraws: int
    kappa: int
    tau: int


def _make_snapshot(t, clock, t0, cache, queue, k, n, fraction):
    motifs = top_k_nonoverlapping(queue, k, n, fraction)
    ds = motifs.dissimilarities
    if ds:
        p5, p50, p95 = (float(v) for v in np.percentile(ds, (5, 50, 95)))
    else:
        p5 = p50 = p95 = float("nan")
    return TraceSnapshot(
        iteration=t,
        elapsed_ms=(clock() - t0) * 1000.0,
        evaluations=cache.misses,
        motifs=motifs,
        d_p5=p5,
        d_p50=p50,
        d_p95=p95,
    )


def run(series, measure, w_min, w_max, k, t_max, config=None, sink=None,
        trace_interval=100, overlap_fraction=0.0, time_budget=None, clock=None):
    """Search ``series`` for its top-k motifs within ``t_max`` iterations.

    Parameters
    ----------
    series : TimeSeries
    measure : object
        A dissimilarity measure with an ``evaluate(series, a, w_a, b, w_b)``
        method (see :mod:`motifswarm.measures`).
    w_min, w_max : int
        Inclusive segment length window.
    k : int
        Number of non-overlapping motifs requested.
    t_max : int
        Iteration budget; 0 returns an empty set.
    config : SwarmConfig, optional
    sink : callable, optional
        Called with a :class:`TraceSnapshot` at every ``trace_interval``
        iterations and at the final iteration; a truthy return stops the run
        early.
    overlap_fraction : float
        Allowed pairwise segment overlap during extraction (0 = strict).
    time_budget : float, optional
        Soft wall-time cutoff in seconds, checked at snapshot points.
    clock : callable, optional
        Monotonic time source, injectable for reproducible trace files.

    Returns
    -------
    RunResult
        ``result.motifs`` holds the extracted :class:`MotifSet`; when fewer
        than ``k`` motifs exist its ``shortfall`` flag is set.
    """
    cfg = config if config is not None else SwarmConfig()
    n = series.n
    if w_min > w_max or w_min < 1:
        raise ValueError("invalid length window [%r, %r]" % (w_min, w_max))
    if k < 1:
        raise ValueError("k must be >= 1")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    if n < 2 * w_min + 1:
        raise InfeasibleTaskError(
            "series of length %d admits no motif with w_min=%d" % (n, w_min)
        )
    w_delta = w_max - w_min + 1
    if cfg.kappa is None:
        kappa, tau_adaptive = adaptive_defaults(n, w_delta, k)
    else:
        kappa, tau_adaptive = cfg.kappa, 20 * cfg.kappa
    tau = cfg.tau if cfg.tau is not None else tau_adaptive
    if kappa < _TOPOLOGY_MIN[cfg.theta]:
        raise ValueError("topology %r needs at least %d particles" % (cfg.theta, _TOPOLOGY_MIN[cfg.theta]))

    consts = get_constants(cfg.phi, cfg.alpha)
    rng = np.random.default_rng(cfg.seed)
    if clock is None:
        clock = time.monotonic
    t0 = clock()

    def init_swarm():
        X = draw_positions(rng, kappa, n, w_min, w_max, cfg.equal_lengths, cfg.max_stretch)
        X2 = draw_positions(rng, kappa, n, w_min, w_max, cfg.equal_lengths, cfg.max_stretch)
        V = X2 - X
        S = np.full(kappa, np.inf)
        P = X.copy()
        return X, V, S, P

    X, V, S, P = init_swarm()
    rows = _neighbor_matrix(initialize_topology(cfg.theta, kappa, rng))
    queue = MotifQueue(k=k, n=n, max_overlap_fraction=overlap_fraction)
    cache = PositionCache()
    best_score = np.inf
    last_improvement = 0
    restarts = 0
    crazy_redraws = 0
    v_range = velocity_range(n, w_delta)
    evaluate = measure.evaluate
    iterations_run = 0

    for t in range(1, t_max + 1):
        iterations_run = t
        # fitness pass over valid floored positions
        F = np.floor(X)
        mask = _valid_mask(F, n, w_min, w_max, cfg.equal_lengths, cfg.max_stretch)
        idx = np.flatnonzero(mask)
        if idx.size:
            keys = F[idx].astype(np.int64).tolist()
            for pos, i in enumerate(idx):
                key = tuple(keys[pos])
                d = cache.get(key)
                if d is None:
                    d = evaluate(series, key[0], key[1], key[2], key[3])
                    cache.put(key, d)
                if d < S[i]:
                    S[i] = d
                    P[i] = X[i]
                    queue.push(d, key)
                    if d < best_score:
                        best_score = d
                        last_improvement = t

        # velocity and position update
        g = _best_neighbors_vec(S, rows)
        u1 = rng.random((kappa, 4))
        u2 = rng.random((kappa, 4))
        u0 = rng.random((kappa, 1)) if cfg.stochastic_inertia else None
        V = velocity_update(V, X, P, P[g], consts, u1, u2, u0)
        if cfg.clamp_velocity:
            np.clip(V, -v_range, v_range, out=V)
        if cfg.rho > 0.0:
            uc = rng.random((kappa, 4))
            redraw = uc < cfg.rho
            if redraw.any():
                hit = np.flatnonzero(redraw.any(axis=1))
                fresh = draw_positions(
                    rng, hit.size, n, w_min, w_max, cfg.equal_lengths, cfg.max_stretch
                ) - draw_positions(
                    rng, hit.size, n, w_min, w_max, cfg.equal_lengths, cfg.max_stretch
                )
                V[hit] = np.where(redraw[hit], fresh, V[hit])
                crazy_redraws += int(redraw.sum())
        X = X + V
        if cfg.equal_lengths:
            X[:, 3] = X[:, 1]
            V[:, 3] = V[:, 1]

        # stagnation restart: queue survives, cache and swarm do not
        if t - last_improvement >= tau:
            X, V, S, P = init_swarm()
            best_score = np.inf
            last_improvement = t
            cache.clear()
            restarts += 1

        if (trace_interval and t % trace_interval == 0) or t == t_max:
            if sink is not None:
                snap = _make_snapshot(t, clock, t0, cache, queue, k, n, overlap_fraction)
                if sink(snap):
                    break
            if time_budget is not None and (clock() - t0) > time_budget:
                break

    motifs = top_k_nonoverlapping(queue, k, n, overlap_fraction)
    return RunResult(
        motifs=motifs,
        iterations=iterations_run,
        evaluations=cache.misses,
        cache_hits=cache.hits,
        restarts=restarts,
        crazy_redraws=crazy_redraws,
        kappa=kappa,
        tau=tau,
    )
