"""Run orchestration: task specs, trace emission, stopping, serialization.

A :class:`RunSpec` bundles everything one search, exhaustive baseline, or
sampling job needs. ``run_command`` drives the swarm, streams trace snapshots
to a CSV file, optionally stops once the current motifs sit inside a
reference set's band, and writes the final result file. ``oracle_command``
and ``sample_command`` wrap the exhaustive search and the random-sampling
reference with the same file formats, so oracle output can be fed back as the
reference of a later run.
"""

import math
from dataclasses import dataclass

from . import io as mio
from .measures import get_measure
from .oracle import brute_force_topk, random_sample_reference
from .series import generate_random_walk, load_csv
from .swarm import SwarmConfig, run

__all__ = [
    "RunSpec",
    "stop_when_within_reference",
    "run_command",
    "oracle_command",
    "sample_command",
]


@dataclass
class RunSpec:
    """Everything needed to execute one job.

    Exactly one input source must be set: ``input_path`` (CSV file) or
    ``random_walk_n`` (synthetic length). For searches, at least one of
    ``iterations`` / ``time_budget`` must be set.
    """

    # input
    input_path: str | None = None
    random_walk_n: int | None = None
    column: int | str = 0
    missing_policy: str = "strict"
    # task
    measure: str = "zeuclid"
    dtw_band: int | None = None
    w_min: int = 10
    w_max: int = 10
    k: int = 1
    iterations: int | None = None
    time_budget: float | None = None
    # swarm overrides
    seed: int = 0
    particles: int | None = None
    topology: str = "lbest-ring"
    phi: float = 4.05
    tau: int | None = None
    alpha: float = 0.5
    rho: float = 0.002
    clamp_velocity: bool = True
    stochastic_inertia: bool = False
    equal_lengths: bool = False
    max_stretch: int | None = None
    # extraction / tracing / stopping
    overlap_fraction: float = 0.0
    trace_interval: int = 100
    trace_path: str | None = None
    out_path: str | None = None
    reference_path: str | None = None
    stop_fraction: float = 0.95
    stop_ranked: bool = False
    # oracle / sampling extras
    sample_count: int | None = None
    budget: int = 10**8

    def validate(self, need_budget=True):
        if (self.input_path is None) == (self.random_walk_n is None):
            raise ValueError("set exactly one of input_path or random_walk_n")
        if self.random_walk_n is not None and self.random_walk_n < 2:
            raise ValueError("random walk length must be >= 2")
        if self.w_min > self.w_max:
            raise ValueError("w_min must not exceed w_max")
        if self.w_min < 1:
            raise ValueError("w_min must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if need_budget and self.iterations is None and self.time_budget is None:
            raise ValueError("set an iteration and/or time budget")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")
        if not 0.0 <= self.overlap_fraction <= 1.0:
            raise ValueError("overlap fraction must lie in [0, 1]")
        if not 0.0 <= self.stop_fraction <= 1.0:
            raise ValueError("stop fraction must lie in [0, 1]")
        if self.trace_interval < 1:
            raise ValueError("trace interval must be >= 1")

    def load_series(self):
        if self.random_walk_n is not None:
            return generate_random_walk(self.random_walk_n, seed=self.seed)
        return load_csv(self.input_path, column=self.column, policy=self.missing_policy)

    def build_measure(self):
        return get_measure(self.measure, band=self.dtw_band)

    def build_config(self):
        return SwarmConfig(
            kappa=self.particles,
            theta=self.topology,
            phi=self.phi,
            tau=self.tau,
            alpha=self.alpha,
            rho=self.rho,
            clamp_velocity=self.clamp_velocity,
            stochastic_inertia=self.stochastic_inertia,
            equal_lengths=self.equal_lengths,
            max_stretch=self.max_stretch,
            seed=self.seed,
        )


def stop_when_within_reference(current, reference, fraction=0.95, k=None, ranked=False):
    """Whether enough of the current top-k sit inside the reference set.

    Default (band) reading: at least ``ceil(fraction * k)`` of the current
    dissimilarities are <= the worst reference dissimilarity. Ranked reading:
    the comparison is made rank against rank after sorting both sides.
    ``k`` defaults to the number of current values.
    """
    reference = list(reference)
    if not reference:
        raise ValueError("empty reference set")
    current = sorted(current)
    if k is None:
        k = len(current)
    needed = math.ceil(fraction * k)
    if not current:
        return False
    if ranked:
        ref = sorted(reference)[:k]
        inside = sum(1 for c, r in zip(current, ref) if c <= r)
    else:
        band_top = max(reference)
        inside = sum(1 for c in current if c <= band_top)
    return inside >= needed


def run_command(spec, clock=None):
    """Execute a search per ``spec``; write trace/result files as configured.

    Returns the engine's ``RunResult``. File contents are deterministic given
    the spec seed, except for elapsed wall time; inject ``clock`` to pin that
    too.
    """
    spec.validate()
    series = spec.load_series()
    measure = spec.build_measure()
    config = spec.build_config()
    reference_d = None
    if spec.reference_path is not None:
        reference_d = mio.read_motifs_csv(spec.reference_path).dissimilarities
        if not reference_d:
            raise ValueError("reference file %s holds no motifs" % spec.reference_path)
    t_max = spec.iterations if spec.iterations is not None else 2**62

    writer = None
    if spec.trace_path is not None:
        writer = mio.TraceWriter(spec.trace_path, spec.k)

    def sink(snap):
        if writer is not None:
            writer.write(snap)
        if reference_d is not None and len(snap.motifs):
            return stop_when_within_reference(
                snap.motifs.dissimilarities,
                reference_d,
                fraction=spec.stop_fraction,
                k=spec.k,
                ranked=spec.stop_ranked,
            )
        return False

    try:
        result = run(
            series,
            measure,
            w_min=spec.w_min,
            w_max=spec.w_max,
            k=spec.k,
            t_max=t_max,
            config=config,
            sink=sink,
            trace_interval=spec.trace_interval,
            overlap_fraction=spec.overlap_fraction,
            time_budget=spec.time_budget,
            clock=clock,
        )
    finally:
        if writer is not None:
            writer.close()
    if spec.out_path is not None:
        mio.write_motifs_csv(spec.out_path, result.motifs)
    return result


def oracle_command(spec, clock=None):
    """Run the exhaustive search per ``spec``; write result and sidecar files."""
    spec.validate(need_budget=False)
    series = spec.load_series()
    measure = spec.build_measure()
    result = brute_force_topk(
        series,
        measure,
        spec.w_min,
        spec.w_max,
        spec.k,
        equal_lengths=spec.equal_lengths,
        max_stretch=spec.max_stretch,
        overlap_fraction=spec.overlap_fraction,
        budget=spec.budget,
        clock=clock,
    )
    if spec.out_path is not None:
        mio.write_motifs_csv(spec.out_path, result.motifs)
        mio.write_oracle_sidecar(spec.out_path + ".meta.json", result)
    return result


def sample_command(spec):
    """Draw the random-sampling reference per ``spec``; write the report."""
    spec.validate(need_budget=False)
    series = spec.load_series()
    measure = spec.build_measure()
    ref = random_sample_reference(
        series,
        measure,
        spec.w_min,
        spec.w_max,
        count=spec.sample_count,
        seed=spec.seed,
        equal_lengths=spec.equal_lengths,
        max_stretch=spec.max_stretch,
    )
    if spec.out_path is not None:
        mio.write_sample_csv(spec.out_path, ref)
    return ref
