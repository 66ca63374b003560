"""Command-line front end.

Three subcommands share one flag vocabulary:

- ``run``    anytime swarm search, with optional trace file and reference-
             gated early stopping
- ``oracle`` exhaustive exact baseline (desk-scale; guarded by a budget)
- ``sample`` random-sampling dissimilarity reference

Exit codes: 0 success, 1 I/O or internal failure, 2 usage error, 3 fewer
motifs found than requested, 4 infeasible task, 5 enumeration budget
exceeded.
"""

import argparse
import sys

from .errors import BudgetExceededError, InfeasibleTaskError, IngestError
from .harness import RunSpec, oracle_command, run_command, sample_command
from .io import format_d
from .swarm import TOPOLOGIES

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_SHORTFALL = 3
EXIT_INFEASIBLE = 4
EXIT_BUDGET = 5


def _common_flags(p):
    src = p.add_argument_group("input")
    src.add_argument("--input", metavar="PATH", help="CSV file, one sample per row")
    src.add_argument("--random-walk", metavar="N", type=int, dest="random_walk",
                     help="generate a seeded random walk of length N instead")
    src.add_argument("--column", metavar="IDX", default="0",
                     help="column index or header name (default 0)")
    src.add_argument("--missing-policy", choices=("strict", "drop", "interpolate"),
                     default="strict", help="missing-value handling (default strict)")
    task = p.add_argument_group("task")
    task.add_argument("--measure", choices=("zeuclid", "dtw"), default="zeuclid")
    task.add_argument("--dtw-band", metavar="B", type=int, default=None,
                      help="optional warping window half-width")
    task.add_argument("--wmin", metavar="W", type=int, required=True)
    task.add_argument("--wmax", metavar="W", type=int, required=True)
    task.add_argument("--k", metavar="K", type=int, default=1)
    task.add_argument("--equal-lengths", action="store_true",
                      help="force both segments to the same length")
    task.add_argument("--max-stretch", metavar="S", type=int, default=None,
                      help="bound on |w_a - w_b|")
    task.add_argument("--overlap-fraction", metavar="F", type=float, default=0.0,
                      help="allowed pairwise overlap during extraction (default 0)")
    task.add_argument("--seed", metavar="S", type=int, default=0)
    p.add_argument("--out", metavar="PATH", default=None, help="result CSV path")


def _run_flags(p):
    budget = p.add_argument_group("budget")
    budget.add_argument("--iterations", metavar="T", type=int, default=None)
    budget.add_argument("--time-budget", metavar="SECONDS", type=float, default=None)
    swarm = p.add_argument_group("swarm")
    swarm.add_argument("--particles", metavar="K", type=int, default=None)
    swarm.add_argument("--topology", metavar="NAME", choices=TOPOLOGIES,
                       default="lbest-ring")
    swarm.add_argument("--phi", metavar="F", type=float, default=4.05)
    swarm.add_argument("--tau", metavar="T", type=int, default=None)
    swarm.add_argument("--alpha", metavar="A", type=float, default=0.5)
    swarm.add_argument("--rho", metavar="R", type=float, default=0.002)
    swarm.add_argument("--no-clamp", action="store_true",
                       help="disable velocity clamping")
    swarm.add_argument("--stochastic-inertia", action="store_true")
    trace = p.add_argument_group("trace and stopping")
    trace.add_argument("--trace", metavar="PATH", default=None)
    trace.add_argument("--trace-interval", metavar="T", type=int, default=100)
    trace.add_argument("--reference", metavar="PATH", default=None,
                       help="motif CSV whose band gates early stopping")
    trace.add_argument("--stop-fraction", metavar="F", type=float, default=0.95)
    trace.add_argument("--stop-ranked", action="store_true",
                       help="compare rank against rank instead of the band maximum")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="motifswarm",
        description="Anytime time series motif discovery by particle swarm search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="swarm search")
    _common_flags(p_run)
    _run_flags(p_run)

    p_oracle = sub.add_parser("oracle", help="exhaustive exact baseline")
    _common_flags(p_oracle)
    p_oracle.add_argument("--budget", metavar="N", type=int, default=10**8,
                          help="evaluation budget guard (default 1e8)")

    p_sample = sub.add_parser("sample", help="random-sampling reference")
    _common_flags(p_sample)
    p_sample.add_argument("--count", metavar="N", type=int, default=None,
                          help="sample count (default: series length)")
    return parser


def _spec_from_args(args):
    column = args.column
    if isinstance(column, str) and column.lstrip("-").isdigit():
        column = int(column)
    spec = RunSpec(
        input_path=args.input,
        random_walk_n=args.random_walk,
        column=column,
        missing_policy=args.missing_policy,
        measure=args.measure,
        dtw_band=args.dtw_band,
        w_min=args.wmin,
        w_max=args.wmax,
        k=args.k,
        seed=args.seed,
        equal_lengths=args.equal_lengths,
        max_stretch=args.max_stretch,
        overlap_fraction=args.overlap_fraction,
        out_path=args.out,
    )
    if args.command == "run":
        spec.iterations = args.iterations
        spec.time_budget = args.time_budget
        spec.particles = args.particles
        spec.topology = args.topology
        spec.phi = args.phi
        spec.tau = args.tau
        spec.alpha = args.alpha
        spec.rho = args.rho
        spec.clamp_velocity = not args.no_clamp
        spec.stochastic_inertia = args.stochastic_inertia
        spec.trace_path = args.trace
        spec.trace_interval = args.trace_interval
        spec.reference_path = args.reference
        spec.stop_fraction = args.stop_fraction
        spec.stop_ranked = args.stop_ranked
    elif args.command == "oracle":
        spec.budget = args.budget
    elif args.command == "sample":
        spec.sample_count = args.count
    return spec


def _print_motifs(motifs, stream):
    stream.write("rank,a,w_a,b,w_b,d\n")
    for rank, m in enumerate(motifs, start=1):
        stream.write("%d,%d,%d,%d,%d,%s\n" % (rank, m.a, m.w_a, m.b, m.w_b, format_d(m.d)))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.command == "run":
            result = run_command(spec)
            if spec.out_path is None:
                _print_motifs(result.motifs, sys.stdout)
            sys.stderr.write(
                "motifswarm: %d/%d motifs, %d evaluations, %d restarts\n"
                % (len(result.motifs), spec.k, result.evaluations, result.restarts)
            )
            return EXIT_SHORTFALL if result.motifs.shortfall else EXIT_OK
        if args.command == "oracle":
            result = oracle_command(spec)
            if spec.out_path is None:
                _print_motifs(result.motifs, sys.stdout)
            sys.stderr.write(
                "motifswarm: exact top-%d in %d evaluations (%.1f s)\n"
                % (len(result.motifs), result.evaluations, result.elapsed_seconds)
            )
            return EXIT_SHORTFALL if result.motifs.shortfall else EXIT_OK
        ref = sample_command(spec)
        if spec.out_path is None:
            sys.stdout.write("count,min,p5,p50,p95,max\n")
            count, *qs = ref.as_row
            sys.stdout.write("%d,%s\n" % (count, ",".join(format_d(v) for v in qs)))
        return EXIT_OK
    except ValueError as exc:
        parser.exit(EXIT_USAGE, "motifswarm: usage error: %s\n" % exc)
    except InfeasibleTaskError as exc:
        parser.exit(EXIT_INFEASIBLE, "motifswarm: infeasible task: %s\n" % exc)
    except BudgetExceededError as exc:
        parser.exit(EXIT_BUDGET, "motifswarm: %s\n" % exc)
    except (IngestError, OSError) as exc:
        parser.exit(EXIT_FAILURE, "motifswarm: %s\n" % exc)


if __name__ == "__main__":
    sys.exit(main())
