"""Anytime time series motif discovery by multimodal particle swarm search.

A motif is a pair of segments ``(a, w_a, b, w_b)`` of a series with
strikingly low mutual dissimilarity. The search treats the 4-D coordinate
space as a continuous multimodal fitness landscape: a niching particle swarm
with stagnation restarts hunts its valleys, every personal-best improvement
feeds a bounded candidate queue, and the non-overlapping top-k can be read
out at any moment. An exhaustive oracle and a random-sampling reference
provide ground truth and context at desk scale.
"""

from .errors import (
    BudgetExceededError,
    InfeasibleTaskError,
    IngestError,
    MotifSwarmError,
)
from .harness import (
    RunSpec,
    oracle_command,
    run_command,
    sample_command,
    stop_when_within_reference,
)
from .io import read_motifs_csv, write_landscape_csv, write_motifs_csv, write_sample_csv
from .measures import (
    NormalizedDTW,
    ZNormEuclidean,
    get_measure,
    norm_dtw,
    slice_landscape,
    znorm_euclidean,
)
from .oracle import (
    OracleResult,
    SampleReference,
    brute_force_topk,
    count_motif_space,
    random_sample_reference,
)
from .series import (
    TimeSeries,
    generate_planted_pair,
    generate_random_walk,
    load_csv,
    upsample,
    z_normalize,
)
from .store import (
    Motif,
    MotifQueue,
    MotifSet,
    PositionCache,
    overlaps,
    top_k_nonoverlapping,
)
from .swarm import (
    RunResult,
    SwarmConfig,
    TraceSnapshot,
    UpdateConstants,
    adaptive_defaults,
    best_neighbor,
    draw_positions,
    get_constants,
    initialize_topology,
    run,
    valid_position,
    velocity_range,
    velocity_update,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "InfeasibleTaskError",
    "IngestError",
    "MotifSwarmError",
    "RunSpec",
    "oracle_command",
    "run_command",
    "sample_command",
    "stop_when_within_reference",
    "read_motifs_csv",
    "write_landscape_csv",
    "write_motifs_csv",
    "write_sample_csv",
    "NormalizedDTW",
    "ZNormEuclidean",
    "get_measure",
    "norm_dtw",
    "slice_landscape",
    "znorm_euclidean",
    "OracleResult",
    "SampleReference",
    "brute_force_topk",
    "count_motif_space",
    "random_sample_reference",
    "TimeSeries",
    "generate_planted_pair",
    "generate_random_walk",
    "load_csv",
    "upsample",
    "z_normalize",
    "Motif",
    "MotifQueue",
    "MotifSet",
    "PositionCache",
    "overlaps",
    "top_k_nonoverlapping",
    "RunResult",
    "SwarmConfig",
    "TraceSnapshot",
    "UpdateConstants",
    "adaptive_defaults",
    "best_neighbor",
    "draw_positions",
    "get_constants",
    "initialize_topology",
    "run",
    "valid_position",
    "velocity_range",
    "velocity_update",
    "__version__",
]
