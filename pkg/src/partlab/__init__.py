"""Exact and asymptotic counting of integer partitions with restricted
largest part and number of parts, successive-rank laws, and graphical
partitions."""

from .errors import BudgetError, NumericError
from .exact import (
    CacheFormatError,
    CountTable,
    box_table,
    count_box,
    count_exact_both,
    count_largest_exact,
    load_cache,
    log_count,
    partitions_table,
    partitions_total,
    save_cache,
)
from .partitions import (
    Partition,
    RankVector,
    conjugate,
    dominates,
    enumerate_partitions,
    format_partition,
    iter_parts,
    nash_williams_graphical,
    parse_partition,
    successive_ranks,
)
from .graphical import (
    EnumerationCapError,
    FractionEstimate,
    PartitionSampler,
    decay_fit,
    erdos_gallai_graphical,
    graphical_fraction_exact,
    graphical_fraction_sampled,
    sample_partition_uniform,
)
from .distributions import (
    QuadratureSpec,
    esseen_bound,
    gumbel_cdf,
    ks_statistic,
    normal_tail,
    moment_table,
    rank_cdf,
    rank_moment,
    rank_pdf,
    yk_cdf,
    yk_pdf,
)
from .asymptotics import (
    Estimate,
    b_estimate,
    c_estimate,
    classify,
    hardy_ramanujan_pn,
    saddlepoint_estimate,
    scaled_coordinates,
    theorem1_estimate,
    theorem3_estimate,
)

__version__ = "0.1.0"
