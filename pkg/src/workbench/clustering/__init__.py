from .algorithms import (Partition, farthest_first, gmm_em, kmeans,
                         make_partition, proximity)
from .consensus import (ALGORITHMS, BACKEND_LABELS, ClusterParams,
                        ClusterReport, ReportCluster, aggregate, derive_seed,
                        dumps_report, granularity_to_n, loads_report,
                        run_repeated, suggest)

__all__ = [
    "ALGORITHMS", "BACKEND_LABELS", "ClusterParams", "ClusterReport", "Partition",
    "ReportCluster", "aggregate", "derive_seed", "dumps_report",
    "farthest_first", "gmm_em", "granularity_to_n", "kmeans", "loads_report",
    "make_partition", "proximity", "run_repeated", "suggest",
]
