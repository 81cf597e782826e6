"""Multi-view hierarchical ensemble clustering.

Builds consensus partitions from several data views of the same samples:
per-view agglomerative clustering under eight linkage methods, shared-
partition fusion into a co-association affinity matrix, evidence-
accumulation consensus, and a genetic search over linkage combinations.
"""

from .consensus import LabelingSet, coassociation, consensus
from .core import (
    AffinityMatrix,
    DistanceMatrix,
    EnsembleGraph,
    EnsembleNode,
    Labeling,
    Method,
    ViewMatrix,
    ViewNode,
    affinity_to_distance,
    distance_to_affinity,
    execute_graph,
)
from .errors import (
    ConfigError,
    DegenerateDataError,
    InputError,
    MvecError,
    ParseError,
)
from .fusion import FusionConfig, hc_fuse
from .hclust import Dendrogram, cluster, cut, euclidean_distances, linkage
from .metrics import (
    SurvivalRecord,
    ari,
    best_k,
    logrank_test,
    nmi,
    silhouette,
)
from .optimizer import GaParams, GaResult, evolve
from .pipeline import (
    OptimizedResult,
    PipelineResult,
    parea_hc1,
    parea_hc1_opt,
    parea_hc2,
    parea_hc2_opt,
)
from .preprocess import (
    RawViewMatrix,
    filter_missing,
    knn_impute,
    load_csv,
    top_variance_select,
    zscore_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "AffinityMatrix",
    "ConfigError",
    "DegenerateDataError",
    "Dendrogram",
    "DistanceMatrix",
    "EnsembleGraph",
    "EnsembleNode",
    "FusionConfig",
    "GaParams",
    "GaResult",
    "InputError",
    "Labeling",
    "LabelingSet",
    "Method",
    "MvecError",
    "OptimizedResult",
    "ParseError",
    "PipelineResult",
    "RawViewMatrix",
    "SurvivalRecord",
    "ViewMatrix",
    "ViewNode",
    "affinity_to_distance",
    "ari",
    "best_k",
    "cluster",
    "coassociation",
    "consensus",
    "cut",
    "distance_to_affinity",
    "euclidean_distances",
    "evolve",
    "execute_graph",
    "filter_missing",
    "hc_fuse",
    "knn_impute",
    "linkage",
    "load_csv",
    "logrank_test",
    "nmi",
    "parea_hc1",
    "parea_hc1_opt",
    "parea_hc2",
    "parea_hc2_opt",
    "silhouette",
    "top_variance_select",
    "zscore_normalize",
]
