"""Channel selection for multivariate time series classification.

Channels are ranked by the Euclidean distance between class prototypes and
cut at the elbow of the score curve, either on the summed distances over all
class pairs (ECS) or per class pair with a union across pairs (ECP).
"""

import json as _json

from ._chansel import (
    ChanselError,
    Dataset,
    SelectionResult,
    classify,
    compute_prototypes,
    distance_matrix,
    elbow_cut,
    evaluate,
    generate_synth,
    load_archive,
    run_benchmark_json,
    save_archive,
    select,
    selection_from_json,
)

__all__ = [
    "ChanselError",
    "Dataset",
    "SelectionResult",
    "classify",
    "compute_prototypes",
    "distance_matrix",
    "elbow_cut",
    "evaluate",
    "generate_synth",
    "load_archive",
    "run_benchmark",
    "run_benchmark_json",
    "save_archive",
    "select",
    "selection_from_json",
]

__version__ = "0.1.0"


def run_benchmark(train, test, **kwargs):
    """Run a selection benchmark and return the report as a dict."""
    return _json.loads(run_benchmark_json(train, test, **kwargs))
