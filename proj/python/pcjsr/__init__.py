from ._pcjsr import (
    JsrError,
    benchmark,
    benchmark_ids,
    compare,
    is_path_complete,
    lower_bound,
    norm_upper_bound,
    upper_bound,
)

__all__ = [
    "JsrError",
    "benchmark",
    "benchmark_ids",
    "compare",
    "is_path_complete",
    "lower_bound",
    "norm_upper_bound",
    "upper_bound",
]
