"""Multi-robot intruder search in orthogonal polygons."""

from ._core import (
    MrsearchError,
    allocate_by_area,
    astar,
    count_spikes,
    gilbert_curve,
    hungarian,
    inflate_cut,
    make_comb,
    preset_names,
    rasterize,
    rectangulate,
    repaired_curve,
    run_trial,
    sweep,
    sweep_csv,
    validate_polygon,
    verify_partition_schedule,
)

__all__ = [
    "MrsearchError",
    "allocate_by_area",
    "astar",
    "count_spikes",
    "gilbert_curve",
    "hungarian",
    "inflate_cut",
    "make_comb",
    "preset_names",
    "rasterize",
    "rectangulate",
    "repaired_curve",
    "run_trial",
    "sweep",
    "sweep_csv",
    "validate_polygon",
    "verify_partition_schedule",
]
