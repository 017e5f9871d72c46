from .experiment import (
    DESK_RATES,
    PAPER_BASELINE_REFERENCE,
    PAPER_WINDOW_REFERENCE,
    SweepConfig,
    build_run_matrices,
    chronological_split,
    compare_baselines,
    run_sweep,
    windows_for_size,
)

__all__ = [
    "DESK_RATES",
    "PAPER_BASELINE_REFERENCE",
    "PAPER_WINDOW_REFERENCE",
    "SweepConfig",
    "build_run_matrices",
    "chronological_split",
    "compare_baselines",
    "run_sweep",
    "windows_for_size",
]
