from .align import AlignedGroup, AlignedSample, align_streams, aligned_matrix, nearest_index
from .folds import FoldSplit, rolling_folds
from .io import load_stream_jsonl, load_windows_csv, save_stream_jsonl, save_windows_csv
from .streams import SensorStream, SignalModel, StreamRates, simulate_streams
from .transformers import Standardizer, standardize
from .windows import WindowDataset, build_windows

__all__ = [
    "AlignedGroup",
    "AlignedSample",
    "FoldSplit",
    "SensorStream",
    "SignalModel",
    "Standardizer",
    "StreamRates",
    "WindowDataset",
    "align_streams",
    "aligned_matrix",
    "build_windows",
    "load_stream_jsonl",
    "load_windows_csv",
    "nearest_index",
    "rolling_folds",
    "save_stream_jsonl",
    "save_windows_csv",
    "simulate_streams",
    "standardize",
]
