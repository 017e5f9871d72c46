"""Stream and window persistence: JSONL samples, plain CSV windows."""

from __future__ import annotations

import csv
import json

import numpy as np

from .streams import SensorStream
from .windows import WindowDataset


def save_stream_jsonl(stream: SensorStream, path, header: dict | None = None):
    """One sample per line: ``{"timestamp": t, "channel": c, "vector": [...]}``."""
    with open(path, "w") as fh:
        if header is not None:
            fh.write(json.dumps({"header": header}, sort_keys=True) + "\n")
        for t, vec in zip(stream.times, stream.values):
            fh.write(
                json.dumps(
                    {
                        "timestamp": float(t),
                        "channel": stream.channel,
                        "vector": [float(v) for v in vec],
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def load_stream_jsonl(path):
    """Returns ``(stream, header)``; the rate is inferred from timestamps."""
    times, values, channel, header = [], [], None, None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            if "header" in doc:
                header = doc["header"]
                continue
            times.append(doc["timestamp"])
            values.append(doc["vector"])
            channel = doc["channel"]
    times = np.asarray(times)
    rate = 1.0 / float(np.median(np.diff(times))) if len(times) > 1 else 0.0
    return SensorStream(channel, times, np.asarray(values), rate), header


def save_windows_csv(dataset: WindowDataset, path, comment: str | None = None):
    """Flattened windows, one per row: ``target, f<t>_<j> ...``."""
    n, W, F = dataset.windows.shape
    with open(path, "w", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        header = ["target"] + [f"f{t}_{j}" for t in range(W) for j in range(F)]
        writer.writerow(header)
        for i in range(n):
            row = [repr(float(dataset.targets[i]))]
            row += [repr(float(v)) for v in dataset.windows[i].reshape(-1)]
            writer.writerow(row)


def load_windows_csv(path, window_size: int) -> WindowDataset:
    rows, targets = [], []
    with open(path) as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        next(reader)  # header
        for row in reader:
            targets.append(float(row[0]))
            rows.append([float(v) for v in row[1:]])
    data = np.asarray(rows)
    n = len(rows)
    F = data.shape[1] // window_size
    return WindowDataset(
        windows=data.reshape(n, window_size, F),
        targets=np.asarray(targets),
        window_size=window_size,
    )
