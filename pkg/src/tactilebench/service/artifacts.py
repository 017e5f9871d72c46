"""Deterministic artifact persistence with embedded config hashes.

Metric files must be byte-identical across reruns with the same config
and seed: floats are serialized with ``repr``, JSON keys are sorted, and
no wall-clock values enter these files. Every artifact carries the
sha256 of its generating configuration; loading verifies it.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

from ..errors import ArtifactHashError


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()[:16]


def write_json_artifact(path, payload: dict, cfg_hash: str):
    doc = {"config_hash": cfg_hash, **payload}
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def read_json_artifact(path, expected_hash: str | None = None) -> dict:
    doc = json.loads(Path(path).read_text())
    if expected_hash is not None and doc.get("config_hash") != expected_hash:
        raise ArtifactHashError(
            f"{path}: embedded hash {doc.get('config_hash')} != {expected_hash}"
        )
    return doc


def write_csv_artifact(path, header, rows, cfg_hash: str):
    """Rows of floats/ints/strings; floats rendered with repr."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# config_hash={cfg_hash}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([
                repr(v) if isinstance(v, float) else v for v in row
            ])


def read_csv_artifact(path, expected_hash: str | None = None):
    with open(path) as fh:
        first = fh.readline().strip()
        if not first.startswith("# config_hash="):
            raise ArtifactHashError(f"{path}: missing config hash line")
        found = first.split("=", 1)[1]
        if expected_hash is not None and found != expected_hash:
            raise ArtifactHashError(f"{path}: embedded hash {found} != {expected_hash}")
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader], found
