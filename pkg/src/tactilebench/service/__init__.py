from .artifacts import (
    canonical_json,
    config_hash,
    read_csv_artifact,
    read_json_artifact,
    write_csv_artifact,
    write_json_artifact,
)
from .protocol import PROTOCOL_VERSION, MESSAGE_TYPES, make_message, validate_message
from .runconfig import RunConfig, load_run_config, validate_run_config
from .runner import collect_demo_sessions, moving_average, run_experiment
from .seeds import derive_seed
from .server import create_app, extract_snapshot

__all__ = [
    "PROTOCOL_VERSION",
    "MESSAGE_TYPES",
    "RunConfig",
    "canonical_json",
    "collect_demo_sessions",
    "config_hash",
    "create_app",
    "derive_seed",
    "extract_snapshot",
    "load_run_config",
    "make_message",
    "moving_average",
    "read_csv_artifact",
    "read_json_artifact",
    "run_experiment",
    "validate_message",
    "validate_run_config",
    "write_csv_artifact",
    "write_json_artifact",
]
