"""Deterministic seed derivation.

All experiment randomness flows from one root seed expanded through a
labelled tree (run -> env -> agent -> init), so reruns reproduce exactly
on any machine and adding a consumer never shifts its siblings' streams.
"""

from __future__ import annotations

import hashlib


def derive_seed(root: int, *labels) -> int:
    """Child seed for a labelled path under ``root``."""
    tag = ":".join([str(int(root))] + [str(l) for l in labels])
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % (2**32)
