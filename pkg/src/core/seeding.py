"""Labeled sub-seed derivation.

sub_seed = first 8 bytes (big-endian) of SHA-256 over the UTF-8 text
"<master>/<stage>/<target>". The target label is empty for stages that
are not per-target (e.g. the train/test split).
"""

import hashlib

import numpy as np


def derive_seed(master_seed: int, stage: str, target: str = "") -> int:
    """Return the 64-bit sub-seed for (master seed, stage label, target label)."""
    payload = f"{int(master_seed)}/{stage}/{target.upper()}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def stream_rng(seed: int, *stream_key: int) -> np.random.Generator:
    """Independent generator for one keyed stream under a seed.

    Streams with distinct keys never share state, so results do not depend
    on the order in which streams are consumed.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stream_key)))
