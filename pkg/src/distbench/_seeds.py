"""Deterministic derivation of per-task RNG seeds."""

import hashlib


def derive_seed(*parts) -> int:
    """Map an arbitrary tuple of parts to a stable 64-bit seed.

    The same parts always produce the same seed, independent of process,
    platform and hash randomization (PYTHONHASHSEED is not involved).
    """
    token = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(token.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
