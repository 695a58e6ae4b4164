"""
Seeded uniform variates.

Every stream comes from numpy's Philox counter-based generator keyed by a
SeedSequence built from the caller's entropy words, so a replicate's stream
depends only on its own seed words and never on how many streams were
drawn before it.
"""

import numpy as np

from core.exceptions import InvalidParameterError

UINT64_MAX = 2**64 - 1

# 52 random mantissa bits, shifted half a unit so draws are never 0 or 1
_MANTISSA_BITS = 52
_SCALE = 2.0 ** -_MANTISSA_BITS


def seed_sequence(seed):
    """
    Build a SeedSequence from an int, a sequence of ints, or an existing
    SeedSequence. Every word must fit in an unsigned 64-bit integer.
    """
    if isinstance(seed, np.random.SeedSequence):
        return seed
    words = [seed] if np.isscalar(seed) else list(seed)
    if not words:
        raise InvalidParameterError("seed must contain at least one word")
    for word in words:
        if int(word) != word or not 0 <= int(word) <= UINT64_MAX:
            raise InvalidParameterError(f"seed words must be 64-bit unsigned integers, got {word!r}")
    return np.random.SeedSequence([int(word) for word in words])


def generator(seed):
    return np.random.Generator(np.random.Philox(seed_sequence(seed)))


def open_uniforms(size, seed):
    """``size`` draws from Uniform(0, 1), strictly inside the open interval."""
    rng = generator(seed)
    words = rng.integers(0, 2**_MANTISSA_BITS, size=size, dtype=np.uint64)
    return (words.astype(float) + 0.5) * _SCALE


def replicate_seed(master_seed, sample_size, replicate):
    """Seed for replicate ``replicate`` of sample size ``sample_size``."""
    return seed_sequence([master_seed, sample_size, replicate])
