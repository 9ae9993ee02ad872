"""
Seeded random streams

Every stochastic step draws from a PCG64 generator keyed by the user seed and a
tuple of stream labels, so a (seed, stream) pair always yields the same
sequence on every platform numpy supports.
"""

import numpy as np

from app.errors import ValidationError

MAX_SEED = 2 ** 64 - 1

# stream labels
SIGNAL_STREAM = 0
IDLER_STREAM = 1
COUNTING_STREAM = 2


def make_generator(seed: int, *stream: int) -> np.random.Generator:
    if not 0 <= int(seed) <= MAX_SEED:
        raise ValidationError(f'Seed must be an unsigned 64-bit integer, got {seed}')
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(sequence))
