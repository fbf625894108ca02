"""Independent random streams for trials."""

import numpy as np


def trial_rng(seed: int, *indices: int) -> np.random.Generator:
    """Generator for the stream keyed by ``(seed, *indices)``.

    Streams for different index tuples are statistically independent and
    do not depend on the order in which they are created.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, indices)]))
