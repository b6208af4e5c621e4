"""Counter-based random substreams.

Every Monte Carlo estimate draws from a Philox generator whose key is derived
from ``(seed, *key)``.  A triple ``(x, y, z)`` therefore sees the same numbers
no matter which thread evaluates it or in what order.
"""

import numpy as np


def substream(seed, *key):
    if seed is None:
        raise ValueError("a seed is required for Monte Carlo estimates")
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) for k in key)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
