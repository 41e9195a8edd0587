"""SplitMix64 pseudo-random generator.

The generator is tiny and fully specified so that weight initialisation and
synthetic data are reproducible bit-for-bit in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

Uniform doubles in [0, 1) take the top 53 bits: ``(output >> 11) * 2**-53``.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MUL1) & _MASK
        z = ((z ^ (z >> 27)) * _MUL2) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * _INV_2_53

    def uniform_array(self, shape) -> np.ndarray:
        """Doubles in [0, 1), filled in row-major (C) order."""
        n = int(np.prod(shape, dtype=np.int64))
        out = np.fromiter((self.random() for _ in range(n)), dtype=np.float64, count=n)
        return out.reshape(shape)
