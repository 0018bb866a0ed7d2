"""SplitMix64 pseudo-random generator.

SplitMix64 (Steele, Lea & Flood 2014) is tiny, has a 64-bit state and is
fully specified by three constants, which makes the streams it produces
reproducible in any language.  Doubles are formed from the top 53 bits.
"""

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """Seeded 64-bit generator.

    >>> g = SplitMix64(0)
    >>> hex(g.next_u64())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return low + (high - low) * self.random()

    def uniform_array(self, shape, low=0.0, high=1.0):
        size = int(np.prod(shape))
        vals = np.fromiter((self.uniform(low, high) for _ in range(size)), dtype=float, count=size)
        return vals.reshape(shape)

    def normal_array(self, shape):
        """Standard normals by Box-Muller, consuming two draws per pair."""
        size = int(np.prod(shape))
        out = np.empty(size)
        for i in range(0, size, 2):
            u1 = 1.0 - self.random()
            u2 = self.random()
            r = np.sqrt(-2.0 * np.log(u1))
            out[i] = r * np.cos(2.0 * np.pi * u2)
            if i + 1 < size:
                out[i + 1] = r * np.sin(2.0 * np.pi * u2)
        return out.reshape(shape)

    def spawn(self) -> "SplitMix64":
        """Independent child generator seeded from this stream."""
        return SplitMix64(self.next_u64())
