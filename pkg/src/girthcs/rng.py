"""Portable, seedable random streams.

Every stream is a Philox4x64-10 counter-based generator (numpy's
``Philox``) keyed by the pair ``(seed, stream)`` with the counter starting
at zero.  Derived draws use only the raw 64-bit outputs:

* uniform double: ``(raw >> 11) * 2**-53``
* index below ``b``: ``floor(uniform * b)``
* permutations / subsets: Fisher-Yates, swapping position ``i`` with
  ``i + index_below(len - i)`` for ``i = 0, 1, ...``

so any implementation with a Philox4x64-10 primitive reproduces them.
"""
import numpy as np

_MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0 ** -53


class TrialRNG:
    """Independent stream for one (seed, stream-id) pair."""

    def __init__(self, seed: int, stream: int):
        key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
        self._bits = np.random.Philox(key=key, counter=0)

    def raw(self, size: int) -> np.ndarray:
        return self._bits.random_raw(size)

    def uniform(self, size: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        u = (self.raw(size) >> np.uint64(11)).astype(np.float64) * _TWO_M53
        return low + (high - low) * u

    def index_below(self, bound: int) -> int:
        return min(int(self.uniform(1)[0] * bound), bound - 1)

    def permutation(self, n: int) -> list[int]:
        return self.sample(n, n)

    def sample(self, n: int, k: int) -> list[int]:
        """First ``k`` entries of a partial Fisher-Yates shuffle of ``range(n)``."""
        items = list(range(n))
        for i in range(k):
            j = i + self.index_below(n - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]

    def signs(self, k: int) -> list[int]:
        return [1 if u < 0.5 else -1 for u in self.uniform(k)]


def stream_id(k: int, trial: int) -> int:
    """Stream identifier for trial ``trial`` at sparsity ``k``."""
    return (k << 32) | trial
