"""Reproducible random streams for the game referee.

The generator is SplitMix64, a 64-bit shift-register mixer with a Weyl
increment; it is fixed here as an external contract so that simulations are
bit-identical across platforms and package versions:

* finalizer ``mix64``::

      z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
      z ^= z >> 27;  z *= 0x94D049BB133111EB
      z ^= z >> 31

  (all arithmetic modulo 2^64)

* a stream is addressed by ``(seed, batch)`` and starts at state
  ``mix64(seed + batch * 0xD1B54A32D192ED03)``; its j-th output (j = 0, 1,
  ...) is ``mix64(state + (j + 1) * 0x9E3779B97F4A7C15)``.

* a uniform double in [0, 1) is ``(output >> 11) * 2**-53``.

* a draw from a finite distribution uses the cumulative table of the
  probabilities (running sums, left to right) and places a uniform ``u`` by
  binary search (first entry with cumulative > u); ``u`` beyond the final
  cumulative value (possible only through rounding) maps to the last entry.

Streams depend only on their batch index, so any partitioning of work over
batches reproduces identical results.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_WEYL = 0x9E3779B97F4A7C15
_BATCH_STRIDE = 0xD1B54A32D192ED03
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on Python integers (modulo 2^64)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return (z ^ (z >> 31)) & _MASK


def stream_state(seed: int, batch: int) -> int:
    """Initial state of the (seed, batch) stream."""
    return mix64((seed + batch * _BATCH_STRIDE) & _MASK)


def stream_outputs(seed: int, batch: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream, as uint64."""
    state = np.uint64(stream_state(seed, batch))
    with np.errstate(over="ignore"):
        j = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = state + j * np.uint64(_WEYL)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def stream_uniforms(seed: int, batch: int, start: int, count: int) -> np.ndarray:
    """Uniform doubles in [0, 1) from the (seed, batch) stream."""
    return (stream_outputs(seed, batch, start, count) >> np.uint64(11)) * 2.0**-53


def cumulative_table(probabilities) -> np.ndarray:
    """Running sums of the probabilities, left to right."""
    return np.cumsum(np.asarray(probabilities, dtype=np.float64))


def draw(cumulative: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Indices drawn from the distribution behind ``cumulative``."""
    idx = np.searchsorted(cumulative, uniforms, side="right")
    return np.minimum(idx, len(cumulative) - 1)
