"""Seeded random streams and substream derivation."""

import numpy as np
from scipy.special import logit

from ..models.errors import InvalidInput

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# Smallest and largest uniforms passed to the logistic quantile
_U_LO = np.finfo(float).tiny
_U_HI = 1.0 - np.finfo(float).epsneg


def mix_seed(base_seed: int, index: int) -> int:
    """Derive a 64-bit substream seed from (base_seed, index) with the SplitMix64 finaliser."""
    z = (int(base_seed) + (int(index) + 1) * _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def make_stream(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))


def logistic_draws(stream: np.random.Generator, size: int) -> np.ndarray:
    """Standard logistic variates by inverse CDF of uniforms."""
    return logit(np.clip(stream.random(size), _U_LO, _U_HI))


def block_ranges(n: int, block_size: int) -> list[tuple[int, int]]:
    """Split range(n) into consecutive [start, stop) blocks."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    block_size = max(int(block_size), 1)
    return [(start, min(start + block_size, n)) for start in range(0, n, block_size)]
