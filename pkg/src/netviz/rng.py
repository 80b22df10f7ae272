"""Seeded 64-bit generator used for initial node placement.

The update rule is pinned so independent implementations (e.g. the browser
viewer or a fixture generator in another language) can reproduce placements
bit for bit:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z ^ (z >> 31)

`next_float` maps the top 53 bits of the output to a double in [0, 1):
(output >> 11) * 2^-53.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; tiny state, no external dependencies."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_uint(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_uint() >> 11) * 2.0**-53
