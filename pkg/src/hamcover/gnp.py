"""Seeded G(n,p) sampling and expander parameter bookkeeping.

All randomness comes from an explicit counter-based generator so that a
(base, stream) seed pair determines every sample bit-for-bit on any
platform. With M the splitmix64 finalizer and GAMMA = 0x9E3779B97F4A7C15:

    key    = M(base + (stream + 1) * GAMMA)
    draw_i = M(key + (i + 1) * GAMMA)          (64-bit, i = 0, 1, 2, ...)

and a uniform double in [0, 1) takes the top 53 bits of a draw. Pair i in
the lexicographic order of the C(n,2) vertex pairs is included iff its
uniform is < p; for n > 4096 the same stream drives geometric skip
sampling instead, which touches only O(m) draws.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph, build_graph

GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

# one uniform draw per pair up to this n, geometric skips above
DENSE_SAMPLING_LIMIT = 4096


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * _M1) & _MASK
    x = ((x ^ (x >> 27)) * _M2) & _MASK
    return x ^ (x >> 31)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_M1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_M2)
    x ^= x >> np.uint64(31)
    return x


@dataclass(frozen=True)
class RngSeed:
    """Reproducibility handle: base seed plus a trial/stream index."""

    base: int
    stream: int = 0

    def key(self) -> int:
        return mix64((self.base + (self.stream + 1) * GAMMA) & _MASK)

    def draw(self, i: int) -> int:
        return mix64((self.key() + (i + 1) * GAMMA) & _MASK)

    def uniform(self, i: int) -> float:
        return (self.draw(i) >> 11) * 2.0 ** -53

    def python_rng(self) -> random.Random:
        """Mersenne Twister seeded from this stream's key, for auxiliary
        sampling (candidate sets, trial shapes). Graph bits never use it."""
        return random.Random(self.key())


def _uniform_block(seed: RngSeed, offset: int, count: int) -> np.ndarray:
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    idx *= np.uint64(GAMMA)
    idx += np.uint64(seed.key())
    draws = _mix64_array(idx)
    return (draws >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def sample_gnp(n: int, p: float, seed: RngSeed) -> Graph:
    """Sample G(n,p): each vertex pair appears independently with probability p.

    Identical (n, p, seed) always yields the identical graph.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0,1], got {p}")
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if p == 0.0 or n < 2:
        return build_graph(n, [])
    if p == 1.0:
        return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if n <= DENSE_SAMPLING_LIMIT:
        edges = []
        offset = 0
        for u in range(n - 1):
            count = n - 1 - u
            us = _uniform_block(seed, offset, count)
            for j in np.nonzero(us < p)[0]:
                edges.append((u, u + 1 + int(j)))
            offset += count
        return build_graph(n, edges)
    return _sample_gnp_sparse(n, p, seed)


def _sample_gnp_sparse(n: int, p: float, seed: RngSeed) -> Graph:
    # geometric skips over the lexicographic pair stream; O(m) expected draws
    total = n * (n - 1) // 2
    row_start = [0] * n
    for u in range(1, n):
        row_start[u] = row_start[u - 1] + (n - u)
    log1mp = math.log1p(-p)
    edges = []
    pos = -1
    i = 0
    while True:
        u01 = seed.uniform(i)
        i += 1
        pos += 1 + int(math.log(max(1.0 - u01, 5e-324)) / log1mp)
        if pos >= total:
            break
        u = bisect.bisect_right(row_start, pos) - 1
        v = u + 1 + (pos - row_start[u])
        edges.append((u, v))
    return build_graph(n, edges)


@dataclass(frozen=True)
class ExpanderParams:
    """Parameter bundle (s, g, l, alpha) for the canonical expander profile
    on n vertices: expansion factor s, boundary g = 4n*ln(s)/(s*ln(n)),
    frame l = n*ln(s)/(3000*ln(n)), and alpha = ln(s)/ln(n).

    g and l hold the exact formula values; `frame_clamped` floors l at 1
    for use at small n, where `asymptotic_regime` is False.
    """

    n: int
    s: float
    g: float
    l: float
    alpha: float

    @property
    def frame_clamped(self) -> float:
        return max(self.l, 1.0)

    @property
    def asymptotic_regime(self) -> bool:
        return self.l >= 1.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "g": self.g,
            "l": self.l,
            "alpha": self.alpha,
            "asymptotic_regime": self.asymptotic_regime,
        }


def expander_params(n: int, s: float) -> ExpanderParams:
    """Boundary/frame/alpha for expansion factor s on n vertices."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if s <= 1.0:
        raise ValueError(f"expansion factor must exceed 1, got {s}")
    ln_n = math.log(n)
    ln_s = math.log(s)
    g = 4.0 * n * ln_s / (s * ln_n)
    l = n * ln_s / (3000.0 * ln_n)
    return ExpanderParams(n=n, s=s, g=g, l=l, alpha=ln_s / ln_n)


def expander_params_for_gnp(n: int, p: float) -> ExpanderParams:
    """Canonical parameters for a G(n,p) sample: s = (n*p)^(1/5)."""
    if n * p <= 1.0:
        raise ValueError(f"need n*p > 1 for meaningful expansion, got n*p={n * p}")
    return expander_params(n, (n * p) ** 0.2)
