"""Seeded random two-qubit states and Monte Carlo ordering statistics.

Random numbers come from xoshiro256** (Blackman and Vigna), seeded through
SplitMix64, both implemented here so streams are bit-reproducible on any
platform.  Each pair ``i`` of a run draws from its own substream keyed by
``(seed, i)``; runs can therefore be split into shards in any way without
changing the merged report.

Mixed states follow the Hilbert-Schmidt-induced measure of rank ``r``:
``rho = G G^dagger / tr(G G^dagger)`` with ``G`` a ``4 x r`` matrix of
standard complex Gaussians.  Rank one gives Haar-random pure states.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ParamOutOfRange
from .measures import concurrence_values, negativity_values
from .ordering import BAND_TOL, Verdict, lower_bound_values, verdict
from .states import DensityMatrix, PureState

MASK64 = (1 << 64) - 1
ENTANGLED_TOL = 1e-9
MEASURE_NAME = "hilbert-schmidt (ginibre)"
GENERATOR_NAME = "xoshiro256** / splitmix64"
_CHUNK = 2048


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(x):
    """One SplitMix64 step: returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** generator with uniform and complex Gaussian draws."""

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed <= MASK64:
            raise ParamOutOfRange(f"seed {seed} is not a 64-bit unsigned integer")
        x = seed
        words = []
        for _ in range(4):
            x, out = splitmix64(x)
            words.append(out)
        if not any(words):
            words[0] = 1
        self.s = words

    @classmethod
    def substream(cls, seed, index):
        """Independent generator for item ``index`` of the run seeded ``seed``."""
        _, key = splitmix64(int(index) & MASK64)
        _, key = splitmix64((int(seed) ^ key) & MASK64)
        return cls(key)

    def next_u64(self):
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def uniform(self):
        """Uniform double in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def complex_normal(self):
        """Box-Muller: exactly two uniforms per complex variate, real and
        imaginary parts independent N(0, 1)."""
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        phi = 2.0 * math.pi * u2
        return complex(r * math.cos(phi), r * math.sin(phi))

    def complex_normals(self, n):
        return np.array([self.complex_normal() for _ in range(n)], dtype=complex)


def _check_rank(rank):
    if int(rank) != rank or not 1 <= int(rank) <= 4:
        raise ParamOutOfRange(f"rank={rank!r} must be 1, 2, 3 or 4")
    return int(rank)


def random_pure(rng):
    c = rng.complex_normals(4)
    return PureState(c / np.linalg.norm(c))


def random_density_matrix(rng, rank):
    """Unvalidated array version of :func:`random_density`."""
    rank = _check_rank(rank)
    g = rng.complex_normals(4 * rank).reshape(4, rank)
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return 0.5 * (m + m.conj().T)


def random_density(rng, rank):
    return DensityMatrix(random_density_matrix(rng, rank))


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    rank: int
    pair_count: int

    def __post_init__(self):
        if not 0 <= int(self.seed) <= MASK64 or int(self.seed) != self.seed:
            raise ParamOutOfRange(f"seed {self.seed!r} is not a 64-bit unsigned integer")
        _check_rank(self.rank)
        if int(self.pair_count) != self.pair_count or self.pair_count < 1:
            raise ParamOutOfRange(f"pair_count={self.pair_count!r} must be a positive integer")


@dataclass(frozen=True)
class SampleReport:
    pairs_tested: int
    violation_fraction: float
    max_delta_observed: float
    band_violations: int
    pairs_generated: int
    violations: int
    seed: int
    rank: int
    measure: str = MEASURE_NAME
    generator: str = GENERATOR_NAME

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class _Partial:
    generated: int
    tested: int
    violations: int
    max_delta: float
    band_violations: int


def band_violation_count(c, n, tol=BAND_TOL):
    c = np.asarray(c)
    n = np.asarray(n)
    return int(np.count_nonzero((n > c + tol) | (n < lower_bound_values(c) - tol)))


def draw_pair_matrices(seed, rank, start, stop):
    """Density matrices of pairs ``start .. stop-1``: two arrays ``(k, 4, 4)``."""
    first, second = [], []
    for i in range(start, stop):
        rng = Xoshiro256.substream(seed, i)
        first.append(random_density_matrix(rng, rank))
        second.append(random_density_matrix(rng, rank))
    return np.array(first), np.array(second)


def _run_shard(seed, rank, start, stop):
    tested = violations = bands = 0
    max_delta = 0.0
    for lo in range(start, stop, _CHUNK):
        hi = min(stop, lo + _CHUNK)
        a, b = draw_pair_matrices(seed, rank, lo, hi)
        ca, na = concurrence_values(a), negativity_values(a)
        cb, nb = concurrence_values(b), negativity_values(b)
        bands += band_violation_count(ca, na) + band_violation_count(cb, nb)
        keep = (ca > ENTANGLED_TOL) & (cb > ENTANGLED_TOL)
        dc = (ca - cb)[keep]
        dn = (na - nb)[keep]
        tested += int(keep.sum())
        if dc.size:
            max_delta = max(max_delta, float(np.max(-np.minimum(0.0, dc * dn))))
        violations += sum(verdict(x, y) is Verdict.ORDER_VIOLATION for x, y in zip(dc, dn))
    return _Partial(stop - start, tested, violations, max_delta, bands)


def shard_bounds(pair_count, shards):
    edges = np.linspace(0, pair_count, shards + 1).round().astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def sample_pairs(config, shards=1, workers=None):
    """Monte Carlo search for ordering violations.

    Draws ``config.pair_count`` pairs of rank-``config.rank`` states, keeps
    pairs where both states have concurrence above ``1e-9``, and reports the
    fraction of kept pairs with opposite concurrence/negativity ordering, the
    largest violation magnitude, and the number of sampled states (kept or
    not) outside the concurrence/negativity band.

    ``shards`` splits the index range; ``workers > 1`` evaluates shards in a
    process pool.  Neither changes the result.
    """
    if int(shards) < 1:
        raise ParamOutOfRange("shards must be positive")
    bounds = shard_bounds(config.pair_count, int(shards))
    args = [(config.seed, config.rank, lo, hi) for lo, hi in bounds]
    if workers and workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, *zip(*args)))
    else:
        parts = [_run_shard(*a) for a in args]
    tested = sum(p.tested for p in parts)
    violations = sum(p.violations for p in parts)
    max_delta = max(p.max_delta for p in parts)
    return SampleReport(
        pairs_tested=tested,
        violation_fraction=violations / tested if tested else 0.0,
        max_delta_observed=max_delta,
        band_violations=sum(p.band_violations for p in parts),
        pairs_generated=sum(p.generated for p in parts),
        violations=violations,
        seed=int(config.seed),
        rank=int(config.rank),
    )
