"""Seeded uniform samples, order statistics and the filter-below-w reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

PRNG_NAME = "numpy.random.PCG64"


def child_seed(master_seed: int, *keys: int) -> int:
    """Derive a 64-bit seed from a master seed and integer keys (trial index etc.)."""
    ss = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, *map(int, keys)])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass
class SeededStream:
    """A reproducible stream of uniform reals on the open interval (lo, hi).

    Not safe to share between threads; derive one per trial with :func:`child_seed`.
    """

    seed: int
    lo: float = 0.0
    hi: float = 1.0
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got lo={self.lo}, hi={self.hi}")
        self._rng = np.random.Generator(np.random.PCG64(self.seed))

    def draw(self, n: int, exclude: Sequence[float] = ()) -> np.ndarray:
        """``n`` pairwise distinct values, none equal to an entry of ``exclude``.

        Endpoints and collisions are re-drawn, which happens with probability
        zero in exact arithmetic.
        """
        if n < 0:
            raise ValueError("n must be nonnegative")
        out = self.lo + (self.hi - self.lo) * self._rng.random(n)
        banned = set(exclude)
        while True:
            seen = set(banned)
            bad = []
            for i, v in enumerate(out.tolist()):
                if v <= self.lo or v >= self.hi or v in seen:
                    bad.append(i)
                else:
                    seen.add(v)
            if not bad:
                return out
            out[bad] = self.lo + (self.hi - self.lo) * self._rng.random(len(bad))


def uniform_sequence(n: int, stream: SeededStream) -> list[float]:
    return stream.draw(n).tolist()


@dataclass(frozen=True)
class OrderedSample:
    values: tuple

    def __call__(self, j: int) -> float:
        """The j-th order statistic, 1-based."""
        return self.values[j - 1]

    def __len__(self) -> int:
        return len(self.values)


def order_statistics(xs: Sequence[float]) -> OrderedSample:
    return OrderedSample(tuple(sorted(xs)))


def rank_permutation(xs: Sequence[float]) -> tuple[int, ...]:
    """Permutation ``p`` with ``xs[j] == z(p[j])`` where z are the order statistics."""
    order = sorted(range(len(xs)), key=xs.__getitem__)
    ranks = [0] * len(xs)
    for r, j in enumerate(order, start=1):
        ranks[j] = r
    return tuple(ranks)


@dataclass(frozen=True)
class FilterReport:
    kept: tuple
    n_prime: int
    m_prime: int
    kept_indices: tuple = ()


def filter_below(xs: Sequence[float], w: float, n: int) -> FilterReport:
    """Values of ``xs`` smaller than ``w``, in their original order.

    ``n_prime`` counts them among the first ``n`` values, ``m_prime`` among all.
    """
    if not 0.0 < w <= 1.0:
        raise ValueError(f"w must lie in (0, 1], got {w}")
    if not 0 <= n <= len(xs):
        raise ValueError(f"n must lie in [0, {len(xs)}], got {n}")
    idx = tuple(i for i, x in enumerate(xs) if x < w)
    kept = tuple(xs[i] for i in idx)
    n_prime = sum(1 for i in idx if i < n)
    return FilterReport(kept, n_prime, len(kept), idx)
