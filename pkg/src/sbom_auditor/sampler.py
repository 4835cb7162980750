"""Year-stratified proportional sampling of release records."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field

from .model import ReleaseRecord


def stratum_size(population: int, rate: float) -> int:
    """``max(1, floor(rate * population))`` for non-empty strata, 0 otherwise."""
    if population <= 0:
        return 0
    # the epsilon keeps e.g. 0.1 * 30 from flooring to 2
    return min(population, max(1, math.floor(rate * population + 1e-9)))


@dataclass(frozen=True)
class SamplePlan:
    rate: float
    seed: int
    per_year_counts: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(size for _, size in self.per_year_counts.values())


def _check_rate(rate):
    if not 0 < rate <= 1:
        raise ValueError(f"rate must be in (0, 1], got {rate}")


def _strata(releases):
    by_year = defaultdict(list)
    for r in releases:
        by_year[r.year].append(r)
    return by_year


def plan_sample(releases: list[ReleaseRecord], rate: float, seed: int) -> SamplePlan:
    _check_rate(rate)
    counts = {year: (len(group), stratum_size(len(group), rate))
              for year, group in sorted(_strata(releases).items())}
    return SamplePlan(rate, seed, counts)


def _stratum_rng(seed: int, year: int) -> random.Random:
    # string seeds are hashed with SHA-512, stable across processes and platforms
    return random.Random(f"sbom-auditor/{seed}/{year}")


def stratified_sample(releases: list[ReleaseRecord], rate: float, seed: int) -> list[ReleaseRecord]:
    """Draw ``stratum_size`` releases per year, uniformly without replacement.

    Each year gets its own generator seeded from ``(seed, year)``, so adding or
    removing a year leaves the other years' draws untouched. Output is sorted
    by ``(year, id)``.
    """
    _check_rate(rate)
    picked = []
    for year, group in sorted(_strata(releases).items()):
        population = sorted(group, key=lambda r: r.id)
        k = stratum_size(len(population), rate)
        picked.extend(_stratum_rng(seed, year).sample(population, k))
    picked.sort(key=lambda r: (r.year, r.id))
    return picked
