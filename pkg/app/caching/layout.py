"""Redundant + BS-specific cache placement"""

from dataclasses import dataclass
from typing import Tuple
import logging

import numpy as np

from app.caching.popularity import Catalog, cdf, pmf, tail_mass
from app.exceptions import InfeasibleLayoutException, ValidationException

logger = logging.getLogger(__name__)

# Owner codes in rank_owners()
REDUNDANT = 0
UNCACHED = -1


def _require_int(value, name: str, low: int, high: int = None) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationException(name, f"must be an integer (got {value!r})")
    if value < low or (high is not None and value > high):
        bound = f"in [{low}, {high}]" if high is not None else f">= {low}"
        raise ValidationException(name, f"must be {bound} (got {value})")
    return int(value)


@dataclass(frozen=True)
class LayoutParams:
    """Layout shape: N base stations with M cache slots, R of them redundant"""

    bs_count: int
    cache_size: int
    redundant_count: int

    def __post_init__(self):
        _require_int(self.bs_count, "bs_count", 1)
        _require_int(self.cache_size, "cache_size", 1)
        _require_int(self.redundant_count, "redundant_count", 0, self.cache_size)

    @property
    def specific_slots(self) -> int:
        """M - R, slots per BS holding BS-specific files"""
        return self.cache_size - self.redundant_count

    @property
    def distinct_count(self) -> int:
        """Number of distinct ranks cached anywhere in the RAN"""
        return self.redundant_count + self.specific_slots * self.bs_count

    @property
    def redundancy_ratio(self) -> float:
        """eta = R / M"""
        return self.redundant_count / self.cache_size


@dataclass(frozen=True)
class CacheLayout:
    """Materialized placement; redundant ranks 1..R are implicit at every BS"""

    params: LayoutParams
    per_bs_specific: Tuple[Tuple[int, ...], ...]

    def specific_ranks(self, j: int) -> Tuple[int, ...]:
        """Ranks cached exclusively by BS j (1-based)"""
        _require_int(j, "bs_index", 1, self.params.bs_count)
        return self.per_bs_specific[j - 1]

    def cached_ranks(self, j: int) -> Tuple[int, ...]:
        """All M ranks held by BS j"""
        redundant = tuple(range(1, self.params.redundant_count + 1))
        return redundant + self.specific_ranks(j)


def is_feasible(p: LayoutParams, cat: Catalog) -> bool:
    """True when every cached rank exists in the catalog"""
    return p.distinct_count <= cat.file_count


def check_feasible(p: LayoutParams, cat: Catalog) -> None:
    """Reject layouts whose rank range exceeds F"""
    if not is_feasible(p, cat):
        raise InfeasibleLayoutException(
            "redundant_count",
            f"layout N={p.bs_count}, M={p.cache_size}, R={p.redundant_count} caches "
            f"{p.distinct_count} distinct ranks but the catalog holds F={cat.file_count}"
        )


def slot_rank(m: int, j: int, p: LayoutParams) -> int:
    """
    Popularity rank stored in BS-specific slot m of BS j (serpentine order).

    Odd slots run j = 1..N forward, even slots run backward, so the
    popularity mass alternates across base stations.
    """
    m = _require_int(m, "slot", 1, p.specific_slots)
    j = _require_int(j, "bs_index", 1, p.bs_count)
    R, N = p.redundant_count, p.bs_count
    if m % 2 == 1:
        return R + (m - 1) * N + j
    return R + m * N + 1 - j


def build_layout(p: LayoutParams) -> CacheLayout:
    """Materialize every BS's specific list via slot_rank"""
    per_bs = tuple(
        tuple(slot_rank(m, j, p) for m in range(1, p.specific_slots + 1))
        for j in range(1, p.bs_count + 1)
    )
    return CacheLayout(params=p, per_bs_specific=per_bs)


def specific_mass(j: int, p: LayoutParams, cat: Catalog) -> float:
    """
    Total request probability of BS j's specific files (f_j).

    Closed form dispatched on M - R: zero, one, or the paired even/odd sums
    where slot pair t contributes ranks R + (2t-2)N + j and R + 2tN + 1 - j.
    """
    j = _require_int(j, "bs_index", 1, p.bs_count)
    check_feasible(p, cat)

    R, N = p.redundant_count, p.bs_count
    slots = p.specific_slots
    if slots == 0:
        return 0.0
    if slots == 1:
        return pmf(cat, R + j)

    total = 0.0
    for t in range(1, slots // 2 + 1):
        total += pmf(cat, R + (2 * t - 2) * N + j) + pmf(cat, R + 2 * t * N + 1 - j)
    if slots % 2 == 1:
        total += pmf(cat, R + (slots - 1) * N + j)
    return total


def redundant_mass(p: LayoutParams, cat: Catalog) -> float:
    """Request probability of the R redundant files"""
    check_feasible(p, cat)
    return cdf(cat, p.redundant_count)


def backhaul_mass(p: LayoutParams, cat: Catalog) -> float:
    """Request probability of files cached nowhere in the RAN (f_Bh)"""
    check_feasible(p, cat)
    return tail_mass(cat, p.distinct_count + 1)


def rank_owners(layout: CacheLayout, file_count: int) -> np.ndarray:
    """
    Map rank -> caching BS.

    Returns an int array of length F + 1 (index 0 unused) holding REDUNDANT
    for ranks 1..R, the owning BS index (1-based) for specific ranks and
    UNCACHED for everything else.
    """
    p = layout.params
    if p.distinct_count > file_count:
        raise InfeasibleLayoutException(
            "redundant_count", f"layout needs {p.distinct_count} ranks, catalog holds {file_count}"
        )
    owners = np.full(file_count + 1, UNCACHED, dtype=np.int64)
    owners[1:p.redundant_count + 1] = REDUNDANT
    for j, ranks in enumerate(layout.per_bs_specific, start=1):
        if ranks:
            owners[np.asarray(ranks, dtype=np.int64)] = j
    return owners
