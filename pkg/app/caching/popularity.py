"""Zipf popularity model of the file catalog"""

from dataclasses import dataclass, field
import logging
import math

import numpy as np

from app.exceptions import ValidationException

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Catalog:
    """
    Finite Zipf-distributed file population.

    Ranks are 1-based; every file has unit length. The pmf, CDF and tail
    arrays are computed once at construction and never mutated.
    """

    file_count: int
    exponent: float
    norm: float
    _pmf: np.ndarray = field(repr=False, compare=False)
    _cdf: np.ndarray = field(repr=False, compare=False)
    _tail: np.ndarray = field(repr=False, compare=False)

    @property
    def pmf_array(self) -> np.ndarray:
        """Read-only view of pmf(1..F)"""
        return self._pmf

    @property
    def cdf_array(self) -> np.ndarray:
        """Read-only view of CDF(1..F); the last entry is exactly 1"""
        return self._cdf


def build_catalog(file_count: int, exponent: float) -> Catalog:
    """
    Build a Zipf catalog of F files with exponent s.

    The normalizer is a plain ascending-rank accumulation of 1/n^s.

    Args:
        file_count: Number of files F (>= 1)
        exponent: Zipf exponent s (finite, >= 0)

    Returns:
        Immutable Catalog
    """
    if isinstance(file_count, bool) or not isinstance(file_count, (int, np.integer)) or file_count < 1:
        raise ValidationException("file_count", f"must be a positive integer (got {file_count!r})")
    if not isinstance(exponent, (int, float, np.floating)) or not math.isfinite(exponent) or exponent < 0:
        raise ValidationException("exponent", f"must be a finite non-negative number (got {exponent!r})")

    file_count = int(file_count)
    exponent = float(exponent)

    weights = 1.0 / np.arange(1, file_count + 1, dtype=np.float64) ** exponent
    # cumsum accumulates sequentially in rank order
    norm = float(np.cumsum(weights)[-1])

    pmf = weights / norm
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0  # to avoid rounding errors
    # tail[k0 - 1] = sum of pmf over k0..F; tail[F] = 0
    tail = np.zeros(file_count + 1, dtype=np.float64)
    tail[:file_count] = np.cumsum(pmf[::-1])[::-1]

    for arr in (pmf, cdf, tail):
        arr.setflags(write=False)

    logger.debug(f"Built catalog F={file_count}, s={exponent}, norm={norm:.12g}")
    return Catalog(
        file_count=file_count,
        exponent=exponent,
        norm=norm,
        _pmf=pmf,
        _cdf=cdf,
        _tail=tail,
    )


def _check_rank(k: int, name: str, upper: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= upper:
        raise ValidationException(name, f"must be an integer in [1, {upper}] (got {k!r})")
    return int(k)


def pmf(cat: Catalog, k: int) -> float:
    """Request probability of the file of rank k"""
    k = _check_rank(k, "rank", cat.file_count)
    return float(cat._pmf[k - 1])


def cdf(cat: Catalog, k: int) -> float:
    """Probability mass of ranks 1..k; cdf(0) = 0"""
    if k == 0:
        return 0.0
    k = _check_rank(k, "rank", cat.file_count)
    return float(cat._cdf[k - 1])


def tail_mass(cat: Catalog, k0: int) -> float:
    """
    Probability mass of ranks k0..F.

    Args:
        cat: Catalog
        k0: First rank of the tail, in [1, F+1]

    Returns:
        Tail probability; 0 for k0 = F+1
    """
    k0 = _check_rank(k0, "k0", cat.file_count + 1)
    return float(cat._tail[k0 - 1])


def sample_rank(cat: Catalog, u: float) -> int:
    """Smallest rank k with CDF(k) > u, for a uniform draw u in [0, 1)"""
    if not 0.0 <= u < 1.0:
        raise ValidationException("u", f"must lie in [0, 1) (got {u!r})")
    return int(np.searchsorted(cat._cdf, u, side="right")) + 1


def sample_ranks(cat: Catalog, u: np.ndarray) -> np.ndarray:
    """Vectorized inverse-CDF sampling; returns 1-based ranks"""
    u = np.asarray(u, dtype=np.float64)
    ranks = np.searchsorted(cat._cdf, u, side="right") + 1
    # guards u values that round onto the last CDF entry
    return np.minimum(ranks, cat.file_count)
