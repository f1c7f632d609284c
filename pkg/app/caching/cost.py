"""Transmission-cost accounting for the RAN and backhaul"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional
import logging
import math

from app.caching.layout import LayoutParams, backhaul_mass, check_feasible, is_feasible, specific_mass
from app.caching.popularity import Catalog
from app.exceptions import ValidationException

logger = logging.getLogger(__name__)

# Relative tolerance under which two totals count as a tie
TIE_RTOL = 1e-12


class AccountingMode(str, Enum):
    """How RAN transfers are charged"""

    PAPER_LITERAL = "paper_literal"  # alpha * N * sum_j f_j, self-hits included
    PER_REQUEST = "per_request"  # expected cost of one request at a uniform BS

    @classmethod
    def parse(cls, value) -> "AccountingMode":
        """Accept enum members and 'per-request' / 'per_request' spellings"""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower().replace("-", "_"))
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValidationException("mode", f"unknown accounting mode {value!r} (choose from {choices})")


@dataclass(frozen=True)
class CostParams:
    """Unit RAN cost alpha and backhaul-to-RAN ratio mu_BR (beta = alpha * mu_BR)"""

    alpha: float = 1.0
    mu_br: float = 4.0
    mode: AccountingMode = field(default=AccountingMode.PER_REQUEST)

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ValidationException("alpha", f"must be a finite non-negative number (got {self.alpha!r})")
        if not math.isfinite(self.mu_br) or self.mu_br < 1:
            raise ValidationException("mu_br", f"must be a finite number >= 1 (got {self.mu_br!r})")
        object.__setattr__(self, "mode", AccountingMode.parse(self.mode))

    @property
    def beta(self) -> float:
        """Unit backhaul cost"""
        return self.alpha * self.mu_br


class CostPoint(NamedTuple):
    """One point of the tradeoff curve"""

    redundant_count: int
    ran: float
    backhaul: float
    total: float


@dataclass(frozen=True)
class CostCurve:
    """Feasible curve points in ascending R and the R values left out as infeasible"""

    points: List[CostPoint]
    infeasible: List[int]

    @property
    def totals(self) -> List[float]:
        return [point.total for point in self.points]


def ran_cost(p: LayoutParams, cat: Catalog, c: CostParams) -> float:
    """
    RAN transmission cost.

    paper_literal: alpha * N * sum_j f_j.
    per_request: alpha * (N-1)/N * sum_j f_j, i.e. one request at a uniformly
    chosen BS, where a hit on the BS's own specific file is free.
    """
    check_feasible(p, cat)
    N = p.bs_count
    specific_total = sum(specific_mass(j, p, cat) for j in range(1, N + 1))
    if c.mode is AccountingMode.PAPER_LITERAL:
        return c.alpha * N * specific_total
    return c.alpha * ((N - 1) / N) * specific_total


def backhaul_cost(p: LayoutParams, cat: Catalog, c: CostParams) -> float:
    """Backhaul transmission cost alpha * mu_BR * f_Bh (identical in both modes)"""
    return c.alpha * c.mu_br * backhaul_mass(p, cat)


def total_cost(p: LayoutParams, cat: Catalog, c: CostParams) -> float:
    """RAN plus backhaul cost"""
    return ran_cost(p, cat, c) + backhaul_cost(p, cat, c)


def cost_point(p: LayoutParams, cat: Catalog, c: CostParams) -> CostPoint:
    """Evaluate both components for one layout"""
    ran = ran_cost(p, cat, c)
    backhaul = backhaul_cost(p, cat, c)
    return CostPoint(p.redundant_count, ran, backhaul, ran + backhaul)


def cost_curve(bs_count: int, cache_size: int, cat: Catalog, c: CostParams) -> CostCurve:
    """
    Full tradeoff curve for R = 0..M.

    Points whose distinct rank count exceeds F are omitted and listed in
    CostCurve.infeasible instead of raising.
    """
    points: List[CostPoint] = []
    infeasible: List[int] = []
    for r in range(cache_size + 1):
        p = LayoutParams(bs_count=bs_count, cache_size=cache_size, redundant_count=r)
        if not is_feasible(p, cat):
            infeasible.append(r)
            continue
        points.append(cost_point(p, cat, c))

    if infeasible:
        logger.warning(
            f"Cost curve N={bs_count}, M={cache_size}, F={cat.file_count}: "
            f"{len(infeasible)} infeasible R values omitted (R <= {max(infeasible)})"
        )
    return CostCurve(points=points, infeasible=infeasible)


def argmin_point(points: List[CostPoint]) -> Optional[CostPoint]:
    """Minimum-total point; near-equal totals resolve to the smallest R"""
    if not points:
        return None
    best_total = min(point.total for point in points)
    tolerance = TIE_RTOL * max(abs(best_total), 1.0)
    for point in sorted(points, key=lambda pt: pt.redundant_count):
        if point.total <= best_total + tolerance:
            return point
    return None
