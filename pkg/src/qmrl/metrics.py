"""Consensus CGM glycemic metrics over a dosing window and the derived reward.

All time-in-range quantities are expressed in percent (0-100), matching the
usual clinical reporting convention (TIR 70-180 mg/dL inclusive, TBR/TAR
strict at their cut points).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

# Clinical consensus targets driving the reward: at most 1% below 54,
# 4% below 70, 25% above 180, 5% above 250 (all in percent of time).
T54_LIMIT = 1.0
T70_LIMIT = 4.0
T180_LIMIT = 25.0
T250_LIMIT = 5.0
# Best achievable in-range share once the hypo/hyper budgets are spent.
TIR_DENOMINATOR = 100.0 - T180_LIMIT - T70_LIMIT  # 71%


@dataclass(frozen=True)
class RewardThresholds:
    t54: float = T54_LIMIT
    t70: float = T70_LIMIT
    t180: float = T180_LIMIT
    t250: float = T250_LIMIT


@dataclass(frozen=True)
class GlycemicMetrics:
    """Summary of one observation window.

    tbr1 counts all samples < 70 (it includes tbr2), tar1 all samples > 180
    (it includes tar2), so tbr1 + tir + tar1 == 100.
    """

    tbr2: float  # % time < 54 mg/dL
    tbr1: float  # % time < 70 mg/dL
    tir: float   # % time in [70, 180] mg/dL
    tar1: float  # % time > 180 mg/dL
    tar2: float  # % time > 250 mg/dL
    mean: float  # mg/dL
    sd: float    # mg/dL
    total_bolus: float  # U

    def as_row(self) -> dict[str, float]:
        return {
            "TBR2": self.tbr2,
            "TBR1": self.tbr1,
            "TIR": self.tir,
            "TAR1": self.tar1,
            "TAR2": self.tar2,
            "Mean": self.mean,
            "SD": self.sd,
            "Bolus": self.total_bolus,
        }


OUTCOME_COLUMNS = ("TBR2", "TBR1", "TIR", "TAR1", "TAR2", "Mean", "SD", "Bolus")


def compute_metrics(glucose: Iterable[float], doses: Iterable[float] = ()) -> GlycemicMetrics:
    """Compute glycemic metrics from a glucose series and a list of bolus sizes.

    The series must be nonempty; sampling cadence is the caller's concern
    (percentages are per-sample fractions).
    """
    g = np.asarray(glucose, dtype=np.float64)
    if g.size == 0:
        raise ValueError("glucose series must be nonempty")
    n = g.size
    pct = 100.0 / n
    return GlycemicMetrics(
        tbr2=float(np.count_nonzero(g < 54.0) * pct),
        tbr1=float(np.count_nonzero(g < 70.0) * pct),
        tir=float(np.count_nonzero((g >= 70.0) & (g <= 180.0)) * pct),
        tar1=float(np.count_nonzero(g > 180.0) * pct),
        tar2=float(np.count_nonzero(g > 250.0) * pct),
        mean=float(g.mean()),
        sd=float(g.std()),
        total_bolus=float(np.fromiter(doses, dtype=np.float64).sum()),
    )


def r2r_components(
    metrics: GlycemicMetrics, thresholds: RewardThresholds = RewardThresholds()
) -> tuple[float, float]:
    """Nonnegative hypo/hyper penalty components (exceedance over the targets)."""
    r_hypo = max(metrics.tbr2 / thresholds.t54 - 1.0, 0.0) + max(
        metrics.tbr1 / thresholds.t70 - 1.0, 0.0
    )
    r_hyper = max(metrics.tar1 / thresholds.t180 - 1.0, 0.0) + max(
        metrics.tar2 / thresholds.t250 - 1.0, 0.0
    )
    return r_hypo, r_hyper


def reward(metrics: GlycemicMetrics, thresholds: RewardThresholds = RewardThresholds()) -> float:
    """Scalar reward: penalty when any target is exceeded, in-range bonus otherwise.

    The bonus denominator is the maximum in-range share compatible with the
    hypo/hyper budgets (100 - 25 - 4 = 71%), so the bonus tops out at
    100/71 - 1 when TIR is 100%.
    """
    r_hypo, r_hyper = r2r_components(metrics, thresholds)
    r_minus = r_hypo + r_hyper
    if r_minus > 0.0:
        return -r_minus
    denom = 100.0 - thresholds.t180 - thresholds.t70
    return max(metrics.tir / denom - 1.0, 0.0)
