"""MDI dosing engines.

Two mealtime strategies live here:

* the qualitative-meal (QM) calculator, which doses from a meal category and
  a time-of-day coefficient instead of counted carbohydrates:

      B = b_category * alpha_window + max((G - G_target) / K_ISF, 0) - IOB

* a carbohydrate-counting (CC) comparison arm with optional counting error.

Both subtract insulin-on-board (IOB) and never deliver a negative bolus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .sim.meals import MealCategory

# Duration of insulin action for the IOB bookkeeping curve (minutes).
DIA_MINUTES = 300.0

# Per-step relative change cap: an action component of +/-1 moves a dose
# parameter by +/-30%.
ACTION_SCALE = 0.3

DOSE_MIN, DOSE_MAX = 0.0, 30.0       # U, per-category dose clamp
COEFF_MIN, COEFF_MAX = 0.2, 3.0      # time-of-day coefficient clamp

N_CATEGORIES = 4
N_WINDOWS = 6
ACTION_DIM = N_CATEGORIES + N_WINDOWS

# Four-hour windows starting at 03:00: 3-7, 7-11, 11-15, 15-19, 19-23, 23-3.
WINDOW_STARTS_H = (3, 7, 11, 15, 19, 23)


def window_of_minute(minute: float) -> int:
    """Index (0..5) of the four-hour window containing a time of day."""
    minute_of_day = minute % 1440.0
    return int(((minute_of_day - 180.0) % 1440.0) // 240.0)


def iob_fraction(elapsed_minutes: float, dia: float = DIA_MINUTES) -> float:
    """Fraction of a bolus still active: linear decay from 1 to 0 over DIA."""
    if elapsed_minutes <= 0.0:
        return 1.0
    return max(0.0, 1.0 - elapsed_minutes / dia)


def insulin_on_board(
    dose_history: Iterable[tuple[float, float]], now: float, dia: float = DIA_MINUTES
) -> float:
    """Undissipated insulin from past boluses, ``dose_history`` = [(minute, units)]."""
    return sum(units * iob_fraction(now - t, dia) for t, units in dose_history)


@dataclass
class QMPolicy:
    """The 10 dosing parameters being optimized, plus fixed correction settings."""

    category_dose: np.ndarray   # (4,) U, indexed by MealCategory
    time_coefficient: np.ndarray  # (6,) dimensionless, indexed by window
    glucose_target: float = 120.0  # mg/dL
    isf: float = 50.0              # (mg/dL)/U correction factor

    def __post_init__(self) -> None:
        self.category_dose = np.asarray(self.category_dose, dtype=np.float64)
        self.time_coefficient = np.asarray(self.time_coefficient, dtype=np.float64)
        if self.category_dose.shape != (N_CATEGORIES,):
            raise ValueError("category_dose must have 4 entries")
        if self.time_coefficient.shape != (N_WINDOWS,):
            raise ValueError("time_coefficient must have 6 entries")
        if self.isf <= 0.0:
            raise ValueError("isf must be positive")

    def copy(self) -> "QMPolicy":
        return QMPolicy(
            self.category_dose.copy(),
            self.time_coefficient.copy(),
            self.glucose_target,
            self.isf,
        )

    def as_dict(self) -> dict:
        return {
            "category_dose": [float(v) for v in self.category_dose],
            "time_coefficient": [float(v) for v in self.time_coefficient],
            "glucose_target": float(self.glucose_target),
            "isf": float(self.isf),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QMPolicy":
        return cls(
            np.asarray(d["category_dose"], dtype=np.float64),
            np.asarray(d["time_coefficient"], dtype=np.float64),
            float(d["glucose_target"]),
            float(d["isf"]),
        )


@dataclass
class CCProfile:
    """Carbohydrate-counting therapy parameters for the comparison arm."""

    icr: np.ndarray              # (6,) g/U per time window
    cf: float                    # (mg/dL)/U
    glucose_target: float = 120.0
    counting_error: float = 0.0  # relative; 0.2 means counts off by up to +/-20%

    def __post_init__(self) -> None:
        self.icr = np.asarray(self.icr, dtype=np.float64)
        if self.icr.shape != (N_WINDOWS,):
            raise ValueError("icr must have one value per time window")
        if np.any(self.icr <= 0.0) or self.cf <= 0.0:
            raise ValueError("icr and cf must be positive")


def qm_bolus(
    policy: QMPolicy,
    category: MealCategory,
    window: int,
    glucose: float,
    iob: float,
) -> float:
    """Qualitative-meal bolus; negative results clamp to zero."""
    g = min(max(glucose, 40.0), 400.0)
    correction = max((g - policy.glucose_target) / policy.isf, 0.0)
    dose = (
        policy.category_dose[int(category)] * policy.time_coefficient[window]
        + correction
        - iob
    )
    return max(dose, 0.0)


def cc_bolus(
    profile: CCProfile,
    true_carbs: float,
    window: int,
    glucose: float,
    iob: float,
    rng: np.random.Generator,
) -> float:
    """Carb-counting bolus with an optional uniform counting error."""
    if true_carbs <= 0.0:
        raise ValueError("true_carbs must be positive")
    error = 0.0
    if profile.counting_error > 0.0:
        error = rng.uniform(-profile.counting_error, profile.counting_error)
    counted = true_carbs * (1.0 + error)
    g = min(max(glucose, 40.0), 400.0)
    correction = max((g - profile.glucose_target) / profile.cf, 0.0)
    dose = counted / profile.icr[window] + correction - iob
    return max(dose, 0.0)


def apply_action(policy: QMPolicy, action: np.ndarray, scale: float = ACTION_SCALE) -> QMPolicy:
    """Apply a 10-vector of relative changes: 4 per-category, 6 per-window.

    Each component in [-1, 1] multiplies its parameter by (1 + scale*delta);
    results are clamped to the policy's physical bounds.
    """
    a = np.asarray(action, dtype=np.float64)
    if a.shape != (ACTION_DIM,):
        raise ValueError(f"action must have {ACTION_DIM} entries")
    if np.any(np.abs(a) > 1.0 + 1e-12):
        raise ValueError("action components must lie in [-1, 1]")
    doses = np.clip(policy.category_dose * (1.0 + scale * a[:N_CATEGORIES]), DOSE_MIN, DOSE_MAX)
    coeffs = np.clip(
        policy.time_coefficient * (1.0 + scale * a[N_CATEGORIES:]), COEFF_MIN, COEFF_MAX
    )
    return QMPolicy(doses, coeffs, policy.glucose_target, policy.isf)


def category_midpoint_carbs(thresholds: tuple[float, float, float]) -> np.ndarray:
    """Representative carb load per category given a patient's thresholds."""
    m1, m2, m3 = thresholds
    top = 150.0  # largest meal the scenarios generate
    return np.array(
        [m1 / 2.0, (m1 + m2) / 2.0, (m2 + m3) / 2.0, (m3 + top) / 2.0], dtype=np.float64
    )


def random_qm_policy(patient, rng: np.random.Generator) -> QMPolicy:
    """Initial QM strategy: 500-rule carb coverage of each category midpoint,
    scattered by a wide uniform factor, with uniform time coefficients."""
    icr_500 = 500.0 / patient.total_daily_dose
    midpoints = category_midpoint_carbs(patient.category_thresholds)
    doses = midpoints / icr_500 * rng.uniform(0.3, 1.7, size=N_CATEGORIES)
    coeffs = rng.uniform(0.7, 1.3, size=N_WINDOWS)
    return QMPolicy(
        np.clip(doses, DOSE_MIN, DOSE_MAX),
        np.clip(coeffs, COEFF_MIN, COEFF_MAX),
        glucose_target=120.0,
        isf=1800.0 / patient.total_daily_dose,
    )
