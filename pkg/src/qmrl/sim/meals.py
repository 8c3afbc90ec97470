"""Meal categories, daily meal plans, and scenario generation.

A meal plan is a single day's template. A 14-day simulation step consumes a
list of daily plans; the "simple" scenario repeats one template, the "var"
scenario draws a fresh plan for every day.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class MealCategory(IntEnum):
    SNACK = 0
    LESS_THAN_USUAL = 1
    USUAL = 2
    MORE_THAN_USUAL = 3


def categorize_meal(carbs: float, thresholds: tuple[float, float, float]) -> MealCategory:
    """Bin a carb amount against per-patient thresholds; ties go to the lower bin."""
    if carbs <= 0.0:
        raise ValueError("carbs must be positive")
    m1, m2, m3 = thresholds
    if carbs <= m1:
        return MealCategory.SNACK
    if carbs <= m2:
        return MealCategory.LESS_THAN_USUAL
    if carbs <= m3:
        return MealCategory.USUAL
    return MealCategory.MORE_THAN_USUAL


@dataclass(frozen=True)
class MealEvent:
    minute: int          # minutes past midnight
    carbs: float         # grams
    category: MealCategory


@dataclass(frozen=True)
class MealPlan:
    events: tuple[MealEvent, ...]

    def __post_init__(self) -> None:
        minutes = [e.minute for e in self.events]
        if any(m2 <= m1 for m1, m2 in zip(minutes, minutes[1:])):
            raise ValueError("meal times must be strictly increasing within the day")
        if any(not 0 <= m < 1440 for m in minutes):
            raise ValueError("meal times must lie within the day")
        if any(e.carbs <= 0.0 for e in self.events):
            raise ValueError("meal carbs must be positive")


# Main meals at 07:30, 12:30, 18:30 +/- 60 min; snacks fall in mid-morning,
# mid-afternoon, or evening windows that cannot collide with jittered mains.
MAIN_MEAL_MINUTES = (450, 750, 1110)
MAIN_MEAL_JITTER = 60
MAIN_CARB_RANGE = (40.0, 120.0)
SNACK_WINDOWS = ((585, 675), (900, 990), (1260, 1350))
SNACK_CARB_RANGE = (10.0, 35.0)
MAX_SNACKS = 2


def generate_daily_plan(thresholds: tuple[float, float, float], rng: np.random.Generator) -> MealPlan:
    """One day of meals: three jittered mains plus 0-2 snacks."""
    events = []
    for base in MAIN_MEAL_MINUTES:
        minute = int(base + rng.integers(-MAIN_MEAL_JITTER, MAIN_MEAL_JITTER + 1))
        carbs = float(rng.uniform(*MAIN_CARB_RANGE))
        events.append(MealEvent(minute, carbs, categorize_meal(carbs, thresholds)))
    n_snacks = int(rng.integers(0, MAX_SNACKS + 1))
    windows = rng.choice(len(SNACK_WINDOWS), size=n_snacks, replace=False)
    for w in sorted(windows):
        lo, hi = SNACK_WINDOWS[w]
        minute = int(rng.integers(lo, hi + 1))
        carbs = float(rng.uniform(*SNACK_CARB_RANGE))
        events.append(MealEvent(minute, carbs, categorize_meal(carbs, thresholds)))
    events.sort(key=lambda e: e.minute)
    return MealPlan(tuple(events))


def generate_meal_scenario(
    patient,
    seed: int,
    mode: str,
    days: int = 14,
) -> list[MealPlan]:
    """Daily plans for one 14-day step.

    "simple": a single random template repeated every day (callers reuse the
    same seed across steps to keep it fixed for a whole episode).
    "var": every day drawn independently.
    """
    if mode not in ("simple", "var"):
        raise ValueError(f"unknown scenario mode: {mode!r}")
    rng = np.random.default_rng(np.random.SeedSequence((0x6D65616C, seed, patient.id)))
    if mode == "simple":
        plan = generate_daily_plan(patient.category_thresholds, rng)
        return [plan] * days
    return [generate_daily_plan(patient.category_thresholds, rng) for _ in range(days)]
