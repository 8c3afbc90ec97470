from .meals import MealCategory, MealEvent, MealPlan, categorize_meal, generate_meal_scenario
from .patient import (
    PatientState,
    VirtualPatient,
    apply_daily_variability,
    generate_population,
    train_validation_split,
)
from .ode import step_ode
from .simulate import CCArm, InsulinDose, QMArm, SimTrace, sample_cgm, simulate_period

__all__ = [
    "MealCategory",
    "MealEvent",
    "MealPlan",
    "categorize_meal",
    "generate_meal_scenario",
    "PatientState",
    "VirtualPatient",
    "apply_daily_variability",
    "generate_population",
    "train_validation_split",
    "step_ode",
    "CCArm",
    "InsulinDose",
    "QMArm",
    "SimTrace",
    "sample_cgm",
    "simulate_period",
]
