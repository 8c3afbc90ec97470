"""Virtual patient parameters, population generation, and day-to-day variability.

Parameter ranges are chosen so the standard clinical heuristics hang together:
insulin sensitivity follows the 1800 rule for the drawn total daily dose, and
carb bioavailability is scaled so 500-rule carb coverage is roughly dose-neutral.
See the population table in the README for the documented sampling ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Insulin disposal multiplier evaluated at a reference glucose of 150 mg/dL
# (ACTION_SLOPE * 150 + ACTION_FLOOR); keep in sync with ode.py.
_EFFECT_AT_REF = 125.0

# log-uniform unless noted
TDD_RANGE = (25.0, 70.0)              # U/day, drives insulin sensitivity
BASAL_FRACTION_RANGE = (0.40, 0.60)   # uniform; share of TDD given as basal
BODY_MASS_RANGE = (55.0, 95.0)        # kg, uniform
BASAL_GLUCOSE_RANGE = (110.0, 140.0)  # mg/dL, uniform
GLUCOSE_EFFECTIVENESS_RANGE = (0.006, 0.015)  # 1/min
INSULIN_CLEARANCE_RANGE = (0.020, 0.035)      # 1/min, remote-effect decay
SC_ABSORPTION_RANGE = (0.015, 0.025)          # 1/min
GUT_ABSORPTION_RANGE = (0.018, 0.030)         # 1/min
CARB_BIOAVAILABILITY_RANGE = (0.35, 0.50)     # uniform, effective fraction

# Meal-category thresholds (g): snack <= m1 < less-than-usual <= m2 < usual <= m3.
M1_RANGE = (10.0, 50.0)
M2_RANGE = (60.0, 90.0)
M3_RANGE = (100.0, 120.0)

# Daily log-normal variability: 2 sigma spans a x0.75..x1.33 swing.
DAILY_SIGMA = math.log(4.0 / 3.0) / 2.0


@dataclass(frozen=True)
class PatientState:
    plasma_glucose: float               # mg/dL
    remote_insulin_effect: float        # 1/min
    sc_insulin_depots: tuple[float, float]  # U
    gut_compartments: tuple[float, float]   # g
    clock: float = 0.0                  # minutes since scenario start


@dataclass(frozen=True)
class VirtualPatient:
    id: int
    body_mass: float              # kg
    basal_glucose: float          # mg/dL
    insulin_sensitivity: float    # remote effect per unit absorption rate, 1/U
    egp_rate: float               # mg/dL/min
    glucose_effectiveness: float  # 1/min
    insulin_clearance: float      # 1/min, decay of the remote insulin effect
    sc_absorption_rate: float     # 1/min
    gut_absorption_rate: float    # 1/min
    carb_bioavailability: float   # (0, 1]
    total_daily_dose: float       # U, seeds therapy parameters
    category_thresholds: tuple[float, float, float]  # grams
    basal_rate: float             # U/min, solved to hold fasting equilibrium

    def __post_init__(self) -> None:
        rates = (
            self.insulin_sensitivity,
            self.egp_rate,
            self.glucose_effectiveness,
            self.insulin_clearance,
            self.sc_absorption_rate,
            self.gut_absorption_rate,
        )
        if any(r <= 0.0 for r in rates):
            raise ValueError("all rate constants must be strictly positive")
        if not 0.0 < self.carb_bioavailability <= 1.0:
            raise ValueError("carb_bioavailability must lie in (0, 1]")
        m1, m2, m3 = self.category_thresholds
        if not m1 < m2 < m3:
            raise ValueError("category thresholds must be strictly increasing")

    def basal_remote_effect(self) -> float:
        """Remote insulin effect at fasting equilibrium (X with dX/dt = 0)."""
        return self.insulin_sensitivity * self.basal_rate

    def equilibrium_state(self) -> PatientState:
        """Fasting fixed point: glucose at basal_glucose, depots at steady state."""
        depot = self.basal_rate / self.sc_absorption_rate
        return PatientState(
            plasma_glucose=self.basal_glucose,
            remote_insulin_effect=self.basal_remote_effect(),
            sc_insulin_depots=(depot, depot),
            gut_compartments=(0.0, 0.0),
            clock=0.0,
        )

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "body_mass": self.body_mass,
            "basal_glucose": self.basal_glucose,
            "insulin_sensitivity": self.insulin_sensitivity,
            "egp_rate": self.egp_rate,
            "glucose_effectiveness": self.glucose_effectiveness,
            "insulin_clearance": self.insulin_clearance,
            "sc_absorption_rate": self.sc_absorption_rate,
            "gut_absorption_rate": self.gut_absorption_rate,
            "carb_bioavailability": self.carb_bioavailability,
            "total_daily_dose": self.total_daily_dose,
            "category_thresholds": list(self.category_thresholds),
            "basal_rate": self.basal_rate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VirtualPatient":
        d = dict(d)
        d["category_thresholds"] = tuple(d["category_thresholds"])
        return cls(**d)


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def _generate_patient(pid: int, rng: np.random.Generator) -> VirtualPatient:
    body_mass = float(rng.uniform(*BODY_MASS_RANGE))
    basal_glucose = float(rng.uniform(*BASAL_GLUCOSE_RANGE))
    tdd = _log_uniform(rng, *TDD_RANGE)
    basal_fraction = float(rng.uniform(*BASAL_FRACTION_RANGE))
    sg = _log_uniform(rng, *GLUCOSE_EFFECTIVENESS_RANGE)
    p2 = _log_uniform(rng, *INSULIN_CLEARANCE_RANGE)
    ka = _log_uniform(rng, *SC_ABSORPTION_RANGE)
    kgut = _log_uniform(rng, *GUT_ABSORPTION_RANGE)
    bio = float(rng.uniform(*CARB_BIOAVAILABILITY_RANGE))
    m1 = float(rng.uniform(*M1_RANGE))
    m2 = float(rng.uniform(*M2_RANGE))
    m3 = float(rng.uniform(*M3_RANGE))

    # 1800 rule at the reference glucose fixes sensitivity; basal then holds
    # the fasting fixed point exactly (see ode.py for the disposal term).
    si = 1800.0 / (tdd * _EFFECT_AT_REF)
    basal_rate = basal_fraction * tdd / 1440.0
    x_basal = si * basal_rate
    from .ode import ACTION_FLOOR, ACTION_SLOPE

    egp = sg * basal_glucose + x_basal * (ACTION_SLOPE * basal_glucose + ACTION_FLOOR)

    return VirtualPatient(
        id=pid,
        body_mass=body_mass,
        basal_glucose=basal_glucose,
        insulin_sensitivity=si,
        egp_rate=egp,
        glucose_effectiveness=sg,
        insulin_clearance=p2,
        sc_absorption_rate=ka,
        gut_absorption_rate=kgut,
        carb_bioavailability=bio,
        total_daily_dose=tdd,
        category_thresholds=(m1, m2, m3),
        basal_rate=basal_rate,
    )


def generate_population(n: int, seed: int) -> list[VirtualPatient]:
    """Deterministically generate ``n`` virtual patients with ids 0..n-1."""
    if n < 1:
        raise ValueError("population size must be >= 1")
    children = np.random.SeedSequence(seed).spawn(n)
    return [_generate_patient(i, np.random.default_rng(children[i])) for i in range(n)]


def train_validation_split(
    patients: list[VirtualPatient], n_train: int = 80
) -> tuple[list[VirtualPatient], list[VirtualPatient]]:
    """First ``n_train`` ids train, the rest validate."""
    return patients[:n_train], patients[n_train:]


def apply_daily_variability(patient: VirtualPatient, day: int, seed: int) -> tuple[float, float]:
    """Multiplicative (egp_factor, si_factor) for one day.

    Independent log-normal draws with geometric mean 1; deterministic per
    (patient, day, seed).
    """
    rng = np.random.default_rng(np.random.SeedSequence((0x76617279, seed, patient.id, day)))
    z = rng.standard_normal(2)
    return float(math.exp(DAILY_SIGMA * z[0])), float(math.exp(DAILY_SIGMA * z[1]))
