"""Surrogate glucose-insulin dynamics for one virtual patient.

Minimal-model core (plasma glucose + remote insulin effect) extended with a
two-compartment subcutaneous insulin depot and a two-compartment gut:

    dIsc1/dt = u_basal          - ka * Isc1         (U; boluses are impulses)
    dIsc2/dt = ka * Isc1        - ka * Isc2
    dX/dt    = p2 * (SI * ka * Isc2 - X)            (remote effect, 1/min)
    dQ1/dt   =                  - kgut * Q1          (g; meals are impulses)
    dQ2/dt   = kgut * Q1        - kgut * Q2
    dG/dt    = EGP - SG * G - X * (0.5 * G + 50) + Ra

with Ra = f * 1000 / (1.6 * BW) * kgut * Q2 the meal appearance in mg/dL/min.
Insulin-driven disposal is linearized below ~100 mg/dL (the ``0.5 G + 50``
factor), so a massive overdose can push glucose nonpositive - the episode
termination signal - while the model still holds an exact fasting fixed point.

Integration is fixed-step RK4; production code steps at 1 minute.
"""

from __future__ import annotations

from .patient import PatientState, VirtualPatient

# Insulin-dependent disposal multiplier: X * (SLOPE * G + FLOOR).
ACTION_SLOPE = 0.5
ACTION_FLOOR = 50.0
# Glucose distribution volume, dL per kg of body mass.
GLUCOSE_VOLUME_PER_KG = 1.6


def carb_to_conc(patient: VirtualPatient) -> float:
    """mg/dL of plasma glucose contributed per gram of absorbed carbohydrate."""
    return patient.carb_bioavailability * 1000.0 / (GLUCOSE_VOLUME_PER_KG * patient.body_mass)


def rk4_step(
    params: tuple[float, float, float, float, float, float, float],
    state: tuple[float, float, float, float, float, float],
    u_basal: float,
    dt: float,
) -> tuple[float, float, float, float, float, float]:
    """One RK4 step on plain floats; ``params`` and ``state`` as packed below.

    params = (egp, si, sg, p2, ka, kgut, kconv) with any daily variability
    already folded into egp and si. state = (G, X, Isc1, Isc2, Q1, Q2).
    """
    egp, si, sg, p2, ka, kgut, kconv = params

    def deriv(g, x, i1, i2, q1, q2):
        ra = kconv * kgut * q2
        return (
            egp - sg * g - x * (ACTION_SLOPE * g + ACTION_FLOOR) + ra,
            p2 * (si * ka * i2 - x),
            u_basal - ka * i1,
            ka * (i1 - i2),
            -kgut * q1,
            kgut * (q1 - q2),
        )

    g, x, i1, i2, q1, q2 = state
    k1 = deriv(g, x, i1, i2, q1, q2)
    h = dt * 0.5
    k2 = deriv(
        g + h * k1[0], x + h * k1[1], i1 + h * k1[2], i2 + h * k1[3], q1 + h * k1[4], q2 + h * k1[5]
    )
    k3 = deriv(
        g + h * k2[0], x + h * k2[1], i1 + h * k2[2], i2 + h * k2[3], q1 + h * k2[4], q2 + h * k2[5]
    )
    k4 = deriv(
        g + dt * k3[0],
        x + dt * k3[1],
        i1 + dt * k3[2],
        i2 + dt * k3[3],
        q1 + dt * k3[4],
        q2 + dt * k3[5],
    )
    sixth = dt / 6.0
    return (
        g + sixth * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]),
        x + sixth * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]),
        i1 + sixth * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]),
        i2 + sixth * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3]),
        q1 + sixth * (k1[4] + 2.0 * (k2[4] + k3[4]) + k4[4]),
        q2 + sixth * (k1[5] + 2.0 * (k2[5] + k3[5]) + k4[5]),
    )


def pack_params(
    patient: VirtualPatient, egp_factor: float = 1.0, si_factor: float = 1.0
) -> tuple[float, float, float, float, float, float, float]:
    return (
        patient.egp_rate * egp_factor,
        patient.insulin_sensitivity * si_factor,
        patient.glucose_effectiveness,
        patient.insulin_clearance,
        patient.sc_absorption_rate,
        patient.gut_absorption_rate,
        carb_to_conc(patient),
    )


def step_ode(
    patient: VirtualPatient,
    state: PatientState,
    inputs: tuple[float, float, float],
    dt: float = 1.0,
    egp_factor: float = 1.0,
    si_factor: float = 1.0,
) -> PatientState:
    """Advance the patient one step. ``inputs`` = (basal U/min, bolus U, carbs g).

    Bolus and carb impulses are deposited into the first subcutaneous/gut
    compartments before the step. Nonpositive glucose is returned as-is; the
    environment layer decides what that means.
    """
    if not 0.0 < dt <= 1.0:
        raise ValueError("dt must be in (0, 1] minutes")
    u_basal, bolus, carbs = inputs
    i1, i2 = state.sc_insulin_depots
    q1, q2 = state.gut_compartments
    packed = (state.plasma_glucose, state.remote_insulin_effect, i1 + bolus, i2, q1 + carbs, q2)
    g, x, i1, i2, q1, q2 = rk4_step(pack_params(patient, egp_factor, si_factor), packed, u_basal, dt)
    return PatientState(g, x, (i1, i2), (q1, q2), state.clock + dt)
