"""Time-evolution engines for the swept two-level system.

Three ways to propagate:

* ``exact_step``: the exact unitary exp(-i H(t_k) tau) for a frozen
  Hamiltonian sampled at the step midpoint (piecewise-constant digitization).
* ``first_order_step``: the interferometer's linearized, non-unitary step
  M = (I - i theta sigma_x - i theta eps_k sigma_z) / (2 sqrt(2)) with state
  renormalization; the squared norm loss is the heralded success
  probability of the optical stage and is independent of the input state.
* ``ode_solve``: an adaptive 8th-order Dormand-Prince integration of the
  Schrodinger equation, used as the reference for everything else.

``evolve`` folds a stepper over a midpoint plan and records a trajectory;
``asymptotic_defect_density`` and ``full_sweep_check`` are the two
measurement protocols built on the ODE engine.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import complex_ode

from .lz import LZParams, eigensystem_at, gap
from .pauli import QubitState, exp_pauli

_INV_2SQRT2 = 1.0 / (2.0 * math.sqrt(2.0))

STEPPERS = ("exact", "first_order")


class InvalidPlan(ValueError):
    """Raised for a step plan with n < 1 or tau <= 0."""


class UndefinedEpsilon(ValueError):
    """Raised when the linearized step needs eps_k = delta*t_k/omega0 but omega0 = 0."""


class ToleranceNotMet(RuntimeError):
    """Raised when the adaptive integrator underflows its step size."""


class TrotterAccuracyWarning(UserWarning):
    """Emitted when a linearized step is driven far outside its validity range."""


@dataclass(frozen=True)
class StepPlan:
    """n steps of duration tau starting at t_start, sampled at midpoints."""

    n: int
    tau: float
    t_start: float

    @property
    def midpoints(self) -> tuple[float, ...]:
        return tuple(self.t_start + (k - 0.5) * self.tau for k in range(1, self.n + 1))

    @property
    def t_end(self) -> float:
        return self.t_start + self.n * self.tau

    def step_end(self, k: int) -> float:
        """Time at the end of step k (1-based)."""
        return self.t_start + k * self.tau


def make_step_plan(n: int, tau: float, t_start: float = 0.0) -> StepPlan:
    if n < 1 or int(n) != n:
        raise InvalidPlan(f"step count must be a positive integer, got {n}")
    if not (math.isfinite(tau) and tau > 0.0):
        raise InvalidPlan(f"step duration must be finite and > 0, got {tau}")
    if not math.isfinite(t_start):
        raise InvalidPlan(f"t_start must be finite, got {t_start}")
    return StepPlan(n=int(n), tau=float(tau), t_start=float(t_start))


def exact_step(p: LZParams, t_k: float, tau: float, s: QubitState) -> QubitState:
    """Apply the exact frozen-Hamiltonian propagator exp(-i H(t_k) tau)."""
    op = exp_pauli(0.5 * p.omega0 * tau, 0.0, 0.5 * p.delta * t_k * tau)
    m = op.matrix
    return QubitState(
        m[0, 0] * s.a_h + m[0, 1] * s.a_v,
        m[1, 0] * s.a_h + m[1, 1] * s.a_v,
    )


def step_success_probability(theta: float, epsilon: float) -> float:
    """Heralded success probability (1 + theta^2 (1 + eps^2)) / 8 of one stage."""
    return (1.0 + theta * theta * (1.0 + epsilon * epsilon)) / 8.0


def first_order_step(
    p: LZParams, t_k: float, tau: float, s: QubitState
) -> tuple[QubitState, float]:
    """Linearized interferometer step with renormalization.

    Applies M = (I - i theta sigma_x - i theta eps_k sigma_z) / (2 sqrt(2))
    with theta = omega0 tau / 2 and eps_k = delta t_k / omega0, then
    renormalizes.  Since M^dag M is proportional to the identity the
    success probability ||M s||^2 = (1 + theta^2 (1 + eps_k^2)) / 8 does
    not depend on the input state.

    Returns:
        (renormalized state, step success probability)
    """
    if p.omega0 == 0.0:
        raise UndefinedEpsilon("eps_k = delta*t_k/omega0 is undefined at omega0 = 0")
    theta = 0.5 * p.omega0 * tau
    eps_k = p.delta * t_k / p.omega0
    drive = theta * math.hypot(1.0, eps_k)
    if drive > 0.5:
        warnings.warn(
            f"linearized step driven at theta*sqrt(1+eps^2) = {drive:.3g} > 0.5; "
            "the first-order approximation is degrading",
            TrotterAccuracyWarning,
            stacklevel=2,
        )
    b_h = _INV_2SQRT2 * (s.a_h - 1j * theta * s.a_v - 1j * theta * eps_k * s.a_h)
    b_v = _INV_2SQRT2 * (s.a_v - 1j * theta * s.a_h + 1j * theta * eps_k * s.a_v)
    norm = math.sqrt(abs(b_h) ** 2 + abs(b_v) ** 2)
    return QubitState(b_h / norm, b_v / norm), step_success_probability(theta, eps_k)


@dataclass(frozen=True)
class TrajectoryStep:
    """State of the evolution after step k (t is the step's end time).

    p_excited is the overlap with the instantaneous upper level at t; it is
    NaN if the gap is closed there (only possible at omega0 = 0, t = 0).
    """

    k: int
    t: float
    state: QubitState
    cumulative_success: float
    p_h: float
    p_excited: float


@dataclass(frozen=True)
class Trajectory:
    params: LZParams
    plan: StepPlan
    stepper: str
    initial: QubitState
    steps: tuple[TrajectoryStep, ...]

    @property
    def final_state(self) -> QubitState:
        return self.steps[-1].state if self.steps else self.initial

    @property
    def cumulative_success(self) -> float:
        return self.steps[-1].cumulative_success if self.steps else 1.0


def _p_excited_or_nan(p: LZParams, t: float, s: QubitState) -> float:
    if gap(p, t) == 0.0:
        return math.nan
    return excitation_probability(p, t, s)


def evolve(
    p: LZParams,
    plan: StepPlan,
    stepper: str = "exact",
    initial: Optional[QubitState] = None,
) -> Trajectory:
    """Fold a stepper over the plan's midpoints, recording each step.

    The initial state defaults to the instantaneous ground state at
    plan.t_start.  For the first-order stepper the cumulative success
    probability is the product of per-step success probabilities; the
    exact stepper is unitary so it stays at 1.
    """
    if stepper not in STEPPERS:
        raise ValueError(f"stepper must be one of {STEPPERS}, got {stepper!r}")
    if initial is None:
        initial = eigensystem_at(p, plan.t_start).ground
    state = initial.normalized()
    success = 1.0
    records = []
    for k, t_k in enumerate(plan.midpoints, start=1):
        if stepper == "exact":
            state = exact_step(p, t_k, plan.tau, state)
        else:
            state, step_success = first_order_step(p, t_k, plan.tau, state)
            success *= step_success
        t_after = plan.step_end(k)
        records.append(
            TrajectoryStep(
                k=k,
                t=t_after,
                state=state,
                cumulative_success=success,
                p_h=state.prob_h,
                p_excited=_p_excited_or_nan(p, t_after, state),
            )
        )
    return Trajectory(
        params=p, plan=plan, stepper=stepper, initial=initial, steps=tuple(records)
    )


def ode_solve(
    p: LZParams, t0: float, t1: float, initial: QubitState, tol: float = 1e-10
) -> QubitState:
    """Integrate i d|psi>/dt = H(t)|psi> from t0 to t1 and renormalize.

    Uses the adaptive embedded Dormand-Prince 8(5,3) method with
    rtol = atol = tol.  Deterministic for fixed inputs.

    Raises:
        ToleranceNotMet: if the step size underflows before reaching t1.
    """
    if not (1e-13 <= tol <= 1e-3):
        raise ValueError(f"tol must lie in [1e-13, 1e-3], got {tol}")
    y0 = initial.normalized().as_array()
    if t1 == t0:
        return QubitState.from_array(y0)
    half_omega = 0.5 * p.omega0
    half_delta = 0.5 * p.delta

    def rhs(t, y):
        a = half_delta * t
        return np.array(
            [
                -1j * (a * y[0] + half_omega * y[1]),
                -1j * (half_omega * y[0] - a * y[1]),
            ]
        )

    solver = complex_ode(rhs)
    solver.set_integrator("dop853", rtol=tol, atol=tol, nsteps=10**8)
    solver.set_initial_value(y0, t0)
    y = solver.integrate(t1)
    if not solver.successful():
        raise ToleranceNotMet(
            f"integrator failed before reaching t = {t1} (tol = {tol})"
        )
    return QubitState.from_array(y / np.linalg.norm(y))


def excitation_probability(p: LZParams, t: float, s: QubitState) -> float:
    """|<excited(t)|s>|^2, the defect-density observable.

    The raw |H> population (the lab's measured proxy) is available as
    ``s.prob_h``; the two agree once delta*t >> omega0.
    """
    return eigensystem_at(p, t).excited.fidelity(s)


def asymptotic_defect_density(
    p: LZParams, t_final_multiplier: float = 20.0, tol: float = 1e-10
) -> float:
    """Excitation probability long after a sweep started at the anticrossing.

    Evolves the instantaneous ground state at t = 0 out to
    t_end = max(m * omega0/delta, m / sqrt(delta)) with m the multiplier,
    a horizon where eps(t) >> 1, then projects on the upper level.
    Doubling the default horizon moves the result by less than 1e-3.
    """
    if p.omega0 <= 0.0:
        raise UndefinedTau0Like("omega0 must be > 0 for the asymptotic protocol")
    t_end = max(t_final_multiplier * p.omega0 / p.delta, t_final_multiplier / math.sqrt(p.delta))
    initial = eigensystem_at(p, 0.0).ground
    final = ode_solve(p, 0.0, t_end, initial, tol)
    return excitation_probability(p, t_end, final)


class UndefinedTau0Like(ValueError):
    """omega0 = 0 has no adiabatic side; the asymptotic protocol is undefined."""


class SweepComparison(NamedTuple):
    p_sim: float
    p_formula: float


def full_sweep_check(p: LZParams, big_t: float, tol: float = 1e-8) -> SweepComparison:
    """Numerically sweep ground(-T) -> +T and compare with the diabatic law.

    The closed-form transition probability for this normalization is
    exp(-pi omega0^2 / (2 delta)); p_sim is the integrated excitation
    probability at +T.
    """
    p_formula = math.exp(-math.pi * p.omega0 * p.omega0 / (2.0 * p.delta))
    initial = eigensystem_at(p, -big_t).ground
    final = ode_solve(p, -big_t, big_t, initial, tol)
    p_sim = excitation_probability(p, big_t, final)
    return SweepComparison(p_sim=p_sim, p_formula=p_formula)
