"""The Landau-Zener sweep: Hamiltonian schedule, spectrum, and the
critical-dynamics correspondence quantities.

The two-level Hamiltonian is H(t) = (omega0 sigma_x + delta t sigma_z) / 2
in natural units (hbar = 1).  omega0 is the minimum gap, reached at the
anticrossing t = 0, and delta is the sweep rate.  The quench-time and
relaxation-time analogs are tau_q = omega0/delta and tau_0 = 1/omega0, and
the dimensionless distance from the critical point is eps(t) = delta t / omega0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .pauli import Operator2, QubitState


class DegenerateGap(ValueError):
    """Raised where the instantaneous gap closes (omega0 = 0 and t = 0)."""


class UndefinedTau0(ValueError):
    """Raised when a quantity needs tau_0 = 1/omega0 but omega0 = 0."""


@dataclass(frozen=True)
class LZParams:
    """Sweep parameters: minimum gap omega0 >= 0 and rate delta > 0.

    tau_q and tau_0 are always derived from (omega0, delta), never stored.
    omega0 = 0 is allowed for analytic limit checks; operations that need
    tau_0 then raise UndefinedTau0.
    """

    omega0: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.omega0) and self.omega0 >= 0.0):
            raise ValueError(f"omega0 must be finite and >= 0, got {self.omega0}")
        if not (math.isfinite(self.delta) and self.delta > 0.0):
            raise ValueError(f"delta must be finite and > 0, got {self.delta}")

    @property
    def tau_q(self) -> float:
        return self.omega0 / self.delta

    @property
    def tau_0(self) -> float:
        if self.omega0 == 0.0:
            raise UndefinedTau0("tau_0 = 1/omega0 is undefined at omega0 = 0")
        return 1.0 / self.omega0

    def epsilon(self, t: float) -> float:
        """Relative distance from the critical point, delta*t/omega0."""
        if self.omega0 == 0.0:
            raise UndefinedTau0("epsilon(t) = delta*t/omega0 is undefined at omega0 = 0")
        return self.delta * t / self.omega0


class Eigensystem(NamedTuple):
    ground: QubitState
    excited: QubitState
    e_minus: float
    e_plus: float


class Correspondences(NamedTuple):
    tau_q: float
    tau_0: float
    epsilon: Callable[[float], float]


def hamiltonian_at(p: LZParams, t: float) -> Operator2:
    """H(t) = (omega0 sigma_x + delta t sigma_z) / 2 in Pauli form."""
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    return Operator2(0.0, 0.5 * p.omega0, 0.0, 0.5 * p.delta * t)


def gap(p: LZParams, t: float) -> float:
    """Instantaneous energy gap sqrt(omega0^2 + (delta t)^2).

    Its reciprocal plays the role of the relaxation time in the
    adiabatic-impulse picture.  Symmetric in t by construction.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    return math.hypot(p.omega0, p.delta * t)


def eigensystem_at(p: LZParams, t: float) -> Eigensystem:
    """Instantaneous eigenstates and energies of H(t).

    Energies are -gap/2 and +gap/2.  Eigenvectors are real with the |H>
    amplitude nonnegative, which pins the phase and makes overlap
    trajectories continuous in t.  The two analytically equivalent
    component formulas are selected by sign(delta*t) so that each is
    evaluated only where it is well conditioned.
    """
    g = gap(p, t)
    if g == 0.0:
        raise DegenerateGap("gap vanishes: omega0 = 0 and t = 0")
    b = p.delta * t
    if b > 0.0:
        excited = QubitState(g + b, p.omega0)
        ground = QubitState(p.omega0, -(g + b))
    else:
        excited = QubitState(p.omega0, g - b)
        ground = QubitState(g - b, -p.omega0)
    return Eigensystem(
        ground=ground.normalized(),
        excited=excited.normalized(),
        e_minus=-0.5 * g,
        e_plus=0.5 * g,
    )


def correspondences(p: LZParams) -> Correspondences:
    """Map the sweep onto quench-dynamics language.

    Returns tau_q = omega0/delta, tau_0 = 1/omega0 and the relative
    "temperature" eps(t) = delta*t/omega0, all in natural units.

    Raises:
        UndefinedTau0: if omega0 = 0.
    """
    return Correspondences(tau_q=p.tau_q, tau_0=p.tau_0, epsilon=p.epsilon)
