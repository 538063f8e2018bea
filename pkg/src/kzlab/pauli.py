"""Exact linear algebra for a single polarization qubit.

States live in the |H>, |V> basis and operators are kept in Pauli form
(c_I, c_x, c_y, c_z), which is the natural coordinate system for every
Hamiltonian and stage operator in this package.  The matrix form is a
derived view.  All functions here are pure and allocation-light.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

PAULI_BASIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)

# Below this rotation magnitude sin(r)/r is evaluated by its Taylor
# expansion to dodge the 0/0 cancellation.
_SINC_CUTOFF = 1e-8


class ZeroImage(ValueError):
    """Raised when an operator annihilates a state (inconsistent post-selection)."""


@dataclass(frozen=True)
class QubitState:
    """Two complex amplitudes on |H> and |V>.

    Global phase carries no physics; every probability-returning helper is
    invariant under multiplication by a unit complex scalar.
    """

    a_h: complex
    a_v: complex

    def norm(self) -> float:
        return math.sqrt(abs(self.a_h) ** 2 + abs(self.a_v) ** 2)

    def normalized(self) -> "QubitState":
        n = self.norm()
        if n == 0.0:
            raise ZeroImage("cannot normalize the zero state")
        return QubitState(self.a_h / n, self.a_v / n)

    @property
    def prob_h(self) -> float:
        """Population on |H>, assuming a normalized state."""
        return abs(self.a_h) ** 2

    @property
    def prob_v(self) -> float:
        return abs(self.a_v) ** 2

    def overlap(self, other: "QubitState") -> complex:
        """Inner product <self|other>."""
        return self.a_h.conjugate() * other.a_h + self.a_v.conjugate() * other.a_v

    def fidelity(self, other: "QubitState") -> float:
        """|<self|other>|^2, phase-insensitive."""
        return abs(self.overlap(other)) ** 2

    def bloch_vector(self) -> tuple[float, float, float]:
        """(x, y, z) expectation values of the Pauli operators."""
        h, v = self.a_h, self.a_v
        x = 2.0 * (h.conjugate() * v).real
        y = 2.0 * (h.conjugate() * v).imag
        z = abs(h) ** 2 - abs(v) ** 2
        return (x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.a_h, self.a_v], dtype=complex)

    @classmethod
    def from_array(cls, arr) -> "QubitState":
        return cls(complex(arr[0]), complex(arr[1]))


H_STATE = QubitState(1.0, 0.0)
V_STATE = QubitState(0.0, 1.0)
DIAGONAL_STATE = QubitState(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))
CIRCULAR_STATE = QubitState(1.0 / math.sqrt(2.0), 1.0j / math.sqrt(2.0))


@dataclass(frozen=True)
class Operator2:
    """A 2x2 complex operator stored as Pauli coefficients.

    op = c_i * I + c_x * sigma_x + c_y * sigma_y + c_z * sigma_z.
    The decomposition is a linear bijection, so the matrix view and the
    coefficient view agree to rounding.
    """

    c_i: complex
    c_x: complex
    c_y: complex
    c_z: complex

    @property
    def matrix(self) -> np.ndarray:
        ci, cx, cy, cz = self.c_i, self.c_x, self.c_y, self.c_z
        return np.array(
            [[ci + cz, cx - 1j * cy], [cx + 1j * cy, ci - cz]], dtype=complex
        )

    @classmethod
    def from_matrix(cls, m) -> "Operator2":
        return cls(*pauli_decompose(m))

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return (self.c_i, self.c_x, self.c_y, self.c_z)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        """Hermitian iff all four Pauli coefficients are real."""
        return all(abs(c.imag) <= tol for c in self.coefficients())

    def dagger(self) -> "Operator2":
        return Operator2(
            self.c_i.conjugate(),
            self.c_x.conjugate(),
            self.c_y.conjugate(),
            self.c_z.conjugate(),
        )

    def frobenius_norm(self) -> float:
        return math.sqrt(2.0 * sum(abs(c) ** 2 for c in self.coefficients()))

    def __matmul__(self, other: "Operator2") -> "Operator2":
        return Operator2.from_matrix(self.matrix @ other.matrix)

    def scaled(self, factor: complex) -> "Operator2":
        return Operator2(
            factor * self.c_i, factor * self.c_x, factor * self.c_y, factor * self.c_z
        )


def pauli_decompose(m) -> tuple[complex, complex, complex, complex]:
    """Invert a 2x2 matrix into Pauli coefficients (c_i, c_x, c_y, c_z).

    Linear inversion: c_i = tr(m)/2, c_x = (m01 + m10)/2,
    c_y = (m10 - m01)/(2i), c_z = (m00 - m11)/2.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    m00, m01, m10, m11 = complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1])
    c_i = 0.5 * (m00 + m11)
    c_x = 0.5 * (m01 + m10)
    c_y = 0.5j * (m01 - m10)
    c_z = 0.5 * (m00 - m11)
    return (c_i, c_x, c_y, c_z)


def exp_pauli(a_x: float, a_y: float, a_z: float) -> Operator2:
    """Closed-form exp(-i (a_x sigma_x + a_y sigma_y + a_z sigma_z)).

    Returns cos(r) I - i sin(r)/r (a . sigma) with r = |a|; the sinc factor
    switches to its 3-term Taylor expansion below r = 1e-8, so r = 0 gives
    the identity exactly.  The result is always unitary.
    """
    for name, value in (("a_x", a_x), ("a_y", a_y), ("a_z", a_z)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
    r = math.sqrt(a_x * a_x + a_y * a_y + a_z * a_z)
    if r < _SINC_CUTOFF:
        r2 = r * r
        sinc = 1.0 - r2 / 6.0 + r2 * r2 / 120.0
    else:
        sinc = math.sin(r) / r
    return Operator2(
        complex(math.cos(r)),
        -1j * sinc * a_x,
        -1j * sinc * a_y,
        -1j * sinc * a_z,
    )


def apply(op: Operator2, s: QubitState) -> tuple[QubitState, float]:
    """Apply op to s; return the renormalized image and its pre-normalization norm.

    Raises ZeroImage when the image vanishes relative to the operator and
    state scales, which signals post-selection on an impossible outcome.
    """
    m = op.matrix
    b_h = m[0, 0] * s.a_h + m[0, 1] * s.a_v
    b_v = m[1, 0] * s.a_h + m[1, 1] * s.a_v
    norm = math.sqrt(abs(b_h) ** 2 + abs(b_v) ** 2)
    scale = op.frobenius_norm() * s.norm()
    if norm <= 1e-14 * scale:
        raise ZeroImage("operator annihilates the state")
    return QubitState(b_h / norm, b_v / norm), norm


def global_phase(phi: float) -> complex:
    """Unit complex scalar e^{i phi}; handy for phase-invariance checks."""
    return cmath.exp(1j * phi)
