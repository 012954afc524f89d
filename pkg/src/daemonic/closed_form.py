"""Analytic expressions for the two protocols, used as independent oracles.

The conditional populations are written out term by term rather than in a
re-simplified form, so a transcription slip shows up as a mismatch against
the numeric pipeline. Energies are in units of ``omega``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateOutcome, ParameterOutOfRange

DEGENERATE_TOL = 1e-14


def heaviside(x: float) -> float:
    """Step function with ``heaviside(0) == 0``."""
    return 1.0 if x > 0.0 else 0.0


def _unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class ClosedFormPoint:
    gamma: float
    mu: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        _unit("gamma", self.gamma)
        _unit("mu", self.mu)


def chi(gamma: float, theta: float, a: int) -> float:
    """Ergotropy argument of the outcome-``a`` conditional state (memoryless case)."""
    if a not in (0, 1):
        raise ValueError(f"outcome index must be 0 or 1, got {a!r}")
    return gamma + (-1) ** a * (1.0 - gamma) * math.cos(theta)


def memoryless_daemonic(gamma: float, theta: float) -> float:
    _unit("gamma", gamma)
    p0 = p1 = 0.5
    x0, x1 = chi(gamma, theta, 0), chi(gamma, theta, 1)
    return p0 * x0 * heaviside(x0) + p1 * x1 * heaviside(x1)


def outcome_probabilities(gamma: float, theta: float) -> tuple[float, float]:
    """Ancilla outcome probabilities after the memory channel."""
    ct = math.cos(theta)
    return (1.0 + gamma * ct) / 2.0, (1.0 - gamma * ct) / 2.0


def memory_conditional_populations(gamma: float, mu: float, theta: float):
    """Excited/ground populations ``(alpha0, beta0, alpha1, beta1)`` of both conditionals."""
    _unit("gamma", gamma)
    _unit("mu", mu)
    g, ct = gamma, math.cos(theta)
    den0 = 2 * (g * ct + 1)
    den1 = 2 * (1 - g * ct)
    if min(den0, den1) / 2 < DEGENERATE_TOL:
        raise DegenerateOutcome(f"an outcome has zero probability at gamma={gamma}, theta={theta}")
    alpha0 = (g + (1 - g * (2 * g * (mu - 1) - 2 * mu + 1)) * ct + 1) / den0
    beta0 = ((g - 1) * ((2 * g * (mu - 1) + 1) * ct - 1)) / den0
    alpha1 = ((2 * g ** 2 * (mu - 1) - 2 * g * mu + g - 1) * ct + g + 1) / den1
    # leading factor is (1 - g): with (g - 1) alpha1 + beta1 would not be 1
    beta1 = ((1 - g) * ((2 * g * (mu - 1) + 1) * ct + 1)) / den1
    return alpha0, beta0, alpha1, beta1


def memory_daemonic(gamma: float, mu: float, theta: float) -> float:
    """Daemonic ergotropy after the two-use memory channel, measurement angle ``theta``.

    At the two degenerate corners (``gamma = 1``, ``cos(theta) = +-1``) the
    zero-probability outcome contributes nothing and the other conditional is
    ``|e><e|``, giving ``p * 1``.
    """
    p0, p1 = outcome_probabilities(gamma, theta)
    try:
        a0, _, a1, _ = memory_conditional_populations(gamma, mu, theta)
    except DegenerateOutcome:
        return max(p0, p1)
    return p0 * (2 * a0 - 1) * heaviside(a0 - 0.5) + p1 * (2 * a1 - 1) * heaviside(a1 - 0.5)


def memory_output_coefficients(gamma: float, mu: float) -> tuple[float, float, float, float]:
    """Diagonal weights on ``ee, eg, ge, gg`` of the memory-channel output state."""
    _unit("gamma", gamma)
    _unit("mu", mu)
    g = gamma
    w_ee = 0.5 * (g * (g + mu * (1 - g)) + 1)
    w_eg = 0.5 * g * (g - 1) * (mu - 1)
    w_ge = 0.5 * g * (g - 1) * (mu - 1)
    w_gg = -0.5 * (g - 1) * (g * (mu - 1) + 1)
    return w_ee, w_eg, w_ge, w_gg


def local_output_coefficients(gamma: float) -> tuple[float, float, float, float]:
    """Diagonal weights of the initial state after damping on the system only."""
    _unit("gamma", gamma)
    return 0.5, gamma / 2, 0.0, (1 - gamma) / 2


def reduced_system_populations(gamma: float) -> tuple[float, float]:
    return (1 + gamma) / 2, (1 - gamma) / 2


def plain_ergotropy(gamma: float) -> float:
    return gamma


def optimal_memoryless_daemonic(gamma: float) -> float:
    return max(0.5, gamma)


def optimal_memoryless_gain(gamma: float) -> float:
    return max(0.5 - gamma, 0.0)
