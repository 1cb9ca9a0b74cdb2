"""Closed-form reflection model of a spin qubit in a single-sided cavity.

All rates are angular frequencies in rad/ns.  Values quoted in the
literature as nu/2pi in GHz convert through :func:`from_ghz`.  Throughout
the package ``kappa`` is the emitter dipole decay rate and ``gamma`` the
cavity decay rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Bohr magneton over hbar, mu_B/hbar = 2pi x 13.996 GHz/T, expressed in
# rad/ns per tesla.  Single source of truth for all Zeeman arithmetic.
MU_B_OVER_HBAR = TWO_PI * 13.996


def from_ghz(value_over_2pi):
    """Angular frequency in rad/ns from a value quoted as nu/2pi in GHz."""
    return TWO_PI * value_over_2pi


@dataclass(frozen=True)
class CavityParams:
    """Physical rates of a Zeeman-split spin coupled to one cavity mode.

    The spin-up optical transition is taken resonant with the probe; the
    spin-down transition is detuned by the Zeeman splitting set by
    ``b_field`` and the Lande factors.
    """

    g: float               # spin-cavity coupling, rad/ns
    kappa: float           # emitter dipole decay, rad/ns
    gamma: float           # cavity decay, rad/ns
    b_field: float = 0.0   # magnetic field, tesla
    g_e: float = 0.0       # electron Lande factor
    g_h: float = 0.0       # hole Lande factor

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("coupling g must be >= 0")
        if self.kappa <= 0 or self.gamma <= 0:
            raise ValueError("decay rates kappa and gamma must be > 0")
        if self.b_field < 0:
            raise ValueError("b_field must be >= 0")

    @classmethod
    def from_ghz(cls, g_over_2pi_ghz, kappa_over_2pi_ghz, gamma_over_2pi_ghz,
                 b_field_tesla=0.0, g_e=0.0, g_h=0.0):
        return cls(from_ghz(g_over_2pi_ghz), from_ghz(kappa_over_2pi_ghz),
                   from_ghz(gamma_over_2pi_ghz), b_field_tesla, g_e, g_h)


def quantum_dot_params(b_field_tesla=12.0):
    """Measured parameter set of a charged quantum dot in a nanocavity:
    g/2pi = 10 GHz, kappa/2pi = 0.3 GHz, gamma/2pi = 40 GHz, g_e = 0.43,
    g_h = 0.21."""
    return CavityParams.from_ghz(10.0, 0.3, 40.0, b_field_tesla, 0.43, 0.21)


@dataclass(frozen=True)
class ChiralParams:
    """Spin-cavity system with polarization-selective (chiral) coupling.

    ``cooperativity`` may be given directly; otherwise it is derived from
    the rates as 4 g^2 / (gamma kappa).  ``kappa`` is still needed to turn
    the dimensionless working point into a detuning.
    """

    cooperativity: float | None = None
    g: float | None = None
    kappa: float = from_ghz(0.3)
    gamma: float | None = None

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")
        if self.cooperativity is None:
            if self.g is None or self.gamma is None:
                raise ValueError("give cooperativity directly or both g and gamma")
            object.__setattr__(
                self, "cooperativity",
                4.0 * self.g**2 / (self.gamma * self.kappa))
        if self.cooperativity <= 0:
            raise ValueError("cooperativity must be > 0")


@dataclass(frozen=True)
class ReflectionPair:
    """Spin-conditioned reflection coefficients of the cavity."""

    r_up: complex
    r_down: complex

    def __post_init__(self):
        if abs(self.r_up) > 1 + 1e-12 or abs(self.r_down) > 1 + 1e-12:
            raise ValueError("passive cavity reflection cannot exceed unit modulus")


def cooperativity_resonant(p: CavityParams) -> float:
    """On-resonant cooperativity C = 4 g^2 / (gamma kappa)."""
    return 4.0 * p.g**2 / (p.gamma * p.kappa)


def zeeman_detuning(p: CavityParams) -> float:
    """Detuning of the spin-down transition, (g_e + g_h) mu_B B / hbar, rad/ns."""
    return (p.g_e + p.g_h) * MU_B_OVER_HBAR * p.b_field


def cooperativity_offres(p: CavityParams) -> complex:
    """Complex cooperativity of the detuned spin-down transition,
    4 g^2 / (gamma (kappa + 2i Delta))."""
    delta = zeeman_detuning(p)
    return 4.0 * p.g**2 / (p.gamma * (p.kappa + 2j * delta))


def spin_dependent_reflection(p: CavityParams) -> ReflectionPair:
    """Reflection coefficients (C - 1)/(C + 1) for both spin states.

    The spin-up transition is resonant, so r_up is real; r_down carries the
    full complex off-resonant cooperativity.
    """
    c_up = cooperativity_resonant(p)
    c_down = cooperativity_offres(p)
    return ReflectionPair((c_up - 1.0) / (c_up + 1.0),
                          (c_down - 1.0) / (c_down + 1.0))


def reflection_general(omega, omega_c, omega_s, p: CavityParams) -> complex:
    """Steady-state reflection of a single-sided cavity with one emitter.

    ``omega`` is the probe frequency, ``omega_c`` the cavity resonance and
    ``omega_s`` the emitter transition frequency (all rad/ns).  Reduces to
    the spin-dependent form when the cavity is resonant with the probe.
    """
    atom = 1j * (omega_s - omega) + p.kappa / 2.0
    cav = 1j * (omega_c - omega) + p.gamma / 2.0
    return 1.0 - p.gamma * atom / (atom * cav + p.g**2)


def chiral_reflection(p: ChiralParams):
    """Working point of the chiral gate: detuning chosen so the coupled
    polarization reflects with a pi/2 phase.

    Returns ``(r0, r1, delta_s)`` where r0 = -1 is the uncoupled
    polarization, r1 = -i sqrt((C-1)/(C+1)) the coupled one, and
    delta_s = (kappa/2) sqrt(C^2 - 1) the required detuning.
    """
    c = p.cooperativity
    if c < 1.0:
        raise ValueError("chiral working point needs cooperativity >= 1")
    delta_s = 0.5 * p.kappa * math.sqrt(c * c - 1.0)
    r1 = -1j * math.sqrt((c - 1.0) / (c + 1.0))
    return -1.0 + 0.0j, r1, delta_s
