"""Parameter conversions for the driven, damped, anharmonic subharmonic oscillator.

Raw two-mode circuit rates (kHz) are reduced to the effective single-mode model
by adiabatic elimination of the strongly damped pump mode, and then to the
dimensionless couplings that every analytic formula downstream consumes.

Conventions: all rates and drives are in kHz, all times elsewhere in the
package are in ms, and the pump detuning is fixed to zero (strong-damping
limit), so the effective two-photon drive is real.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

from .errors import AdiabaticValidityWarning, DegenerateNonlinearity, ZeroDrive

#: gamma2 / gamma1_1 ratios below this trip a (non-fatal) adiabatic-validity warning.
ADIABATIC_RATIO = 10.0


@dataclass(frozen=True)
class PhysicalParams:
    """Two-mode circuit parameters before adiabatic elimination (kHz).

    Attributes
    ----------
    gamma1_1 : single-photon amplitude decay of the subharmonic mode
    gamma1_2 : intrinsic two-photon decay of the subharmonic mode
    gamma2   : single-photon decay of the pump mode
    delta1   : subharmonic detuning
    chi      : anharmonicity (self-Kerr) of the subharmonic mode
    kappa    : parametric (pair-conversion) coupling
    drive1   : complex coherent drive at the subharmonic frequency
    drive2   : real coherent drive at the pump frequency
    """

    gamma1_1: float
    gamma2: float
    gamma1_2: float = 0.0
    delta1: float = 0.0
    chi: float = 0.0
    kappa: float = 0.0
    drive1: complex = 0j
    drive2: float = 0.0

    def __post_init__(self):
        if self.gamma1_1 <= 0:
            raise ValueError(f"gamma1_1 must be positive, got {self.gamma1_1}")
        if self.gamma2 <= 0:
            raise ValueError(f"gamma2 must be positive, got {self.gamma2}")
        if self.gamma1_2 < 0:
            raise ValueError(f"gamma1_2 must be nonnegative, got {self.gamma1_2}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be nonnegative, got {self.kappa}")
        if self.drive2 < 0:
            raise ValueError(f"drive2 must be nonnegative, got {self.drive2}")
        if self.gamma2 < ADIABATIC_RATIO * self.gamma1_1:
            warnings.warn(
                f"gamma2 = {self.gamma2} is less than {ADIABATIC_RATIO} x gamma1_1 "
                f"= {ADIABATIC_RATIO * self.gamma1_1}; adiabatic elimination of the "
                "pump mode may be inaccurate",
                AdiabaticValidityWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class ReducedParams:
    """Effective single-mode model after eliminating the pump mode (kHz).

    gamma = gamma1_1 + i*delta1 is the complex single-photon decay,
    g = gamma2eff + i*chi the combined nonlinear coefficient, where
    gamma2eff = gamma1_2 + kappa^2/(2*gamma2) includes the pump-induced
    two-photon loss, and E = kappa*drive2/gamma2 is the effective
    two-photon drive.
    """

    gamma: complex
    g: complex
    gamma2eff: float
    E: float
    drive1: complex = 0j

    def __post_init__(self):
        if abs(self.g) == 0.0:
            raise DegenerateNonlinearity(
                "combined nonlinear coefficient g vanishes; the degenerate "
                "two-photon model does not exist"
            )
        if self.gamma.real <= 0:
            raise ValueError(f"Re(gamma) must be positive, got {self.gamma}")
        if self.gamma2eff < 0:
            raise ValueError(f"gamma2eff must be nonnegative, got {self.gamma2eff}")

    @classmethod
    def from_rates(cls, gamma1_1, gamma2eff, chi, E, delta1=0.0, drive1=0j):
        """Build directly from effective single-mode rates (kHz)."""
        return cls(
            gamma=complex(gamma1_1, delta1),
            g=complex(gamma2eff, chi),
            gamma2eff=float(gamma2eff),
            E=float(E),
            drive1=complex(drive1),
        )


@dataclass(frozen=True)
class DimensionlessParams:
    """Dimensionless couplings of the scaled model.

    epsilon = E/g, n = |epsilon| is the saturation photon number,
    c = gamma/(g*n), theta the phase of g, d the scaled subharmonic drive,
    c_tilde = c - 1/n the noise-shifted coupling, and
    c_bar = c_tilde + 1/(2n) the barrier-frame coupling.
    """

    epsilon: complex
    n: float
    c: complex
    d: complex
    theta: float
    c_tilde: complex
    c_bar: complex


def reduce(p: PhysicalParams) -> ReducedParams:
    """Adiabatically eliminate the pump mode.

    The pump-induced two-photon loss kappa^2/(2*gamma2) adds to the intrinsic
    one, and the pump drive transfers as E = kappa*drive2/gamma2.

    Raises
    ------
    DegenerateNonlinearity
        If kappa = gamma1_2 = chi = 0, so |g| = 0.
    """
    gamma2eff = p.gamma1_2 + p.kappa**2 / (2.0 * p.gamma2)
    return ReducedParams(
        gamma=complex(p.gamma1_1, p.delta1),
        g=complex(gamma2eff, p.chi),
        gamma2eff=gamma2eff,
        E=p.kappa * p.drive2 / p.gamma2,
        drive1=complex(p.drive1),
    )


def dimensionless(r: ReducedParams) -> DimensionlessParams:
    """Scale the reduced model to its dimensionless form.

    Raises
    ------
    ZeroDrive
        If E = 0: c is undefined and the scaled model does not exist.
    """
    if r.E == 0.0:
        raise ZeroDrive("effective two-photon drive E is zero; no scaled model")
    epsilon = r.E / r.g
    n = abs(epsilon)
    c = r.gamma / (r.g * n)
    theta = cmath.phase(r.g)
    if r.drive1 == 0:
        d = 0j
    else:
        # principal square root of epsilon; only relevant with a subharmonic drive
        d = abs(r.g) * r.drive1 / (r.g * r.E * cmath.sqrt(epsilon))
    c_tilde = c - 1.0 / n
    c_bar = c_tilde + 1.0 / (2.0 * n)
    return DimensionlessParams(
        epsilon=epsilon, n=n, c=c, d=d, theta=theta, c_tilde=c_tilde, c_bar=c_bar
    )
