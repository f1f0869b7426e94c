"""Mean-field stationary states, linear stability, and the phase diagram.

The scaled mean-field equation of motion is

    d(beta)/d(tau) = e^{i*theta} [ (1 - beta^2) beta* - c beta ],

with complex dimensionless loss c and nonlinear phase theta.  Besides the
vacuum, nonzero stationary amplitudes exist on two intensity branches
|beta|^2 = -Re(c) +/- Pi(c) with Pi(c) = sqrt(1 - Im(c)^2), giving a phase
diagram with one stable vacuum region, a bistable region, and a tristable
region.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryCaseWarning,
    NonstationaryWarning,
    OutsideDomain,
    StepTooLarge,
)

#: classification is ambiguous within this distance of the critical lines
BOUNDARY_TOL = 1e-12


class Branch(enum.Enum):
    """Stationary-solution family: vacuum, or the +/- intensity branch."""

    VACUUM = "vacuum"
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Region(enum.Enum):
    I = "I"    # unique stable vacuum
    II = "II"  # bistable: vacuum unstable, +branch pair stable
    III = "III"  # tristable: vacuum and +branch stable, -branch unstable


@dataclass(frozen=True)
class MeanFieldRoot:
    beta: complex
    branch: Branch
    intensity: float


@dataclass(frozen=True)
class PhaseRegion:
    region: Region
    stable_roots: tuple[MeanFieldRoot, ...]
    unstable_roots: tuple[MeanFieldRoot, ...]
    boundary_case: bool = False


def pi_factor(c: complex) -> float:
    """sqrt(1 - Im(c)^2), the discriminant of the intensity quadratic.

    Raises OutsideDomain for |Im(c)| > 1, where no nonzero branch exists.
    """
    c = complex(c)
    if abs(c.imag) > 1.0:
        raise OutsideDomain(f"|Im(c)| = {abs(c.imag)} > 1: no nonzero branch")
    return math.sqrt(1.0 - c.imag**2)


def stationarity_residual(beta: complex, c: complex) -> float:
    """|(1 - beta^2) beta* - c beta|, zero at a stationary point."""
    beta = complex(beta)
    return abs((1.0 - beta * beta) * beta.conjugate() - c * beta)


def stationary_points(c: complex) -> list[MeanFieldRoot]:
    """All mean-field stationary amplitudes at coupling c.

    The vacuum is always included.  The positive branch exists for
    (Re(c) < 0 and |Im(c)| <= 1) or |c| < 1; the negative branch for
    Re(c) < 0 and |Im(c)| < 1 < |c|.  Nonzero amplitudes come in +/- pairs
    from the principal square root.
    """
    c = complex(c)
    roots = [MeanFieldRoot(0j, Branch.VACUUM, 0.0)]
    if abs(c.imag) > 1.0:
        return roots
    p = math.sqrt(1.0 - c.imag**2)
    shift = (c * c - abs(c) ** 2) / 2.0
    if (c.real < 0.0 and abs(c.imag) <= 1.0) or abs(c) < 1.0:
        b = cmath.sqrt(1.0 + shift - c * p)
        inten = abs(b) ** 2
        roots.append(MeanFieldRoot(b, Branch.POSITIVE, inten))
        roots.append(MeanFieldRoot(-b, Branch.POSITIVE, inten))
    if c.real < 0.0 and abs(c.imag) < 1.0 < abs(c):
        b = cmath.sqrt(1.0 + shift + c * p)
        inten = abs(b) ** 2
        roots.append(MeanFieldRoot(b, Branch.NEGATIVE, inten))
        roots.append(MeanFieldRoot(-b, Branch.NEGATIVE, inten))
    return roots


def stability_eigenvalues(beta: complex, c: complex, theta: float) -> tuple[complex, complex]:
    """Eigenvalues (lambda_+, lambda_-) of the linearization around beta.

    lambda_+- = -m +/- sqrt(m^2 - |2|beta|^2 + c|^2 + |1 - beta^2|^2)
    with m = Re[e^{i theta} (2|beta|^2 + c)].  The point is stable iff both
    real parts are negative, equivalent to m > 0 together with
    |2|beta|^2 + c|^2 > |1 - beta^2|^2.

    A warning (not an error) is emitted when beta is not stationary.
    """
    beta = complex(beta)
    c = complex(c)
    if stationarity_residual(beta, c) > 1e-8:
        warnings.warn(
            f"beta = {beta} is not a stationary point of the mean-field flow",
            NonstationaryWarning,
            stacklevel=2,
        )
    w = 2.0 * abs(beta) ** 2 + c
    m = (cmath.exp(1j * theta) * w).real
    disc = m * m - abs(w) ** 2 + abs(1.0 - beta * beta) ** 2
    root = cmath.sqrt(disc)
    return (-m + root, -m - root)


def is_stable(beta: complex, c: complex, theta: float) -> bool:
    """True iff both stability eigenvalues have negative real part."""
    lp, lm = stability_eigenvalues(beta, c, theta)
    return max(lp.real, lm.real) < 0.0


def canonical_theta(c: complex) -> float:
    """A physically admissible nonlinearity phase for coupling c.

    Physical rates force |theta| <= pi/2 (nonnegative two-photon damping) and
    Re[e^{i theta} c] > 0 (positive single-photon damping), which is a phase
    window around -arg(c).  Stability labels are the same across the window,
    so its midpoint serves as the representative value.  Couplings on the
    negative real axis have an empty window (no physical phase reaches them);
    the boundary value is returned.
    """
    c = complex(c)
    if c == 0:
        return 0.0
    lo = max(-math.pi / 2.0, -cmath.phase(c) - math.pi / 2.0)
    hi = min(math.pi / 2.0, -cmath.phase(c) + math.pi / 2.0)
    return 0.5 * (lo + hi)


def classify_phase(c: complex, theta: float | None = None) -> PhaseRegion:
    """Assign c to phase region I, II, or III with stability-labelled roots.

    Region II is |c| < 1; region III is Re(c) < 0 with |Im(c)| < 1 < |c|;
    region I is the rest (unique stable vacuum).  Classification on the
    critical lines |c| = 1 or |Im(c)| = 1 is measure-zero ambiguous: the
    region is reported by the strict inequalities and `boundary_case` is set
    (with a warning) instead of inventing a tie-break.

    If theta is omitted, labels are confirmed at the canonical physically
    admissible phase (see canonical_theta).
    """
    c = complex(c)
    if theta is None:
        theta = canonical_theta(c)
    boundary = abs(abs(c) - 1.0) < BOUNDARY_TOL or abs(c.imag**2 - 1.0) < BOUNDARY_TOL
    if boundary:
        warnings.warn(
            f"c = {c} lies on a critical line to {BOUNDARY_TOL}; "
            "classification is ambiguous",
            BoundaryCaseWarning,
            stacklevel=2,
        )
    if abs(c) < 1.0:
        region = Region.II
    elif c.real < 0.0 and abs(c.imag) < 1.0 < abs(c):
        region = Region.III
    else:
        region = Region.I
    stable = []
    unstable = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonstationaryWarning)
        for root in stationary_points(c):
            (stable if is_stable(root.beta, c, theta) else unstable).append(root)
    return PhaseRegion(region, tuple(stable), tuple(unstable), boundary)


def integrate(
    beta0: complex,
    c: complex,
    theta: float,
    tau_end: float,
    dtau: float,
    err_tol: float = 1e-3,
) -> np.ndarray:
    """Fixed-step 4th-order integration of the mean-field flow.

    Returns the trajectory sampled at tau = 0, dtau, ..., tau_end (the span is
    rounded to a whole number of steps).  Each step is advanced with two half
    steps; the difference against a single full step serves as the local error
    estimate, and StepTooLarge is raised when it exceeds `err_tol`.
    """
    if dtau <= 0 or tau_end <= 0:
        raise ValueError("dtau and tau_end must be positive")
    phase = cmath.exp(1j * theta)
    c = complex(c)

    def rhs(b):
        return phase * ((1.0 - b * b) * b.conjugate() - c * b)

    def rk4(b, h):
        k1 = rhs(b)
        k2 = rhs(b + 0.5 * h * k1)
        k3 = rhs(b + 0.5 * h * k2)
        k4 = rhs(b + h * k3)
        return b + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    n_steps = max(1, int(round(tau_end / dtau)))
    out = np.empty(n_steps + 1, dtype=complex)
    out[0] = b = complex(beta0)
    for k in range(1, n_steps + 1):
        big = rk4(b, dtau)
        fine = rk4(rk4(b, 0.5 * dtau), 0.5 * dtau)
        if abs(big - fine) > err_tol:
            raise StepTooLarge(
                f"local error {abs(big - fine):.3e} > {err_tol:.3e} at step {k}; "
                "reduce dtau"
            )
        out[k] = b = fine
    return out
