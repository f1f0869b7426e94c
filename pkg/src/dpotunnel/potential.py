"""Exact complex steady-state potential and its stationary structure.

With independent coherent amplitudes (beta, beta_plus) the steady-state
weight is exp(-Phi) with the drive-free potential

    Phi = -n [ 2 beta_plus beta + c_tilde ln(1 - beta^2)
               + c_tilde* ln(1 - beta_plus^2) ],

plus drive terms proportional to d when a subharmonic drive is present.
Stationary points come in three families: the origin, classical points with
beta_plus = beta*, and quantum points with beta_plus = -beta*.  The potential
is real at all of them, so a Hessian over the locally planar (beta,
beta_plus) patch classifies each as minimum, saddle, or maximum.

All complex logs, powers, and square roots are principal-branch; the working
domain (the tilted square manifold with |x|, |y| <= 1) is chosen so no branch
cut is crossed.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BelowThresholdWarning, BoundarySingularity, ThresholdDegeneracy
from .meanfield import pi_factor


@dataclass(frozen=True)
class PhaseSpacePoint:
    """A point of the doubled phase space; beta_plus is independent of beta."""

    beta: complex
    beta_plus: complex


class PointKind(enum.Enum):
    ORIGIN = "origin"
    CLASSICAL = "classical"  # beta_plus = conj(beta)
    QUANTUM = "quantum"      # beta_plus = -conj(beta)


class Classification(enum.Enum):
    MINIMUM = "minimum"
    SADDLE = "saddle"
    MAXIMUM = "maximum"


@dataclass(frozen=True)
class StationaryPoint:
    point: PhaseSpacePoint
    kind: PointKind
    phi_value: float
    hessian: np.ndarray  # 2x2 complex: [[d2/dbeta2, cross], [cross, d2/dbeta_plus2]]
    hessian_det: float
    classification: Classification


def _check_boundary(*amps):
    for a in amps:
        if a == 1 or a == -1:
            raise BoundarySingularity(f"logarithmic singularity at amplitude {a}")


def potential_value(pt: PhaseSpacePoint, c_tilde: complex, n: float, d: complex = 0j) -> complex:
    """Evaluate the steady-state potential at a phase-space point.

    The conjugate partner of each term swaps beta -> beta_plus and conjugates
    the coefficients, so the bilinear term enters twice.  Raises
    BoundarySingularity at beta or beta_plus = +/-1.
    """
    b = complex(pt.beta)
    bp = complex(pt.beta_plus)
    _check_boundary(b, bp)
    ct = complex(c_tilde)
    val = 2.0 * bp * b + ct * cmath.log(1.0 - b * b) \
        + ct.conjugate() * cmath.log(1.0 - bp * bp)
    if d != 0:
        d = complex(d)
        val += d * cmath.log((1.0 + b) / (1.0 - b)) \
            + d.conjugate() * cmath.log((1.0 + bp) / (1.0 - bp))
    return -n * val


def potential_gradient(pt: PhaseSpacePoint, c_tilde: complex, n: float, d: complex = 0j) -> tuple[complex, complex]:
    """First derivatives (dPhi/dbeta, dPhi/dbeta_plus)."""
    b = complex(pt.beta)
    bp = complex(pt.beta_plus)
    _check_boundary(b, bp)
    ct = complex(c_tilde)
    d = complex(d)
    g1 = 2.0 * n * (ct * b - (1.0 - b * b) * bp - d) / (1.0 - b * b)
    g2 = 2.0 * n * (ct.conjugate() * bp - (1.0 - bp * bp) * b - d.conjugate()) / (1.0 - bp * bp)
    return g1, g2


def steady_state_weight(pt: PhaseSpacePoint, c_tilde: complex, n: float, d: complex = 0j) -> complex:
    """Unnormalized steady-state weight

        [ (1+beta)^(ct+d) (1-beta)^(ct-d)
          (1+beta_plus)^(ct*+d*) (1-beta_plus)^(ct*-d*) e^{2 beta_plus beta} ]^n,

    equal to exp(-Phi) on any branch-consistent domain.  At a boundary
    amplitude the weight is 0 when the corresponding exponent has positive
    real part (vanishing boundary) and BoundarySingularity is raised
    otherwise (divergent boundary, Re(c_tilde) < 0).
    """
    b = complex(pt.beta)
    bp = complex(pt.beta_plus)
    ct = complex(c_tilde)
    d = complex(d)
    ctc = ct.conjugate()
    dc = d.conjugate()
    exponent = 2.0 * bp * b
    for base, power in (
        (1.0 + b, ct + d),
        (1.0 - b, ct - d),
        (1.0 + bp, ctc + dc),
        (1.0 - bp, ctc - dc),
    ):
        if base == 0:
            if power.real > 0:
                return 0j
            raise BoundarySingularity(
                f"weight diverges at a boundary amplitude (exponent {power})"
            )
        exponent += power * cmath.log(base)
    return cmath.exp(n * exponent)


def _stationary_phi(b: complex, bp: complex, c_tilde: complex, n: float) -> float:
    # Conjugate-symmetric evaluation: on the classical/quantum families the two
    # log terms are exact conjugates, so the value is real by construction and
    # continuous across the log cut that the quantum family touches at real
    # c_tilde.  Agrees with potential_value wherever the principal branch is
    # continuous.
    return -n * (2.0 * (bp * b).real + 2.0 * (complex(c_tilde) * cmath.log(1.0 - b * b)).real)


def _hessian(b: complex, bp: complex, c_tilde: complex, n: float) -> np.ndarray:
    ct = complex(c_tilde)
    h11 = 2.0 * ct * n * (1.0 + b * b) / (1.0 - b * b) ** 2
    h22 = 2.0 * ct.conjugate() * n * (1.0 + bp * bp) / (1.0 - bp * bp) ** 2
    return np.array([[h11, -2.0 * n], [-2.0 * n, h22]], dtype=complex)


def _classify(hess: np.ndarray) -> tuple[float, Classification]:
    det = (hess[0, 0] * hess[1, 1] - hess[0, 1] * hess[1, 0]).real
    tr = (hess[0, 0] + hess[1, 1]).real
    if det < 0.0:
        cls = Classification.SADDLE
    elif tr > 0.0:
        cls = Classification.MINIMUM
    else:
        cls = Classification.MAXIMUM
    return det, cls


def _paired(b_base: complex, bp_base: complex, c_tilde: complex, n: float):
    # The +/- signs of the two principal roots pair so that the gradient
    # vanishes; pick the partner sign by residual.
    def resid(b, bp):
        g1, g2 = potential_gradient(PhaseSpacePoint(b, bp), c_tilde, n)
        return max(abs(g1), abs(g2))

    sign = min((1.0, -1.0), key=lambda s: resid(b_base, s * bp_base))
    return b_base, sign * bp_base


def stationary_points_4d(c_tilde: complex, n: float) -> list[StationaryPoint]:
    """Locate and classify all stationary points of the drive-free potential.

    Returns the origin always; above threshold (|c_tilde| < 1) also the
    classical pair

        beta = +/- [1 + (c_tilde^2 - |c_tilde|^2)/2 - c_tilde Pi]^(1/2),

    with the conjugate-coupling partner amplitude, and the quantum pair with
    +Pi inside the bracket and the opposite partner sign.  Each point carries
    the analytic Hessian and its minimum/saddle/maximum classification.

    Below threshold (|c_tilde| > 1) only the origin is returned, with a
    BelowThresholdWarning.  Raises ThresholdDegeneracy within 1e-12 of
    |c_tilde| = 1, where the families merge.
    """
    ct = complex(c_tilde)
    if abs(abs(ct) - 1.0) < 1e-12:
        raise ThresholdDegeneracy(f"|c_tilde| = {abs(ct)} is on the threshold circle")

    points = []

    def add(b, bp, kind):
        hess = _hessian(b, bp, ct, n)
        det, cls = _classify(hess)
        points.append(
            StationaryPoint(
                point=PhaseSpacePoint(b, bp),
                kind=kind,
                phi_value=_stationary_phi(b, bp, ct, n),
                hessian=hess,
                hessian_det=det,
                classification=cls,
            )
        )

    add(0j, 0j, PointKind.ORIGIN)
    if abs(ct) > 1.0:
        warnings.warn(
            f"|c_tilde| = {abs(ct)} > 1: no nontrivial stationary points",
            BelowThresholdWarning,
            stacklevel=2,
        )
        return points

    p = pi_factor(ct)
    ctc = ct.conjugate()
    mod2 = abs(ct) ** 2
    b_c, bp_c = _paired(
        cmath.sqrt(1.0 + (ct * ct - mod2) / 2.0 - ct * p),
        cmath.sqrt(1.0 + (ctc * ctc - mod2) / 2.0 - ctc * p),
        ct, n,
    )
    add(b_c, bp_c, PointKind.CLASSICAL)
    add(-b_c, -bp_c, PointKind.CLASSICAL)
    b_q, bp_q = _paired(
        cmath.sqrt(1.0 + (ct * ct - mod2) / 2.0 + ct * p),
        cmath.sqrt(1.0 + (ctc * ctc - mod2) / 2.0 + ctc * p),
        ct, n,
    )
    add(b_q, bp_q, PointKind.QUANTUM)
    add(-b_q, -bp_q, PointKind.QUANTUM)
    return points


def hessian_det_closed_form(kind: PointKind, c_tilde: complex, n: float) -> float:
    """Closed-form Hessian determinant for each stationary family."""
    ct = complex(c_tilde)
    if kind is PointKind.ORIGIN:
        return 4.0 * n * n * (abs(ct) ** 2 - 1.0)
    p = pi_factor(ct)
    scale = 16.0 * n * n / abs(ct) ** 2 * p
    if kind is PointKind.CLASSICAL:
        return scale * (p - ct.real)
    if kind is PointKind.QUANTUM:
        return scale * (p + ct.real)
    raise ValueError(f"unknown stationary-point kind {kind!r}")


def classical_tilt(c_tilde: complex) -> float:
    """Phase of the classical stationary amplitude (tilt of the manifold)."""
    ct = complex(c_tilde)
    p = pi_factor(ct)
    b = cmath.sqrt(1.0 + (ct * ct - abs(ct) ** 2) / 2.0 - ct * p)
    return cmath.phase(b)


def manifold_point(x: float, y: float, phi: float, p: float) -> PhaseSpacePoint:
    """Point of the tilted square manifold through the classical minima.

    beta      = x + i x tan(phi) cos^p(x pi/2) cos^p(y pi/2)
    beta_plus = y - i y tan(phi) cos^p(x pi/2) cos^p(y pi/2)

    for |x|, |y| <= 1 and p > 0.  At |x| = 1 or |y| = 1 the cutoff factor is
    exactly 0 (real boundary); the p -> 0 limit is represented by evaluating
    at a fixed small p rather than symbolically.
    """
    if abs(x) > 1.0 or abs(y) > 1.0:
        raise ValueError("manifold coordinates must satisfy |x|, |y| <= 1")
    if p <= 0.0:
        raise ValueError("cutoff exponent p must be positive")
    if abs(x) == 1.0 or abs(y) == 1.0:
        cut = 0.0
    else:
        cut = math.cos(x * math.pi / 2.0) ** p * math.cos(y * math.pi / 2.0) ** p
    tilt = math.tan(phi) * cut
    return PhaseSpacePoint(complex(x, x * tilt), complex(y, -y * tilt))
