"""Complex potential-barrier approximation of the tunneling time.

A rotation built from arcsin amplitudes,

    u = e^{-i theta/2} e^{+i phi} arcsin(beta) + e^{+i theta/2} e^{-i phi} arcsin(beta_plus),
    v = e^{-i theta/2} e^{-i phi} arcsin(beta) - e^{+i theta/2} e^{+i phi} arcsin(beta_plus),

places the two symmetry-broken minima on the real u axis (v = 0) and makes
the diffusion constant, so the escape rate over the saddle at the origin
follows from barrier height and curvatures alone.  In this frame the
relevant coupling is c_bar = c_tilde + 1/(2n), and with
B = [1 + (c_bar^2 - |c_bar|^2)/2 - c_bar Pi(c_bar)]^(1/2),
arcsin(B) = r e^{i psi}, phi = psi - theta/2, the minima sit at
u = +/- 2 r cos(2 phi).

The potential, the barrier curvatures, and the current along the v = 0 line
are all real, so the tunneling time is

    T = 2 pi / (|g| cos 2 phi)
        * [ -Phi_vv(origin) / (Phi_uu(origin) Phi_uu(min) Phi_vv(min)) ]^(1/2)
        * exp(Phi(origin) - Phi(min)),

in ms for rates in kHz.  For real couplings this collapses to

    T = pi sqrt(1 + c_bar) / (E (1 - c_bar)) * exp{2n [1 - c_bar + c_bar ln c_bar]}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainFold, ImaginaryResidue, OutsideRegime
from .params import DimensionlessParams
from .potential import PhaseSpacePoint

#: imaginary parts below this are roundoff; above it, a branch-cut crossing.
IM_TOL = 1e-8


@dataclass(frozen=True)
class BarrierQuantities:
    """Barrier data in the (u, v) frame.

    B is the classical amplitude at the barrier coupling c_bar;
    r e^{i psi} = arcsin(B); phi = psi - theta/2; the minima sit at
    u = +/- u_min on the v = 0 line.  Phi_o and Phi_c are the (real)
    potential at the saddle and at the minima, and d2_* the (real) second
    derivatives there: the saddle has d2_uu_o < 0 < d2_vv_o and the minima
    d2_uu_c, d2_vv_c > 0.
    """

    B: complex
    r: float
    psi: float
    phi: float
    u_min: float
    Phi_o: float
    Phi_c: float
    d2_uu_o: float
    d2_vv_o: float
    d2_uu_c: float
    d2_vv_c: float


def _require_real(value: complex, name: str, im_tol: float = IM_TOL) -> float:
    if abs(value.imag) >= im_tol:
        raise ImaginaryResidue(
            f"{name} = {value} has |Im| >= {im_tol}; branch cut crossed"
        )
    return value.real


def _check_fold(phi: float) -> float:
    c2 = math.cos(2.0 * phi)
    if abs(c2) < 1e-12:
        raise DomainFold(f"cos(2*phi) = {c2}: transform not invertible")
    return c2


def uv_transform(pt: PhaseSpacePoint, theta: float, phi: float) -> tuple[complex, complex]:
    """Map a phase-space point to the barrier frame (u, v)."""
    _check_fold(phi)
    zb = cmath.asin(complex(pt.beta))
    zp = cmath.asin(complex(pt.beta_plus))
    half = 1j * theta / 2.0
    u = cmath.exp(-half + 1j * phi) * zb + cmath.exp(half - 1j * phi) * zp
    v = cmath.exp(-half - 1j * phi) * zb - cmath.exp(half + 1j * phi) * zp
    return u, v


def _arc_pair(u: complex, v: complex, theta: float, phi: float) -> tuple[complex, complex]:
    # arcsin(beta), arcsin(beta_plus) recovered from (u, v)
    den = 2.0 * _check_fold(phi)
    zb = (cmath.exp(1j * (theta / 2.0 + phi)) * u + cmath.exp(1j * (theta / 2.0 - phi)) * v) / den
    zp = (cmath.exp(-1j * (theta / 2.0 + phi)) * u - cmath.exp(-1j * (theta / 2.0 - phi)) * v) / den
    return zb, zp


def uv_inverse(u: complex, v: complex, theta: float, phi: float) -> PhaseSpacePoint:
    """Inverse of uv_transform (sine form)."""
    zb, zp = _arc_pair(u, v, theta, phi)
    return PhaseSpacePoint(cmath.sin(zb), cmath.sin(zp))


def potential_uv(u: complex, v: complex, c_bar: complex, n: float, theta: float, phi: float) -> complex:
    """Steady-state potential expressed in the (u, v) frame.

    Real for real u on the v = 0 line, where the two arcsin arguments are
    complex conjugates.
    """
    zb, zp = _arc_pair(u, v, theta, phi)
    cb = complex(c_bar)
    return -n * (
        2.0 * cmath.sin(zb) * cmath.sin(zp)
        + cb * cmath.log(cmath.cos(zb) ** 2)
        + cb.conjugate() * cmath.log(cmath.cos(zp) ** 2)
    )


def barrier_quantities(c_bar: complex, n: float, theta: float, im_tol: float = IM_TOL) -> BarrierQuantities:
    """Barrier amplitude, frame rotation, potentials, and curvatures.

    Requires the bistable tunneling regime: |c_bar| < 1 and
    Re(c_bar - 1/(2n)) > 0 (that is, Re(c_tilde) > 0).  Quantities that must
    be real are checked against `im_tol` and ImaginaryResidue is raised on a
    genuine branch problem.  OutsideRegime is raised when the preconditions
    fail or when the saddle/minimum curvature signature is lost, which marks
    the edge of the barrier approximation's validity.
    """
    cb = complex(c_bar)
    ct = cb - 1.0 / (2.0 * n)
    if abs(cb) >= 1.0 or ct.real <= 0.0:
        raise OutsideRegime(
            f"need |c_bar| < 1 and Re(c_tilde) > 0; got |c_bar| = {abs(cb)}, "
            f"Re(c_tilde) = {ct.real}"
        )
    p = math.sqrt(1.0 - cb.imag**2)
    cbc = cb.conjugate()
    B = cmath.sqrt(1.0 + (cb * cb - abs(cb) ** 2) / 2.0 - cb * p)
    Bc = B.conjugate()
    w = cmath.asin(B)
    r, psi = abs(w), cmath.phase(w)
    phi = psi - theta / 2.0
    c2 = _check_fold(phi)

    one_m = 1.0 - B * B
    one_mc = 1.0 - Bc * Bc
    # sqrt(1-B^2) sqrt(1-B*^2) = |c_bar| up to branch choice
    s = _require_real(cmath.sqrt(one_m) * cmath.sqrt(one_mc), "sqrt-product", im_tol)

    b2 = abs(B) ** 2
    e_p = cmath.exp(1j * (theta + 2.0 * phi))
    e_m = cmath.exp(1j * (theta - 2.0 * phi))
    pref = n / (2.0 * c2 * c2)

    phi_c = _require_real(
        -n * (2.0 * b2 + cb * cmath.log(one_m) + cbc * cmath.log(one_mc)),
        "Phi at the minima", im_tol,
    )
    uu_o = _require_real(pref * (-2.0 + cb * e_p + cbc / e_p), "Phi_uu at origin", im_tol)
    vv_o = _require_real(pref * (2.0 + cb * e_m + cbc / e_m), "Phi_vv at origin", im_tol)
    uu_c = _require_real(
        pref * (-2.0 * s + 2.0 * math.cos(theta + 2.0 * phi) * b2
                + cb * e_p / one_m + cbc / e_p / one_mc),
        "Phi_uu at the minima", im_tol,
    )
    vv_c = _require_real(
        pref * (2.0 * s + 2.0 * math.cos(theta - 2.0 * phi) * b2
                + cb * e_m / one_m + cbc / e_m / one_mc),
        "Phi_vv at the minima", im_tol,
    )
    if not (uu_o < 0.0 < vv_o and uu_c > 0.0 and vv_c > 0.0):
        raise OutsideRegime(
            "saddle/minimum curvature signature lost "
            f"(uu_o={uu_o:.3g}, vv_o={vv_o:.3g}, uu_c={uu_c:.3g}, vv_c={vv_c:.3g}); "
            "barrier approximation not applicable"
        )
    return BarrierQuantities(
        B=B, r=r, psi=psi, phi=phi, u_min=2.0 * r * c2,
        Phi_o=0.0, Phi_c=phi_c,
        d2_uu_o=uu_o, d2_vv_o=vv_o, d2_uu_c=uu_c, d2_vv_c=vv_c,
    )


def tunneling_time(dp: DimensionlessParams, g_abs: float) -> float:
    """Analytic tunneling time (ms) from the generic barrier formula.

    g_abs is the modulus of the combined nonlinear coefficient in kHz.
    """
    bq = barrier_quantities(dp.c_bar, dp.n, dp.theta)
    arg = -bq.d2_vv_o / (bq.d2_uu_o * bq.d2_uu_c * bq.d2_vv_c)
    return (
        2.0 * math.pi / (g_abs * math.cos(2.0 * bq.phi))
        * math.sqrt(arg)
        * math.exp(bq.Phi_o - bq.Phi_c)
    )


def tunneling_time_product_form(dp: DimensionlessParams, g_abs: float) -> float:
    """Tunneling time (ms) from the expanded product form.

    Algebraically identical to `tunneling_time`; kept as an independent
    evaluation path for cross-checking.
    """
    bq = barrier_quantities(dp.c_bar, dp.n, dp.theta)
    cb = complex(dp.c_bar)
    cbc = cb.conjugate()
    B, phi, theta = bq.B, bq.phi, dp.theta
    Bc = B.conjugate()
    one_m, one_mc = 1.0 - B * B, 1.0 - Bc * Bc
    b2 = abs(B) ** 2
    e_p = cmath.exp(1j * (theta + 2.0 * phi))
    e_m = cmath.exp(1j * (theta - 2.0 * phi))
    E = g_abs * dp.n
    t = 4.0 * math.pi * math.cos(2.0 * phi) / E
    t *= cmath.exp(dp.n * (2.0 * b2 + cb * cmath.log(one_m) + cbc * cmath.log(one_mc)))
    t *= (cb * e_m / one_m + cbc / e_m / one_mc + 2.0 * abs(cb)
          + 2.0 * b2 * math.cos(theta - 2.0 * phi)) ** -0.5
    t *= (cb * e_p / one_m + cbc / e_p / one_mc - 2.0 * abs(cb)
          + 2.0 * b2 * math.cos(theta + 2.0 * phi)) ** -0.5
    t *= (2.0 + cb * e_m + cbc / e_m) ** 0.5
    t *= (2.0 - cb * e_p - cbc / e_p) ** -0.5
    return _require_real(t, "tunneling time", IM_TOL * abs(t))


def tunneling_time_real(c_bar: float, n: float, E: float) -> float:
    """Tunneling time (ms) in the all-real-parameter limit.

    Valid for 0 < c_bar < 1 with drive E > 0 in kHz.
    """
    if not 0.0 < c_bar < 1.0:
        raise OutsideRegime(f"real-limit formula needs 0 < c_bar < 1, got {c_bar}")
    if n <= 0 or E <= 0:
        raise ValueError("n and E must be positive")
    return (
        math.pi * math.sqrt(1.0 + c_bar) / (E * (1.0 - c_bar))
        * math.exp(2.0 * n * (1.0 - c_bar + c_bar * math.log(c_bar)))
    )
