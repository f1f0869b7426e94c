"""Exception and warning types shared across the package."""


class DpoTunnelError(Exception):
    """Base class for all model-level errors raised by this package."""


# --- parameter conversion ---

class DegenerateNonlinearity(DpoTunnelError):
    """All nonlinear channels vanish (kappa = gamma1_2 = chi = 0); the
    effective two-photon model does not exist."""


class ZeroDrive(DpoTunnelError):
    """Effective two-photon drive is zero; the dimensionless model is undefined."""


# --- mean-field analysis ---

class OutsideDomain(DpoTunnelError):
    """|Im(c)| > 1: no nonzero mean-field branch exists."""


class StepTooLarge(DpoTunnelError):
    """Local error estimate of the fixed-step integrator exceeded its tolerance."""


# --- steady-state potential ---

class BoundarySingularity(DpoTunnelError):
    """Potential or weight evaluated at a logarithmic boundary singularity."""


class ThresholdDegeneracy(DpoTunnelError):
    """|c_tilde| is numerically on the threshold circle; stationary families merge."""


# --- barrier / tunneling ---

class DomainFold(DpoTunnelError):
    """cos(2*phi) = 0: the (u, v) coordinate transform is not invertible."""


class OutsideRegime(DpoTunnelError):
    """Parameters outside the bistable tunneling regime the barrier formulas assume."""


class ImaginaryResidue(DpoTunnelError):
    """A quantity required to be real carries an imaginary part above tolerance,
    indicating a branch-cut crossing rather than roundoff."""


# --- number-state computation ---

class UnsupportedDrive(DpoTunnelError):
    """The number-state transition matrix has no single-photon drive term."""


class ConvergenceFailure(DpoTunnelError):
    """An eigensolve or linear solve failed to converge; message carries residuals."""


class TruncationLeak(DpoTunnelError):
    """Steady-state population in the top two Fock levels exceeds tolerance;
    the photon-number cutoff is too small for these parameters."""


class NonDecaying(DpoTunnelError):
    """The slowest nonzero eigenvalue has nonnegative real part; no tunneling time."""


class CutoffUnbounded(DpoTunnelError):
    """The cutoff search exceeded its configured maximum photon number."""


# --- warnings ---

class AdiabaticValidityWarning(UserWarning):
    """Pump-mode damping is not strongly dominant; adiabatic elimination is suspect."""


class NonstationaryWarning(UserWarning):
    """Stability eigenvalues requested at a point that is not stationary."""


class BoundaryCaseWarning(UserWarning):
    """Phase classification requested within tolerance of a critical line."""


class BelowThresholdWarning(UserWarning):
    """|c_tilde| > 1: only the origin stationary point exists."""
