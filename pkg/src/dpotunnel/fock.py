"""Photon-number-basis transition matrix, spectrum, and numerical tunneling time.

In the number basis the master equation becomes d(rho_ij)/dt = T rho, where T
couples the flattened density-matrix vector rho[(N+1) i + j] through seven
term families: two-photon drive raising/lowering on either index (+-E/2 with
sqrt factors), a complex diagonal -[gamma i + gamma* j + (g/2) i(i-1) +
(g*/2) j(j-1)], a two-photon refill gamma2eff sqrt((i+1)(i+2)(j+1)(j+2)),
and a single-photon refill 2 gamma1_1 sqrt((i+1)(j+1)).  Truncation at a
photon-number cutoff N drops all couplings leaving [0, N].

The eigenvalue of largest real part is (numerically) zero and its eigenvector
is the steady state; the next one, eps1, is the slow symmetry-restoring mode,
giving the numerical tunneling time T_N = -2/Re(eps1) in ms for kHz rates.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    ConvergenceFailure,
    CutoffUnbounded,
    NonDecaying,
    TruncationLeak,
    UnsupportedDrive,
    ZeroDrive,
)
from .meanfield import pi_factor
from .params import ReducedParams, dimensionless

#: full dense decomposition below this dimension, shift-invert iteration above
DENSE_DIM_LIMIT = 2500

#: steady-state population allowed in the top two Fock levels
LEAK_TOL = 1e-6


@dataclass(frozen=True)
class FockLiouvillian:
    """Truncated transition matrix with its parameter snapshot."""

    cutoff: int
    dim: int
    matrix: sp.csr_matrix
    params: ReducedParams


@dataclass(frozen=True)
class SpectrumResult:
    """Leading eigenvalues, steady state, and numerical tunneling time.

    eigenvalues are sorted by descending real part (ties by ascending |Im|);
    eps0 is numerically zero and rho_ss its Hermitized, trace-one eigenvector.
    t_n_ms is -2/Re(eps1), or None when eps1 does not decay.
    """

    eigenvalues: np.ndarray
    eps0: complex
    eps1: complex
    rho_ss: np.ndarray
    t_n_ms: float | None


def transition_matrix(gamma: complex, g: complex, E: float, N: int) -> sp.csr_matrix:
    """Assemble the raw seven-term transition matrix at cutoff N.

    gamma is the complex single-photon decay (its real part also sets the
    single-photon refill), g the complex nonlinear coefficient (its real part
    the two-photon loss), and E the real two-photon drive.  Couplings with an
    index outside [0, N] are dropped.
    """
    if N < 2:
        raise ValueError(f"cutoff N must be at least 2, got {N}")
    gamma = complex(gamma)
    g = complex(g)
    gamma1_1 = gamma.real
    gamma2eff = g.real
    side = N + 1
    rows: list[int] = []
    cols: list[int] = []
    vals: list[complex] = []

    def put(i, j, k, l, v):
        # row (i, j) <- column (k, l)
        if 0 <= k <= N and 0 <= l <= N and v != 0:
            rows.append(side * i + j)
            cols.append(side * k + l)
            vals.append(v)

    for i in range(side):
        for j in range(side):
            put(i, j, i, j,
                -(gamma * i + gamma.conjugate() * j
                  + g / 2.0 * i * (i - 1) + g.conjugate() / 2.0 * j * (j - 1)))
            if E != 0.0:
                if i >= 2:
                    put(i, j, i - 2, j, E / 2.0 * math.sqrt(i * (i - 1)))
                put(i, j, i, j + 2, -E / 2.0 * math.sqrt((j + 1) * (j + 2)))
                if j >= 2:
                    put(i, j, i, j - 2, E / 2.0 * math.sqrt(j * (j - 1)))
                put(i, j, i + 2, j, -E / 2.0 * math.sqrt((i + 1) * (i + 2)))
            if gamma2eff != 0.0:
                put(i, j, i + 2, j + 2,
                    gamma2eff * math.sqrt((i + 1) * (i + 2) * (j + 1) * (j + 2)))
            if gamma1_1 != 0.0:
                put(i, j, i + 1, j + 1, 2.0 * gamma1_1 * math.sqrt((i + 1) * (j + 1)))
    return sp.coo_matrix(
        (np.asarray(vals, dtype=complex), (rows, cols)), shape=(side * side, side * side)
    ).tocsr()


def build_liouvillian(r: ReducedParams, N: int) -> FockLiouvillian:
    """Truncated transition matrix for the effective single-mode model.

    Raises UnsupportedDrive for a nonzero subharmonic drive, which the
    seven-term matrix does not include.
    """
    if r.drive1 != 0:
        raise UnsupportedDrive("transition matrix has no single-photon drive term")
    return FockLiouvillian(
        cutoff=N, dim=(N + 1) ** 2, matrix=transition_matrix(r.gamma, r.g, r.E, N),
        params=r,
    )


def _sorted_order(w: np.ndarray) -> np.ndarray:
    # descending real part, ties broken by ascending |Im|
    return np.lexsort((np.abs(w.imag), -w.real))


def _inverse_iteration_check(A: sp.spmatrix, lam: complex, scale: float, iters: int = 4):
    """Confirm lam is an eigenvalue by shifted inverse iteration.

    Returns (residual, refined eigenvalue); used when a backend returns a
    plausible eigenvalue with an unusable eigenvector.
    """
    dim = A.shape[0]
    shift = lam + 1e-9 * max(scale, 1.0) * (1.0 + 1.0j)  # keep the factor regular
    ident = sp.identity(dim, dtype=complex, format="csc")
    try:
        lu = spla.splu((A - shift * ident).tocsc())
    except RuntimeError:
        return math.inf, lam
    x = np.ones(dim) / math.sqrt(dim)
    for _ in range(iters):
        y = lu.solve(x)
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0.0:
            return math.inf, lam
        x = y / ny
    mu = complex(np.vdot(x, A @ x))
    return float(np.linalg.norm(A @ x - mu * x)), mu


def _extract_steady_state(vec: np.ndarray, N: int) -> np.ndarray:
    rho = vec.reshape(N + 1, N + 1)
    tr = np.trace(rho)
    if abs(tr) < 1e-12 * np.linalg.norm(rho):
        raise ConvergenceFailure(
            f"steady-state eigenvector has near-zero trace ({abs(tr):.3e})"
        )
    rho = rho / tr
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def spectrum(
    L: FockLiouvillian,
    k_requested: int = 6,
    method: str = "auto",
    leak_tol: float | None = LEAK_TOL,
) -> SpectrumResult:
    """Leading part of the transition-matrix spectrum and the steady state.

    Dense full decomposition is used up to DENSE_DIM_LIMIT; above it, a
    shift-invert Arnoldi iteration targets the eigenvalues nearest zero,
    which at scale is where eps0 and eps1 live.  `method` may force "dense"
    or "sparse".

    Raises ConvergenceFailure when eps0 is not numerically zero relative to
    the largest matrix entry (or the iteration fails), and TruncationLeak
    when the steady state keeps more than `leak_tol` population in the top
    two Fock levels (pass None to skip that check).
    """
    if k_requested < 2:
        raise ValueError(f"k_requested must be at least 2, got {k_requested}")
    if method not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown method {method!r}")
    A = L.matrix
    dim = L.dim
    scale = float(np.abs(A.data).max()) if A.nnz else 0.0
    if method == "auto":
        method = "dense" if dim <= DENSE_DIM_LIMIT else "sparse"

    def decompose(attempt):
        if method == "dense":
            # two independent LAPACK backends; the retry switches library
            if attempt == 0:
                return scipy.linalg.eig(A.toarray())
            return np.linalg.eig(A.toarray())
        k_arp = min(max(k_requested + 4, 8), dim - 2)
        # fixed start vectors for determinism; the retry perturbs the subspace
        v0 = np.ones(dim) / math.sqrt(dim)
        if attempt > 0:
            v0 = v0 + 1e-3 * np.cos(np.arange(dim))
        # Shift slightly into the right half-plane, outside the spectrum
        # (Re <= 0 up to truncation noise): still targets the eigenvalues
        # nearest zero, but keeps the factorization well conditioned.
        # Shift-inverting at the near-singular steady-state eigenvalue itself
        # poisons the Krylov space with spurious converged Ritz values.
        sigma = (1.0 + 2.0 * attempt) * 1e-3 * max(scale, 1.0)
        try:
            return spla.eigs(A.tocsc(), k=k_arp, sigma=sigma, which="LM", v0=v0)
        except spla.ArpackNoConvergence as exc:
            raise ConvergenceFailure(
                f"shift-invert Arnoldi did not converge: {exc}"
            ) from exc
        except RuntimeError as exc:
            raise ConvergenceFailure(f"shift-invert factorization failed: {exc}") from exc

    # Verify the leading eigenpairs by residual before trusting them; the
    # retry switches backend, guarding against a misbehaving BLAS build.
    tol = 1e-8 * max(scale, 1.0)
    last_report = ""
    for attempt in range(2):
        w, V = decompose(attempt)
        order = _sorted_order(w)
        if len(order) < k_requested:
            raise ConvergenceFailure(
                f"only {len(order)} eigenvalues available, {k_requested} requested"
            )
        eps0 = complex(w[order[0]])
        eps1 = complex(w[order[1]])
        resids = [
            float(np.linalg.norm(A @ V[:, order[i]] - w[order[i]] * V[:, order[i]]))
            for i in range(2)
        ]
        ok = resids[0] <= tol and (scale == 0.0 or abs(eps0) <= 1e-8 * scale)
        if ok and resids[1] > tol:
            # value may still be right with an unusable vector: confirm it
            # independently before rejecting the whole decomposition
            rr, mu = _inverse_iteration_check(A, eps1, scale)
            ok = rr <= tol and abs(mu - eps1) <= max(tol, 1e-6 * abs(eps1))
        if ok:
            break
        last_report = (
            f"eigenpair residuals {resids[0]:.3e}, {resids[1]:.3e}; eps0 = {eps0}"
        )
    else:
        raise ConvergenceFailure(
            f"leading eigenpairs unresolved (scale {scale:.3e}): {last_report}"
        )
    rho = _extract_steady_state(V[:, order[0]], L.cutoff)
    if leak_tol is not None:
        leak = float(rho[L.cutoff, L.cutoff].real + rho[L.cutoff - 1, L.cutoff - 1].real)
        if leak > leak_tol:
            raise TruncationLeak(
                f"population {leak:.3e} in the top two Fock levels exceeds "
                f"{leak_tol:.1e}; raise the cutoff (N = {L.cutoff})"
            )
    t_n = -2.0 / eps1.real if eps1.real < 0.0 else None
    return SpectrumResult(
        eigenvalues=w[order[:k_requested]],
        eps0=eps0,
        eps1=eps1,
        rho_ss=rho,
        t_n_ms=t_n,
    )


def tunneling_time_fock(s: SpectrumResult) -> float:
    """Numerical tunneling time T_N = -2/Re(eps1) in ms.

    Only the real part of eps1 enters; a nonnegligible imaginary part means
    the slow mode oscillates and is surfaced on the SpectrumResult rather
    than silently dropped.  Raises NonDecaying if Re(eps1) >= 0.
    """
    if s.eps1.real >= 0.0:
        raise NonDecaying(f"eps1 = {s.eps1} does not decay")
    return -2.0 / s.eps1.real


def moments(rho: np.ndarray) -> dict:
    """Mean photon number and photon-number parity of a trace-one state."""
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"state must have unit trace, got {tr}")
    pops = np.real(np.diag(rho))
    levels = np.arange(len(pops))
    return {
        "mean_n": float(np.sum(levels * pops)),
        "parity": float(np.sum(((-1.0) ** levels) * pops)),
    }


def _steady_populations(r: ReducedParams, N: int) -> np.ndarray:
    # Direct solve: replace the d/dt rho_00 row with the trace functional and
    # solve T rho = e_0, which pins trace(rho) = 1.
    L = build_liouvillian(r, N)
    side = N + 1
    M = L.matrix.tolil(copy=True)
    trace_row = np.zeros(L.dim)
    trace_row[[side * i + i for i in range(side)]] = 1.0
    M[0] = trace_row
    b = np.zeros(L.dim, dtype=complex)
    b[0] = 1.0
    Mc = M.tocsc()
    with warnings.catch_warnings():
        warnings.simplefilter("error", spla.MatrixRankWarning)
        try:
            x = spla.spsolve(Mc, b)
        except (RuntimeError, spla.MatrixRankWarning) as exc:
            raise ConvergenceFailure(f"direct steady-state solve failed: {exc}") from exc
    resid = np.linalg.norm(Mc @ x - b)
    if not np.isfinite(resid) or resid > 1e-8 * max(1.0, np.linalg.norm(x)):
        raise ConvergenceFailure(f"steady-state solve residual {resid:.3e} too large")
    rho = x.reshape(side, side)
    rho = 0.5 * (rho + rho.conj().T)
    return np.real(np.diag(rho)) / np.trace(rho).real


def choose_cutoff(r: ReducedParams, tol: float, n_max: int = 200) -> int:
    """Smallest cutoff in a doubling search with steady-state tail below tol.

    The tail is the steady-state population above level N - 2 (the top two
    levels).  The search starts at ceil(3 n max(1, |beta_c|^2)) photons,
    where |beta_c|^2 is the classical stationary intensity when it exists,
    and doubles until the tail criterion passes.  Raises CutoffUnbounded
    when the next candidate would exceed `n_max`.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    try:
        dp = dimensionless(r)
    except ZeroDrive:
        start = 2  # undriven: vacuum steady state, minimal cutoff suffices
    else:
        ct = dp.c_tilde
        intensity = 1.0
        if abs(ct) < 1.0 and abs(ct.imag) <= 1.0:
            intensity = max(intensity, pi_factor(ct) - ct.real)
        start = max(2, math.ceil(3.0 * dp.n * intensity))
    N = start
    while N <= n_max:
        pops = _steady_populations(r, N)
        if pops[N] + pops[N - 1] < tol:
            return N
        N *= 2
    raise CutoffUnbounded(
        f"tail criterion {tol:.1e} not met by any cutoff <= {n_max} "
        f"(search started at {start})"
    )


def dump_triplets(L: FockLiouvillian, path: str) -> None:
    """Write the matrix as sparse triplet text for external verification.

    Format: header line "N dim nnz", then one line "alpha beta re im" per
    structural entry with 0-based flattened indices, sorted row-major.
    """
    coo = L.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{L.cutoff} {L.dim} {coo.nnz}\n")
        for k in order:
            v = coo.data[k]
            fh.write(f"{coo.row[k]} {coo.col[k]} {float(v.real)!r} {float(v.imag)!r}\n")
