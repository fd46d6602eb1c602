"""Dephasing-covariant channel synthesis from Choi matrices, validation, and the correlated lift."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernel import as_complex_matrix, dephase, psd_tol, spectrum, trace_norm
from .states import fourier_flag_mixture, max_coherent, mc_lift, mc_unlift

TOL_COV = 1e-9
TOL_TRACE_OUT = 1e-9


class DioInfeasibleError(Exception):
    """The requested target cannot be reached from the chosen uniform input."""


@dataclass(frozen=True)
class DioChannel:
    """Channel taking the uniform d-level superposition to a fixed target state.

    choi is the unnormalized Choi matrix on input (x) output, assembled in the
    permutation-symmetrized form

        choi = P (x) component_a + (I - P) (x) component_b,

    where P projects onto the uniform superposition of the input levels.
    component_a is the target itself, component_d its diagonal part,
    component_z its off-diagonal part, and
    component_b = component_d - component_z / (d - 1). Both component_a and
    component_b are unit-trace and positive semidefinite, which makes the
    channel completely positive and trace preserving; the shared-diagonal
    relation dephase(a) = dephase(b) = a/d + (1 - 1/d) b makes it commute
    with full dephasing.
    """

    input_dim: int
    output_dim: int
    choi: np.ndarray
    component_a: np.ndarray
    component_b: np.ndarray
    component_d: np.ndarray
    component_z: np.ndarray


@dataclass(frozen=True)
class CptpReport:
    min_choi_eigenvalue: float
    trace_out_violation: float
    passed: bool


@dataclass(frozen=True)
class CovarianceReport:
    max_violation: float
    basis_size: int
    passed: bool


def dio_feasible(rho, d: int, tol_psd: float | None = None) -> bool:
    """Whether the uniform d-level superposition reaches rho dephasing-covariantly.

    True iff d * dephase(rho) - rho is positive semidefinite (up to the
    scale-aware slack), equivalently iff d is at least the dephasing
    robustness of rho.
    """
    rho = as_complex_matrix(rho)
    if d < 1:
        raise ValueError(f"input dimension must be >= 1, got {d}")
    gap = d * dephase(rho) - rho
    slack = psd_tol(gap) if tol_psd is None else tol_psd
    return float(spectrum(gap)[0]) >= -slack


def dio_synthesize(rho, d: int, tol_psd: float | None = None) -> DioChannel:
    """Build the channel mapping the uniform d-level superposition onto rho.

    Raises DioInfeasibleError when the complementary component
    (d * dephase(rho) - rho) / (d - 1) has a genuinely negative eigenvalue,
    i.e. when d is below the dephasing robustness of the target.
    """
    rho = as_complex_matrix(rho)
    if d < 2:
        raise ValueError(f"synthesis needs input dimension >= 2, got {d}")
    diag_part = dephase(rho)
    off_part = rho - diag_part
    comp_a = rho
    comp_b = diag_part - off_part / (d - 1)
    slack = psd_tol(comp_b) if tol_psd is None else tol_psd
    lowest = float(spectrum(comp_b)[0])
    if lowest < -slack:
        raise DioInfeasibleError(
            f"complementary component has eigenvalue {lowest:.3e}; "
            f"the target needs a larger input dimension than {d}"
        )
    phi = max_coherent(d)
    proj = np.outer(phi, phi.conj())
    choi = np.kron(proj, comp_a) + np.kron(np.eye(d) - proj, comp_b)
    return DioChannel(
        input_dim=d,
        output_dim=rho.shape[0],
        choi=choi,
        component_a=comp_a,
        component_b=comp_b,
        component_d=diag_part,
        component_z=off_part,
    )


def choi_apply(choi, din: int, dout: int, sigma) -> np.ndarray:
    """Apply a channel given by its unnormalized Choi matrix on input (x) output.

    Action: trace out the input factor of (sigma^T (x) I) choi. Accepts any
    square matrix of the input dimension, not just states.
    """
    choi = as_complex_matrix(choi)
    sigma = as_complex_matrix(sigma)
    if choi.shape[0] != din * dout:
        raise ValueError(f"Choi dimension {choi.shape[0]} != {din} * {dout}")
    if sigma.shape[0] != din:
        raise ValueError(f"input dimension {sigma.shape[0]} != {din}")
    blocks = choi.reshape(din, dout, din, dout)
    return np.einsum("ki,kaib->ab", sigma, blocks)


def apply_channel(ch: DioChannel, sigma) -> np.ndarray:
    """Apply a synthesized channel to an input-dimension matrix."""
    return choi_apply(ch.choi, ch.input_dim, ch.output_dim, sigma)


def choi_cptp_report(choi, din: int, dout: int, tol: float = TOL_TRACE_OUT) -> CptpReport:
    """Complete positivity (Choi PSD) and trace preservation (input marginal = I)."""
    choi = as_complex_matrix(choi)
    if choi.shape[0] != din * dout:
        raise ValueError(f"Choi dimension {choi.shape[0]} != {din} * {dout}")
    min_eig = float(spectrum(choi)[0])
    marginal = np.einsum("iaja->ij", choi.reshape(din, dout, din, dout))
    violation = float(np.abs(marginal - np.eye(din)).max())
    passed = min_eig >= -psd_tol(choi) and violation <= tol
    return CptpReport(
        min_choi_eigenvalue=min_eig, trace_out_violation=violation, passed=passed
    )


def cptp_report(ch: DioChannel, tol: float = TOL_TRACE_OUT) -> CptpReport:
    return choi_cptp_report(ch.choi, ch.input_dim, ch.output_dim, tol)


def choi_covariance_report(
    choi, din: int, dout: int, tol_cov: float = TOL_COV
) -> CovarianceReport:
    """Check commutation with full dephasing on all din^2 matrix units.

    By linearity this basis is sufficient: the report carries the largest
    trace-norm mismatch between dephase-then-apply and apply-then-dephase.
    """
    worst = 0.0
    for i in range(din):
        for j in range(din):
            unit = np.zeros((din, din), dtype=complex)
            unit[i, j] = 1.0
            before = choi_apply(choi, din, dout, dephase(unit))
            after = dephase(choi_apply(choi, din, dout, unit))
            worst = max(worst, trace_norm(before - after))
    return CovarianceReport(
        max_violation=worst, basis_size=din * din, passed=worst <= tol_cov
    )


def covariance_report(ch: DioChannel, tol_cov: float = TOL_COV) -> CovarianceReport:
    return choi_covariance_report(ch.choi, ch.input_dim, ch.output_dim, tol_cov)


def sign_flip_check(
    d: int, tol_eq: float = 1e-12, tol_psd: float = 1e-10
) -> bool:
    """Verify the reflection identity behind the flag-mixture feasibility proof.

    Conjugating the flag mixture by the diagonal unitary that negates the
    upper register flips the sign of its off-diagonal block:
    U rho U^dagger = dephase(rho) - (rho - dephase(rho)), and the result is
    positive semidefinite, which is exactly 2 * dephase(rho) - rho >= 0.
    """
    rho = fourier_flag_mixture(d)
    signs = np.concatenate([np.ones(d), -np.ones(d)])
    conjugated = rho * np.outer(signs, signs)
    reflected = 2.0 * dephase(rho) - rho
    if float(np.abs(conjugated - reflected).max()) > tol_eq:
        return False
    return float(spectrum(reflected)[0]) >= -tol_psd


def mc_twirl(rho_hat, d: int | None = None) -> np.ndarray:
    """Project a d x d bipartite state onto the diagonal-twirl-invariant algebra.

    Keeps every diagonal entry <ij|rho|ij> and the correlated block
    <ii|rho|jj>, zeroing everything else. This is the exact average over
    conjugations by U (x) U* with U diagonal unitary; it is idempotent,
    trace preserving and positive.
    """
    rho_hat = as_complex_matrix(rho_hat)
    dim = rho_hat.shape[0]
    if d is None:
        d = math.isqrt(dim)
    if d * d != dim:
        raise ValueError(f"dimension {dim} is not a perfect square of {d}")
    out = np.diag(np.diag(rho_hat))
    idx = np.arange(d) * d + np.arange(d)
    out[np.ix_(idx, idx)] = rho_hat[np.ix_(idx, idx)]
    return out


def mcdc_apply(ch: DioChannel, rho_hat) -> np.ndarray:
    """Apply the correlated lift of a synthesized channel to a correlated state.

    The input must be maximally correlated with local dimension equal to the
    channel's input dimension; the output is the lift of the channel acting
    on the unlifted state.
    """
    rho_hat = as_complex_matrix(rho_hat)
    if rho_hat.shape[0] != ch.input_dim**2:
        raise ValueError(
            f"correlated input dimension {rho_hat.shape[0]} != {ch.input_dim}^2"
        )
    base = mc_unlift(rho_hat, ch.input_dim)
    return mc_lift(apply_channel(ch, base))
