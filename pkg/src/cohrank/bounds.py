"""Rank lower bounds, matched certificates, and zero-error / asymptotic cost quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decompositions import (
    InfeasiblePairEnsembleError,
    WeightedEnsemble,
    dual_flag_ensemble,
    power_pair_ensemble,
    verify_ensemble,
)
from .kernel import as_complex_matrix, partial_transpose, tensor_power, trace_norm
from .states import (
    TAU_AMP,
    NotMaximallyCorrelatedError,
    mc_lift_vector,
    mc_unlift,
    noisy_max_coherent,
    pure_coherence_rank,
)

# ceil(x - CEIL_GUARD) keeps float noise from inflating an exactly-integer bound;
# floor(x + CEIL_GUARD) is the matching guard in the other direction.
CEIL_GUARD = 1e-9
# Off-diagonal l1 mass above this counts as genuine nondiagonality.
NONDIAG_TOL = 1e-9
# Eigenvalues at or below this are dropped from eigenvector ensembles.
EIG_CUTOFF = 1e-12
# Diagonal entries at or below this are outside the dephased support
# (positivity forces the corresponding rows to vanish).
DIAG_SUPPORT_TOL = 1e-12


def l1_coherence(m) -> float:
    """Sum of |entry| over all off-diagonal positions."""
    a = np.abs(np.asarray(m, dtype=complex))
    return float(a.sum() - np.trace(a))


def l1_rank_lower_bound(m) -> int:
    """Coherence rank is at least the off-diagonal l1 mass plus one."""
    return math.ceil(l1_coherence(m) + 1.0 - CEIL_GUARD)


def negativity(rho_hat, dim_a: int, dim_b: int) -> float:
    """(trace norm of the partial transpose - 1) / 2 for a bipartite state."""
    return 0.5 * (trace_norm(partial_transpose(rho_hat, dim_a, dim_b)) - 1.0)


def negativity_rank_lower_bound(rho_hat, dim_a: int, dim_b: int) -> int:
    """Schmidt number is at least twice the negativity plus one."""
    return math.ceil(2.0 * negativity(rho_hat, dim_a, dim_b) + 1.0 - CEIL_GUARD)


def delta_robustness(rho, tol_diag: float = DIAG_SUPPORT_TOL) -> float:
    """Smallest lam such that lam * dephase(rho) - rho is positive semidefinite.

    Computed as the top eigenvalue of D^(-1/2) rho D^(-1/2) restricted to the
    support of D = dephase(rho); diagonal entries at or below tol_diag are
    dropped. Equals 1 exactly on diagonal states and the coherence rank on
    pure states.
    """
    rho = as_complex_matrix(rho)
    diag = np.diag(rho).real
    support = np.flatnonzero(diag > tol_diag)
    if support.size == 0:
        return 1.0
    sub = rho[np.ix_(support, support)]
    scale = 1.0 / np.sqrt(diag[support])
    balanced = sub * np.outer(scale, scale)
    return float(np.linalg.eigvalsh(balanced)[-1])


def dilution_dimension(rho) -> int:
    """Smallest integer d with d * dephase(rho) - rho positive semidefinite."""
    return max(1, math.ceil(delta_robustness(rho) - CEIL_GUARD))


def pure_schmidt_rank(psi, dim_a: int, dim_b: int, tau_sv: float = TAU_AMP) -> int:
    """Number of singular values of the amplitude matrix above tau_sv."""
    psi = np.asarray(psi, dtype=complex)
    if psi.size != dim_a * dim_b:
        raise ValueError(f"vector size {psi.size} does not factor as {dim_a} x {dim_b}")
    sv = np.linalg.svd(psi.reshape(dim_a, dim_b), compute_uv=False)
    return int(np.count_nonzero(sv > tau_sv))


@dataclass(frozen=True)
class RankCertificate:
    """Matched lower/upper bounds on a rank with method provenance.

    lower_method is one of "l1", "negativity", "analytic-family",
    "nondiagonality"; upper_method is "ensemble-witness",
    "eigenvector-ensemble" or "pure-rank". The rank is certified exactly
    when the two bounds meet.
    """

    lower: int
    upper: int | None
    lower_method: str
    upper_method: str | None
    witness: WeightedEnsemble | None = None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper


def _eigenvector_ensemble(rho: np.ndarray) -> WeightedEnsemble:
    vals, vecs = np.linalg.eigh(rho)
    keep = vals > EIG_CUTOFF
    return WeightedEnsemble(weights=vals[keep], states=vecs[:, keep].T)


def _best_lower(candidates: list[tuple[int, str]]) -> tuple[int, str]:
    best, method = candidates[0]
    for value, tag in candidates[1:]:
        if value > best:
            best, method = value, tag
    return best, method


def rank_certificate(
    rho,
    family: str | None = None,
    *,
    alpha: float | None = None,
    n: int | None = None,
    d: int | None = None,
    tau_amp: float = TAU_AMP,
) -> RankCertificate:
    """Certify the coherence rank of a state with matched bounds.

    The lower bound is the best of the l1 bound, the nondiagonality floor of 2,
    and (for verified flag mixtures, family="rho-d") the analytic floor d+1.
    The upper bound comes from the named ensemble construction when a family
    hint is given and its witness verifies against rho ("omega-power" needs
    alpha and n, "rho-d" needs d); otherwise it falls back to the eigenvector
    ensemble, which is generally loose, so exactness is only claimed when both
    bounds meet. A hint whose witness fails to verify is dropped entirely,
    which keeps lower <= upper even for mislabeled inputs.
    """
    rho = as_complex_matrix(rho)
    offdiag = l1_coherence(rho)

    witness: WeightedEnsemble | None = None
    upper: int | None = None
    upper_method: str | None = None
    verified_flag_mixture = False

    if family == "omega-power" and alpha is not None and n is not None and alpha > 0:
        try:
            ens = power_pair_ensemble(alpha, n)
        except InfeasiblePairEnsembleError:
            ens = None
        if ens is not None and ens.target_dim == rho.shape[0]:
            report = verify_ensemble(ens, rho, tau_amp=tau_amp)
            if report.feasible:
                upper = report.max_member_rank
                upper_method = "ensemble-witness"
                witness = ens
    elif family == "rho-d" and d is not None:
        ens = dual_flag_ensemble(d)
        if ens.target_dim == rho.shape[0]:
            report = verify_ensemble(ens, rho, tau_amp=tau_amp)
            if report.feasible:
                upper = report.max_member_rank
                upper_method = "ensemble-witness"
                witness = ens
                verified_flag_mixture = True

    candidates: list[tuple[int, str]] = []
    if verified_flag_mixture:
        candidates.append((d + 1, "analytic-family"))
    candidates.append((l1_rank_lower_bound(rho), "l1"))
    if offdiag > NONDIAG_TOL:
        candidates.append((2, "nondiagonality"))
    lower, lower_method = _best_lower(candidates)

    if upper is None:
        if offdiag <= NONDIAG_TOL:
            # Diagonal state: the basis-state ensemble is its eigenvector
            # ensemble, independent of how the solver orders degeneracies.
            diag = np.diag(rho).real
            keep = np.flatnonzero(diag > EIG_CUTOFF)
            witness = WeightedEnsemble(
                weights=diag[keep], states=np.eye(rho.shape[0])[keep]
            )
            upper = 1
            upper_method = "eigenvector-ensemble"
        else:
            witness = _eigenvector_ensemble(rho)
            ranks = (np.abs(witness.states) > tau_amp).sum(axis=1)
            upper = int(ranks.max())
            upper_method = "pure-rank" if len(witness) == 1 else "eigenvector-ensemble"

    return RankCertificate(
        lower=lower,
        upper=upper,
        lower_method=lower_method,
        upper_method=upper_method,
        witness=witness,
    )


def schmidt_certificate(
    rho_hat,
    dims: tuple[int, int] | None = None,
    family: str | None = None,
    *,
    alpha: float | None = None,
    n: int | None = None,
    d: int | None = None,
    tau_amp: float = TAU_AMP,
) -> RankCertificate:
    """Certify the Schmidt number of a bipartite state.

    On maximally correlated states the Schmidt number equals the coherence
    rank of the unlifted state, so the full coherence certificate transfers
    (its witness is lifted member by member). Otherwise only the negativity
    lower bound and an eigenvector upper bound are reported.
    """
    rho_hat = as_complex_matrix(rho_hat)
    if dims is None:
        side = math.isqrt(rho_hat.shape[0])
        dims = (side, side)
    dim_a, dim_b = dims
    if dim_a * dim_b != rho_hat.shape[0]:
        raise ValueError(
            f"dimension {rho_hat.shape[0]} does not factor as {dim_a} x {dim_b}"
        )
    neg_lower = negativity_rank_lower_bound(rho_hat, dim_a, dim_b)

    base = None
    if dim_a == dim_b:
        try:
            base = mc_unlift(rho_hat, dim_a)
        except NotMaximallyCorrelatedError:
            base = None
    if base is not None:
        cert = rank_certificate(base, family, alpha=alpha, n=n, d=d, tau_amp=tau_amp)
        if cert.lower >= neg_lower:
            lower, lower_method = cert.lower, cert.lower_method
        else:
            lower, lower_method = neg_lower, "negativity"
        witness = None
        if cert.witness is not None:
            lifted = np.zeros(
                (len(cert.witness), dim_a * dim_a), dtype=cert.witness.states.dtype
            )
            lifted[:, np.arange(dim_a) * dim_a + np.arange(dim_a)] = cert.witness.states
            witness = WeightedEnsemble(weights=cert.witness.weights, states=lifted)
        return RankCertificate(lower, cert.upper, lower_method, cert.upper_method, witness)

    vals, vecs = np.linalg.eigh(rho_hat)
    keep = vals > EIG_CUTOFF
    members = vecs[:, keep].T
    ranks = [pure_schmidt_rank(row, dim_a, dim_b, tau_amp) for row in members]
    upper = max(ranks) if ranks else 1
    upper_method = "pure-rank" if len(ranks) == 1 else "eigenvector-ensemble"
    witness = WeightedEnsemble(weights=vals[keep], states=members)
    return RankCertificate(neg_lower, upper, "negativity", upper_method, witness)


def regularized_cost_bounds(alpha: float) -> tuple[float, float]:
    """Lower and upper bounds on the per-copy zero-error cost of the noisy coherent qubit.

    The lower bound log2(1+alpha) comes from the l1 bound applied per copy; the
    upper bound 1/m with m = floor(1/log2(1+alpha)) comes from the rank-2 pair
    ensemble at m copies. The bounds coincide exactly when 1/log2(1+alpha) is
    an integer.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"mixing parameter must lie in (0, 1], got {alpha}")
    lower = math.log2(1.0 + alpha)
    copies = math.floor(1.0 / lower + CEIL_GUARD)
    return lower, 1.0 / copies


def binary_entropy(x: float) -> float:
    """-x log2 x - (1-x) log2(1-x), with the 0 log 0 = 0 convention."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def asymptotic_entanglement_cost(alpha: float) -> float:
    """Vanishing-error entanglement cost of the lifted noisy coherent qubit state.

    Equals the binary entropy of (1 - sqrt(1 - alpha^2)) / 2; additivity of the
    entanglement of formation for this family makes the single-letter formula
    exact.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {alpha}")
    return binary_entropy(0.5 * (1.0 - math.sqrt(1.0 - alpha * alpha)))


@dataclass(frozen=True)
class CostReport:
    """Resource costs for n copies of the noisy coherent qubit family.

    zero_error is log2(certified rank)/n when the rank is certified exactly,
    otherwise an interval (lower, upper) from the matched bounds. The chain
    asymptotic_ec <= regularized_lower <= regularized_upper <= zero_error
    upper value always holds (within 1e-9).
    """

    alpha: float
    n: int
    zero_error: float | tuple[float, float]
    regularized_lower: float
    regularized_upper: float
    asymptotic_ec: float

    @property
    def zero_error_upper(self) -> float:
        if isinstance(self.zero_error, tuple):
            return self.zero_error[1]
        return self.zero_error


def cost_report(alpha: float, n: int = 1) -> CostReport:
    """Assemble the zero-error / regularized / asymptotic cost chain."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {alpha}")
    if n < 1:
        raise ValueError(f"copy count must be >= 1, got {n}")
    if alpha == 0.0:
        return CostReport(alpha, n, 0.0, 0.0, 0.0, 0.0)

    rho = tensor_power(noisy_max_coherent(alpha), n)
    cert = rank_certificate(rho, "omega-power", alpha=alpha, n=n)
    if cert.exact:
        zero_error: float | tuple[float, float] = math.log2(cert.upper) / n
    else:
        zero_error = (math.log2(cert.lower) / n, math.log2(cert.upper) / n)
    reg_lower, reg_upper = regularized_cost_bounds(alpha)
    ec = asymptotic_entanglement_cost(alpha)

    upper_value = zero_error[1] if isinstance(zero_error, tuple) else zero_error
    chain = (ec, reg_lower, reg_upper, upper_value)
    for left, right in zip(chain, chain[1:]):
        if left > right + 1e-9:
            raise RuntimeError(f"cost chain ordering violated: {chain}")
    return CostReport(alpha, n, zero_error, reg_lower, reg_upper, ec)
