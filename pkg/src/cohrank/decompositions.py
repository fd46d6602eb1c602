"""Explicit pure-state ensembles certifying rank upper bounds, plus a reconstruction oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernel import as_complex_matrix, dim_cap, DimensionCapError
from .states import TAU_AMP, fourier_flag_dual

# Members whose weight falls at or below cutoff/size are dropped as exact zeros.
WEIGHT_CUTOFF = 1e-12


class InfeasiblePairEnsembleError(Exception):
    """The requested pair ensemble has negative residual weight.

    The construction only closes for alpha <= 2**(1/n) - 1; the offending
    boundary value is carried on the exception.
    """

    def __init__(self, alpha: float, n: int):
        self.alpha = alpha
        self.n = n
        self.boundary_alpha = 2.0 ** (1.0 / n) - 1.0
        super().__init__(
            f"pair ensemble infeasible: alpha={alpha} exceeds boundary "
            f"{self.boundary_alpha:.12g} for n={n}"
        )


@dataclass(frozen=True)
class WeightedEnsemble:
    """Convex mixture of pure states, stored row-wise.

    weights: shape (m,) floats, nonnegative up to -1e-12, summing to 1.
    states: shape (m, target_dim); rows are normalized amplitude vectors
    (float64 when all amplitudes are real, else complex128).
    """

    weights: np.ndarray
    states: np.ndarray

    @property
    def target_dim(self) -> int:
        return self.states.shape[1]

    def __len__(self) -> int:
        return self.weights.size

    def members(self):
        """Iterate (weight, amplitude-vector) pairs."""
        return zip(self.weights.tolist(), self.states)


@dataclass(frozen=True)
class EnsembleReport:
    reconstruction_trace_distance: float
    max_member_rank: int
    weight_sum: float
    feasible: bool


def power_pair_feasible(alpha: float, n: int) -> bool:
    """Whether the two-level ensemble for the n-fold noisy coherent power closes."""
    return (2.0 - (1.0 + alpha) ** n) / 2.0**n >= -WEIGHT_CUTOFF


def power_pair_ensemble(alpha: float, n: int, cap: int | None = None) -> WeightedEnsemble:
    """Two-level pure ensemble reconstructing the n-fold noisy coherent power.

    For every unordered pair of distinct n-bitstrings {i, j}, the member
    (|i> + |j>)/sqrt(2) enters with weight 2 * alpha**hamming(i, j) / 2**n;
    the leftover diagonal mass (2 - (1+alpha)**n) / 2**n is spread over the
    2**n basis states. All members have coherence rank <= 2. Raises
    InfeasiblePairEnsembleError when the leftover mass is negative, i.e. for
    alpha > 2**(1/n) - 1 (the boundary itself is accepted, with the then-zero
    basis members pruned).

    Members are ordered pairs-first in lexicographic (i, j) order, then basis
    states ascending.
    """
    if alpha <= 0.0:
        raise ValueError(f"mixing parameter must be positive, got {alpha}")
    if n < 1:
        raise ValueError(f"copy count must be >= 1, got {n}")
    size = 2**n
    limit = dim_cap() if cap is None else cap
    if size > limit:
        raise DimensionCapError(f"ensemble dimension {size} exceeds cap {limit}")

    residual = (2.0 - (1.0 + alpha) ** n) / size
    if residual < -WEIGHT_CUTOFF:
        raise InfeasiblePairEnsembleError(alpha, n)

    labels = np.arange(size)
    hamming = np.bitwise_count(np.bitwise_xor.outer(labels, labels))
    rows, cols = np.triu_indices(size, k=1)
    pair_weights = 2.0 * alpha ** hamming[rows, cols].astype(float) / size

    keep_basis = residual > WEIGHT_CUTOFF / size
    n_pairs = rows.size
    total = n_pairs + (size if keep_basis else 0)
    states = np.zeros((total, size))
    states[np.arange(n_pairs), rows] = 1.0 / math.sqrt(2)
    states[np.arange(n_pairs), cols] = 1.0 / math.sqrt(2)
    weights = np.empty(total)
    weights[:n_pairs] = pair_weights
    if keep_basis:
        states[n_pairs:, :] = np.eye(size)
        weights[n_pairs:] = residual
    return WeightedEnsemble(weights=weights, states=states)


def dual_flag_ensemble(d: int) -> WeightedEnsemble:
    """Uniform ensemble of the d dual flag states; reconstructs the flag mixture.

    Every member has coherence rank exactly d+1, which certifies the rank of
    the mixture from above.
    """
    if d < 1:
        raise ValueError(f"register size must be >= 1, got {d}")
    states = np.array([fourier_flag_dual(d, j) for j in range(d)])
    weights = np.full(d, 1.0 / d)
    return WeightedEnsemble(weights=weights, states=states)


def verify_ensemble(
    ens: WeightedEnsemble,
    target,
    tol_recon: float = 1e-9,
    tau_amp: float = TAU_AMP,
) -> EnsembleReport:
    """Reconstruct the weighted mixture and compare against the target state.

    Reports the trace distance (half trace norm of the difference), the
    largest member coherence rank, and the weight sum. The ensemble is
    feasible when the distance is within tol_recon, no weight dips below
    -1e-12, and the weights sum to 1 within 1e-9.
    """
    target = as_complex_matrix(target)
    if ens.target_dim != target.shape[0]:
        raise ValueError(
            f"ensemble dimension {ens.target_dim} != target {target.shape[0]}"
        )
    weighted = ens.states * ens.weights[:, None]
    recon = weighted.T @ ens.states.conj()
    distance = 0.5 * float(np.abs(np.linalg.eigvalsh(recon - target)).sum())
    max_rank = int((np.abs(ens.states) > tau_amp).sum(axis=1).max())
    weight_sum = float(ens.weights.sum())
    feasible = (
        distance <= tol_recon
        and float(ens.weights.min()) >= -1e-12
        and abs(weight_sum - 1.0) <= 1e-9
    )
    return EnsembleReport(
        reconstruction_trace_distance=distance,
        max_member_rank=max_rank,
        weight_sum=weight_sum,
        feasible=feasible,
    )
