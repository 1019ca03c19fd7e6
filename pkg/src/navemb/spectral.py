"""Closed-form counterpart of the iterative embedding, for validation.

The dynamics multiply the velocity matrix by the row-normalized adjacency
matrix each step, so everything is governed by that matrix's eigensystem.
This module computes the eigensystem exactly (through the symmetric matrix
K^{-1/2} A K^{-1/2}, which shares eigenvalues and maps eigenvectors through
K^{-1/2}), evaluates the limiting positions and pairwise distances in closed
form, and verifies the Laplacian energy identity the eigenvectors satisfy.

Deliberately dense and O(n^3): the oracle validates the iterative code at
desk scale (n <= 200); production embedding iterates instead.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, largest_component

__all__ = [
    "MAX_ORACLE_VERTICES",
    "SpectralDecomposition",
    "EnergyReport",
    "decompose",
    "coefficients",
    "closed_form_positions",
    "exact_distance",
    "expected_distance",
    "energy_relation_check",
]

MAX_ORACLE_VERTICES = 200

# Eigenvalues within this of +/-1 are treated as the drift mode / bipartite mode.
_MODE_TOL = 1e-8
# Reject the decomposition if the symmetric eigenbasis reconstructs worse than this.
_RECONSTRUCTION_TOL = 1e-6


@dataclass
class SpectralDecomposition:
    """Eigensystem of the row-normalized adjacency matrix.

    eigenvalues    -- ascending, all in [-1, 1]; the last equals 1.
    right_vectors  -- columns are right eigenvectors v_k (rows indexed by vertex).
    inverse_basis  -- W with W @ right_vectors = I; A = W @ X0 recovers the
                      expansion coefficients of any initial condition.
    degrees        -- diagonal of the degree matrix.
    matrix_kind    -- record of which matrix was decomposed.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    inverse_basis: np.ndarray
    degrees: np.ndarray
    matrix_kind: str = "row-normalized adjacency (K^-1 A)"

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def is_bipartite(self) -> bool:
        return bool(abs(self.eigenvalues[0] + 1.0) < _MODE_TOL)

    def nondrift(self) -> np.ndarray:
        """Indices of the eigenvalues strictly below 1 (drift mode excluded)."""
        return np.flatnonzero(self.eigenvalues < 1.0 - _MODE_TOL)


def decompose(g: Graph) -> SpectralDecomposition:
    """Full eigendecomposition of the row-normalized adjacency matrix.

    Uses the similar symmetric matrix S = K^{-1/2} A K^{-1/2}: eigh(S) gives
    real eigenvalues and an orthonormal basis U; v = K^{-1/2} u are right
    eigenvectors of K^{-1} A, and U^T K^{1/2} inverts the basis exactly.
    """
    if g.n > MAX_ORACLE_VERTICES:
        raise ValueError(
            f"oracle is desk-scale only (n <= {MAX_ORACLE_VERTICES}), got n={g.n}"
        )
    if len(largest_component(g)) != g.n:
        raise ValueError("oracle requires a connected graph")
    degrees = g.degrees.astype(np.float64)
    if g.n == 0 or degrees.min() == 0:
        raise ValueError("oracle requires every vertex to have degree >= 1")

    adj = np.zeros((g.n, g.n))
    for u, nbrs in enumerate(g.adjacency):
        adj[u, list(nbrs)] = 1.0
    inv_sqrt = 1.0 / np.sqrt(degrees)
    symmetric = adj * inv_sqrt[:, None] * inv_sqrt[None, :]
    eigenvalues, basis = np.linalg.eigh(symmetric)

    reconstruction = (basis * eigenvalues) @ basis.T
    err = float(np.abs(reconstruction - symmetric).max())
    if err > _RECONSTRUCTION_TOL:
        raise ValueError(f"eigenbasis reconstruction error {err:.3e} exceeds tolerance")

    eigenvalues = np.clip(eigenvalues, -1.0, 1.0)
    right_vectors = inv_sqrt[:, None] * basis
    inverse_basis = basis.T * np.sqrt(degrees)[None, :]
    # Rescale each mode so the dual-basis rows have unit norm: expansion
    # coefficients of random initial conditions then carry the init variance
    # exactly, mode by mode, which is what the expected-distance formula
    # assumes.  All v_k a_k products (positions, distances) are unchanged.
    row_norms = np.linalg.norm(inverse_basis, axis=1)
    right_vectors = right_vectors * row_norms[None, :]
    inverse_basis = inverse_basis / row_norms[:, None]
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        right_vectors=right_vectors,
        inverse_basis=inverse_basis,
        degrees=degrees,
    )


def coefficients(dec: SpectralDecomposition, x0: np.ndarray) -> np.ndarray:
    """Expansion coefficients A of an initial condition in the eigenbasis (V A = X0)."""
    return dec.inverse_basis @ x0


def _require_nonbipartite(dec: SpectralDecomposition) -> None:
    if dec.is_bipartite():
        raise ValueError(
            "graph is bipartite (eigenvalue -1): the dynamics oscillate and "
            "the closed-form position series diverges"
        )


def closed_form_positions(dec: SpectralDecomposition, x0: np.ndarray) -> np.ndarray:
    """Limiting positions: sum over non-drift modes of v_k a_k / (1 - lambda_k).

    The drift mode (eigenvalue 1, constant eigenvector) only translates all
    vertices uniformly, so it is excluded; the result matches the iterative
    positions up to a per-dimension translation, i.e. exactly in every
    pairwise distance.
    """
    _require_nonbipartite(dec)
    keep = dec.nondrift()
    a = coefficients(dec, x0)
    weights = 1.0 / (1.0 - dec.eigenvalues[keep])
    return dec.right_vectors[:, keep] @ (weights[:, None] * a[keep])


def exact_distance(dec: SpectralDecomposition, a: np.ndarray, i: int, j: int) -> float:
    """Squared limiting distance between vertices i and j for coefficients A."""
    _require_nonbipartite(dec)
    keep = dec.nondrift()
    diff = dec.right_vectors[i, keep] - dec.right_vectors[j, keep]
    weights = 1.0 / (1.0 - dec.eigenvalues[keep])
    terms = (weights * diff) @ a[keep]
    return float(np.dot(terms, terms))


def expected_distance(
    dec: SpectralDecomposition, dim: int, x_variance: float, i: int, j: int
) -> float:
    """Expected squared distance over random initial conditions, for large dim.

    Treats the expansion coefficients as uncorrelated with second moment
    ``x_variance`` (exact for an orthonormal basis, approximate otherwise):
    d^2 = sum_k dim * x_variance / (1 - lambda_k)^2 * (v_ik - v_jk)^2.
    """
    _require_nonbipartite(dec)
    keep = dec.nondrift()
    diff = dec.right_vectors[i, keep] - dec.right_vectors[j, keep]
    weights = 1.0 / (1.0 - dec.eigenvalues[keep]) ** 2
    return float(dim * x_variance * np.dot(weights, diff * diff))


@dataclass
class EnergyReport:
    """Residuals of the Laplacian energy identity and the probe lower bound.

    For every eigenpair, v'Lv must equal (1 - lambda) v'Kv.  Among
    K-normalized vectors K-orthogonal to the constant vector, the energy v'Lv
    is bounded below by 1 - lambda_{n-1} (attained by the second-largest
    eigenvalue's eigenvector).
    """

    max_relative_residual: float
    energy_bound: float
    probe_min_energy: float
    probe_count: int

    def bound_satisfied(self, slack: float = 1e-9) -> bool:
        return self.probe_min_energy >= self.energy_bound - slack


def energy_relation_check(
    dec: SpectralDecomposition,
    g: Graph,
    probes: int = 100,
    probe_rng: np.random.Generator | None = None,
) -> EnergyReport:
    """Verify v'Lv = (1 - lambda) v'Kv per eigenpair and probe the energy bound."""
    adj = np.zeros((g.n, g.n))
    for u, nbrs in enumerate(g.adjacency):
        adj[u, list(nbrs)] = 1.0
    laplacian = np.diag(dec.degrees) - adj

    max_residual = 0.0
    for k in range(dec.n):
        v = dec.right_vectors[:, k]
        k_norm = float(v @ (dec.degrees * v))
        v = v / np.sqrt(k_norm)
        energy = float(v @ laplacian @ v)
        expected = 1.0 - float(dec.eigenvalues[k])
        residual = abs(energy - expected) / max(1.0, abs(expected))
        max_residual = max(max_residual, residual)

    bound = 1.0 - float(dec.eigenvalues[-2]) if dec.n >= 2 else 0.0
    if probe_rng is None:
        probe_rng = np.random.default_rng(0)
    total_degree = dec.degrees.sum()
    probe_min = np.inf
    for _ in range(probes):
        w = probe_rng.standard_normal(dec.n)
        w = w - (dec.degrees @ w) / total_degree  # K-orthogonal to the constant vector
        w = w / np.sqrt(w @ (dec.degrees * w))
        probe_min = min(probe_min, float(w @ laplacian @ w))

    return EnergyReport(
        max_relative_residual=max_residual,
        energy_bound=bound,
        probe_min_energy=float(probe_min),
        probe_count=probes,
    )
