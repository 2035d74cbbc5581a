"""Contraction endomorphisms of 3-forms and their conjugacy invariants.

For a 3-form ``tau`` and a vector ``X``, the contraction ``tau_X`` is the skew
endomorphism with ``<tau_X Y, Z> = tau(X, Y, Z)``.  Two skew endomorphisms are
orthogonally conjugate exactly when their squares have the same eigenvalues
with the same multiplicities, so the sorted (eigenvalue, multiplicity) list of
``A^2`` is a complete orbit invariant.  Eigenvalues are always taken from the
symmetric matrix ``A^2`` with a self-adjoint solver; the spectrum of ``A``
itself is imaginary and numerically fragile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .forms import ExteriorForm, check_skew, interior, to_dense, two_form_to_endo

CLUSTER_TOL = 1e-8
#: width multiplier of the "too close to call" band between clusters
AMBIGUITY_BAND = 10.0
SKEW_CHECK_TOL = 1e-12


class AmbiguousClustering(ValueError):
    """Raised when eigenvalue clusters are separated by less than the safety
    band, so the caller should retry with a wider tolerance."""


@dataclass(frozen=True)
class OrbitSignature:
    """Sorted (eigenvalue of A^2, multiplicity) pairs of a skew endomorphism."""

    pairs: tuple[tuple[float, int], ...]

    def __post_init__(self):
        values = [v for v, _ in self.pairs]
        if any(v > 0.0 for v in values):
            raise ValueError(f"signature values must be <= 0, got {values}")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError(f"signature values must be strictly increasing, got {values}")
        if any(m <= 0 for _, m in self.pairs):
            raise ValueError("multiplicities must be positive")
        if any(v != 0.0 and m % 2 for v, m in self.pairs):
            raise ValueError(f"nonzero eigenvalues of a skew square pair up, got {self.pairs}")

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.pairs)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.pairs)

    def scaled(self, factor: float) -> "OrbitSignature":
        """Signature of ``c * A`` given the signature of ``A``, factor = c^2."""
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        return OrbitSignature(tuple((v * factor, m) for v, m in self.pairs))

    def power_sums(self, kmax: int) -> list[float]:
        """tr(A^{2k}) for k = 1..kmax, reconstructed from the signature."""
        return [sum(v**k * m for v, m in self.pairs) for k in range(1, kmax + 1)]

    def isclose(self, other: "OrbitSignature", tol: float = 1e-8) -> bool:
        if self.multiplicities != other.multiplicities:
            return False
        scale = max(1.0, max((abs(v) for v in self.values), default=0.0))
        return all(abs(a - b) <= tol * scale for a, b in zip(self.values, other.values))

    def to_json(self) -> list[list[float]]:
        return [[float(v), int(m)] for v, m in self.pairs]


def contraction_endo(tau: ExteriorForm, X: np.ndarray) -> np.ndarray:
    """The skew matrix of ``X _| tau`` for a 3-form ``tau``."""
    if tau.degree != 3:
        raise ValueError(f"expected a 3-form, got degree {tau.degree}")
    return two_form_to_endo(interior(X, tau))


def basis_contractions(tau: ExteriorForm) -> np.ndarray:
    """Stack of contraction matrices at the basis vectors, shape (n, n, n).

    ``M[i][z, y] = tau(e_{i+1}, e_{y+1}, e_{z+1})``, so the contraction at a
    vector X is ``np.tensordot(X, M, axes=1)``.
    """
    if tau.degree != 3:
        raise ValueError(f"expected a 3-form, got degree {tau.degree}")
    T = to_dense(tau)
    return np.ascontiguousarray(np.transpose(T, (0, 2, 1)))


def orbit_signature(A: np.ndarray, tol: float = CLUSTER_TOL) -> OrbitSignature:
    """Cluster the eigenvalues of ``A^2`` into a conjugacy-class signature.

    The matrix is rescaled to unit operator norm before clustering, so ``tol``
    is an absolute gap threshold on a spectrum inside [-1, 0].  Clusters whose
    separation lies between ``tol`` and ``10 * tol`` are considered too close
    to call and raise :class:`AmbiguousClustering`.
    """
    A = check_skew(np.asarray(A, dtype=float), tol=SKEW_CHECK_TOL * (1.0 + float(np.abs(A).max(initial=0.0))))
    n = A.shape[0]
    scale = float(np.linalg.norm(A, 2))
    if scale == 0.0:
        return OrbitSignature(((0.0, n),))
    B = A / scale
    S = B @ B
    S = 0.5 * (S + S.T)
    w = np.linalg.eigvalsh(S)  # ascending, in [-1, 0] up to round-off

    clusters: list[list[float]] = [[w[0]]]
    for value in w[1:]:
        if value - clusters[-1][-1] <= tol:
            clusters[-1].append(value)
        else:
            clusters.append([value])

    for left, right in zip(clusters, clusters[1:]):
        gap = right[0] - left[-1]
        if gap < AMBIGUITY_BAND * tol:
            raise AmbiguousClustering(
                f"eigenvalue clusters separated by {gap:.3e} with tolerance {tol:g}; "
                "widen the tolerance to merge or resolve them"
            )

    pairs = []
    for cluster in clusters:
        mean = float(sum(cluster) / len(cluster))
        value = 0.0 if abs(mean) <= tol else min(mean, 0.0)
        pairs.append((value * scale * scale, len(cluster)))

    for value, mult in pairs:
        if value != 0.0 and mult % 2:
            raise AmbiguousClustering(
                f"cluster at {value:.6g} has odd multiplicity {mult}; eigenvalue pairs "
                "of a skew matrix were split across clusters"
            )
    return OrbitSignature(tuple(pairs))


def newton_traces(tau: ExteriorForm, X: np.ndarray, kmax: int | None = None) -> list[float]:
    """tr(tau_X^{2k}) for k = 1..kmax (default kmax = n // 2)."""
    if kmax is None:
        kmax = tau.dim // 2
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    M = contraction_endo(tau, X)
    B = M @ M
    out = []
    P = np.eye(tau.dim)
    for _ in range(kmax):
        P = P @ B
        out.append(float(np.trace(P)))
    return out
