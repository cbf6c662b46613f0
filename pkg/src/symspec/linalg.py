"""Dense eigensolvers behind a fixed contract.

Both entry points delegate to LAPACK (via numpy): orthogonal tridiagonal
reduction with implicit shifts for the real-symmetric path, and balancing plus
unitary Hessenberg reduction with shifted QR and deflation for the general
complex path.  Eigenvalues are sorted by (Re, Im); residual norms accompany
eigenvectors on request, and near-defective clusters (where residuals may
degrade) are detected and reported rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFECT_TOL = 1e-6


class EigenConvergenceError(RuntimeError):
    """QR iteration failed to deflate within its iteration budget."""


@dataclass
class Spectrum:
    """Sorted eigenvalues with optional right eigenvectors and diagnostics."""

    values: np.ndarray
    vectors: np.ndarray | None = None
    residuals: np.ndarray | None = None
    matrix_norm: float = 0.0
    near_defective: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.values)


def _sorted_spectrum(values, vectors, anorm):
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    if vectors is not None:
        vectors = vectors[:, order]
    clusters = _defective_clusters(values, anorm)
    return values, vectors, clusters


def _defective_clusters(values, anorm):
    """Indices of eigenvalue groups closer than DEFECT_TOL * ||A||."""
    n = len(values)
    tol = DEFECT_TOL * max(anorm, 1.0)
    clusters = []
    used = set()
    for i in range(n):
        if i in used:
            continue
        group = [i]
        for j in range(i + 1, n):
            if abs(values[j] - values[i]) < tol:
                group.append(j)
        if len(group) > 1:
            clusters.append(tuple(group))
            used.update(group)
    return tuple(clusters)


def eig_symmetric(matrix, vectors=False):
    """Full spectrum of a real symmetric matrix, ascending."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    anorm = float(np.linalg.norm(a))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * max(anorm, 1.0):
        raise ValueError("matrix is not symmetric to 1e-12 * ||A||")
    a = 0.5 * (a + a.T)
    if vectors:
        w, v = np.linalg.eigh(a)
        res = np.linalg.norm(a @ v - v * w, axis=0) / max(anorm, 1e-300)
        vals, vecs, clusters = _sorted_spectrum(w.astype(complex), v, anorm)
        return Spectrum(vals, vecs, res, anorm, clusters)
    w = np.linalg.eigvalsh(a)
    vals, _, clusters = _sorted_spectrum(w.astype(complex), None, anorm)
    return Spectrum(vals, None, None, anorm, clusters)


def eig_complex(matrix, vectors=False):
    """Full spectrum of a general complex square matrix."""
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    anorm = float(np.linalg.norm(a))
    try:
        if vectors:
            w, v = np.linalg.eig(a)
        else:
            w = np.linalg.eigvals(a)
            v = None
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(
            f"QR iteration did not converge on a {a.shape[0]}x{a.shape[0]} block: {exc}"
        ) from exc
    res = None
    if v is not None:
        res = np.linalg.norm(a @ v - v * w, axis=0) / max(anorm, 1e-300)
    vals, vecs, clusters = _sorted_spectrum(w, v, anorm)
    if res is not None:
        order = np.lexsort((w.imag, w.real))
        res = res[order]
    return Spectrum(vals, vecs, res, anorm, clusters)
