"""Dense complex-matrix primitives used throughout the package.

Matrices and vectors are plain numpy arrays (complex128, row-major).  All
eigen-routines share one deterministic canonical form so repeated calls on
identical input are bitwise stable:

* eigenvalues are returned sorted descending,
* within a group of eigenvalues tied to ``TIE_REL_TOL * ||m||_F``, the
  reported basis is the one closest to the standard basis (orthonormalized
  projections of e1, e2, ... onto the tied eigenspace, taken in order),
* every eigenvector is rotated so its first component of modulus above
  ``PHASE_TOL`` is real and non-negative.

Beamformers are physically phase invariant, but regression tests and CSV
reproducibility need exact vectors rather than equivalence classes, hence
the canonical form.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-10
PHASE_TOL = 1e-12
TIE_REL_TOL = 1e-10
_GS_MIN_NORM = 1e-7


class NonFiniteError(ValueError):
    """Input contains NaN or infinite entries."""


class NonHermitianError(ValueError):
    """Input is not Hermitian within ``HERMITIAN_TOL`` elementwise."""


class NotPositiveDefiniteError(ValueError):
    """Cholesky factorization failed: the matrix is not positive definite."""


class EigenPair(NamedTuple):
    """One (eigenvalue, unit eigenvector) pair in canonical form."""

    value: float
    vector: np.ndarray


def canonical_phase(v: np.ndarray, tol: float = PHASE_TOL) -> np.ndarray:
    """Rotate ``v`` so its first component with modulus > tol is real, >= 0."""
    nz = np.flatnonzero(np.abs(v) > tol)
    if nz.size == 0:
        return v
    pivot = v[nz[0]]
    return v * (pivot.conjugate() / abs(pivot))


def _validated_hermitian(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("matrix must have at least one entry")
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("matrix has NaN or infinite entries")
    scale = max(1.0, float(np.abs(a).max()))
    asym = float(np.abs(a - a.conj().T).max())
    if asym > HERMITIAN_TOL * scale:
        raise NonHermitianError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} "
            f"exceeds {HERMITIAN_TOL:.0e} * {scale:.3e}"
        )
    return a


def _canonical_block(block: np.ndarray) -> list[np.ndarray]:
    """Deterministic orthonormal basis of the subspace spanned by ``block``.

    Within a tied eigenspace the eigenbasis reported by LAPACK is
    arbitrary; we replace it by the Gram-Schmidt orthonormalization of the
    projections of the standard basis vectors (taken in order, skipping
    near-zero projections).  The first chosen vector maximizes |first
    component| over the subspace, the next maximizes the leading remaining
    component, and so on.
    """
    n, k = block.shape
    chosen: list[np.ndarray] = []
    for row in range(n):
        if len(chosen) == k:
            break
        p = block @ block[row].conj()
        for b in chosen:
            p = p - b * (b.conj() @ p)
        nrm = np.linalg.norm(p)
        if nrm <= _GS_MIN_NORM:
            continue
        p = p / nrm
        for b in chosen:  # second pass keeps orthogonality tight
            p = p - b * (b.conj() @ p)
        chosen.append(p / np.linalg.norm(p))
    for col in range(k):  # numerical fallback, unreachable for exact spans
        if len(chosen) == k:
            break
        p = block[:, col].copy()
        for b in chosen:
            p = p - b * (b.conj() @ p)
        nrm = np.linalg.norm(p)
        if nrm > _GS_MIN_NORM:
            chosen.append(p / nrm)
    return [canonical_phase(v) for v in chosen]


def hermitian_eig(m) -> list[EigenPair]:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Raises ``NonHermitianError`` / ``NonFiniteError`` on invalid input.
    Eigenvectors are pairwise orthonormal and in canonical form; adjacent
    eigenvalues closer than ``TIE_REL_TOL * ||m||_F`` are treated as one
    degenerate block and canonicalized together.
    """
    a = _validated_hermitian(m)
    vals, vecs = np.linalg.eigh(a)
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    n = vals.size
    tie_tol = TIE_REL_TOL * float(np.linalg.norm(a))
    pairs: list[EigenPair] = []
    start = 0
    while start < n:
        end = start + 1
        while end < n and vals[end - 1] - vals[end] <= tie_tol:
            end += 1
        if end - start == 1:
            pairs.append(EigenPair(float(vals[start]), canonical_phase(vecs[:, start])))
        else:
            basis = _canonical_block(vecs[:, start:end])
            for offset, v in enumerate(basis):
                pairs.append(EigenPair(float(vals[start + offset]), v))
        start = end
    return pairs


def dominant_eigvec(m) -> np.ndarray:
    """Canonical unit eigenvector of the largest eigenvalue of ``m``."""
    return hermitian_eig(m)[0].vector


def least_eigvec(m) -> np.ndarray:
    """Canonical unit eigenvector of the smallest eigenvalue of ``m``.

    Implemented as the dominant eigenvector of ``-m`` so that the tie-break
    rule is applied to the ascending ordering (a fully degenerate spectrum
    yields e1, matching ``dominant_eigvec``).
    """
    a = _validated_hermitian(m)
    return dominant_eigvec(-a)


def solve_hpd(m, b) -> np.ndarray:
    """Solve ``m @ x = b`` for Hermitian positive definite ``m``.

    Uses a Cholesky factorization; raises ``NotPositiveDefiniteError`` if
    the factorization encounters a non-positive pivot.
    """
    a = _validated_hermitian(m)
    rhs = np.asarray(b, dtype=np.complex128)
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: matrix {a.shape}, rhs {rhs.shape}")
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("matrix is not positive definite") from exc
    y = np.linalg.solve(chol, rhs)
    return np.linalg.solve(chol.conj().T, y)
