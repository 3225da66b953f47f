"""Rank-revealing helpers shared by the homology and torsion code.

All routines work on complex matrices whose "meaningful" scale is O(1);
a matrix whose largest singular value falls below ``ZERO_FLOOR`` is
treated as the zero map.  Rank decisions are otherwise relative to the
largest singular value.
"""

import numpy as np

from .errors import RankAmbiguityError

# matrices with operator norm below this are the zero map
ZERO_FLOOR = 1e-11

# a singular value within this factor of the cutoff is ambiguous
AMBIGUITY_FACTOR = 10.0


def empty_matrix(rows, cols=0):
    return np.zeros((rows, cols), dtype=complex)


def operator_norm(a):
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def singular_values(a):
    if a.size == 0 or min(a.shape) == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def svd_rank(sv, tol, check_ambiguity=False):
    """Number of singular values above the relative cutoff ``tol * max(sv)``.

    With ``check_ambiguity`` set, raise RankAmbiguityError when any
    singular value lies within AMBIGUITY_FACTOR of the cutoff, since a
    rank decision there is not trustworthy.
    """
    if sv.size == 0 or sv[0] <= ZERO_FLOOR:
        return 0
    cutoff = tol * sv[0]
    if check_ambiguity:
        lo, hi = cutoff / AMBIGUITY_FACTOR, cutoff * AMBIGUITY_FACTOR
        bad = sv[(sv > lo) & (sv < hi)]
        if bad.size:
            raise RankAmbiguityError(
                f"singular values {bad.tolist()} lie within a factor "
                f"{AMBIGUITY_FACTOR:g} of the rank cutoff {cutoff:.3e}",
                spectrum=sv.tolist(),
            )
    return int(np.sum(sv > cutoff))


def matrix_rank(a, tol, check_ambiguity=False):
    return svd_rank(singular_values(a), tol, check_ambiguity)


def image_basis(a, tol, check_ambiguity=False):
    """Orthonormal basis (columns) of the column space of ``a``."""
    if a.size == 0 or min(a.shape) == 0:
        return empty_matrix(a.shape[0])
    u, sv, _ = np.linalg.svd(a)
    return u[:, : svd_rank(sv, tol, check_ambiguity)]


def kernel_basis(a, tol, check_ambiguity=False):
    """Orthonormal basis (columns) of the null space of ``a``."""
    if a.shape[0] == 0 or a.size == 0:
        return np.eye(a.shape[1], dtype=complex)
    if a.shape[1] == 0:
        return empty_matrix(0)
    _, sv, vh = np.linalg.svd(a)
    return vh[svd_rank(sv, tol, check_ambiguity):, :].conj().T


def complement_in(span, subspace, count, tol):
    """Orthonormal vectors of ``span`` orthogonal to ``subspace``.

    Projects the columns of ``span`` away from ``subspace`` (both given
    as orthonormal column blocks) and returns the ``count`` dominant
    left singular vectors of the residue.
    """
    if count == 0:
        return empty_matrix(span.shape[0])
    resid = span - subspace @ (subspace.conj().T @ span)
    u, sv, _ = np.linalg.svd(resid)
    if sv.size < count or sv[count - 1] <= tol:
        raise np.linalg.LinAlgError(
            "projected span does not contain enough independent directions"
        )
    return u[:, :count]


def min_norm_preimage(a, targets, tol):
    """Least-squares minimum-norm solve ``a @ x = targets`` column-wise.

    Returns ``(x, residual)`` where residual is the worst column-wise
    relative defect.
    """
    if targets.shape[1] == 0:
        return empty_matrix(a.shape[1]), 0.0
    x, *_ = np.linalg.lstsq(a, targets, rcond=None)
    defect = a @ x - targets
    scale = max(operator_norm(targets), 1.0)
    return x, operator_norm(defect) / scale
