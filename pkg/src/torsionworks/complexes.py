"""CW data with group-ring boundaries, twisting, and numerical homology.

A CW complex is stored as cell counts per dimension plus lifted boundary
matrices over the group ring of pi_1.  Twisting replaces each group-ring
entry by its adjoint-representation block, giving honest complex
matrices whose kernels and images are computed by rank-revealing SVD.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import (
    GroupPresentation,
    GroupRingMatrix,
    LieAlgebraBasis,
    Representation,
    Word,
    adjoint_matrix,
)
from .errors import DimensionMismatchError, InconsistentLiftsError

MAX_DIMENSION = 3
DEFAULT_TOL = 1e-8


@dataclass
class CwComplexData:
    """Cells and lifted boundary maps of a finite CW complex.

    ``cells[p]`` is the number of p-cells; ``boundaries[p-1]`` is the
    group-ring matrix of the boundary map from p-cells to (p-1)-cells,
    written in the chosen lifts.
    """

    name: str = field(compare=False)
    presentation: GroupPresentation = GroupPresentation.free(0)
    cells: list[int] = field(default_factory=lambda: [1])
    boundaries: list[GroupRingMatrix] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def validate(self):
        if not self.cells or any(m < 0 for m in self.cells):
            raise DimensionMismatchError("cell counts must be nonnegative and nonempty")
        if self.dimension > MAX_DIMENSION:
            raise DimensionMismatchError(
                f"dimension {self.dimension} exceeds the supported maximum {MAX_DIMENSION}"
            )
        if len(self.boundaries) != self.dimension:
            raise DimensionMismatchError(
                f"{len(self.boundaries)} boundary matrices for dimension {self.dimension}"
            )
        for p, mat in enumerate(self.boundaries, start=1):
            if (mat.rows, mat.cols) != (self.cells[p - 1], self.cells[p]):
                raise DimensionMismatchError(
                    f"boundary {p} has shape {(mat.rows, mat.cols)}, expected "
                    f"{(self.cells[p - 1], self.cells[p])}"
                )
            if mat.max_generator() >= self.presentation.generator_count:
                raise DimensionMismatchError(
                    f"boundary {p} uses a generator outside the presentation"
                )

    def boundary_matrix(self, p: int) -> GroupRingMatrix:
        return self.boundaries[p - 1]


def euler_characteristic(cw: CwComplexData) -> int:
    """Alternating sum of cell counts."""
    return sum((-1) ** p * m for p, m in enumerate(cw.cells))


def untwisted_betti0(cw: CwComplexData, tol: float = DEFAULT_TOL) -> int:
    """b_0 with constant integer coefficients; 1 means connected."""
    if cw.dimension == 0:
        return cw.cells[0]
    d1 = cw.boundaries[0].augmented()
    return cw.cells[0] - linalg.matrix_rank(d1.astype(complex), tol)


def change_lift(cw: CwComplexData, p: int, j: int, gamma: Word) -> CwComplexData:
    """Rewrite the boundary data after re-choosing the lift of one p-cell.

    Column j of the boundary into degree p-1 picks up gamma on the
    right; the matching row of the boundary out of degree p+1 picks up
    gamma^{-1} on the left.  All torsion invariants are unchanged.
    """
    if not (1 <= p <= cw.dimension):
        raise DimensionMismatchError(f"no boundary matrix in degree {p}")
    boundaries = list(cw.boundaries)
    boundaries[p - 1] = boundaries[p - 1].column_right_multiplied(j, gamma)
    if p < cw.dimension:
        boundaries[p] = boundaries[p].row_left_multiplied(j, gamma.inverse())
    return CwComplexData(cw.name, cw.presentation, list(cw.cells), boundaries)


@dataclass
class TwistedChainComplex:
    """Complex-coefficient chain complex obtained by twisting CW data.

    ``dims[p] = cells[p] * d`` with d the Lie-algebra dimension; blocks
    are laid out cell-major (all d coordinates of cell 0, then cell 1,
    and so on).
    """

    d: int
    dims: list[int]
    mats: list[np.ndarray]

    @property
    def dimension(self) -> int:
        return len(self.dims) - 1

    def boundary(self, p: int) -> np.ndarray:
        """Matrix of the map from degree p to degree p-1 (empty off-range)."""
        if 1 <= p <= self.dimension:
            return self.mats[p - 1]
        if p <= 0:
            return np.zeros((0, self.dims[0]), dtype=complex)
        rows = self.dims[-1] if p == self.dimension + 1 else 0
        return np.zeros((rows, 0), dtype=complex)


def twist(cw: CwComplexData, rep: Representation, basis: LieAlgebraBasis,
          tol: float = DEFAULT_TOL) -> TwistedChainComplex:
    """Twist the CW data by the adjoint of a representation.

    Each group-ring entry sum(m_i * gamma_i) becomes the block
    sum(m_i * Ad(gamma_i)).  Consecutive maps must compose to zero
    within tolerance, otherwise the lifts and the representation are
    inconsistent.
    """
    d = basis.dim
    cache: dict[Word, np.ndarray] = {}

    def ad(word: Word) -> np.ndarray:
        if word not in cache:
            cache[word] = adjoint_matrix(rep, basis, word)
        return cache[word]

    mats = []
    for p in range(1, cw.dimension + 1):
        g = cw.boundary_matrix(p)
        big = np.zeros((g.rows * d, g.cols * d), dtype=complex)
        for i in range(g.rows):
            for j in range(g.cols):
                entry = g.entry(i, j)
                if entry.is_zero:
                    continue
                block = np.zeros((d, d), dtype=complex)
                for word, coeff in entry.terms:
                    block += coeff * ad(word)
                big[i * d:(i + 1) * d, j * d:(j + 1) * d] = block
        mats.append(big)

    dims = [m * d for m in cw.cells]
    tc = TwistedChainComplex(d, dims, mats)
    for p in range(1, cw.dimension):
        a, b = tc.boundary(p), tc.boundary(p + 1)
        resid = linalg.operator_norm(a @ b)
        scale = 1.0 + linalg.operator_norm(a) * linalg.operator_norm(b)
        if resid > tol * scale:
            raise InconsistentLiftsError(
                f"boundary maps {p} and {p + 1} compose to norm {resid:.3e}; "
                "the lifts or the representation are inconsistent"
            )
    return tc


@dataclass
class HomologyData:
    """Numerical kernels, images, and chosen homology representatives."""

    betti: list[int]
    cycle_basis: list[np.ndarray]
    boundary_basis: list[np.ndarray]
    h_basis: list[np.ndarray]


def homology(tc, tol: float = DEFAULT_TOL) -> HomologyData:
    """Rank-revealing homology of a chain complex.

    Accepts any object with ``dims`` and ``boundary(p)``.  The chosen
    homology representatives are orthonormal cycles orthogonal to the
    boundary space; betti numbers do not depend on that choice.
    """
    n = len(tc.dims) - 1
    betti, cycles, bounds, hs = [], [], [], []
    for p in range(n + 1):
        down = tc.boundary(p)
        up = tc.boundary(p + 1)
        z = linalg.kernel_basis(down, tol, check_ambiguity=True)
        b = linalg.image_basis(up, tol, check_ambiguity=True)
        k = z.shape[1] - b.shape[1]
        h = linalg.complement_in(z, b, k, tol)
        betti.append(k)
        cycles.append(z)
        bounds.append(b)
        hs.append(h)
    return HomologyData(betti, cycles, bounds, hs)
