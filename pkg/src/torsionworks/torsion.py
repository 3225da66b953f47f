"""Chain-group splittings and the alternating-determinant torsion.

Each chain group C_p splits as B_p + span(h_p) + s_p(B_{p-1}): chosen
boundaries, chosen homology representatives, and preimages of the
boundary basis one degree down.  Writing that split basis in the
reference (geometric) basis of C_p gives a square transition matrix
M_p, and the torsion is

    T = prod_p det(M_p)^{(-1)^p}.

Equivalently, with D_p the determinant of the inverse transition
(reference basis expressed in the split basis, which is what
``per_degree_determinants`` records), T = prod_p D_p^{(-1)^(p+1)}.
The value does not depend on the choice of boundary bases or sections
and rescales covariantly in the homology bases; empty degrees
contribute the empty-product value 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BadHomologyBasisError, SplittingError

DEFAULT_TOL = 1e-8
SECTION_EXACTNESS_TOL = 1e-8


def _boundary_bases(tc, tol):
    n = len(tc.dims) - 1
    return [linalg.image_basis(tc.boundary(p + 1), tol) for p in range(n + 1)]


def _as_columns(dims_p, block) -> np.ndarray:
    if block is None:
        return linalg.empty_matrix(dims_p)
    arr = np.asarray(block, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape[0] != dims_p:
        raise BadHomologyBasisError(
            f"homology vectors live in dimension {arr.shape[0]}, chain group has {dims_p}"
        )
    return arr


@dataclass
class HomologySplitting:
    """Per-degree split data: boundary bases, homology lifts, sections."""

    b: list[np.ndarray]
    h: list[np.ndarray]
    s: list[np.ndarray]

    @property
    def degrees(self) -> int:
        return len(self.b)


def build_splitting(tc, hd, h_bases=None, tol: float = DEFAULT_TOL,
                    boundary_bases=None, section_cycles=None) -> HomologySplitting:
    """Split every chain group of ``tc`` using the homology data ``hd``.

    ``h_bases[p]`` supplies cycle vectors whose classes form a basis of
    H_p; it defaults to the representatives chosen by ``homology``.
    ``boundary_bases`` overrides the basis of each B_p (any spanning
    choice is valid) and ``section_cycles`` adds cycle components to the
    minimum-norm sections; both exist so that independence from these
    choices can be exercised directly.
    """
    n = len(tc.dims) - 1
    bs = list(boundary_bases) if boundary_bases is not None else _boundary_bases(tc, tol)
    hs = []
    for p in range(n + 1):
        block = None if h_bases is None else (h_bases[p] if p < len(h_bases) else None)
        h = _as_columns(tc.dims[p], block) if block is not None else hd.h_basis[p]
        if h.shape[1] != hd.betti[p]:
            raise BadHomologyBasisError(
                f"degree {p}: {h.shape[1]} homology vectors supplied, betti is {hd.betti[p]}"
            )
        if h.shape[1]:
            cycle_defect = linalg.operator_norm(tc.boundary(p) @ h)
            if cycle_defect > tol * max(1.0, linalg.operator_norm(h)):
                raise BadHomologyBasisError(
                    f"degree {p}: supplied vectors are not cycles (defect {cycle_defect:.3e})"
                )
            stacked = np.hstack([hd.boundary_basis[p], h])
            rank = linalg.matrix_rank(stacked, tol)
            if rank != hd.boundary_basis[p].shape[1] + h.shape[1]:
                raise BadHomologyBasisError(
                    f"degree {p}: homology classes are dependent modulo boundaries"
                )
        hs.append(h)

    ss = [linalg.empty_matrix(tc.dims[0])]
    for p in range(1, n + 1):
        target = bs[p - 1]
        pre, defect = linalg.min_norm_preimage(tc.boundary(p), target, tol)
        if defect > SECTION_EXACTNESS_TOL:
            raise SplittingError(
                f"degree {p}: section defect {defect:.3e} exceeds "
                f"{SECTION_EXACTNESS_TOL:.0e}"
            )
        if section_cycles is not None and pre.shape[1]:
            shift = section_cycles[p]
            if shift is not None:
                pre = pre + shift
        ss.append(pre)

    split = HomologySplitting(bs, hs, ss)
    for p in range(n + 1):
        m = assembled_matrix(tc, split, p)
        if m.shape[0] != m.shape[1]:
            raise SplittingError(
                f"degree {p}: split basis has {m.shape[1]} vectors in a "
                f"{m.shape[0]}-dimensional chain group"
            )
        if m.shape[0]:
            # column scales are legitimate degrees of freedom; only
            # genuine dependence should fail the rank check
            norms = np.linalg.norm(m, axis=0)
            if np.any(norms == 0) or linalg.matrix_rank(m / norms, tol) < m.shape[0]:
                raise SplittingError(f"degree {p}: split basis is singular")
    return split


def assembled_matrix(tc, split: HomologySplitting, p: int) -> np.ndarray:
    """Columns [b_p | h_p | s_p(b_{p-1})] in the standard coordinates."""
    blocks = [split.b[p], split.h[p], split.s[p]]
    blocks = [blk for blk in blocks if blk.shape[1] > 0]
    if not blocks:
        return linalg.empty_matrix(tc.dims[p])
    return np.hstack(blocks)


@dataclass
class TorsionResult:
    """Torsion value with its per-degree transition determinants.

    ``per_degree_determinants[p]`` is the determinant expressing the
    reference basis in the split basis; the value is the alternating
    product of these with exponent (-1)^(p+1).  ``sign_normalized``
    stays False for raw values (the overall sign depends on the pinned
    basis orderings; compare moduli across conventions).
    """

    value: complex
    per_degree_determinants: list[complex]
    sign_normalized: bool = False

    @property
    def modulus(self) -> float:
        return abs(self.value)


def torsion(tc, split: HomologySplitting, reference_bases=None) -> TorsionResult:
    """Alternating product of transition determinants for a split complex.

    ``reference_bases[p]`` replaces the standard coordinate basis of
    C_p (used when the chain groups carry assigned bases, as in the
    corrective term); default is the geometric basis = identity.
    """
    n = len(tc.dims) - 1
    value = complex(1.0)
    dets = []
    for p in range(n + 1):
        if tc.dims[p] == 0:
            dets.append(complex(1.0))
            continue
        m = assembled_matrix(tc, split, p)
        if reference_bases is not None and reference_bases[p] is not None:
            m = np.linalg.solve(np.asarray(reference_bases[p], dtype=complex), m)
        det = complex(np.linalg.det(m))
        if det == 0 or not np.isfinite(det):
            raise SplittingError(f"degree {p}: singular transition matrix")
        dets.append(1.0 / det)
        value *= det ** ((-1) ** p)
    return TorsionResult(value=value, per_degree_determinants=dets)


def torsion_of(tc, hd, h_bases=None, tol: float = DEFAULT_TOL,
               reference_bases=None) -> TorsionResult:
    """Convenience wrapper: split with defaults, then take the torsion."""
    split = build_splitting(tc, hd, h_bases, tol=tol)
    return torsion(tc, split, reference_bases=reference_bases)


@dataclass
class IndependenceReport:
    """Outcome of re-computing torsion under randomized choices."""

    reference_value: complex
    values: list[complex]
    max_relative_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_relative_deviation <= self.tolerance


def _random_boundary_bases(tc, hd, rng):
    out = []
    for p in range(len(tc.dims)):
        base = hd.boundary_basis[p]
        r = base.shape[1]
        if r == 0:
            out.append(base)
            continue
        mix = rng.normal(size=(r, r)) + 1j * rng.normal(size=(r, r))
        mix += 3.0 * np.eye(r)  # keep the recombination well conditioned
        out.append(base @ mix)
    return out


def _random_section_cycles(tc, hd, rng):
    shifts = [None]
    for p in range(1, len(tc.dims)):
        cols = hd.boundary_basis[p - 1].shape[1]
        z = hd.cycle_basis[p]
        if cols == 0 or z.shape[1] == 0:
            shifts.append(None)
            continue
        coeff = rng.normal(size=(z.shape[1], cols)) + 1j * rng.normal(size=(z.shape[1], cols))
        shifts.append(z @ coeff)
    return shifts


def torsion_independence_check(tc, hd, h_bases=None, trials: int = 20,
                               tol: float = DEFAULT_TOL,
                               pass_tol: float = 1e-6,
                               seed: int = 0) -> IndependenceReport:
    """Recompute torsion under random boundary bases and random sections.

    The torsion must not move: any valid basis of each B_p and any valid
    section gives the same value.  Reports the worst relative deviation
    over ``trials`` randomized recomputations.
    """
    rng = np.random.default_rng(seed)
    reference = torsion_of(tc, hd, h_bases, tol=tol).value
    values = []
    worst = 0.0
    for _ in range(trials):
        split = build_splitting(
            tc, hd, h_bases, tol=tol,
            boundary_bases=_random_boundary_bases(tc, hd, rng),
            section_cycles=_random_section_cycles(tc, hd, rng),
        )
        val = torsion(tc, split).value
        values.append(val)
        worst = max(worst, abs(val - reference) / abs(reference))
    return IndependenceReport(reference, values, worst, pass_tol)
