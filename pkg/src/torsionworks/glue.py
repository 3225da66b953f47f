"""Disk sums, the Mayer-Vietoris sequence, and torsion multiplicativity.

The disk sum of two complexes identifies one 0-cell of each factor (the
gluing disk is contractible, so its simple-homotopy collapse to a point
is used as the chain model).  That gives a short exact sequence of
twisted complexes

    0 -> C(D) --(i1, -i2)--> C(M1) (+) C(M2) --j1 + j2--> C(M) -> 0

whose homology long exact sequence, read right to left, is the 12-space
acyclic complex used here:

    space 3p   : H_p(M)
    space 3p+1 : H_p(M1) (+) H_p(M2)
    space 3p+2 : H_p(D)          (zero above degree 0)

The torsion of that sequence in assigned homology bases is the
corrective term; with the bases produced by ``transport_bases`` it
equals 1 exactly, which reduces the gluing formula

    T(M1) * T(M2) = T(M) * T(D) * (corrective term)

to plain multiplicativity T(M) = T(M1) * T(M2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import (
    GroupPresentation,
    GroupRingElement,
    GroupRingMatrix,
    LieAlgebraBasis,
    Representation,
    Word,
    orthonormal_sl2_basis,
)
from .complexes import (
    CwComplexData,
    HomologyData,
    TwistedChainComplex,
    euler_characteristic,
    homology,
    twist,
    untwisted_betti0,
)
from .errors import DiskSumError, SequenceError, TransportError
from .torsion import TorsionResult, torsion_of

DEFAULT_TOL = 1e-8
SEQUENCE_TOL = 1e-8
N_SPACES = 12


# ---------------------------------------------------------------------------
# disk sum of CW data
# ---------------------------------------------------------------------------

def _remap_word(word: Word, offset: int) -> Word:
    return Word(tuple((g + offset, e) for g, e in word.letters))


def _remap_element(elem: GroupRingElement, offset: int) -> GroupRingElement:
    return GroupRingElement.from_terms(
        (_remap_word(w, offset), c) for w, c in elem.terms
    )


@dataclass
class DiskSumResult:
    """Glued CW data plus the cell and generator index maps of the factors."""

    total: CwComplexData
    cell_maps: tuple[list[list[int]], list[list[int]]]
    disk_cell: int
    generator_maps: tuple[list[int], list[int]]


def disk_sum(m1: CwComplexData, m2: CwComplexData,
             tol: float = DEFAULT_TOL) -> DiskSumResult:
    """Glue two connected complexes along one 0-cell (index 0 of each).

    The fundamental group is the free product and the Euler
    characteristics satisfy chi(M) = chi(M1) + chi(M2) - 1.
    """
    for m in (m1, m2):
        if m.cells[0] < 1:
            raise DiskSumError(f"factor {m.name!r} has no 0-cell to glue")
        if untwisted_betti0(m, tol) != 1:
            raise DiskSumError(f"factor {m.name!r} is not connected")

    g1 = m1.presentation.generator_count
    g2 = m2.presentation.generator_count
    relators = tuple(m1.presentation.relators) + tuple(
        _remap_word(r, g1) for r in m2.presentation.relators
    )
    pres = GroupPresentation(g1 + g2, relators)

    dim = max(m1.dimension, m2.dimension)

    def count(m, p):
        return m.cells[p] if p <= m.dimension else 0

    cells = []
    maps1: list[list[int]] = []
    maps2: list[list[int]] = []
    for p in range(dim + 1):
        a, b = count(m1, p), count(m2, p)
        if p == 0:
            cells.append(a + b - 1)
            maps1.append(list(range(a)))
            maps2.append([0] + [a + j - 1 for j in range(1, b)])
        else:
            cells.append(a + b)
            maps1.append(list(range(a)))
            maps2.append([a + j for j in range(b)])

    boundaries = []
    for p in range(1, dim + 1):
        rows, cols = cells[p - 1], cells[p]
        grid = [[GroupRingElement.zero() for _ in range(cols)] for _ in range(rows)]
        if p <= m1.dimension:
            src = m1.boundary_matrix(p)
            for i in range(src.rows):
                for j in range(src.cols):
                    grid[maps1[p - 1][i]][maps1[p][j]] = src.entry(i, j)
        if p <= m2.dimension:
            src = m2.boundary_matrix(p)
            for i in range(src.rows):
                for j in range(src.cols):
                    entry = _remap_element(src.entry(i, j), g1)
                    ti, tj = maps2[p - 1][i], maps2[p][j]
                    grid[ti][tj] = grid[ti][tj] + entry
        boundaries.append(GroupRingMatrix.from_rows(grid))

    total = CwComplexData(
        name=f"{m1.name}+{m2.name}",
        presentation=pres,
        cells=cells,
        boundaries=boundaries,
    )
    assert euler_characteristic(total) == (
        euler_characteristic(m1) + euler_characteristic(m2) - 1
    )
    return DiskSumResult(
        total=total,
        cell_maps=(maps1, maps2),
        disk_cell=0,
        generator_maps=(list(range(g1)), [g1 + j for j in range(g2)]),
    )


def free_product_rep(psi1: Representation, psi2: Representation,
                     ds: DiskSumResult) -> Representation:
    """The unique representation restricting to psi1 and psi2."""
    if psi1.target != psi2.target:
        raise DiskSumError(
            f"target mismatch: {psi1.target.value} vs {psi2.target.value}"
        )
    if psi1.n != psi2.n:
        raise DiskSumError(f"rank mismatch: {psi1.n} vs {psi2.n}")
    images = tuple(psi1.images) + tuple(psi2.images)
    if len(images) != ds.total.presentation.generator_count:
        raise DiskSumError("generator counts do not match the glued presentation")
    return Representation(psi1.target, psi1.n, images)


def point_complex(name: str = "disk") -> CwComplexData:
    return CwComplexData(name=name, presentation=GroupPresentation.free(0),
                         cells=[1], boundaries=[])


# ---------------------------------------------------------------------------
# chain-level inclusion maps of the gluing
# ---------------------------------------------------------------------------

def _cell_inclusion(cell_map, total_cells, factor_cells, d):
    out = np.zeros((total_cells * d, factor_cells * d), dtype=complex)
    for j, tj in enumerate(cell_map):
        out[tj * d:(tj + 1) * d, j * d:(j + 1) * d] = np.eye(d)
    return out


def inclusion_matrices(ds: DiskSumResult, tc1, tc2, tcm):
    """Twisted chain maps of the gluing sequence.

    Returns ``(alpha, beta)``: ``alpha`` maps the disk chains into the
    direct sum as (v, -v) on the shared 0-cell; ``beta[p]`` maps the
    direct sum onto the glued complex as j1 + j2.
    """
    d = tcm.d
    maps1, maps2 = ds.cell_maps
    dim = len(tcm.dims) - 1
    beta = []
    for p in range(dim + 1):
        c1 = tc1.dims[p] // d if p < len(tc1.dims) else 0
        c2 = tc2.dims[p] // d if p < len(tc2.dims) else 0
        total = tcm.dims[p] // d
        j1 = _cell_inclusion(maps1[p] if p < len(maps1) else [], total, c1, d)
        j2 = _cell_inclusion(maps2[p] if p < len(maps2) else [], total, c2, d)
        beta.append(np.hstack([j1, j2]))
    alpha = np.zeros((tc1.dims[0] + tc2.dims[0], d), dtype=complex)
    base1 = maps1[0].index(ds.disk_cell)
    base2 = maps2[0].index(ds.disk_cell)
    alpha[base1 * d:(base1 + 1) * d, :] = np.eye(d)
    start2 = tc1.dims[0] + base2 * d
    alpha[start2:start2 + d, :] = -np.eye(d)
    return alpha, beta


def _direct_sum_boundary(tc1, tc2, p):
    a = tc1.boundary(p)
    b = tc2.boundary(p)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def _class_coordinates(vectors, h, boundary, tol):
    """Coordinates of cycle columns in the basis ``h`` modulo boundaries."""
    cols = vectors.shape[1]
    blocks = [m for m in (h, boundary) if m.shape[1]]
    if not blocks:
        if linalg.operator_norm(vectors) > SEQUENCE_TOL:
            raise SequenceError("nonzero vector mapped into a zero homology group")
        return np.zeros((0, cols), dtype=complex)
    solve_in = np.hstack(blocks)
    coords, defect = linalg.min_norm_preimage(solve_in, vectors, tol)
    if defect > SEQUENCE_TOL:
        raise SequenceError(
            f"vector is not a cycle class in the given basis (defect {defect:.3e})"
        )
    return coords[:h.shape[1], :]


# ---------------------------------------------------------------------------
# the 12-space sequence
# ---------------------------------------------------------------------------

@dataclass
class MvSequence:
    """The homology long exact sequence of a disk sum, as a based complex.

    Coordinates of every space are taken in the homology bases recorded
    in ``h_m``, ``h_factors`` and ``h_disk`` (cycle-vector columns), so
    the maps are plain matrices and the default assigned bases are
    identities.  ``block_splits[q]`` records how the direct-sum spaces
    at index q = 3p+1 divide between the two factors.
    """

    dims: list[int]
    maps: list[np.ndarray]
    bases: list[np.ndarray]
    block_splits: dict[int, tuple[int, int]]
    h_m: list[np.ndarray]
    h_factors: tuple[list[np.ndarray], list[np.ndarray]]
    h_disk: list[np.ndarray]

    def boundary(self, p: int) -> np.ndarray:
        if 1 <= p <= N_SPACES - 1:
            return self.maps[p]
        if p <= 0:
            return np.zeros((0, self.dims[0]), dtype=complex)
        return np.zeros((self.dims[-1] if p == N_SPACES else 0, 0), dtype=complex)

    def with_bases(self, bases) -> "MvSequence":
        return MvSequence(self.dims, self.maps, [np.asarray(b, dtype=complex) for b in bases],
                          self.block_splits, self.h_m, self.h_factors, self.h_disk)

    def label(self, p: int) -> str:
        i, kind = divmod(p, 3)
        names = {0: f"H{i}(M)", 1: f"H{i}(M1)+H{i}(M2)", 2: f"H{i}(D)"}
        return names[kind]


def _padded(hlist, degree, dims):
    if degree < len(hlist):
        return hlist[degree]
    return linalg.empty_matrix(dims[degree] if degree < len(dims) else 0)


def mv_sequence(ds: DiskSumResult, tc1, tc2, tcm, tcd,
                hd1: HomologyData, hd2: HomologyData,
                hdm: HomologyData, hdd: HomologyData,
                h1=None, h2=None, hm=None, hdisk=None,
                tol: float = DEFAULT_TOL) -> MvSequence:
    """Assemble the 12-space sequence in the given homology bases.

    The maps are induced on homology coordinates: inclusion-induced maps
    in each degree, plus the connecting map computed by the usual
    zig-zag (lift along beta, take the boundary, pull back along alpha).
    Exactness is verified before returning.
    """
    h1 = [hd1.h_basis[p] for p in range(len(tc1.dims))] if h1 is None else h1
    h2 = [hd2.h_basis[p] for p in range(len(tc2.dims))] if h2 is None else h2
    hm = [hdm.h_basis[p] for p in range(len(tcm.dims))] if hm is None else hm
    hdisk = [hdd.h_basis[0]] if hdisk is None else hdisk

    alpha, beta = inclusion_matrices(ds, tc1, tc2, tcm)

    dims = []
    block_splits = {}
    for p in range(4):
        nm = _padded(hm, p, tcm.dims).shape[1]
        n1 = _padded(h1, p, tc1.dims).shape[1]
        n2 = _padded(h2, p, tc2.dims).shape[1]
        nd = _padded(hdisk, p, tcd.dims).shape[1]
        dims += [nm, n1 + n2, nd]
        block_splits[3 * p + 1] = (n1, n2)

    maps: list[np.ndarray] = [linalg.empty_matrix(0)] * N_SPACES

    def factor_dim(tc, p):
        return tc.dims[p] if p < len(tc.dims) else 0

    for p in range(4):
        q = 3 * p
        # beta-induced: H_p(M1) (+) H_p(M2) -> H_p(M)
        src1 = _padded(h1, p, tc1.dims)
        src2 = _padded(h2, p, tc2.dims)
        n1, n2 = src1.shape[1], src2.shape[1]
        mat = np.zeros((dims[q], n1 + n2), dtype=complex)
        if dims[q] and (n1 or n2):
            a_dim, b_dim = factor_dim(tc1, p), factor_dim(tc2, p)
            stacked = np.zeros((a_dim + b_dim, n1 + n2), dtype=complex)
            stacked[:a_dim, :n1] = src1
            stacked[a_dim:, n1:] = src2
            images = beta[p] @ stacked
            mat = _class_coordinates(images, _padded(hm, p, tcm.dims),
                                     hdm.boundary_basis[p], tol)
        maps[q + 1] = mat

        # alpha-induced: H_p(D) -> H_p(M1) (+) H_p(M2)   (degree 0 only)
        nd = _padded(hdisk, p, tcd.dims).shape[1]
        mat = np.zeros((dims[q + 1], nd), dtype=complex)
        if nd:
            images = alpha @ hdisk[p]
            c1 = _class_coordinates(images[:tc1.dims[0], :], _padded(h1, 0, tc1.dims),
                                    hd1.boundary_basis[0], tol)
            c2 = _class_coordinates(images[tc1.dims[0]:, :], _padded(h2, 0, tc2.dims),
                                    hd2.boundary_basis[0], tol)
            mat = np.vstack([c1, c2])
        maps[q + 2] = mat

        # connecting map: H_{p+1}(M) -> H_p(D)
        if q + 3 < N_SPACES:
            src = _padded(hm, p + 1, tcm.dims)
            mat = np.zeros((dims[q + 2], src.shape[1]), dtype=complex)
            if src.shape[1] and dims[q + 2]:
                lift, defect = linalg.min_norm_preimage(beta[p + 1], src, tol)
                if defect > SEQUENCE_TOL:
                    raise SequenceError(
                        f"degree {p + 1}: cycles do not lift through the gluing map "
                        f"(defect {defect:.3e})"
                    )
                bdry = _direct_sum_boundary(tc1, tc2, p + 1) @ lift
                pulled, defect = linalg.min_norm_preimage(alpha, bdry, tol)
                if defect > SEQUENCE_TOL:
                    raise SequenceError(
                        f"degree {p + 1}: connecting boundary misses the disk image "
                        f"(defect {defect:.3e})"
                    )
                mat = _class_coordinates(pulled, _padded(hdisk, p, tcd.dims),
                                         hdd.boundary_basis[p], tol)
            maps[q + 3] = mat

    seq = MvSequence(
        dims=dims,
        maps=maps,
        bases=[np.eye(n, dtype=complex) for n in dims],
        block_splits=block_splits,
        h_m=list(hm),
        h_factors=(list(h1), list(h2)),
        h_disk=list(hdisk),
    )
    verify_exactness(seq, tol)
    return seq


def verify_exactness(seq: MvSequence, tol: float = DEFAULT_TOL):
    """Composition-zero and rank(ker) = rank(im) at every junction."""
    total = 0
    for p in range(N_SPACES):
        din = seq.boundary(p + 1)
        dout = seq.boundary(p)
        if din.shape[1] and dout.shape[1]:
            comp = linalg.operator_norm(dout @ din)
            scale = 1.0 + linalg.operator_norm(dout) * linalg.operator_norm(din)
            if comp > SEQUENCE_TOL * scale:
                raise SequenceError(
                    f"maps into and out of space {p} compose to norm {comp:.3e}"
                )
        rank_in = linalg.matrix_rank(din, tol)
        kernel = seq.dims[p] - linalg.matrix_rank(dout, tol)
        if rank_in != kernel:
            raise SequenceError(
                f"space {p} ({seq.label(p)}): incoming rank {rank_in} != "
                f"kernel dimension {kernel}; the sequence is not exact"
            )
        total += (-1) ** p * seq.dims[p]
    if total != 0:
        raise SequenceError(f"alternating dimension sum is {total}, not 0")


def corrective_term(seq: MvSequence, tol: float = DEFAULT_TOL) -> TorsionResult:
    """Torsion of the exact sequence in its assigned bases.

    The sequence is acyclic, so every homology basis is empty and each
    space splits as B_p + s_p(B_{p-1}).
    """
    verify_exactness(seq, tol)
    hd = homology(seq, tol)
    if any(hd.betti):
        raise SequenceError(f"sequence has homology {hd.betti}; expected acyclic")
    return torsion_of(seq, hd, tol=tol, reference_bases=seq.bases)


# ---------------------------------------------------------------------------
# basis transport
# ---------------------------------------------------------------------------

@dataclass
class TransportedBases:
    """Factor homology bases for which the corrective term equals 1.

    Per degree, the natural factor bases are expressed in the split
    basis b_q + s_q(b_{q-1}) of the direct-sum space through the
    invertible matrix A recorded here; the first vector of the M1 block
    absorbs (det A)^{-1}.  Any residual left in the corrective term by
    the degree-0 tail of the sequence is folded into the same leading
    vector, so the normalization is exact for every exact sequence.
    """

    h_m1: list[np.ndarray]
    h_m2: list[np.ndarray]
    transport_matrices: list[np.ndarray]
    det_a: list[complex]
    residual: complex
    coordinate_scalings: list[np.ndarray] = field(default_factory=list)


def transport_bases(seq: MvSequence, tol: float = DEFAULT_TOL) -> TransportedBases:
    """Choose factor bases making every transition determinant 1.

    Follows the split-basis construction degree by degree: in each
    direct-sum space the natural factor basis is rewritten in the basis
    [image basis | section of the previous image basis]; the
    determinant of that rewrite is pushed into the first factor vector.
    A final global rescale cancels whatever the fixed (M and D) bases
    contribute, making the corrective term exactly 1.
    """
    bases = [b.copy() for b in seq.bases]
    a_matrices = []
    det_as = []

    images = [linalg.image_basis(seq.boundary(p + 1), tol) for p in range(N_SPACES)]
    # where the sequence is clean, use the bases the construction names:
    # the disk-image vectors for Im(alpha) and the given h-bases of the
    # glued space for surjective gluing maps
    if seq.dims[2] and linalg.matrix_rank(seq.boundary(2), tol) == seq.dims[2]:
        images[1] = seq.boundary(2).copy()
    for p in range(4):
        q = 3 * p
        if seq.dims[q] and linalg.matrix_rank(seq.boundary(q + 1), tol) == seq.dims[q]:
            images[q] = np.eye(seq.dims[q], dtype=complex)
    for p in range(4):
        q = 3 * p + 1
        nq = seq.dims[q]
        if nq == 0:
            a_matrices.append(linalg.empty_matrix(0))
            det_as.append(complex(1.0))
            continue
        blocks = [images[q]]
        if images[q - 1].shape[1]:
            section, defect = linalg.min_norm_preimage(seq.boundary(q), images[q - 1], tol)
            if defect > SEQUENCE_TOL:
                raise TransportError(
                    f"space {q}: section defect {defect:.3e} while transporting"
                )
            blocks.append(section)
        split_basis = np.hstack([b for b in blocks if b.shape[1]])
        if split_basis.shape != (nq, nq):
            raise TransportError(
                f"space {q}: split basis has shape {split_basis.shape}, expected square"
            )
        # rows of A express the natural (identity) factor basis in the split basis
        try:
            a = np.linalg.inv(split_basis).T
        except np.linalg.LinAlgError as exc:
            raise TransportError(f"space {q}: singular transport matrix") from exc
        det_a = complex(np.linalg.det(a))
        if det_a == 0 or not np.isfinite(det_a):
            raise TransportError(f"space {q}: transport matrix determinant is {det_a}")
        bases[q][:, 0] /= det_a
        a_matrices.append(a)
        det_as.append(det_a)

    residual = corrective_term(seq.with_bases(bases), tol).value
    slot = next((3 * p + 1 for p in range(4) if seq.dims[3 * p + 1]), None)
    if slot is None:
        if abs(residual - 1.0) > 1e-6:
            raise TransportError(
                f"corrective term {residual} cannot be normalized: "
                "no nonzero direct-sum space"
            )
    else:
        # scaling column 0 of the basis at slot q multiplies the torsion
        # of the sequence by kappa^((-1)^(q+1)); cancel the residual
        bases[slot][:, 0] *= residual ** ((-1) ** slot)

    h1, h2 = seq.h_factors
    out1, out2 = [], []
    for p in range(4):
        q = 3 * p + 1
        n1, n2 = seq.block_splits[q]
        if p < len(h1):
            scale = bases[q][:n1, :n1] if n1 else linalg.empty_matrix(0)
            out1.append(h1[p] @ scale if n1 else h1[p])
        if p < len(h2):
            scale = bases[q][n1:, n1:] if n2 else linalg.empty_matrix(0)
            out2.append(h2[p] @ scale if n2 else h2[p])
    return TransportedBases(
        h_m1=out1,
        h_m2=out2,
        transport_matrices=a_matrices,
        det_a=det_as,
        residual=residual,
        coordinate_scalings=bases,
    )


# ---------------------------------------------------------------------------
# assembled analyses and verifiers
# ---------------------------------------------------------------------------

@dataclass
class GluedPair:
    """Everything needed to study one disk sum of twisted complexes."""

    ds: DiskSumResult
    rep: Representation
    tc1: TwistedChainComplex
    tc2: TwistedChainComplex
    tcm: TwistedChainComplex
    tcd: TwistedChainComplex
    hd1: HomologyData
    hd2: HomologyData
    hdm: HomologyData
    hdd: HomologyData


def analyze_disk_sum(m1: CwComplexData, rep1: Representation,
                     m2: CwComplexData, rep2: Representation,
                     basis: LieAlgebraBasis | None = None,
                     tol: float = DEFAULT_TOL) -> GluedPair:
    basis = basis or orthonormal_sl2_basis()
    ds = disk_sum(m1, m2, tol)
    rep = free_product_rep(rep1, rep2, ds)
    disk = point_complex()
    disk_rep = Representation.trivial(0, rep.n, rep1.target)
    tc1 = twist(m1, rep1, basis, tol)
    tc2 = twist(m2, rep2, basis, tol)
    tcm = twist(ds.total, rep, basis, tol)
    tcd = twist(disk, disk_rep, basis, tol)
    return GluedPair(ds, rep, tc1, tc2, tcm, tcd,
                     homology(tc1, tol), homology(tc2, tol),
                     homology(tcm, tol), homology(tcd, tol))


def _random_homology_bases(hd: HomologyData, rng) -> list[np.ndarray]:
    out = []
    for p, k in enumerate(hd.betti):
        if k == 0:
            out.append(hd.h_basis[p])
            continue
        mix = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        mix += 3.0 * np.eye(k)
        out.append(hd.h_basis[p] @ mix)
    return out


@dataclass
class MvIdentityReport:
    """Results of checking the gluing formula on random basis draws."""

    dims: list[int]
    draws: int
    residuals: list[float]
    dimension_tail: tuple[int, int, int, int]
    tolerance: float
    seed: int

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def verify_mv_identity(pair: GluedPair, draws: int = 10, seed: int = 0,
                       tol: float = DEFAULT_TOL,
                       pass_tol: float = 1e-6) -> MvIdentityReport:
    """Check T(M1) T(M2) = T(M) T(D) T(sequence) on random homology bases."""
    rng = np.random.default_rng(seed)
    residuals = []
    dims = None
    for _ in range(draws):
        h1 = _random_homology_bases(pair.hd1, rng)
        h2 = _random_homology_bases(pair.hd2, rng)
        hm = _random_homology_bases(pair.hdm, rng)
        hdisk = [_random_homology_bases(pair.hdd, rng)[0]]
        seq = mv_sequence(pair.ds, pair.tc1, pair.tc2, pair.tcm, pair.tcd,
                          pair.hd1, pair.hd2, pair.hdm, pair.hdd,
                          h1=h1, h2=h2, hm=hm, hdisk=hdisk, tol=tol)
        t1 = torsion_of(pair.tc1, pair.hd1, h1, tol=tol).value
        t2 = torsion_of(pair.tc2, pair.hd2, h2, tol=tol).value
        tm = torsion_of(pair.tcm, pair.hdm, hm, tol=tol).value
        td = torsion_of(pair.tcd, pair.hdd, hdisk, tol=tol).value
        th = corrective_term(seq, tol).value
        lhs = t1 * t2
        rhs = tm * td * th
        residuals.append(abs(lhs - rhs) / abs(lhs))
        dims = seq.dims
    n0 = (pair.hd1.betti[0], pair.hd2.betti[0], pair.hdm.betti[0], pair.hdd.betti[0])
    return MvIdentityReport(dims=dims or [], draws=draws, residuals=residuals,
                            dimension_tail=n0, tolerance=pass_tol, seed=seed)


@dataclass
class MultiplicativityStep:
    """One unfold step M = M' disk-sum M_k with transported bases."""

    left_name: str
    right_name: str
    corrective: complex
    det_a: list[complex]
    total_torsion: complex
    left_torsion: complex
    right_torsion: complex
    disk_torsion: complex

    @property
    def relative_error(self) -> float:
        return abs(self.left_torsion * self.right_torsion / self.disk_torsion
                   - self.total_torsion) / abs(self.total_torsion)


@dataclass
class MultiplicativityReport:
    """Comparison of T(M) against the product of factor torsions."""

    factor_names: list[str]
    total_torsion: complex
    factor_torsions: list[complex]
    steps: list[MultiplicativityStep]
    tolerance: float

    @property
    def product(self) -> complex:
        out = complex(1.0)
        for t in self.factor_torsions:
            out *= t
        return out

    @property
    def relative_error(self) -> float:
        return abs(self.product - self.total_torsion) / abs(self.total_torsion)

    @property
    def passed(self) -> bool:
        step_ok = all(s.relative_error <= self.tolerance for s in self.steps)
        return step_ok and self.relative_error <= self.tolerance


def verify_multiplicativity(factors, reps, h_m=None, h_disk=None,
                            basis: LieAlgebraBasis | None = None,
                            tol: float = DEFAULT_TOL,
                            pass_tol: float = 1e-6) -> MultiplicativityReport:
    """Verify T(M) = prod T(M_i) for a left-associated disk sum.

    The glued manifold's torsion is computed directly in the bases
    ``h_m`` (canonical homology representatives when omitted).  Bases
    are then transported down one gluing at a time, and each factor's
    torsion is evaluated in its transported basis; the two code paths
    meet in the final comparison.
    """
    if len(factors) < 2:
        raise DiskSumError("need at least two factors")
    if len(factors) != len(reps):
        raise DiskSumError("one representation required per factor")
    basis = basis or orthonormal_sl2_basis()

    partial = [factors[0]]
    partial_reps = [reps[0]]
    pairs: list[GluedPair] = []
    for k in range(1, len(factors)):
        pair = analyze_disk_sum(partial[-1], partial_reps[-1], factors[k], reps[k],
                                basis=basis, tol=tol)
        pairs.append(pair)
        partial.append(pair.ds.total)
        partial_reps.append(pair.rep)

    top = pairs[-1]
    hm = h_m if h_m is not None else [top.hdm.h_basis[p]
                                      for p in range(len(top.tcm.dims))]
    total_torsion = torsion_of(top.tcm, top.hdm, hm, tol=tol).value

    steps: list[MultiplicativityStep] = []
    factor_torsions: list[complex] = [complex(1.0)] * len(factors)
    current_h = hm
    for k in range(len(factors) - 1, 0, -1):
        pair = pairs[k - 1]
        hdisk = [h_disk[0]] if h_disk is not None else [pair.hdd.h_basis[0]]
        seq = mv_sequence(pair.ds, pair.tc1, pair.tc2, pair.tcm, pair.tcd,
                          pair.hd1, pair.hd2, pair.hdm, pair.hdd,
                          hm=current_h, hdisk=hdisk, tol=tol)
        transported = transport_bases(seq, tol)
        corrective = corrective_term(
            seq.with_bases(transported.coordinate_scalings), tol).value
        t_total = torsion_of(pair.tcm, pair.hdm, current_h, tol=tol).value
        t_left = torsion_of(pair.tc1, pair.hd1, transported.h_m1, tol=tol).value
        t_right = torsion_of(pair.tc2, pair.hd2, transported.h_m2, tol=tol).value
        t_disk = torsion_of(pair.tcd, pair.hdd, hdisk, tol=tol).value
        steps.append(MultiplicativityStep(
            left_name=partial[k - 1].name,
            right_name=factors[k].name,
            corrective=corrective,
            det_a=transported.det_a,
            total_torsion=t_total,
            left_torsion=t_left,
            right_torsion=t_right,
            disk_torsion=t_disk,
        ))
        factor_torsions[k] = t_right
        current_h = transported.h_m1
    factor_torsions[0] = steps[-1].left_torsion

    return MultiplicativityReport(
        factor_names=[m.name for m in factors],
        total_torsion=total_torsion,
        factor_torsions=factor_torsions,
        steps=steps,
        tolerance=pass_tol,
    )
