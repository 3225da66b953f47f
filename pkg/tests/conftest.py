import numpy as np
import pytest

from torsionworks import adjoint_matrix, orthonormal_sl2_basis
from torsionworks.algebra import (
    GroupPresentation,
    GroupRingElement,
    GroupRingMatrix,
    Representation,
    Word,
)
from torsionworks.complexes import CwComplexData


@pytest.fixture
def basis():
    return orthonormal_sl2_basis()


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def diag_rep(*eigenvalues):
    return Representation.from_images(
        [np.diag([lam, 1.0 / lam]).astype(complex) for lam in eigenvalues]
    )


def random_sl2(rng):
    """A well-conditioned random determinant-1 matrix."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = np.linalg.det(m)
        if abs(det) > 0.3:
            return m / np.sqrt(det)


def block_ad(g0, cells, basis=None):
    """Block-diagonal adjoint change of coordinates, one block per cell."""
    basis = basis or orthonormal_sl2_basis()
    rep = Representation.from_images([np.asarray(g0, dtype=complex)])
    ad = adjoint_matrix(rep, basis, Word.generator(0))
    return np.kron(np.eye(cells), ad)


def torus():
    """Presentation 2-complex of the rank-2 abelian group.

    The single relator is the commutator; its boundary column holds the
    free-derivative entries (1 - aba^{-1}, a - aba^{-1}b^{-1}).
    """
    a, b = Word.generator(0), Word.generator(1)
    commutator = a * b * a.inverse() * b.inverse()
    one = GroupRingElement.one()
    d1 = GroupRingMatrix.from_rows([
        [GroupRingElement.gen(0) - one, GroupRingElement.gen(1) - one]
    ])
    d2 = GroupRingMatrix.from_rows([
        [one - GroupRingElement.from_word(a * b * a.inverse())],
        [GroupRingElement.from_word(a) - GroupRingElement.from_word(commutator)],
    ])
    return CwComplexData(
        name="torus",
        presentation=GroupPresentation(2, (commutator,)),
        cells=[1, 2, 1],
        boundaries=[d1, d2],
    )


def bouquet():
    """One cell in each degree 0..3; only the loop attaches nontrivially.

    Wedge of a circle, a 2-sphere, and a 3-sphere: makes every level of
    a 12-space gluing sequence nonzero.
    """
    one = GroupRingElement.one()
    zero = GroupRingElement.zero()
    return CwComplexData(
        name="bouquet",
        presentation=GroupPresentation.free(1),
        cells=[1, 1, 1, 1],
        boundaries=[
            GroupRingMatrix.from_rows([[GroupRingElement.gen(0) - one]]),
            GroupRingMatrix.from_rows([[zero]]),
            GroupRingMatrix.from_rows([[zero]]),
        ],
    )
