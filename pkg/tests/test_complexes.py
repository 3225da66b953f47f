import numpy as np
import pytest

from torsionworks.algebra import (
    GroupPresentation,
    GroupRingElement,
    GroupRingMatrix,
    Representation,
    Word,
)
from torsionworks.complexes import (
    CwComplexData,
    TwistedChainComplex,
    change_lift,
    euler_characteristic,
    homology,
    twist,
    untwisted_betti0,
)
from torsionworks.errors import (
    InconsistentLiftsError,
    RankAmbiguityError,
)
from torsionworks.scenes import circle, point, wedge_of_circles

from conftest import block_ad, diag_rep, random_sl2, torus


# ---------------------------------------------------------------------------
# euler characteristic and connectivity
# ---------------------------------------------------------------------------

def test_euler_characteristics():
    assert euler_characteristic(point()) == 1
    assert euler_characteristic(circle()) == 0
    assert euler_characteristic(wedge_of_circles(2)) == -1
    assert euler_characteristic(torus()) == 0


def test_untwisted_betti0():
    assert untwisted_betti0(point()) == 1
    assert untwisted_betti0(circle()) == 1
    two_points = CwComplexData(name="2pts", presentation=GroupPresentation.free(0),
                               cells=[2], boundaries=[])
    assert untwisted_betti0(two_points) == 2


# ---------------------------------------------------------------------------
# twisting
# ---------------------------------------------------------------------------

def test_twist_point_trivial(basis):
    tc = twist(point(), Representation.trivial(0), basis)
    assert tc.dims == [3]
    assert tc.boundary(1).shape == (3, 0)
    hd = homology(tc)
    assert hd.betti == [3]


def test_twist_circle_trivial_rep_zero_boundary(basis):
    tc = twist(circle(), Representation.trivial(1), basis)
    assert np.allclose(tc.boundary(1), np.zeros((3, 3)))
    assert homology(tc).betti == [3, 3]


def test_twist_circle_diag_eigenvalues(basis):
    tc = twist(circle(), diag_rep(2.0), basis)
    eig = np.sort_complex(np.linalg.eigvals(tc.boundary(1)))
    want = np.sort_complex(np.array([3.0, 0.0, -0.75]))
    assert np.allclose(eig, want, atol=1e-10)
    assert homology(tc).betti == [1, 1]


def test_twist_torus_composes_to_zero(basis):
    rep = diag_rep(2.0, 3.0)  # commuting images satisfy the relator
    tc = twist(torus(), rep, basis)
    assert np.linalg.norm(tc.boundary(1) @ tc.boundary(2)) < 1e-10
    hd = homology(tc)
    # chi = 0 forces the alternating betti sum to vanish
    assert hd.betti[0] - hd.betti[1] + hd.betti[2] == 0


def test_twist_rejects_relator_violation(basis):
    rng = np.random.default_rng(3)
    rep = Representation.from_images([random_sl2(rng), random_sl2(rng)])
    with pytest.raises(InconsistentLiftsError):
        twist(torus(), rep, basis)


# ---------------------------------------------------------------------------
# homology internals
# ---------------------------------------------------------------------------

def test_rank_nullity_every_degree(basis):
    for cw, rep in [
        (circle(), diag_rep(2.0)),
        (wedge_of_circles(2), diag_rep(2.0, 3.0)),
        (torus(), diag_rep(2.0, 3.0)),
    ]:
        tc = twist(cw, rep, basis)
        hd = homology(tc)
        for p, dim in enumerate(tc.dims):
            z = hd.cycle_basis[p].shape[1]
            b_prev = hd.boundary_basis[p - 1].shape[1] if p >= 1 else 0
            assert z + b_prev == dim


def test_h_basis_vectors_are_cycles(basis):
    tc = twist(wedge_of_circles(2), diag_rep(2.0, 3.0), basis)
    hd = homology(tc)
    for p in range(len(tc.dims)):
        h = hd.h_basis[p]
        if h.shape[1]:
            assert np.linalg.norm(tc.boundary(p) @ h) < 1e-10


def test_rank_ambiguity_detected():
    mats = [np.diag([1.0, 2e-8, 0.0]).astype(complex)]
    tc = TwistedChainComplex(d=3, dims=[3, 3], mats=mats)
    with pytest.raises(RankAmbiguityError) as err:
        homology(tc, tol=1e-8)
    assert err.value.spectrum is not None


def test_betti_independent_of_tolerance_in_clean_range(basis):
    tc = twist(wedge_of_circles(2), diag_rep(2.0, 3.0), basis)
    assert homology(tc, 1e-6).betti == homology(tc, 1e-10).betti


# ---------------------------------------------------------------------------
# conjugation functoriality
# ---------------------------------------------------------------------------

def test_conjugation_preserves_betti_and_conjugates_boundaries(basis, rng):
    rep = diag_rep(2.0, 3.0)
    cw = wedge_of_circles(2)
    g0 = random_sl2(rng)
    conj = rep.conjugated(g0)
    tc = twist(cw, rep, basis)
    tc_conj = twist(cw, conj, basis)
    assert homology(tc).betti == homology(tc_conj).betti
    u0 = block_ad(g0, cw.cells[0])
    u1 = block_ad(g0, cw.cells[1])
    assert np.allclose(tc_conj.boundary(1), u0 @ tc.boundary(1) @ np.linalg.inv(u1),
                       atol=1e-9)


# ---------------------------------------------------------------------------
# lift changes
# ---------------------------------------------------------------------------

def test_change_lift_preserves_betti(basis, rng):
    cw = wedge_of_circles(2)
    rep = diag_rep(2.0, 3.0)
    gamma = Word.from_letters([(0, 1), (1, -1)])
    lifted = change_lift(cw, 1, 1, gamma)
    assert lifted.cells == cw.cells
    tc = twist(cw, rep, basis)
    tc_lift = twist(lifted, rep, basis)
    assert homology(tc).betti == homology(tc_lift).betti


def test_change_lift_two_dim_still_composes(basis):
    cw = torus()
    rep = diag_rep(2.0, 3.0)
    gamma = Word.generator(0, 2)
    lifted = change_lift(cw, 1, 0, gamma)
    tc = twist(lifted, rep, basis)  # raises if the rewrite broke d.d = 0
    assert homology(tc).betti == homology(twist(cw, rep, basis)).betti


def test_degenerate_layer_allowed(basis):
    cw = CwComplexData(name="degenerate", presentation=GroupPresentation.free(0),
                       cells=[1, 0], boundaries=[GroupRingMatrix.zeros(1, 0)])
    tc = twist(cw, Representation.trivial(0), basis)
    assert tc.dims == [3, 0]
    assert homology(tc).betti == [3, 0]
