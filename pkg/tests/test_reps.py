import numpy as np
import pytest

from helpers import random_conjugator, seifert_case
from sl2casson import catalog
from sl2casson.reps import (E, F, H, Flavor, Rep, RepError, adjoint_matrix, as_mat2, killing_form,
                            killing_gram, mobius_infinity, relator_residual, su2_irreducible,
                            verify_relators, zariski_dense_check)
from sl2casson.symplectic import su2_f0


def test_trivial_rep_satisfies_any_presentation():
    P = catalog.seifert(3, 7).presentation
    assert verify_relators(P, Rep([np.eye(2), np.eye(2)]))


def test_seifert_rep_satisfies_relators():
    md, reps = seifert_case(3, 7)
    assert verify_relators(md.presentation, reps[0][2])
    assert relator_residual(md.presentation, reps[0][2]) < 1e-12


def test_sign_flip_breaks_relators():
    md, reps = seifert_case(3, 7)
    rho = reps[0][2]
    assert not verify_relators(md.presentation, rho.negate([True, False]))


def test_image_count_mismatch():
    P = catalog.seifert(3, 7).presentation
    with pytest.raises(RepError):
        verify_relators(P, Rep([np.eye(2)]))


def test_determinant_checked():
    with pytest.raises(RepError):
        as_mat2([[2.0, 0.0], [0.0, 1.0]])


def test_rep_json_roundtrip():
    md, reps = seifert_case(5, 7)
    rho = reps[0][2]
    back = Rep.from_json(rho.to_json())
    assert all(np.allclose(a, b) for a, b in zip(rho.images, back.images))
    f0 = su2_f0()
    back = Rep.from_json(f0.to_json())
    assert back.flavor is Flavor.SU2 and np.allclose(back.images[0], f0.images[0])


def test_complex_entries_rejected_for_sl2r():
    with pytest.raises(RepError):
        Rep([np.array([[1j, 0], [0, -1j]])])


def test_adjoint_identity_and_diagonal():
    assert np.allclose(adjoint_matrix(np.eye(2)), np.eye(3))
    lam = 1.7
    assert np.allclose(adjoint_matrix(np.diag([lam, 1 / lam])), np.diag([1, lam ** 2, lam ** -2]))


def test_adjoint_homomorphism_and_det():
    rng = np.random.default_rng(0)
    for _ in range(50):
        g, h = random_conjugator(rng), random_conjugator(rng)
        assert np.allclose(adjoint_matrix(g @ h), adjoint_matrix(g) @ adjoint_matrix(h), atol=1e-10)
        assert np.linalg.det(adjoint_matrix(g)) == pytest.approx(1.0, rel=1e-9)


def test_killing_values():
    assert killing_form(H, H) == 8
    assert killing_form(E, F) == 4
    assert killing_form(H, E) == 0
    with pytest.raises(RepError):
        killing_form(np.eye(2), H)


def test_killing_ad_invariant():
    rng = np.random.default_rng(1)
    K = killing_gram()
    for _ in range(20):
        A = adjoint_matrix(random_conjugator(rng))
        assert np.allclose(A.T @ K @ A, K, atol=1e-9)


def test_mobius_infinity_examples():
    assert mobius_infinity(np.eye(2)) == 0
    assert mobius_infinity(np.array([[0.0, -1.0], [1.0, 0.0]])) == 0
    assert mobius_infinity(np.array([[1.0, 1.0], [0.0, 1.0]])) == 1


def test_density_examples():
    assert not zariski_dense_check([np.diag([2.0, 0.5])])
    assert not zariski_dense_check([np.eye(2)])
    md, reps = seifert_case(3, 7)
    rho = reps[0][2]
    assert zariski_dense_check([rho(catalog.Y), rho(catalog.X * catalog.Y)])


def test_density_rejects_triangular_and_finite_groups():
    assert not zariski_dense_check([np.array([[2.0, 1.0], [0.0, 0.5]]), np.array([[1.0, 3.0], [0.0, 1.0]])])
    c, s = np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)
    assert not zariski_dense_check([np.array([[c, -s], [s, c]])])


def test_density_conjugation_invariant():
    rng = np.random.default_rng(2)
    for m, n in [(3, 7), (5, 9)]:
        for _, _, rho in seifert_case(m, n)[1]:
            h = random_conjugator(rng)
            assert zariski_dense_check(rho.conjugate(h).images) == zariski_dense_check(rho.images) is True


def test_su2_irreducible():
    assert su2_irreducible(su2_f0().images)
    assert not su2_irreducible([np.diag([1j, -1j]), np.diag([-1j, 1j])])
