import dataclasses

import numpy as np
import pytest

from helpers import (SEIFERT_RANGE, circ_dist, random_conjugator, seifert_case, sigma345_rep, sigma534_rep,
                     sigma3511_reps)
from sl2casson import catalog
from sl2casson.casson import (Grading, GradedInvariant, TransversalityError, cs24_grade, epsilon_f,
                              graded_lambda, lambda_sl2r, refined_torsion_adjoint, seifert_report)
from sl2casson.chern_simons import ModOne
from sl2casson.reps import Rep


def _reps(m, n):
    md, reps = seifert_case(m, n)
    return md, [rho for _, _, rho in reps]


def test_epsilon_examples():
    for m, n in [(3, 7), (5, 7)]:
        md, reps = _reps(m, n)
        assert [epsilon_f(md, rho) for rho in reps] == [-1] * len(reps)


def test_epsilon_rejects_trivial_rep():
    md, _ = _reps(3, 7)
    with pytest.raises(TransversalityError):
        epsilon_f(md, Rep([np.eye(2), np.eye(2)]))


def test_lambda_examples():
    md, reps = _reps(3, 7)
    assert lambda_sl2r(md, reps) == -1
    md, reps = _reps(5, 7)
    assert lambda_sl2r(md, reps) == -2
    assert lambda_sl2r(md, []) == 0


def test_lambda_bounded_by_count_and_negative_on_catalog():
    for m, n in SEIFERT_RANGE:
        md, reps = _reps(m, n)
        lam = lambda_sl2r(md, reps)
        assert abs(lam) <= len(reps)
        assert lam == -len(reps)


@pytest.mark.parametrize("grading", [Grading.CS24, Grading.TORSION])
def test_graded_sums_to_lambda(grading):
    for m, n in [(3, 7), (5, 7), (5, 11), (7, 9)]:
        md, reps = _reps(m, n)
        assert graded_lambda(md, reps, grading).total() == lambda_sl2r(md, reps)


def test_graded_sums_to_lambda_odd_genus():
    md = catalog.brieskorn(3, 4, 5)
    rho = sigma345_rep()
    assert md.genus == 3
    assert graded_lambda(md, [rho], Grading.TORSION).total() == lambda_sl2r(md, [rho])


def test_graded_cs24_needs_class_data():
    md = dataclasses.replace(catalog.brieskorn(3, 4, 5), expansion=None)
    with pytest.raises(ValueError):
        graded_lambda(md, [sigma345_rep()], Grading.CS24)
    assert graded_lambda(md, [sigma345_rep()], Grading.TORSION).total() in (-1, 1)


def test_graded_torsion_value_matches_closed_form():
    md, reps = seifert_case(3, 7)
    (k, l, rho), = reps
    g = graded_lambda(md, [rho], Grading.TORSION)
    (tau, coeff), = g.items()
    assert coeff == -1
    assert abs(tau) == pytest.approx(catalog.seifert_torsion_closed(3, 7, k, l), rel=1e-9)


def test_graded_cs24_table_values():
    for (m, n), want in [((3, 7), [0.100637]), ((5, 7), [0.275253, 0.562345])]:
        md, reps = _reps(m, n)
        got = graded_lambda(md, reps, Grading.CS24)
        for w in want:
            assert got.coefficient(ModOne(w)) == -1, got.to_json()


def test_graded_invariant_merges_close_grades():
    g = GradedInvariant()
    g.add(ModOne(0.9999999999), 1)
    g.add(ModOne(0.0), 2)
    g.add(0.5, -1)
    g.add(0.5, 1)
    assert g.total() == 3 and len(g.terms) == 1


def test_conjugation_invariance():
    rng = np.random.default_rng(5)
    for m, n in [(3, 7), (5, 9)]:
        md, reps = _reps(m, n)
        for rho in reps:
            rc = rho.conjugate(random_conjugator(rng))
            assert epsilon_f(md, rc) == epsilon_f(md, rho)
            assert refined_torsion_adjoint(md, rc) == pytest.approx(refined_torsion_adjoint(md, rho), rel=1e-8)
            assert circ_dist(float(cs24_grade(md, rc)), float(cs24_grade(md, rho))) < 1e-6


def test_brieskorn_saved_rep_sign():
    md = catalog.brieskorn(3, 4, 5)
    assert epsilon_f(md, sigma345_rep()) in (-1, 1)
    assert abs(lambda_sl2r(md, [sigma345_rep()])) <= catalog.brieskorn_count(3, 4, 5)


def test_seifert_report_schema():
    md, reps = seifert_case(5, 7)
    r = seifert_report(md, reps)
    assert r["manifold"] == md.name and r["lambda"] == -2
    assert [(e["k"], e["l"]) for e in r["per_rep"]] == [(k, l) for k, l, _ in reps]
    assert all(set(e) == {"k", "l", "epsilon", "torsion", "cs24"} for e in r["per_rep"])
    assert sum(t["coeff"] for t in r["graded"]) == r["lambda"]


def test_cs24_rational_on_seifert_manifolds():
    # Chern-Simons values of Seifert fibered spaces are rational; here the
    # denominators divide mn
    for m, n in [(3, 7), (3, 9), (5, 7), (5, 11), (7, 9)]:
        md, reps = _reps(m, n)
        for rho in reps:
            v = float(cs24_grade(md, rho)) * m * n
            assert abs(v - round(v)) < 1e-8


def test_cs24_on_sigma_345():
    v = float(cs24_grade(catalog.brieskorn(3, 4, 5), sigma345_rep()))
    assert circ_dist(v, 0.9) < 1e-8


def test_sigma_3_5_11_all_reps():
    md = catalog.brieskorn(3, 5, 11)
    reps = sigma3511_reps()
    assert len(reps) == catalog.brieskorn_count(3, 5, 11)
    taus = sorted(refined_torsion_adjoint(md, rho) for rho in reps)
    assert min(b - a for a, b in zip(taus, taus[1:])) > 1e-3
    # odd genus: every epsilon is -1 while every tau^0 is positive
    assert md.genus == 3 and [epsilon_f(md, rho) for rho in reps] == [-1] * 4
    assert lambda_sl2r(md, reps) == 4
    assert graded_lambda(md, reps, Grading.CS24).total() == 4


def test_invariants_agree_across_presentations():
    # Sigma(3,4,5) presented with 3 and with 5 generators
    a, rho_a = catalog.brieskorn(3, 4, 5), sigma345_rep()
    b, rho_b = catalog.brieskorn(5, 3, 4), sigma534_rep()
    assert a.genus != b.genus
    assert refined_torsion_adjoint(a, rho_a) == pytest.approx(refined_torsion_adjoint(b, rho_b), rel=1e-8)
    assert epsilon_f(a, rho_a) == epsilon_f(b, rho_b)
    assert circ_dist(float(cs24_grade(a, rho_a)), float(cs24_grade(b, rho_b))) < 1e-8
