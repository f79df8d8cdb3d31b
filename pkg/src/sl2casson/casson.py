"""Torsion signs, the SL2(R)-Casson invariant and its graded versions."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .bar import build_fundamental_class, pairing_24P1, rep_key
from .catalog import ManifoldData
from .chern_simons import ModOne
from .local_systems import (CoefficientKind, real_complex, standard_orientation,
                            transversality_check, twisted_cochain_complex)
from .reps import Rep
from .scalars import DEFAULT_EPS
from .torsion import compute_torsion, sign_of

GRADE_TOL = 1e-6


class TransversalityError(ValueError):
    pass


class Grading(enum.Enum):
    CS24 = "cs24"
    TORSION = "torsion"


@dataclass
class GradedInvariant:
    """Finite formal sum of grades with integer coefficients.

    Grades are ModOne values (compared on the circle) or reals; two grades
    within ``tol`` are merged.
    """

    terms: list = field(default_factory=list)
    tol: float = GRADE_TOL

    def add(self, grade, coeff: int) -> None:
        for i, (g, c) in enumerate(self.terms):
            if _grade_distance(g, grade) <= self.tol:
                self.terms[i] = (g, c + coeff)
                break
        else:
            self.terms.append((grade, coeff))
        self.terms = [(g, c) for g, c in self.terms if c != 0]

    def items(self) -> list:
        return sorted(self.terms, key=lambda t: float(t[0]))

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def coefficient(self, grade) -> int:
        return sum(c for g, c in self.terms if _grade_distance(g, grade) <= self.tol)

    def to_json(self) -> list[dict]:
        return [{"grade": float(g), "coeff": c} for g, c in self.items()]


def _grade_distance(a, b) -> float:
    if isinstance(a, ModOne) or isinstance(b, ModOne):
        return ModOne(float(a)).distance(ModOne(float(b)))
    return abs(float(a) - float(b))


def _real_sign(md: ManifoldData) -> int:
    """sign((-1)^N T) of the untwisted complex, with N(M) taken as the genus."""
    R = real_complex(md.chain).with_cohomology(standard_orientation(md.chain).bases)
    return (-1) ** md.genus * sign_of(compute_torsion(R))


def _require_transversal(md: ManifoldData, rho: Rep, eps: float) -> None:
    if not transversality_check(md.chain, rho, eps):
        raise TransversalityError(f"representation is not transversal on {md.name} (some H^i nonzero)")


def refined_torsion_adjoint(md: ManifoldData, rho: Rep, eps: float = DEFAULT_EPS) -> float:
    """tau^0 with adjoint coefficients."""
    _require_transversal(md, rho, eps)
    T = compute_torsion(twisted_cochain_complex(md.chain, rho, CoefficientKind.ADJOINT3, eps))
    return _real_sign(md) * float(T.real if isinstance(T, complex) else T)


def epsilon_f(md: ManifoldData, rho: Rep, eps: float = DEFAULT_EPS) -> int:
    return (-1) ** md.genus * sign_of(refined_torsion_adjoint(md, rho, eps))


def lambda_sl2r(md: ManifoldData, reps: Sequence[Rep], eps: float = DEFAULT_EPS) -> int:
    return sum(sign_of(refined_torsion_adjoint(md, rho, eps)) for rho in reps)


def cs24_grade(md: ManifoldData, rho: Rep, digits: int = 8) -> ModOne:
    if md.expansion is None:
        raise ValueError(f"{md.name} carries no fundamental-class data")
    O = build_fundamental_class(md.expansion, rep_key(rho, digits))
    return pairing_24P1(O, rho, md.presentation)


def graded_lambda(md: ManifoldData, reps: Sequence[Rep], grading: Grading,
                  eps: float = DEFAULT_EPS) -> GradedInvariant:
    """(-1)^g sum eps_f [grade(f)]; the coefficients add up to lambda."""
    out = GradedInvariant()
    for rho in reps:
        tau = refined_torsion_adjoint(md, rho, eps)
        out.add(cs24_grade(md, rho) if grading is Grading.CS24 else tau, sign_of(tau))
    return out


def seifert_report(md: ManifoldData, labelled_reps: Sequence[tuple[int, int, Rep]],
                   grading: Grading | None = Grading.CS24, eps: float = DEFAULT_EPS) -> dict:
    """JSON-ready summary: lambda, graded invariant and per-representation data."""
    per_rep = []
    graded = GradedInvariant()
    lam = 0
    for k, l, rho in labelled_reps:
        tau = refined_torsion_adjoint(md, rho, eps)
        e = (-1) ** md.genus * sign_of(tau)
        lam += sign_of(tau)
        cs = cs24_grade(md, rho) if md.expansion is not None else None
        entry = {"k": k, "l": l, "epsilon": e, "torsion": tau,
                 "cs24": float(cs) if cs is not None else None}
        per_rep.append(entry)
        if grading is Grading.CS24:
            graded.add(cs, (-1) ** md.genus * e)
        elif grading is Grading.TORSION:
            graded.add(tau, (-1) ** md.genus * e)
    return {"manifold": md.name, "lambda": lam, "graded": graded.to_json(), "per_rep": per_rep}
