"""Sigma(3,4,5): the lattice count, then all invariants at a stored real representation.

The representation was found numerically and is validated against the relators first.
"""
import pathlib

from sl2casson import catalog
from sl2casson.casson import cs24_grade, epsilon_f, refined_torsion_adjoint
from sl2casson.reps import Rep, relator_residual, zariski_dense_check

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def main() -> None:
    md = catalog.brieskorn(3, 4, 5)
    print(f"{md.name}: {md.presentation.n_gens} generators, genus {md.genus}")
    print(f"expected number of SL2(R) characters: {catalog.brieskorn_count(3, 4, 5)}")
    rho = Rep.from_json((DATA / "sigma_3_4_5_rep.json").read_text())
    print(f"relator residual {relator_residual(md.presentation, rho):.2e}, "
          f"dense {zariski_dense_check(rho.images)}")
    tau = refined_torsion_adjoint(md, rho)
    print(f"tau^0 = {tau:.8f}, epsilon = {epsilon_f(md, rho):+d}, 24 l = {float(cs24_grade(md, rho)):.8f}")

    other = catalog.brieskorn(5, 3, 4)
    rho5 = Rep.from_json((DATA / "sigma_5_3_4_rep.json").read_text())
    print(f"same sphere as {other.name} (genus {other.genus}): "
          f"tau^0 = {refined_torsion_adjoint(other, rho5):.8f}, 24 l = {float(cs24_grade(other, rho5)):.8f}")


if __name__ == "__main__":
    main()
