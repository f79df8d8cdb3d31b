"""Walk through M_{m,n}: presentation, representations, torsions, signs and 24 l grades.

Run: python demos/seifert_report.py [m n]
"""
import sys

from sl2casson import catalog
from sl2casson.casson import Grading, graded_lambda, seifert_report
from sl2casson.local_systems import CoefficientKind, transversality_check, twisted_cochain_complex
from sl2casson.torsion import compute_torsion


def main(m: int = 5, n: int = 7) -> None:
    md = catalog.seifert(m, n)
    print(f"{md.name}: generators x, y; relators")
    for r in md.presentation.relators:
        print(f"  {r}")
    reps = catalog.seifert_reps(m, n)
    print(f"{len(reps)} Zariski-dense representation(s), labelled by (k, l):")
    for k, l, rho in reps:
        std = compute_torsion(twisted_cochain_complex(md.chain, rho, CoefficientKind.STANDARD2))
        print(f"  ({k}, {l}): transversal={transversality_check(md.chain, rho)}, "
              f"standard-rep torsion {float(std):.6f}")
    report = seifert_report(md, reps)
    print(f"lambda = {report['lambda']}")
    for e in report["per_rep"]:
        print(f"  ({e['k']}, {e['l']}): epsilon {e['epsilon']:+d}, tau^0 {e['torsion']:.6f}, 24 l {e['cs24']:.6f}")
    rep_list = [rho for _, _, rho in reps]
    print("graded by tau^0:", graded_lambda(md, rep_list, Grading.TORSION).to_json())


if __name__ == "__main__":
    main(*map(int, sys.argv[1:3]))
