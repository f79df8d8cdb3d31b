"""Shared data and oracles for the test-suite."""
import functools
import json
import pathlib

import numpy as np

from sl2casson import catalog
from sl2casson.reps import Rep
from sl2casson.symplectic import genus2_test_rep

DATA = pathlib.Path(__file__).parent / "data"

# odd m, n <= 11 with 1/m + 1/n < 1/2
SEIFERT_RANGE = [(m, n) for m in range(3, 12, 2) for n in range(3, 12, 2) if 2 * (m + n) < m * n]


@functools.lru_cache(maxsize=None)
def seifert_case(m, n):
    return catalog.seifert(m, n), catalog.seifert_reps(m, n)


@functools.lru_cache(maxsize=None)
def surface_rep(seed):
    return genus2_test_rep(seed)


def sigma345_rep() -> Rep:
    return Rep.from_json((DATA / "sigma_3_4_5_rep.json").read_text())


def sigma3511_reps() -> list[Rep]:
    data = json.loads((DATA / "sigma_3_5_11_reps.json").read_text())
    return [Rep.from_json(json.dumps({"gens": g})) for g in data["reps"]]


def sigma534_rep() -> Rep:
    return Rep.from_json((DATA / "sigma_5_3_4_rep.json").read_text())


def random_conjugator(rng) -> np.ndarray:
    a, b, c = rng.normal(size=3)
    while abs(a) < 0.3:
        a = rng.normal()
    return np.array([[a, b], [c, (1 + b * c) / a]])


def rel_close(x, y, tol):
    return abs(x - y) <= tol * max(abs(x), abs(y))


def circ_dist(x, y):
    d = abs(x - y) % 1.0
    return min(d, 1 - d)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
