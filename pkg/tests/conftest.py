import pytest
from hypothesis import HealthCheck, settings
from sympy import GF, Poly, symbols

from cyclofactor.ffield import FieldTower
from cyclofactor.poly import Polynomial

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

X = symbols("x")

# Filled by the acceptance tests, echoed once at the end of the run.
CRITERIA = {}


def record(number, passed, detail):
    CRITERIA[number] = (passed, detail)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        passed, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


def poly(tower, ascending):
    return Polynomial(tower.base, list(ascending))


def desc(tower, descending):
    return Polynomial(tower.base, list(descending)[::-1])


def sympy_factor_degrees(f):
    """Multiset of (degree, multiplicity) of f over a prime field, via sympy."""
    p = f.field.p
    sp = Poly(f.descending(), X, domain=GF(p))
    return sorted((g.degree(), e) for g, e in sp.factor_list()[1])


def sympy_factors(f):
    """Monic irreducible factors over a prime field as ascending int lists."""
    p = f.field.p
    sp = Poly(f.descending(), X, domain=GF(p))
    out = []
    for g, e in sp.factor_list()[1]:
        g = g.monic()
        coeffs = [int(c) % p for c in g.all_coeffs()][::-1]
        out.extend([tuple(coeffs)] * e)
    return sorted(out, key=lambda c: (len(c), c))


@pytest.fixture(scope="session")
def towers():
    cache = {}

    def get(q, seed=0):
        key = (q, seed)
        if key not in cache:
            cache[key] = FieldTower.for_order(q, seed)
        return cache[key]

    return get
