import functools
import math

import pytest
from hypothesis import settings

from laplace_prolate.eigensystem import ProblemParams
from laplace_prolate.quadrature import gauss_jacobi_rule
from laplace_prolate.spectrum import compute_spectrum

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

PI = math.pi


@functools.lru_cache(maxsize=None)
def spectrum_for(c: float, alpha: float, n_max: int | None = None):
    return compute_spectrum(ProblemParams(c, alpha), n_max)


@functools.lru_cache(maxsize=None)
def rule_for(alpha: float, m: int = 400):
    return gauss_jacobi_rule(alpha, m)


@pytest.fixture(scope="session")
def spectra():
    return spectrum_for


@pytest.fixture(scope="session")
def rules():
    return rule_for


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key].line())
