import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from ybkit.algebras import ALGEBRAS  # noqa: E402
from ybkit.entwining import coalgebra_braid_operator  # noqa: E402
from ybkit.algebras import dual_coalgebra  # noqa: E402
from ybkit.tensor import identity, twist  # noqa: E402
from ybkit.yang_baxter import algebra_yb_operator, random_diagonal_solution  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

PARAMS = [(1, 1), (2, 3), (Fraction(1, 2), -5), (-1, 4), (Fraction(-3, 2), Fraction(2, 7))]


def operator_corpus():
    """Named square operators on V (x) V used across the equation suites."""
    ops = {}
    for n in (1, 2, 3):
        ops[f"twist{n}"] = twist(n, n)
        ops[f"identity{n}"] = identity((n, n))
    rng = random.Random(2024)
    for k in range(6):
        ops[f"diagonal{k}"] = random_diagonal_solution(2 + k % 2, rng)
    for name, make in ALGEBRAS.items():
        for r, s in PARAMS[:2]:
            ops[f"algebra-{name}-{r}-{s}"] = algebra_yb_operator(make(), r, s)
    ops["coalgebra-dual-numbers"] = coalgebra_braid_operator(dual_coalgebra(ALGEBRAS["dual-numbers"]()))
    ops["coalgebra-group-z2"] = coalgebra_braid_operator(dual_coalgebra(ALGEBRAS["group-z2"]()))
    return ops


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
