from fractions import Fraction
from itertools import combinations

import pytest

from nochka.arrangement import Arrangement

# k=1, n=2: one double point (H_1 = H_2) and three simple points.
CONFIG_A = dict(k=1, n=2, covectors=[[1, 0], [1, 0], [0, 1], [1, -1], [1, 1]])

# k=2, n=3: a doubled line x=0 and a triple point (1:0:0) through H_3, H_4, H_5.
CONFIG_B = dict(
    k=2, n=3, covectors=[[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 1, 2]]
)

# Same with H_6 = [1,1,1]: that line passes through (0:1:-1) on x=0 and y+z=0,
# making a point with alpha = 4 > codim + n - k = 3.
CONFIG_B_LITERAL = dict(
    k=2, n=3, covectors=[[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]]
)

CARTAN = dict(k=2, n=2, covectors=[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def make(config) -> Arrangement:
    return Arrangement.build(config["k"], config["n"], config["covectors"])


@pytest.fixture
def config_a():
    return make(CONFIG_A)


@pytest.fixture
def config_b():
    return make(CONFIG_B)


@pytest.fixture
def cartan():
    return make(CARTAN)


def det(m):
    """Laplace expansion; exact and slow, for oracle use only."""
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
        if m[0][j] != 0
    )


def minor_rank(rows, ncols):
    """Largest r with a nonzero r x r minor."""
    rows = [[Fraction(v) for v in r] for r in rows]
    for r in range(min(len(rows), ncols), 0, -1):
        for ri in combinations(range(len(rows)), r):
            for ci in combinations(range(ncols), r):
                if det([[rows[i][j] for j in ci] for i in ri]) != 0:
                    return r
    return 0


def suite_cases(count, seed=2026):
    """(n, k, q, seed, budget) cycling over 1 <= k <= n <= 5 with 2n-k+1 < q <= 12."""
    import random

    rng = random.Random(seed)
    pairs = [(n, k) for n in range(1, 6) for k in range(1, n + 1)]
    for t in range(count):
        n, k = pairs[t % len(pairs)]
        yield n, k, rng.randint(2 * n - k + 2, 12), t, t % 4


# One PASS/FAIL line per acceptance criterion, printed after the run.
_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or report.failed:
        key = marker
        ok = report.passed if report.when == "call" else False
        _criteria[key] = _criteria.get(key, True) and ok


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, text), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {text}")
