from __future__ import annotations

import pytest

from cohftvoa import A2_GRAM, E8_GRAM, fusion_datum_from_gram, holomorphic_datum

A4_GRAM = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]


@pytest.fixture(scope="session")
def z2():
    return fusion_datum_from_gram([[2]])


@pytest.fixture(scope="session")
def z3():
    return fusion_datum_from_gram(A2_GRAM)


@pytest.fixture(scope="session")
def z4():
    return fusion_datum_from_gram([[4]])


@pytest.fixture(scope="session")
def z5():
    return fusion_datum_from_gram(A4_GRAM)


@pytest.fixture(scope="session")
def e8():
    return fusion_datum_from_gram(E8_GRAM)


@pytest.fixture(scope="session")
def holo24():
    return holomorphic_datum(24)


# one summary line per acceptance criterion, printed after the run

_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    k = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        if report.outcome != "passed":
            _CRITERIA[k] = "FAIL"
        else:
            _CRITERIA.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {k:2d}: {_CRITERIA[k]}  {CRITERIA[k]}")
