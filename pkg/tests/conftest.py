import pytest

from catdiff.constructions import CoKleisli, default_split_cokleisli
from catdiff.expr import Base
from catdiff.finrel import FinRel
from catdiff.model import Budget
from catdiff.polydiff import PolyDiff

A, B, C = Base("A"), Base("B"), Base("C")


@pytest.fixture
def finrel():
    return FinRel()


@pytest.fixture
def ck():
    return CoKleisli()


@pytest.fixture
def poly():
    return PolyDiff()


@pytest.fixture
def split():
    return default_split_cokleisli()


@pytest.fixture
def cap3():
    return Budget.uniform(3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance")
        for text in mod.LINES:
            terminalreporter.write_line(text)
