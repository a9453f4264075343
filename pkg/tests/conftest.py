# Purpose: ensure 'agents' and 'preoperad' are importable when running tests from various working dirs.
# Utility: shared fixtures for the shipped algebras and their calculi.
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from preoperad.endo import EndomorphismPreOperad, load_algebra  # noqa: E402
from preoperad.opcalc import OperadCalculus  # noqa: E402

FIXTURES = ROOT / "fixtures"


def load_fixture(name, **kwargs):
    return load_algebra((FIXTURES / f"{name}.json").read_text(encoding="utf-8"), **kwargs)


def calculus_for(spec):
    operad = EndomorphismPreOperad(spec)
    return OperadCalculus(operad, operad.mu())


@pytest.fixture
def dual():
    return load_fixture("dual_numbers")


@pytest.fixture
def split():
    return load_fixture("split_qq")


@pytest.fixture
def m2():
    return load_fixture("m2_q")


@pytest.fixture
def nonassoc():
    return load_fixture("nonassociative")


@pytest.fixture
def dual_calc(dual):
    return calculus_for(dual)


@pytest.fixture
def nonassoc_calc(nonassoc):
    return calculus_for(nonassoc)
