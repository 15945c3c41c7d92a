from pathlib import Path

import pytest

from app.infrastructure.resolution.engine import PrologEngine

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_path() -> Path:
    """Folder of the test programs."""
    return DATA


@pytest.fixture
def engine() -> PrologEngine:
    """Fixture to provide an empty engine."""
    return PrologEngine()


@pytest.fixture
def zoo() -> PrologEngine:
    """Fixture to provide an engine consulting the zoo program."""
    return PrologEngine(DATA / "zoo.pl")


@pytest.fixture
def family() -> PrologEngine:
    """Fixture to provide an engine consulting the family program."""
    return PrologEngine(DATA / "family.pl")
