import os

import pytest

from graphqa import (
    PipelineConfig,
    load_dataset,
    load_gazetteer_file,
    load_lexicon_file,
    load_ntriples_file,
)
from graphqa.kbstore import load_prefixes

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name: str) -> str:
    return os.path.normpath(os.path.join(FIXTURES, name))


@pytest.fixture(scope="session")
def berlin_kb():
    return load_ntriples_file(fixture_path("berlin.nt"))


@pytest.fixture(scope="session")
def pitt_kb():
    return load_ntriples_file(fixture_path("pitt_ritchie.nt"))


@pytest.fixture(scope="session")
def juan_kb():
    return load_ntriples_file(fixture_path("juan_carlos.nt"))


@pytest.fixture(scope="session")
def golden_kb():
    return load_ntriples_file(fixture_path("golden.nt"))


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer_file(fixture_path("gazetteer.tsv"))


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon_file(fixture_path("lexicon.tsv"))


@pytest.fixture(scope="session")
def prefixes():
    return load_prefixes(fixture_path("prefixes.json"))


@pytest.fixture(scope="session")
def golden_questions():
    return load_dataset(fixture_path("golden.jsonl"))


@pytest.fixture()
def config():
    return PipelineConfig()
