"""Session-wide fixtures over the bundled model corpus.

The parsed documents and materialized graphs are shared across the whole
run; tests that need to mutate a graph must copy it first.
"""

from pathlib import Path

import pytest

from cloudaudit.reasoner import materialize
from cloudaudit.turtle import parse_turtle

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model_doc():
    return parse_turtle((FIXTURES / "cloudengine.ttl").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def gap_doc():
    return parse_turtle((FIXTURES / "cloudengine_gap.ttl").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def shapes_doc():
    return parse_turtle(
        (FIXTURES / "shapes_data_encryption.ttl").read_text(encoding="utf-8")
    )


@pytest.fixture(scope="session")
def model_graph(model_doc):
    return materialize(model_doc.graph).graph


@pytest.fixture(scope="session")
def gap_graph(gap_doc):
    return materialize(gap_doc.graph).graph
