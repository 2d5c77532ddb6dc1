import json
import pathlib

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = ROOT / "tests" / "data"
SCHEMAS = ROOT / "schemas"


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture
def data():
    return load


@pytest.fixture
def validator():
    def make(name):
        schema = json.loads((SCHEMAS / name).read_text())
        return jsonschema.Draft202012Validator(schema)

    return make
