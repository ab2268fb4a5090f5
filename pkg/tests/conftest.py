from pathlib import Path

import pytest

from drsa.table import load_schema, read_table

DATA = Path(__file__).parent / "data"
FERTILITY = DATA / "fertility_Diagnosis.txt"

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def fertility_path():
    return FERTILITY


@pytest.fixture(scope="session")
def schema():
    return load_schema("fertility")


@pytest.fixture(scope="session")
def fertility(schema):
    return read_table(FERTILITY, schema)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
