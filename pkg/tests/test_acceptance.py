"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line."""

import pytest

from thuemorse import acceptance
from thuemorse.config import Config
from thuemorse.tmcf import default_table


@pytest.fixture(scope="module")
def cfg():
    return Config()


@pytest.mark.parametrize("check", acceptance.ALL, ids=lambda c: f"{c.number:02d}_{c.__name__}")
def test_criterion(check, cfg, capsys):
    result = check(cfg, default_table())
    with capsys.disabled():
        print()
        print(result.line())
        for note in result.notes:
            print(f"    {note}")
    assert result.passed, result.detail
