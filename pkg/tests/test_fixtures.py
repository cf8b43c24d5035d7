import json

import pytest

from schemekit.fixtures import FIXTURES, run_fixture


@pytest.mark.parametrize("name", sorted(n for n in FIXTURES if n != "census"))
def test_fixture_passes_within_budget(name):
    report = run_fixture(name)
    assert report.checks, "a fixture must check something"
    failed = [c.label for c in report.checks if not c.passed]
    assert not failed, failed
    assert report.elapsed <= report.budget
    assert report.passed
    json.dumps(report.to_json())


def test_census_fixture_small_field():
    report = run_fixture("census", q=5)
    assert report.passed, report.lines()
    assert report.data["hits"] == 31 and report.data["candidates"] == (5**6 - 1) // 4


def test_unknown_fixture():
    with pytest.raises(KeyError):
        run_fixture("nope")
