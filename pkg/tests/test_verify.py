import io
import json

import pytest

from hackenbush.verify import SUITES, run_suite, write_jsonl


def test_same_seed_reproduces_records():
    a = run_suite("main-theorem", {"cases": 15}, seed=3)
    b = run_suite("main-theorem", {"cases": 15}, seed=3)
    assert [vars(r) for r in a.records] == [vars(r) for r in b.records]
    c = run_suite("main-theorem", {"cases": 15}, seed=4)
    assert [vars(r) for r in a.records] != [vars(r) for r in c.records]


def test_unknown_suite_and_bound():
    with pytest.raises(KeyError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("bouton", {"bogus": 1})


def test_failure_count_matches_records():
    report = run_suite("shrub-colon", {"max_edges": 5})
    assert report.failures == sum(1 for r in report.records if not r.agree)
    assert report.total == len(report.records)


def test_jsonl_layout():
    report = run_suite("bouton", {"max_count": 1, "max_height": 2})
    sink = io.StringIO()
    write_jsonl(report, sink)
    lines = [json.loads(line) for line in sink.getvalue().splitlines()]
    header, records, summary = lines[0], lines[1:-1], lines[-1]
    assert header["suite"] == "bouton" and header["bounds"]["max_count"] == 1
    assert len(records) == report.total
    for r in records:
        assert {
            "instanceId",
            "family",
            "conventions",
            "classifierOutcome",
            "oracleOutcome",
            "agree",
        } == set(r)
    assert summary == report.summary()


def test_every_suite_has_defaults():
    for name, (fn, defaults) in SUITES.items():
        assert isinstance(defaults, dict) and defaults, name
