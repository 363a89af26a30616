"""Tests for the verification report machinery."""

from k3lattices import __version__
from k3lattices.verify import run_verification


def test_default_run_passes():
    report = run_verification()
    assert report.passed
    assert len(report.checks) == 12
    ids = [c.check_id for c in report.checks]
    assert len(set(ids)) == 12
    assert ids == sorted(ids)
    assert report.version == __version__


def test_perturb_fails_exactly_the_det_check():
    report = run_verification(perturb=True)
    assert not report.passed
    failing = [c.check_id for c in report.checks if not c.passed]
    assert failing == ["01-a15"]


def test_values_are_sorted_string_pairs():
    for check in run_verification().checks:
        keys = [k for k, _ in check.values]
        assert keys == sorted(keys)
        assert all(isinstance(k, str) and isinstance(v, str)
                   for k, v in check.values)


def test_to_dict_statuses_and_render():
    report = run_verification()
    data = report.to_dict()
    assert data["passed"] is True
    assert all(c["status"] == "pass" for c in data["checks"])
    text = report.render_text()
    assert "12 checks: all checks passed" in text
    assert text.count("PASS") == 12
