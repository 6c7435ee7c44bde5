"""Verification reports: statuses, witnesses, determinism, serialization."""

from __future__ import annotations

import time
from fractions import Fraction as Q

import pytest

import twistchar.series as gs
import twistchar.verification as vf
from twistchar.rootdata import RectangularWeight, build_datum


def _stable(report):
    d = report.to_dict()
    d.pop("elapsed_seconds")
    return d


def test_corollary_pass_and_negative_control():
    datum = build_datum("A", 2)
    good = vf.verify_corollary(datum, Q(3))
    assert good.status == vf.PASS
    assert good.witness is None
    assert good.terms_compared > 0
    bad = vf.verify_corollary(datum, Q(3), all_roots=True)
    assert bad.status == vf.FAIL
    assert bad.witness == (Q(1, 2), (Q(1), Q(0)), 2, 1)


def test_reports_deterministic():
    datum = build_datum("D", 2)
    w = RectangularWeight(1, 1)
    first = vf.verify_psp(datum, w, Q(2))
    second = vf.verify_psp(datum, w, Q(2))
    assert _stable(first) == _stable(second)
    assert first.status == vf.PASS
    r1 = vf.verify_minsum(42, 50)
    r2 = vf.verify_minsum(42, 50)
    assert _stable(r1) == _stable(r2)


def test_insufficient_precision_is_reported():
    lhs = gs.one(1, Q(1))
    rhs = gs.one(1, Q(1))
    report = vf._report_from_comparison(
        "synthetic", {}, lhs, rhs, Q(2), time.perf_counter()
    )
    assert report.status == vf.INSUFFICIENT_PRECISION
    assert report.witness is None


def test_minsum_seeded_sweep():
    report = vf.verify_minsum(42, 500)
    assert report.status == vf.PASS
    assert report.terms_compared == 500
    with pytest.raises(ValueError):
        vf.verify_minsum(42, 0)


def test_para_and_level_one_reports():
    report = vf.verify_para(build_datum("A", 2), RectangularWeight(1, 1), Q(2))
    assert report.status == vf.PASS
    report = vf.verify_para_examples(Q(2))
    assert report.status == vf.PASS
    report = vf.verify_level_one(Q(2))
    assert report.status == vf.PASS


def test_report_serialization_shape():
    datum = build_datum("A", 2)
    report = vf.verify_corollary(datum, Q(2), all_roots=True)
    payload = report.to_dict()
    assert payload["status"] == "fail"
    assert payload["witness"] == {"q": "1/2", "y": ["1", "0"], "lhs": "2", "rhs": "1"}
    assert payload["check"] == "corollary-all-roots"
    assert payload["terms_compared"] >= 1
    assert isinstance(payload["elapsed_seconds"], float)


def test_verma_report():
    report = vf.verify_verma(build_datum("A", 2), Q(2))
    assert report.status == vf.PASS
    assert report.parameters["series"] == "A"
