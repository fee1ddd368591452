# -*- coding: utf-8 -*-
"""Run conformance tests"""
from typing import Generator
import pytest
import sumset_core as sc
from sumset_core import conformance
from sumset_core.__main__ import selftest


def test_generate_tests():
    test_generator = conformance.conformance_testdata()
    assert isinstance(test_generator, Generator)


def test_selftest():
    assert selftest() is True


def test_conformance_selftest():
    assert conformance.conformance_selftest()


@pytest.mark.parametrize("testname,function,inputs,outputs", conformance.conformance_testdata())
def test_conformance(testname, function, inputs, outputs):
    result = function(*inputs)
    assert sc.approx_equal(result, outputs), f"FAILED {testname}"


def test_conformance_testdata_filter():
    names = {func.__name__ for _, func, _, _ in conformance.conformance_testdata(["n_fw", "rad"])}
    assert names == {"n_fw", "rad"}


def test_conformance_report():
    outcomes = conformance.conformance_report(["n_main"])
    assert set(outcomes) == {
        "n_main.test_0000_unit_thickness_line",
        "n_main.test_0001_unit_thickness_dim4",
    }
    assert all(v is None for v in outcomes.values())


def test_conformance_report_failure(monkeypatch):
    monkeypatch.setattr(sc, "n_fw", lambda c: 0.0)
    outcomes = conformance.conformance_report(["n_fw"])
    assert all(v.startswith("got 0.0") for v in outcomes.values())
    assert conformance.conformance_selftest(["n_fw"]) is False


def test_conformance_report_exception(monkeypatch):
    def broken(c):
        raise ValueError("broken")

    monkeypatch.setattr(sc, "n_fw", broken)
    outcomes = conformance.conformance_report(["n_fw"])
    assert all(v == "raised ValueError: broken" for v in outcomes.values())
