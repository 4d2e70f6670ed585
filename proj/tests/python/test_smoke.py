"""Smoke tests for the python module: parse, check, and the worked example."""

import gpdkit


def test_version():
    assert gpdkit.__version__


def test_examples_listed():
    names = gpdkit.example_names()
    assert "s4" in names
    assert "z6-dr" in names


def test_parse_and_check_s4():
    text = gpdkit.example("s4")
    doc = gpdkit.parse(text)
    assert len(doc) == 3
    assert doc.block_names == ["d4", "x", "act"]
    rep = gpdkit.check(text)
    assert rep["ok"]


def test_s4_product_and_quotient():
    text = gpdkit.example("s4")
    assert gpdkit.groupoid_size(text, "x") == (72, 24)
    prod = gpdkit.product(text, "act")
    assert prod["elements"] == 576
    assert prod["units"] == 24
    assert prod["report"]["ok"]
    quot = gpdkit.quotient(text, "act")
    assert quot["elements"] == 9
    assert quot["report"]["ok"]


def test_equivalence_certificate():
    text = gpdkit.example("s4")
    cert = gpdkit.equiv(text, "act")
    assert cert["certified"]
    assert cert["report"]["ok"]


def test_two_sided_equivalence():
    text = gpdkit.example("semidirect")
    cert = gpdkit.equiv(text, "left", "right")
    assert cert["certified"]
    assert cert["report"]["ok"]


def test_algebra_summary():
    text = gpdkit.example("s4")
    # C3 |x S4 splits into the eight C3-translation orbits of S4
    summary = gpdkit.algebra(text, "x")
    assert summary["principal"]
    assert summary["block_dims"] == [3] * 8


def test_dr_period():
    text = gpdkit.example("z6-dr")
    res = gpdkit.dr(text, "sys")
    assert res["star_commuting"]["ok"]
    assert res["period"] == 2


def test_fell_bimodule_on_crossed_example():
    text = gpdkit.example("crossed")
    res = gpdkit.fell_bimodule(text, "bact")
    assert res["certified"]
    assert res["report"]["ok"]


def test_parse_error_reported():
    import pytest

    with pytest.raises(gpdkit.ParseError):
        gpdkit.parse("[groupoid g]\nelements = e\nsrc q = e\n")


def test_cli_roundtrip():
    code, out, err = gpdkit.run_cli(["example", "s4", "--emit"])
    assert code == 0
    code2, out2, _ = gpdkit.run_cli(["example"])
    assert code2 == 0
    assert "s4" in out2
