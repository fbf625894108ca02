"""Tests for the h function menu."""

import math

import numpy as np
import pytest

from src.model import (
    MCP,
    SCAD,
    Constant,
    DomainError,
    Log1pTrunc,
    ModelSpec,
    TruncPower,
    get_h_functions,
    h_admissible,
    h_eval,
    parse_hspec,
    parse_hspec_list,
)


def test_truncated_power_values():
    """min(x, 3) and its slope on both sides of the knot."""
    h = parse_hspec("pow:1:3")
    assert isinstance(h, TruncPower)
    assert h_eval(h, 2.0) == (2.0, 1.0)
    assert h_eval(h, 5.0) == (3.0, 0.0)


def test_untruncated_square():
    h = parse_hspec("pow:2:inf")
    value, slope = h_eval(h, 10.0)
    assert value == pytest.approx(100.0)
    assert slope == pytest.approx(20.0)
    assert math.isinf(h.c)


def test_log1p_truncation():
    h = parse_hspec("log1p:1")
    assert isinstance(h, Log1pTrunc)
    value, slope = h_eval(h, 0.5)
    assert value == pytest.approx(math.log1p(0.5))
    assert slope == pytest.approx(1 / 1.5)
    assert h_eval(h, 10.0) == (1.0, 0.0)


def test_mcp_plateau():
    """Beyond gam*lam the MCP shape is flat at gam*lam^2/2."""
    h = parse_hspec("mcp:1:10")
    assert isinstance(h, MCP)
    assert h_eval(h, 12.0) == (5.0, 0.0)
    assert h_eval(h, 2.0) == pytest.approx((2.0 - 4.0 / 20.0, 1.0 - 0.2))


def test_scad_is_continuous_at_knots():
    h = parse_hspec("scad:1:3.7")
    assert isinstance(h, SCAD)
    eps = 1e-9
    for knot in (1.0, 3.7):
        left, _ = h.values(np.array([knot - eps]))
        right, _ = h.values(np.array([knot + eps]))
        assert left[0] == pytest.approx(right[0], abs=1e-6)


def test_constant():
    h = parse_hspec("const:2")
    assert isinstance(h, Constant)
    values, slopes = h.values(np.array([0.0, 1.0, 50.0]))
    np.testing.assert_array_equal(values, [2.0, 2.0, 2.0])
    np.testing.assert_array_equal(slopes, [0.0, 0.0, 0.0])


def test_spec_string_round_trip():
    for text in ["pow:1:3", "pow:2:inf", "log1p:inf", "mcp:1:10", "scad:1:3.7", "const:1"]:
        assert parse_hspec(text).spec_string() == text
        assert parse_hspec(parse_hspec(text).spec_string()) == parse_hspec(text)


def test_parse_list():
    hs = parse_hspec_list("log1p:1, log1p:2")
    assert [h.spec_string() for h in hs] == ["log1p:1", "log1p:2"]


def test_unknown_prefix():
    with pytest.raises(DomainError, match="Unknown h function 'cube'"):
        parse_hspec("cube:1")


def test_wrong_arity():
    with pytest.raises(DomainError, match="takes 2 argument"):
        parse_hspec("pow:1")


def test_bad_number():
    with pytest.raises(DomainError, match="Invalid power"):
        parse_hspec("pow:x:3")


def test_invalid_parameters():
    with pytest.raises(DomainError):
        TruncPower(p=1.0, c=0.0)
    with pytest.raises(DomainError):
        SCAD(lam=1.0, gam=2.0)
    with pytest.raises(DomainError):
        Constant(v=-1.0)


def test_h_eval_rejects_zero():
    with pytest.raises(DomainError, match="positive points"):
        h_eval(parse_hspec("pow:1:3"), 0.0)


def test_registry_is_a_copy():
    registry = get_h_functions()
    registry.pop("pow")
    assert "pow" in get_h_functions()


class TestAdmissibility:
    """Behaviour at the origin decides admissibility."""

    def setup_method(self):
        self.centered_tn = ModelSpec(a=1.0, b=1.0, centered=True)
        self.log_model = ModelSpec(a=0.5, b=0.0)

    def test_bounded_power_is_admissible(self):
        assert h_admissible(parse_hspec("pow:1:3"), self.centered_tn)

    def test_constant_fails_at_origin(self):
        verdict = h_admissible(parse_hspec("const:1"), self.centered_tn)
        assert not verdict
        assert verdict.clause == "origin"

    def test_log_model_without_eta_needs_order_two(self):
        assert not h_admissible(parse_hspec("pow:2:inf"), self.log_model)
        assert h_admissible(parse_hspec("pow:3:inf"), self.log_model)

    def test_log_model_uses_smallest_eta(self):
        assert h_admissible(parse_hspec("pow:2:inf"), self.log_model, eta_min=-0.5)
