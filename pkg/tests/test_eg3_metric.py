# tests/test_eg3_metric.py
from fractions import Fraction

import pytest

from smcmartin.eg3.experiments import sample_boundary_point
from smcmartin.eg3.metric import (
    is_mixed_case,
    rho,
    tail_constant,
    theta_boundary_truncated,
    truncation_tail_bound,
)
from smcmartin.eg3.streams import (
    BoundaryPoint,
    Stream,
    agreement_length,
    parse_boundary_point,
    parse_stream,
)
from smcmartin.errors import BoundaryPointError, InsufficientDepthError, ParameterError
from smcmartin.utils.rng import SeededRNG
from tests.helpers import w

F = Fraction


# -----------------------
# Streams
# -----------------------
def test_parse_stream_forms():
    assert parse_stream("const:b").take(3) == w("bbb")
    assert parse_stream("periodic:bcc").take(5) == w("bccbc")
    assert parse_stream("cb+const:b").take(4) == w("cbbb")
    assert parse_stream("cc+periodic:bc").take(4) == w("ccbc")
    assert parse_stream("-") is None
    finite = parse_stream("bcb")
    assert finite.available == 3
    with pytest.raises(InsufficientDepthError):
        finite.take(4)
    random = parse_stream("random:7")
    assert random.take(40) == parse_stream("random:7").take(40)
    assert set(random.take(200)) == {"b", "c"}


@pytest.mark.parametrize("text", ["const:bc", "periodic:", "random:x", "spiral:b", "ab", "c+bc"])
def test_parse_stream_rejects_bad_text(text):
    with pytest.raises(BoundaryPointError):
        parse_stream(text)


@pytest.mark.parametrize("text", ["1/2,-,const:b", "0,b,const:b", "1,const:b,b", "3/2,b,b", "1/2,b"])
def test_boundary_point_presence_rules(text):
    with pytest.raises((BoundaryPointError, ParameterError)):
        parse_boundary_point(text)


def test_boundary_point_text_round_trip():
    for text in ["1/2,const:b,random:7", "0,-,cb+const:b", "1,bcb,-"]:
        assert parse_boundary_point(text).to_text() == text


def test_agreement_length():
    b = parse_stream("const:b")
    assert agreement_length(b, parse_stream("const:b")) is None
    assert agreement_length(b, parse_stream("periodic:bc")) == 1
    assert agreement_length(b, parse_stream("bb+const:c")) == 2
    assert agreement_length(parse_stream("periodic:bc"), parse_stream("periodic:bcbc")) is None
    assert agreement_length(parse_stream("random:3"), parse_stream("random:3")) is None
    r = parse_stream("random:3")
    assert agreement_length(r, r.flipped_at(9)) == 8
    assert b.flipped_at(3).take(4) == w("bbcb")
    with pytest.raises(InsufficientDepthError):
        agreement_length(parse_stream("bcb"), parse_stream("bcb+const:c"))


# -----------------------
# rho
# -----------------------
def test_rho_worked_values():
    xi = parse_boundary_point("1/2,const:b,const:b")
    eta = parse_boundary_point("1/2,const:c,const:c")
    assert rho(xi, eta) == F(30, 49)
    left_edge = parse_boundary_point("0,-,const:b")
    right_edge = parse_boundary_point("0,-,const:c")
    assert rho(left_edge, right_edge) == F(2, 3)
    assert tail_constant(F(0)) == F(4, 3)


def test_rho_vanishes_only_on_identical_points():
    xi = parse_boundary_point("1/4,random:1,random:2")
    assert rho(xi, xi) == 0
    assert rho(xi, parse_boundary_point("1/4,random:1,random:2")) == 0
    assert rho(xi, parse_boundary_point("1/4,random:1,random:5")) > 0
    assert rho(xi, parse_boundary_point("3/8,random:1,random:2")) > 0


def test_rho_exact_and_float_agree():
    rng = SeededRNG(5)
    for _ in range(100):
        xi, eta = sample_boundary_point(rng, 8), sample_boundary_point(rng, 8)
        exact = rho(xi, eta)
        if isinstance(exact, Fraction):
            assert float(exact) == pytest.approx(rho(xi, eta, exact=False), abs=1e-12)


def test_mixed_case_uses_the_absent_side_convention():
    xi = parse_boundary_point("0,-,const:b")
    eta = parse_boundary_point("1/2,const:b,const:b")
    assert is_mixed_case(xi, eta)
    value = rho(xi, eta)
    assert isinstance(value, float) and value > 0


def test_truncated_weighted_sum_matches_closed_form():
    rng = SeededRNG(1234)
    assert truncation_tail_bound(40) < F(1, 10 ** 9)
    for _ in range(1000):
        xi, eta = sample_boundary_point(rng, 8), sample_boundary_point(rng, 8)
        value, tail = theta_boundary_truncated(xi, eta, 40)
        closed = rho(xi, eta)
        if isinstance(closed, Fraction):
            assert 0 <= closed - value <= tail
        else:
            assert abs(closed - float(value)) <= float(tail) + 1e-12
    with pytest.raises(ParameterError):
        theta_boundary_truncated(xi, eta, -1)


def test_rho_is_symmetric_and_satisfies_the_triangle_inequality():
    rng = SeededRNG(77)
    for _ in range(1000):
        x, y, z = (sample_boundary_point(rng, 10) for _ in range(3))
        xy, yx = float(rho(x, y)), float(rho(y, x))
        assert xy == pytest.approx(yx, abs=1e-12)
        assert xy <= float(rho(x, z)) + float(rho(z, y)) + 1e-12


def test_flipping_deeper_shrinks_rho():
    xi = BoundaryPoint(lam=F(1, 2), left=Stream(kind="random", seed=4), right=Stream(kind="random", seed=8))
    values = [rho(xi, BoundaryPoint(lam=xi.lam, left=xi.left.flipped_at(k), right=xi.right)) for k in range(1, 12)]
    assert all(a > b for a, b in zip(values, values[1:]))
