# tests/test_eg3_embeddings.py
import csv
import math
from fractions import Fraction

import pytest

from smcmartin.eg3.embeddings import (
    EmbeddedPoint,
    generate_cloud,
    phi,
    phi_distance,
    psi,
    psi_difference,
    sparse_position,
    sparse_positions,
    truncation_error,
    within,
)
from smcmartin.eg3.streams import BoundaryPoint, parse_boundary_point
from smcmartin.errors import BoundaryPointError, ParameterError

F = Fraction


# -----------------------
# phi
# -----------------------
def test_sparse_positions_at_one_half():
    assert sparse_positions(F(1, 2), 12) == [3, 6, 9]
    assert sparse_positions(F(1, 4), 17) == [4, 8, 12, 16]
    assert sparse_positions(F(0), 50) == []


@pytest.mark.parametrize("lam", [F(1, 3), F(1, 10), F(5, 16)])
def test_sparse_position_is_an_exact_floor(lam):
    for k in range(1, 31):
        assert sparse_position(lam, k) == math.floor(k * math.log2(4 / lam))


def test_phi_on_the_lambda_zero_face():
    image = phi(parse_boundary_point("0,-,cbc"), 3)
    assert image.bits == (1, 0, 1)
    assert image.sparse_positions == ()
    assert not image.swapped


def test_phi_places_streams_on_complementary_positions():
    image = phi(parse_boundary_point("1/2,const:c,const:b"), 40)
    marks = set(image.sparse_positions)
    assert all(bit == (i in marks) for i, bit in enumerate(image.bits))


def test_phi_swaps_roles_above_one_half():
    high = phi(parse_boundary_point("3/4,random:1,random:2"), 64)
    low = phi(parse_boundary_point("1/4,random:2,random:1"), 64)
    assert high.swapped and not low.swapped
    assert high.bits == low.bits
    assert high.lam == F(3, 4)


def test_phi_distance():
    xi = parse_boundary_point("1/2,random:5,random:6")
    base = phi(xi, 64)
    assert phi_distance(base, base) == 0
    flipped_left = BoundaryPoint(lam=xi.lam, left=xi.left.flipped_at(2), right=xi.right)
    assert phi_distance(base, phi(flipped_left, 64)) == F(1, 2 ** 6)
    flipped_right = BoundaryPoint(lam=xi.lam, left=xi.left, right=xi.right.flipped_at(1))
    assert phi_distance(base, phi(flipped_right, 64)) == 1
    nudged = BoundaryPoint(lam=F(17, 32), left=xi.left, right=xi.right)
    assert phi_distance(base, phi(nudged, 64)) >= F(1, 32)
    with pytest.raises(ParameterError):
        phi(xi, -1)


# -----------------------
# psi
# -----------------------
def test_psi_limits():
    b = psi(parse_boundary_point("1/2,const:b,const:b"), 60)
    assert (b.lam, b.y, b.z) == pytest.approx((0.5, 1 / 7, 1 / 7), abs=1e-14)
    c = psi(parse_boundary_point("1/2,const:c,const:c"), 60)
    assert (c.y, c.z) == pytest.approx((3 / 7, 3 / 7), abs=1e-14)
    edge = psi(parse_boundary_point("0,-,const:b"), 60)
    assert edge.y == 0 and edge.z == pytest.approx(1 / 3, abs=1e-14)


def test_psi_truncation_error_bounds_the_remainder():
    xi = parse_boundary_point("3/8,random:9,random:10")
    short, long = psi(xi, 6), psi(xi, 80)
    assert abs(long.y - short.y) <= short.y_error
    assert abs(long.z - short.z) <= short.z_error
    assert truncation_error(0.0, 5) == 0.0


def test_embedded_point_rejects_points_outside_the_target_set():
    with pytest.raises(BoundaryPointError):
        EmbeddedPoint(lam=0.5, y=0.9, z=0.2)
    assert within(1.0, 0.0, 1.0)
    assert not within(1.01, 0.0, 1.0)


def test_psi_difference():
    xi = parse_boundary_point("1/2,random:1,random:2")
    eta = parse_boundary_point("1/2,random:1,random:3")
    assert psi_difference(xi, xi, 64) == 0
    assert psi_difference(xi, eta, 64) == pytest.approx(psi_difference(eta, xi, 64))
    direct = psi(xi, 64), psi(eta, 64)
    expected = math.dist((direct[0].lam, direct[0].y, direct[0].z), (direct[1].lam, direct[1].y, direct[1].z))
    assert psi_difference(xi, eta, 64) == pytest.approx(expected, rel=1e-9)


# -----------------------
# Point clouds
# -----------------------
def test_empty_cloud_is_header_only():
    assert list(generate_cloud(0, 10, seed=1)) == ["lambda,y,z\n"]


def test_cloud_rows_respect_the_bounds_and_are_reproducible():
    text = "".join(generate_cloud(25, 30, seed=7, chunk=10))
    assert text == "".join(generate_cloud(25, 30, seed=7, chunk=10))
    rows = list(csv.reader(text.splitlines()))
    assert rows[0] == ["lambda", "y", "z"]
    assert len(rows) == 26
    for lam, y, z in ((float(v) for v in row) for row in rows[1:]):
        slack = truncation_error(max(lam, 1 - lam) / 4, 30)
        assert within(y, lam / (4 - lam), 3 * lam / (4 - lam), slack)
        assert within(z, (1 - lam) / (3 + lam), 3 * (1 - lam) / (3 + lam), slack)


@pytest.mark.slow
def test_large_cloud_stays_inside_the_target_set():
    text = "".join(generate_cloud(100_000, 40, seed=7))
    assert text == "".join(generate_cloud(100_000, 40, seed=7))
    rows = text.splitlines()[1:]
    assert len(rows) == 100_000
    for row in rows:
        lam, y, z = (float(v) for v in row.split(","))
        slack = truncation_error(max(lam, 1 - lam) / 4, 40)
        assert within(y, lam / (4 - lam), 3 * lam / (4 - lam), slack)
        assert within(z, (1 - lam) / (3 + lam), 3 * (1 - lam) / (3 + lam), slack)


def test_cloud_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        list(generate_cloud(-1, 10, seed=1))
    with pytest.raises(ParameterError):
        list(generate_cloud(5, 0, seed=1))
