"""Geometry gates: quadrature, separation products, aperture algebra, CSV."""

import math

import numpy as np
import pytest

from dhlab import wavepackets as wp
from dhlab.errors import GridMismatchError, LayoutError


@pytest.fixture(scope="module")
def grid():
    return wp.uniform_grid(-35.0, 35.0, 1401)


@pytest.fixture(scope="module")
def packets(grid):
    return [wp.gaussian_packet(c, 1.0, grid) for c in (-20.0, 0.0, 20.0)]


def test_grid_invariants():
    with pytest.raises(LayoutError):
        wp.Grid(np.linspace(0.0, 1.0, 8))
    with pytest.raises(LayoutError):
        wp.Grid(np.array([0.0, 1.0, 0.5] + list(range(2, 20))))
    with pytest.raises(LayoutError):
        wp.Grid(np.concatenate([np.linspace(0, 1, 10), np.linspace(1.5, 9, 10)]))
    g = wp.uniform_grid(0.0, 1.0, 21)
    assert g.spacing == pytest.approx(0.05)
    assert g.index_of(0.25) == 5
    with pytest.raises(LayoutError):
        g.index_of(4.0)


def test_gaussian_packet_normalization(grid, packets):
    for p in packets:
        assert abs(wp.norm(p) - 1.0) <= 1e-10
        assert p.is_normalized
        assert wp.inner(p, p).real == pytest.approx(1.0, abs=1e-12)


def test_gaussian_packet_margin_guard(grid):
    with pytest.raises(LayoutError):
        wp.gaussian_packet(33.0, 1.0, grid)
    with pytest.raises(ValueError):
        wp.gaussian_packet(0.0, -1.0, grid)


def test_overlap_against_analytic_oracle(grid):
    # Analytic overlap of equal-width normalized Gaussians: exp(-d^2/(8 w^2)).
    close_a = wp.gaussian_packet(-1.0, 1.0, grid)
    close_b = wp.gaussian_packet(1.0, 1.0, grid)
    assert wp.inner(close_a, close_b).real == pytest.approx(
        math.exp(-0.5), abs=1e-10
    )
    assert wp.gaussian_overlap(-1.0, 1.0, 1.0) == pytest.approx(0.6065306597126334)
    far_a = wp.gaussian_packet(-10.0, 1.0, grid)
    far_b = wp.gaussian_packet(10.0, 1.0, grid)
    # 20 widths apart: oracle value exp(-50) ~ 1.93e-22, far below 1e-12.
    assert abs(wp.inner(far_a, far_b)) <= 1e-12
    assert abs(wp.inner(far_a, far_b) - wp.gaussian_overlap(-10.0, 10.0, 1.0)) <= 1e-15


def test_inner_conjugate_symmetry_and_grid_check(grid, packets):
    f = wp.GridFunction(grid, packets[0].values * np.exp(0.3j))
    g = wp.GridFunction(grid, packets[1].values + 0.1 * packets[0].values)
    assert wp.inner(f, g) == pytest.approx(np.conj(wp.inner(g, f)))
    assert wp.inner(f, f).real > 0.0
    other = wp.uniform_grid(-35.0, 35.0, 1400)
    with pytest.raises(GridMismatchError):
        wp.inner(f, wp.GridFunction(other, np.zeros(1400)))


def test_wsw_report_cases(grid, packets):
    report = wp.wsw_report(packets, tol=1e-10)
    assert report.passed
    assert report.max_product <= 1e-10
    duplicated = wp.wsw_report([packets[0], packets[0]], tol=1e-10)
    peak = float(np.abs(packets[0].values).max())
    assert not duplicated.passed
    assert duplicated.max_product == pytest.approx(peak**2)
    single = wp.wsw_report([packets[0]], tol=1e-10)
    assert single.passed and single.max_product == 0.0


def test_packet_gram_matrix_is_identity(packets):
    gram = np.array([[wp.inner(a, b) for b in packets] for a in packets])
    assert np.abs(gram - np.eye(3)).max() <= 1e-10


def test_build_aperture_shape(grid, packets):
    ap = wp.build_aperture(packets[1], threshold=1e-6)
    ones = np.flatnonzero(ap.values)
    assert ones.size > 0
    assert np.array_equal(ones, np.arange(ones[0], ones[-1] + 1))  # contiguous
    assert np.array_equal(ap.values * ap.values, ap.values)  # idempotent
    with pytest.raises(ValueError):
        wp.build_aperture(packets[1], threshold=0.0)
    with pytest.raises(ValueError):
        wp.build_aperture(packets[1], threshold=1.5)


def test_aperture_report_standard_layout(grid, packets):
    apertures = [wp.build_aperture(p) for p in packets]
    report = wp.aperture_report(apertures, packets, tol=1e-8)
    assert report.passed
    assert report.products_exact
    assert report.max_pointwise_error <= 1e-8
    assert report.max_integral_error <= 1e-8


def test_aperture_report_swapped_fails(grid, packets):
    apertures = [wp.build_aperture(p) for p in packets]
    swapped = [apertures[1], apertures[0], apertures[2]]
    report = wp.aperture_report(swapped, packets, tol=1e-8)
    assert not report.passed
    # diagonal integral ~ 0 instead of 1
    assert report.max_integral_error == pytest.approx(1.0, abs=1e-6)


def test_aperture_report_empty_aperture_fails(grid, packets):
    empty = wp.ApertureFunction(grid, np.zeros(grid.size, dtype=np.int8))
    apertures = [empty] + [wp.build_aperture(p) for p in packets[1:]]
    report = wp.aperture_report(apertures, packets, tol=1e-8)
    assert not report.passed
    assert report.max_integral_error == pytest.approx(1.0, abs=1e-6)


def test_aperture_values_must_be_binary(grid):
    with pytest.raises(ValueError):
        wp.ApertureFunction(grid, np.full(grid.size, 0.5))


def test_orthogonalized_probe(grid, packets):
    probe = wp.orthogonalized(wp.gaussian_packet(28.0, 1.0, grid), tuple(packets))
    assert abs(wp.norm(probe) - 1.0) <= 1e-12
    for p in packets:
        assert abs(wp.inner(p, probe)) <= 1e-14


def test_csv_roundtrip(tmp_path, grid, packets):
    f = wp.GridFunction(grid, packets[0].values * np.exp(1.2j))
    path = tmp_path / "packet.csv"
    wp.write_csv(f, path)
    back = wp.read_csv(path)
    assert back.grid.same_as(grid)
    assert np.abs(back.values - f.values).max() == 0.0


def test_csv_requires_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n0.0,1.0,0.0\n")
    with pytest.raises(ValueError):
        wp.read_csv(path)
