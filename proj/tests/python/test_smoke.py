"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import hycurv as hc


@pytest.fixture(scope="module")
def sphere():
    space = hc.SpaceForm(-1.0, 3)
    return hc.catalog_build(hc.CatalogSpec(hc.Family.geodesic_sphere, 1.0), space)


def test_space_basics():
    space = hc.SpaceForm(-1.0, 3)
    assert space.b() == 1.0
    assert space.ambient_dim() == 4  # hyperbolic ambient H^{n+1}
    o = hc.origin(space)
    p = hc.make_point(space, np.array([math.cosh(1.0), math.sinh(1.0), 0, 0, 0]))
    assert hc.geodesic_distance(space, o, p) == pytest.approx(1.0, abs=1e-12)


def test_sphere_curvature(sphere):
    cp = sphere.curvature(np.array([1.0, 1.0, 1.0]))
    assert cp.H == pytest.approx(1.0 / math.tanh(1.0), rel=1e-9)
    assert cp.principal == pytest.approx([1.0 / math.tanh(1.0)] * 3, rel=1e-9)
    assert cp.scalar_curvature == pytest.approx(-1.0 + 1.0 / math.tanh(1.0) ** 2,
                                                rel=1e-9)


def test_sphere_integral_closed_form(sphere):
    center = hc.canonical_center(sphere, 0.0)
    est = hc.curvature_integral(sphere, center, 2.0, rel_tol=1e-6, budget=400000)
    area = 2.0 * math.pi**2 * math.sinh(1.0) ** 3
    exact = math.cosh(1.0) * area
    assert est.converged
    assert est.value == pytest.approx(exact, rel=1e-6)


def test_hypothesis_and_monotonicity(sphere):
    rep = hc.hypothesis_report(sphere)
    assert rep.admissible
    assert rep.gamma_min == pytest.approx(2.0 / math.tanh(1.0), rel=1e-6)

    center = hc.canonical_center(sphere, 0.0)
    series = hc.phi_series(sphere, center, rep.gamma_min,
                           np.array([1.5, 2.0, 2.5, 3.0]),
                           rel_tol=1e-4, budget=50000)
    assert series.complete
    verdict = hc.verify_monotonicity(series)
    assert verdict.passed
    assert all(np.diff(series.phi) > 0)


def test_corollary_bound(sphere):
    center = hc.canonical_center(sphere, 0.0)
    rep = hc.hypothesis_report(sphere)
    result = hc.corollary_lower_bound(sphere, center, rep.gamma_min, 1.2,
                                      np.array([1.5, 2.0]),
                                      rel_tol=1e-4, budget=50000)
    assert result.verdict.passed
    assert np.all(np.asarray(result.bound_B) > 0)
    assert np.all(np.asarray(result.integral_H) >= np.asarray(result.bound_B))


def test_divergence_criterion():
    assert not hc.divergence_criterion(hc.SpaceForm(-1.0, 3), 0.0).applies
    crit = hc.divergence_criterion(hc.SpaceForm(-1.0, 4), 0.5)
    assert crit.applies
    assert crit.rate == pytest.approx(0.25)
