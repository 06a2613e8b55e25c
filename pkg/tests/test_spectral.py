import numpy as np
import pytest

from synaptica import (
    ascending_approx,
    carrier,
    commutes,
    eigenprojection_at,
    leq,
    order_unit_norm,
    random_element,
    random_projection,
    resolution_at,
    riemann_approx,
    simple_decompose,
    spectral_bounds,
    spectral_resolution,
    spectrally_commutes,
    spectrum,
)
from synaptica.spectral import uniform_partition

from conftest import assert_close, mat


def test_bounds_examples(m2):
    assert spectral_bounds(m2.unit) == (1.0, 1.0)
    assert spectral_bounds(m2.diag(-3, 2)) == (-3.0, 2.0)
    assert spectral_bounds(random_projection(3, 1, 1)) == pytest.approx((0.0, 1.0), abs=1e-12)


def test_resolution_examples(m4):
    a = m4.diag(1, 2, 2, 5)
    assert_close(resolution_at(a, 5), m4.unit)
    assert_close(resolution_at(a, 7), m4.unit)
    assert_close(resolution_at(a, 0.9), m4.zero)
    assert_close(resolution_at(a, 2), m4.diag(1, 1, 1, 0))
    assert_close(resolution_at(a, 3.5), m4.diag(1, 1, 1, 0))


def test_eigenprojection_examples(m2, m4):
    assert_close(eigenprojection_at(m2.unit, 1), m2.unit)
    a = m4.diag(1, 2, 2, 5)
    assert_close(eigenprojection_at(a, 2), m4.diag(0, 1, 1, 0))
    assert_close(eigenprojection_at(a, 3), m4.zero)


def test_resolution_lookup_matches_direct():
    a = random_element(6, 3, (-2, 2))
    res = spectral_resolution(a)
    for lam in np.linspace(-2.5, 2.5, 41):
        assert_close(res.at(lam), resolution_at(a, lam), 1e-9)


def test_resolution_properties():
    a = random_element(6, 8, (-2, 2))
    res = spectral_resolution(a)
    lo, hi = res.bounds
    ps = res.projections_at
    for p, q in zip(ps, ps[1:]):
        assert leq(p, q)
    assert_close(ps[-1], a.model.unit, 1e-12)
    for lam, p in zip(res.breakpoints, ps):
        assert leq(p * (a - lam) * p, 0)
        assert leq(0, (1 - p) * (a - lam) * (1 - p))


def test_spectrum_examples(m2, m3):
    np.testing.assert_allclose(spectrum(random_projection(3, 2, 3)), [0, 1], atol=1e-12)
    np.testing.assert_allclose(spectrum(m2.diag(2, -3)), [-3, 2])
    np.testing.assert_allclose(spectrum(m3.zero), [0])


def test_spectrum_clusters_close_eigenvalues(m2):
    np.testing.assert_allclose(spectrum(m2.diag(1, 1 + 1e-9)), [1], atol=1e-8)


def test_riemann_exact_at_spectrum(m4):
    a = m4.diag(1, 2, 2, 5)
    r = riemann_approx(a, [0, 1.5, 2, 5], [1, 2, 5])
    assert order_unit_norm(a - r.value) <= 1e-9


def test_riemann_midpoint_half_mesh(m2):
    a = m2.diag(0, 1)
    r = riemann_approx(a, [-0.25, 0.25, 0.75, 1], [0.0, 0.5, 0.875])
    assert r.mesh == 0.5
    assert order_unit_norm(a - r.value) == pytest.approx(0.125)


def test_riemann_rejects_bad_partitions(m2):
    a = m2.diag(0, 1)
    with pytest.raises(ValueError):
        riemann_approx(a, [0, 0.5, 1], [0, 1])
    with pytest.raises(ValueError):
        riemann_approx(a, [-1, 0.5, 0.9], [0, 0.7])
    with pytest.raises(ValueError):
        riemann_approx(a, [-1, 0.5, 1], [0.6, 0.7])


def test_riemann_error_halves_with_mesh():
    a = random_element(8, 12, (-1, 1))
    lo, hi = spectral_bounds(a)
    for frac in (1, 0.5, 0.25, 0.125):
        mesh = frac * (hi - lo)
        pts = uniform_partition(a, mesh)
        tags = [0.5 * (x + y) for x, y in zip(pts, pts[1:])]
        r = riemann_approx(a, pts, tags)
        assert order_unit_norm(a - r.value) <= r.mesh <= mesh + 1e-12


def test_ascending_example(m2):
    a = m2.diag(0, 1)
    a1 = ascending_approx(a, 1)[0]
    assert_close(a1, m2.diag(0, 0.5))
    seq = ascending_approx(a, 6)
    for x, y in zip(seq, seq[1:]):
        assert leq(x, y)
    assert_close(seq[-1], m2.diag(0, 1 - 2 ** -6))


def test_ascending_simple_exact(m4):
    a = m4.diag(0, 0.25, 0.5, 1)
    seq = ascending_approx(a, 40)
    # cells are closed on the right, so breakpoints on the dyadic grid lag by one width
    assert_close(seq[1], m4.diag(0, 0, 0.25, 0.75))
    assert order_unit_norm(a - seq[-1]) <= 1e-9


def test_simple_decompose_examples(m3):
    p = random_projection(3, 1, 9)
    d = simple_decompose(p)
    np.testing.assert_allclose(d.coefficients, [0, 1], atol=1e-12)
    assert_close(d.projections[0], 1 - p, 1e-12)
    assert_close(d.projections[1], p, 1e-12)
    d = simple_decompose(m3.diag(2, 2, -1))
    np.testing.assert_allclose(d.coefficients, [-1, 2], atol=1e-12)
    assert_close(d.projections[0], m3.diag(0, 0, 1))
    assert_close(d.projections[1], m3.diag(1, 1, 0))


def test_simple_decompose_round_trip():
    a = random_element(6, 5, (-2, 2))
    d = simple_decompose(a)
    assert_close(d.value(), a, 1e-12)
    assert order_unit_norm(a) == pytest.approx(max(abs(x) for x in d.coefficients))
    assert_close(d.carrier(), carrier(a), 1e-12)
    again = simple_decompose(d.value())
    np.testing.assert_allclose(again.coefficients, d.coefficients, atol=1e-12)


def test_spectrally_commutes_examples(m3):
    a = random_element(3, 2)
    assert spectrally_commutes(a * a, a)
    b = random_element(3, 77)
    assert not spectrally_commutes(b, a) and not commutes(a, b)
    assert spectrally_commutes(m3.diag(1, 2, 3), m3.diag(3, 2, 1))
