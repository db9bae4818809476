# Tests for intersection numbers on surfaces in P^1 x P^n

import numpy as np
import pytest

from .. import intersect
from ..intersect import AmbientRing


def _exception_message_starts_with(excinfo, message_body):
    return excinfo.value.args[0].startswith(message_body)


def test_ring_relations():
    ring = AmbientRing(2)
    assert (ring.D * ring.D).is_zero
    assert (ring.B * ring.B * ring.B).is_zero
    assert ring.D * ring.B * ring.B == ring.point_class()
    c = ring.divisor(2, 1)
    # (2D + B)^2 = 4 DB + B^2
    assert c * c == ring.monomial(1, 1, 4) + ring.monomial(0, 2)
    assert c.degree == 1
    assert not (c + ring.one()).is_homogeneous


def test_examples():
    spec = intersect.hypersurface_spec(1)
    A = spec.polarization(10)
    assert intersect.intersection_number(spec, A, spec.E) == 3
    assert intersect.self_intersection(spec, A) == 61

    spec = intersect.complete_intersection_spec(1, 1)
    A = spec.polarization(23)
    assert intersect.intersection_number(spec, A, spec.E) == 4
    assert intersect.self_intersection(spec, A) == 188

    spec = intersect.double_cover_spec()
    assert intersect.self_intersection(spec, spec.polarization(10)) == 40
    assert intersect.self_intersection(spec, spec.E) == 0


def test_family_grid():
    for m in range(1, 6):
        dc = intersect.double_cover_spec()
        assert intersect.intersection_number(dc, dc.polarization(m), dc.E) == 2
        assert intersect.self_intersection(dc, dc.polarization(m)) == 4 * m
        for a in range(1, 6):
            hs = intersect.hypersurface_spec(a)
            assert intersect.intersection_number(hs, hs.polarization(m), hs.E) == 3
            assert intersect.self_intersection(hs, hs.polarization(m)) == 6 * m + a
            for b in range(1, 6):
                ci = intersect.complete_intersection_spec(a, b)
                assert intersect.intersection_number(ci, ci.polarization(m), ci.E) == 4
                assert intersect.self_intersection(ci, ci.polarization(m)) == 2 * a + 2 * b + 8 * m


def test_degree_mismatch():
    spec = intersect.hypersurface_spec(1)
    ring = spec.ambient
    with pytest.raises(intersect.DegreeMismatch) as excinfo:
        intersect.intersection_number(spec, ring.D * ring.B, ring.B)
    assert _exception_message_starts_with(excinfo, "Product has degree 4 but the top degree")

    with pytest.raises(intersect.DegreeMismatch) as excinfo:
        intersect.SubvarietySpec(AmbientRing(3), [AmbientRing(3).divisor(1, 2)])
    assert _exception_message_starts_with(excinfo, "Cutting classes have total codimension 1")

    with pytest.raises(ValueError):
        intersect.intersection_number(spec, AmbientRing(3).D, ring.B)


def test_coefficients_are_python_ints():
    c = AmbientRing(3).divisor(5, 2)
    assert c.coefficients.dtype == object
    assert c.coefficients.shape == (2, 4)
    assert all(type(v) is int for v in (c * c).coefficients.ravel())

    # int64 coefficients are converted on the way in
    c = intersect.CycleClass(AmbientRing(1), np.array([[1, 2], [3, 4]], dtype=np.int64))
    assert all(type(v) is int for v in c.coefficients.ravel())


@pytest.mark.parametrize('m', [2 * 10**18, 10**30])
def test_large_polarization(m):
    dc = intersect.double_cover_spec()
    assert intersect.self_intersection(dc, dc.polarization(m)) == 4 * m
    hs = intersect.hypersurface_spec(1)
    assert intersect.self_intersection(hs, hs.polarization(m)) == 6 * m + 1
    ci = intersect.complete_intersection_spec(1, 1)
    assert intersect.self_intersection(ci, ci.polarization(m)) == 8 * m + 4
    assert intersect.intersection_number(ci, ci.polarization(m), ci.E) == 4


def _surfaces():
    yield intersect.double_cover_spec()
    for a in range(1, 4):
        yield intersect.hypersurface_spec(a)
        for b in range(1, 4):
            yield intersect.complete_intersection_spec(a, b)


def test_intersection_form_is_symmetric_and_bilinear():
    rng = np.random.default_rng(2024)
    for spec in _surfaces():
        ring = spec.ambient
        for trial in range(10):
            x, y, z = (ring.divisor(int(d), int(b)) for d, b in rng.integers(-20, 21, size=(3, 2)))
            k = int(rng.integers(-5, 6))
            assert intersect.intersection_number(spec, x, y) == intersect.intersection_number(spec, y, x)
            assert (intersect.intersection_number(spec, x + y, z) ==
                    intersect.intersection_number(spec, x, z) + intersect.intersection_number(spec, y, z))
            assert intersect.intersection_number(spec, x * k, y) == k * intersect.intersection_number(spec, x, y)
