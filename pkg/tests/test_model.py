"""Tests for problem instances, sensor statistics, and constellation geometry."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noma_fusion.model import (
    SystemParams,
    conditional_pmf,
    super_constellation,
)

from conftest import random_params


class TestSystemParams:
    def test_valid_instance(self):
        p = SystemParams(0.05, 0.1, 2.0, 1.0, 0.5)
        assert p.sigma == math.sqrt(0.25)

    @pytest.mark.parametrize(
        "eps1,eps2",
        [(0.1, 0.05), (0.05, 0.05), (0.0, 0.1), (0.05, 0.5), (-0.1, 0.2), (0.3, 0.7)],
    )
    def test_rejects_bad_crossovers(self, eps1, eps2):
        with pytest.raises(ValueError, match="eps1"):
            SystemParams(eps1, eps2, 1.0, 1.0, 1.0)

    @pytest.mark.parametrize("field,value", [("p1", 0.0), ("p2", -1.0), ("n0", 0.0), ("n0", math.inf)])
    def test_rejects_bad_scalars(self, field, value):
        kwargs = dict(eps1=0.05, eps2=0.1, p1=1.0, p2=1.0, n0=1.0)
        kwargs[field] = value
        with pytest.raises(ValueError, match=field):
            SystemParams(**kwargs)


class TestConditionalPmf:
    def test_known_entries(self):
        pmf = conditional_pmf(0.05, 0.1)
        assert pmf.p(0, 0, 0) == pytest.approx(0.855, abs=1e-15)
        assert pmf.p(1, 1, 0) == pytest.approx(0.005, abs=1e-15)
        assert pmf.p(0, 0, 1) == pmf.p(1, 1, 0)

    def test_hand_computed_cross_term(self):
        # 0.85 * 0.17 for the (better sensor right, weaker sensor flipped) cell
        pmf = conditional_pmf(0.15, 0.17)
        assert pmf.p(0, 1, 0) == pytest.approx(0.1445, abs=1e-15)

    @given(
        eps1=st.floats(0.001, 0.45),
        gap=st.floats(0.001, 0.4),
    )
    @settings(max_examples=200, deadline=None)
    def test_normalization_and_symmetry(self, eps1, gap):
        eps2 = min(eps1 + gap, 0.4999)
        if not eps1 < eps2 < 0.5:
            return
        pmf = conditional_pmf(eps1, eps2)
        for i in (0, 1):
            assert abs(pmf.given(i).sum() - 1.0) < 1e-12
        for l in (0, 1):
            for m in (0, 1):
                assert pmf.p(l, m, 0) == pmf.p(1 - l, 1 - m, 1)  # exact
                assert 0.0 < pmf.p(l, m, 0) < 1.0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            conditional_pmf(0.2, 0.1)


class TestSuperConstellation:
    def test_quarter_turn_points(self):
        p = SystemParams(0.05, 0.1, 1.0, 1.5, 1.0)
        c = super_constellation(p, math.pi / 2)
        assert c.a11 == pytest.approx(1.0 + 1j * math.sqrt(1.5), abs=1e-12)
        assert c.a00 == pytest.approx(-1.0 - 1j * math.sqrt(1.5), abs=1e-12)

    def test_zero_rotation_collapses_to_real_axis(self):
        p = SystemParams(0.05, 0.1, 2.0, 1.0, 1.0)
        c = super_constellation(p, 0.0)
        assert c.a11 == pytest.approx(math.sqrt(2.0) + 1.0)
        assert c.a11.imag == 0.0

    def test_third_turn_point(self):
        p = SystemParams(0.05, 0.1, 1.0, 2.0, 1.0)
        c = super_constellation(p, math.pi / 3)
        expected = -1.0 + math.sqrt(2.0) * (0.5 + 1j * math.sqrt(3.0) / 2.0)
        assert c.a01 == pytest.approx(expected, abs=1e-12)

    def test_largest_magnitude_at_zero_rotation(self):
        p = SystemParams(0.05, 0.1, 2.0, 1.5, 1.0)
        c = super_constellation(p, 0.0)
        mags = sorted(abs(c.point(l, m)) for l in (0, 1) for m in (0, 1))
        assert abs(c.a11) == mags[-1]

    def test_rejects_non_finite_theta(self):
        p = SystemParams(0.05, 0.1, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            super_constellation(p, math.nan)

    def test_antipodal_and_magnitude_invariants(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            params = random_params(rng)
            theta = rng.uniform(-2 * math.pi, 2 * math.pi)
            c = super_constellation(params, theta)
            assert c.a11 == -c.a00  # exact by construction
            assert c.a01 == -c.a10
            for l in (0, 1):
                for m in (0, 1):
                    expect = (
                        params.p1
                        + params.p2
                        + (2 * l - 1) * (2 * m - 1) * 2 * math.sqrt(params.p1 * params.p2) * math.cos(theta)
                    )
                    assert abs(abs(c.point(l, m)) ** 2 - expect) < 1e-12 * max(1.0, expect)

    def test_point_order_matches_indexing(self):
        p = SystemParams(0.05, 0.1, 1.0, 2.0, 1.0)
        c = super_constellation(p, 0.7)
        pts = c.points()
        assert pts[0] == c.a00 and pts[1] == c.a01 and pts[2] == c.a10 and pts[3] == c.a11
