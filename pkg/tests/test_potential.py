import cmath
import math

import numpy as np
import pytest

from dpotunnel import potential as pot
from dpotunnel.errors import BelowThresholdWarning, BoundarySingularity, ThresholdDegeneracy
from dpotunnel.meanfield import pi_factor
from support import draw_admissible_ct

P = pot.PhaseSpacePoint


def fd_hessian(b, bp, ct, n, h=1e-5):
    """Central finite differences of the potential on the planar patch."""
    def f(x, y):
        return pot.potential_value(P(x, y), ct, n)

    h11 = (f(b + h, bp) - 2 * f(b, bp) + f(b - h, bp)) / h**2
    h22 = (f(b, bp + h) - 2 * f(b, bp) + f(b, bp - h)) / h**2
    h12 = (f(b + h, bp + h) - f(b + h, bp - h) - f(b - h, bp + h) + f(b - h, bp - h)) / (4 * h**2)
    return h11, h12, h22


class TestPotentialValue:
    def test_origin_is_zero(self):
        assert pot.potential_value(P(0j, 0j), 0.4 + 0.2j, 7.0, 0.1 + 0.3j) == 0j

    def test_real_classical_point(self):
        # closed form -2n[(1 - ct) + ct ln(ct)] at the real classical point
        val = pot.potential_value(P(cmath.sqrt(0.5), cmath.sqrt(0.5)), 0.5, 10.0)
        expected = -2.0 * 10.0 * ((1 - 0.5) + 0.5 * math.log(0.5))
        assert expected == pytest.approx(-3.0685281944005469, abs=1e-12)
        assert val.real == pytest.approx(expected, abs=1e-12)
        assert abs(val.imag) < 1e-14

    def test_boundary_singularity(self):
        for bad in (P(1.0, 0.2), P(-1.0, 0.2), P(0.2, 1.0), P(0.2, -1.0)):
            with pytest.raises(BoundarySingularity):
                pot.potential_value(bad, 0.5, 3.0)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            ct = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            d = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
            b = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.2, 0.2))
            bp = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.2, 0.2))
            g1, g2 = pot.potential_gradient(P(b, bp), ct, 3.0, d)
            h = 1e-6
            fd1 = (pot.potential_value(P(b + h, bp), ct, 3.0, d)
                   - pot.potential_value(P(b - h, bp), ct, 3.0, d)) / (2 * h)
            fd2 = (pot.potential_value(P(b, bp + h), ct, 3.0, d)
                   - pot.potential_value(P(b, bp - h), ct, 3.0, d)) / (2 * h)
            assert g1 == pytest.approx(fd1, rel=1e-6, abs=1e-8)
            assert g2 == pytest.approx(fd2, rel=1e-6, abs=1e-8)


class TestSteadyStateWeight:
    def test_origin_weight_is_one(self):
        assert pot.steady_state_weight(P(0j, 0j), 0.4 + 0.1j, 5.0) == 1.0

    def test_vanishing_boundary(self):
        # Re(c_tilde) > 0: the weight vanishes at the box edge
        assert pot.steady_state_weight(P(1.0 + 0j, 0.3), 0.5 + 0.1j, 5.0) == 0j
        near = abs(pot.steady_state_weight(P(0.999999, 0.0), 0.5, 5.0))
        assert near < 1e-3

    def test_divergent_boundary_raises(self):
        with pytest.raises(BoundarySingularity):
            pot.steady_state_weight(P(1.0 + 0j, 0.3), -0.5 + 0.1j, 5.0)

    def test_log_weight_matches_potential(self):
        # -ln(weight) - Phi is constant (zero) on a branch-consistent domain
        rng = np.random.default_rng(21)
        ct, n = 0.33 + 0.17j, 3.0
        for _ in range(100):
            b = rng.uniform(-0.95, 0.95)
            bp = rng.uniform(-0.95, 0.95)
            w = pot.steady_state_weight(P(b, bp), ct, n)
            phi = pot.potential_value(P(b, bp), ct, n)
            assert -cmath.log(w) - phi == pytest.approx(0.0, abs=1e-10)


class TestStationaryPoints4D:
    def test_real_coupling_families(self):
        pts = pot.stationary_points_4d(0.5 + 0j, 10.0)
        by_kind = {}
        for s in pts:
            by_kind.setdefault(s.kind, []).append(s)
        assert len(by_kind[pot.PointKind.ORIGIN]) == 1
        cl = sorted(by_kind[pot.PointKind.CLASSICAL], key=lambda s: s.point.beta.real)
        qu = sorted(by_kind[pot.PointKind.QUANTUM], key=lambda s: s.point.beta.real)
        root_c = math.sqrt(0.5)
        root_q = math.sqrt(1.5)
        assert cl[1].point.beta == pytest.approx(root_c, abs=1e-14)
        assert cl[1].point.beta_plus == pytest.approx(root_c, abs=1e-14)
        assert qu[1].point.beta == pytest.approx(root_q, abs=1e-14)
        assert qu[1].point.beta_plus == pytest.approx(-root_q, abs=1e-14)

    def test_origin_determinant_and_saddle(self):
        pts = pot.stationary_points_4d(0.5 + 0j, 10.0)
        origin = next(s for s in pts if s.kind is pot.PointKind.ORIGIN)
        assert origin.hessian_det == pytest.approx(400.0 * (0.25 - 1.0), rel=1e-14)
        assert origin.classification is pot.Classification.SADDLE

    def test_complex_coupling_classical_minimum(self):
        pts = pot.stationary_points_4d(0.33 + 0.17j, 3.0)
        for s in pts:
            if s.kind is pot.PointKind.CLASSICAL:
                assert s.hessian_det > 0
                assert s.hessian[0, 0].real > 0
                assert s.classification is pot.Classification.MINIMUM

    def test_gradient_residuals_and_realness(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            ct = draw_admissible_ct(rng)
            n = rng.uniform(1.0, 12.0)
            for s in pot.stationary_points_4d(ct, n):
                g1, g2 = pot.potential_gradient(s.point, ct, n)
                assert max(abs(g1), abs(g2)) < 1e-10
                if s.kind is not pot.PointKind.ORIGIN:
                    val = pot.potential_value(s.point, ct, n)
                    assert abs(val.imag) < 1e-10
                    assert s.phi_value == pytest.approx(val.real, abs=1e-10)

    def test_hessian_matches_finite_differences(self):
        rng = np.random.default_rng(32)
        for _ in range(25):
            ct = draw_admissible_ct(rng)
            n = rng.uniform(1.0, 8.0)
            for s in pot.stationary_points_4d(ct, n):
                h11, h12, h22 = fd_hessian(s.point.beta, s.point.beta_plus, ct, n)
                assert h11 == pytest.approx(s.hessian[0, 0], rel=1e-5)
                assert h22 == pytest.approx(s.hessian[1, 1], rel=1e-5)
                assert h12 == pytest.approx(s.hessian[0, 1], rel=1e-5)

    def test_determinant_closed_forms(self):
        rng = np.random.default_rng(33)
        for _ in range(100):
            ct = draw_admissible_ct(rng)
            n = rng.uniform(1.0, 12.0)
            for s in pot.stationary_points_4d(ct, n):
                closed = pot.hessian_det_closed_form(s.kind, ct, n)
                assert s.hessian_det == pytest.approx(closed, rel=1e-10)

    def test_quantum_points_outrank_classical(self):
        # quantum minima lie farther from the origin than the classical ones
        rng = np.random.default_rng(34)
        for _ in range(200):
            ct = draw_admissible_ct(rng)
            p = pi_factor(ct)
            assert p + ct.real > p - ct.real  # |beta_q|^2 vs |beta_c|^2

    def test_quantum_points_outside_unit_box_near_real_coupling(self):
        # outside the unit box throughout the disk |c_tilde - 1| < 1
        rng = np.random.default_rng(35)
        for _ in range(200):
            ct = draw_admissible_ct(rng)
            if abs(ct - 1.0) >= 1.0:
                continue
            pts = pot.stationary_points_4d(ct, 3.0)
            for s in pts:
                if s.kind is pot.PointKind.QUANTUM:
                    assert abs(s.point.beta) > 1.0

    def test_below_threshold_only_origin(self):
        with pytest.warns(BelowThresholdWarning):
            pts = pot.stationary_points_4d(1.5 + 0.3j, 5.0)
        assert len(pts) == 1
        assert pts[0].kind is pot.PointKind.ORIGIN

    def test_threshold_degeneracy(self):
        with pytest.raises(ThresholdDegeneracy):
            pot.stationary_points_4d(cmath.exp(0.3j), 5.0)


class TestManifold:
    def test_center(self):
        mp = pot.manifold_point(0.0, 0.0, 0.4, 0.01)
        assert mp.beta == 0j and mp.beta_plus == 0j

    def test_real_boundary_exact(self):
        for x, y in ((1.0, 0.3), (-1.0, 0.7), (0.2, 1.0), (0.5, -1.0)):
            mp = pot.manifold_point(x, y, 0.4, 0.01)
            assert mp.beta == complex(x, 0.0)
            assert mp.beta_plus == complex(y, 0.0)

    def test_interior_tilt_preserved(self):
        mp = pot.manifold_point(0.5, 0.5, 0.4, 0.01)
        ratio = mp.beta.imag / (mp.beta.real * math.tan(0.4))
        assert 0.99 <= ratio <= 1.0

    def test_passes_near_classical_point(self):
        ct, n = 0.33 + 0.17j, 3.0
        tilt = pot.classical_tilt(ct)
        cls = [s for s in pot.stationary_points_4d(ct, n) if s.kind is pot.PointKind.CLASSICAL]
        target = max((s.point.beta for s in cls), key=lambda z: z.real)
        x = abs(target) * math.cos(tilt)
        mp = pot.manifold_point(x, x, tilt, 1e-6)
        assert abs(mp.beta - target) < 1e-3

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            pot.manifold_point(1.2, 0.0, 0.3, 0.01)
        with pytest.raises(ValueError):
            pot.manifold_point(0.2, 0.0, 0.3, 0.0)
