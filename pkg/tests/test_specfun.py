"""
Tests for Chebyshev polynomials, Gauss-Chebyshev rules and the spectral relation.
"""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from stripcrack.models.quadrature import ChebKind
from stripcrack.services.specfun import (
    cauchy_transform_t,
    cheb_rule,
    cheb_t,
    cheb_t_table,
    cheb_u,
    cheb_u_table,
    chebyshev_coefficients,
    sin_product_integral,
)


def principal_value_oracle(m: int, y: float) -> float:
    """(1/pi) PV int T_m(eta) / ((eta - y) sqrt(1 - eta^2)) by singular-term subtraction."""
    density_at_y = cheb_t(m, y) / math.sqrt(1.0 - y * y)
    theta = math.acos(y)

    def regular(phi):
        return (math.cos(m * phi) - density_at_y * math.sin(phi)) / (math.cos(phi) - y)

    smooth, _ = quad(regular, 0.0, math.pi, points=[theta], epsabs=1e-13, epsrel=1e-13, limit=200)
    return (smooth + density_at_y * math.log((1.0 - y) / (1.0 + y))) / math.pi


class TestChebyshevPolynomials:
    """Test cases for cheb_t and cheb_u."""

    def test_first_kind_examples(self):
        """Test closed-form values of T_m."""
        assert cheb_t(0, 0.37) == 1.0
        assert cheb_t(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
        assert cheb_t(7, 0.3) == pytest.approx(math.cos(7 * math.acos(0.3)), abs=1e-14)

    def test_second_kind_examples(self):
        """Test closed-form values of U_m."""
        theta = math.acos(-0.2)
        assert cheb_u(0, 0.8) == 1.0
        assert cheb_u(2, 0.5) == pytest.approx(0.0, abs=1e-15)
        assert cheb_u(5, -0.2) == pytest.approx(math.sin(6 * theta) / math.sin(theta), abs=1e-14)
        assert cheb_u(9, 1.0) == pytest.approx(10.0)

    def test_rejects_outside_interval(self):
        """Test |x| > 1 is rejected."""
        with pytest.raises(ValueError):
            cheb_t(2, 1.5)
        with pytest.raises(ValueError):
            cheb_u(2, -1.01)

    def test_recurrence_matches_trigonometric_form(self):
        """Test recurrence against cos(m theta) and sin((m+1) theta)/sin(theta) up to m = 200."""
        x = np.linspace(-0.99, 0.99, 41)
        theta = np.arccos(x)
        m = np.arange(201)[:, None]
        np.testing.assert_allclose(cheb_t_table(200, x), np.cos(m * theta), atol=1e-12)
        u_trig = np.sin((m + 1) * theta) / np.sin(theta)
        # U_m grows like m; compare relative to that scale
        np.testing.assert_allclose(cheb_u_table(200, x) / (m + 1), u_trig / (m + 1), atol=1e-12)

    def test_tables_shape(self):
        """Test the table layout (degree first)."""
        x = np.zeros((3, 4))
        assert cheb_t_table(5, x).shape == (6, 3, 4)
        assert cheb_u_table(0, 0.2).shape == (1,)


class TestChebRule:
    """Test cases for Gauss-Chebyshev rules."""

    def test_single_node_first_kind(self):
        """Test kind-1, n=1 rule is node 0 with weight pi."""
        rule = cheb_rule(ChebKind.FIRST, 1)
        assert rule.nodes[0] == pytest.approx(0.0, abs=1e-16)
        assert rule.weights[0] == pytest.approx(math.pi)

    @pytest.mark.parametrize("n", [1, 5, 16, 57])
    def test_weight_sums(self, n):
        """Test weights sum to pi (kind 1) and pi/2 (kind 2)."""
        assert cheb_rule(ChebKind.FIRST, n).weights.sum() == pytest.approx(math.pi, rel=1e-14)
        assert cheb_rule(ChebKind.SECOND, n).weights.sum() == pytest.approx(math.pi / 2, rel=1e-14)

    def test_first_kind_orthogonality(self):
        """Test exact integration of T_i T_j against 1/sqrt(1-x^2) for i + j <= 2n - 1."""
        n = 16
        rule = cheb_rule(ChebKind.FIRST, n)
        t = cheb_t_table(2 * n - 1, rule.nodes)
        for i in range(n):
            for j in range(2 * n - i):
                value = np.sum(rule.weights * t[i] * t[j])
                expected = 0.0 if i != j else (math.pi if i == 0 else math.pi / 2)
                assert value == pytest.approx(expected, abs=1e-13)

    def test_second_kind_orthogonality(self):
        """Test sum w U_1 U_3 = 0 and sum w U_2 U_2 = pi/2 for n = 16."""
        rule = cheb_rule(ChebKind.SECOND, 16)
        u = cheb_u_table(3, rule.nodes)
        assert np.sum(rule.weights * u[1] * u[3]) == pytest.approx(0.0, abs=1e-14)
        assert np.sum(rule.weights * u[2] * u[2]) == pytest.approx(math.pi / 2, rel=1e-14)

    def test_accepts_integer_kind(self):
        """Test kinds may be given as 1 or 2."""
        assert cheb_rule(2, 3).kind is ChebKind.SECOND

    def test_rejects_empty_rule(self):
        """Test n = 0 is rejected."""
        with pytest.raises(ValueError):
            cheb_rule(ChebKind.FIRST, 0)

    def test_nodes_are_read_only(self):
        """Test cached rule arrays cannot be modified in place."""
        rule = cheb_rule(ChebKind.FIRST, 8)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0


class TestCauchyTransform:
    """Test cases for the spectral relation."""

    def test_examples(self):
        """Test U_0(0) = 1 and U_2(0.5) = 0."""
        assert cauchy_transform_t(1, 0.0) == 1.0
        assert cauchy_transform_t(3, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_matches_principal_value_quadrature(self):
        """Test m = 4, y = 0.25 against principal-value quadrature."""
        assert cauchy_transform_t(4, 0.25) == pytest.approx(principal_value_oracle(4, 0.25), abs=1e-8)

    def test_spectral_relation_sample(self):
        """Test m = 1..12 on 20 points of (-1, 1)."""
        for y in np.linspace(-0.95, 0.95, 20):
            for m in range(1, 13):
                assert cauchy_transform_t(m, y) == pytest.approx(principal_value_oracle(m, y), abs=1e-7)

    def test_rejects_bad_arguments(self):
        """Test m < 1 and |y| >= 1 are rejected."""
        with pytest.raises(ValueError):
            cauchy_transform_t(0, 0.1)
        with pytest.raises(ValueError):
            cauchy_transform_t(2, 1.0)


class TestDiscreteTransforms:
    """Test cases for chebyshev_coefficients and sin_product_integral."""

    def test_recovers_polynomial_coefficients(self):
        """Test the transform of a sampled Chebyshev series returns its coefficients."""
        n = 12
        rule = cheb_rule(ChebKind.FIRST, n)
        coeffs = np.array([0.5, -1.0, 0.0, 2.0j, 0.25])
        values = coeffs @ cheb_t_table(4, rule.nodes)
        recovered = chebyshev_coefficients(values)
        np.testing.assert_allclose(recovered[:5], coeffs, atol=1e-14)
        np.testing.assert_allclose(recovered[5:], 0.0, atol=1e-14)

    def test_highest_degree_vanishes_at_nodes(self):
        """Test c_n is zero since T_n vanishes at the n kind-1 nodes."""
        values = np.random.default_rng(3).normal(size=9)
        assert chebyshev_coefficients(values, m_max=9)[9] == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("n,m", [(1, 1), (1, 3), (2, 4), (5, 5), (3, 2), (7, 1)])
    def test_sin_product_integral(self, n, m):
        """Test the closed form against adaptive quadrature."""
        expected, _ = quad(lambda t: math.sin(n * t) * math.sin(m * t) * math.sin(t), 0.0, math.pi)
        assert sin_product_integral(n, m) == pytest.approx(expected, abs=1e-13)
