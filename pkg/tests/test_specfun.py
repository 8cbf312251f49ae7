"""
特殊函数单元测试
"""

import cmath
import math

import numpy as np
import pytest

from src.errors import BranchCutInput, NegativeDegree, NonConvergence, ParameterPole, PoleAtNonPositiveInteger
from src.specfun import _generalized_binomial, _jacobi_explicit, gamma, jacobi_p, kummer_m, log_gamma, whittaker_m


class TestLogGamma:
    """log-Gamma 测试类"""

    def test_unit_argument(self):
        """测试 Γ(1) = 1"""
        assert abs(log_gamma(1)) < 1e-13

    def test_factorial(self):
        """测试 Γ(5) = 24"""
        assert log_gamma(5).real == pytest.approx(math.log(24), rel=1e-13)

    def test_half_plus_i(self):
        """测试 |Γ(1/2+i)|² = π/cosh π"""
        value = abs(gamma(0.5 + 1j)) ** 2
        assert value == pytest.approx(math.pi / math.cosh(math.pi), rel=1e-12)
        assert value == pytest.approx(0.271008, abs=1e-6)

    def test_reflection_branch(self):
        """测试 Re z < 1/2 的反射公式"""
        assert gamma(-0.5).real == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-12)

    def test_pole(self):
        """测试非正整数极点"""
        with pytest.raises(PoleAtNonPositiveInteger):
            log_gamma(0)
        with pytest.raises(PoleAtNonPositiveInteger):
            log_gamma(-3)

    def test_agrees_with_math(self):
        """测试实轴上与 math.lgamma 一致"""
        for x in (0.3, 1.7, 12.5, 40.0):
            assert log_gamma(x).real == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-13)


class TestKummer:
    """Kummer M 函数测试类"""

    def test_zero_argument(self):
        """测试 M(a,b,0)=1"""
        assert kummer_m(0.3 + 2j, 1.7, 0) == 1

    def test_binomial_collapse(self):
        """测试 M(a,a,x)=e^x"""
        for x in (-3.0, 0.5, 4.0):
            assert kummer_m(1.3, 1.3, x).real == pytest.approx(math.exp(x), rel=1e-12)

    def test_polynomial_case(self):
        """测试 M(-2,1,1) = -0.5"""
        assert kummer_m(-2, 1, 1).real == pytest.approx(-0.5, abs=1e-14)

    def test_polynomial_large_argument(self):
        """测试多项式情形不受 |z| 限制"""
        assert kummer_m(-1, 2, 200).real == pytest.approx(1 - 100, rel=1e-14)

    def test_closed_form(self):
        """测试 M(1,2,z) = (e^z-1)/z"""
        assert kummer_m(1, 2, 2).real == pytest.approx((math.e ** 2 - 1) / 2, rel=1e-12)

    @pytest.mark.parametrize('a', [0.3, 1.7, -2.5, 2.0 + 1.0j])
    @pytest.mark.parametrize('b', [1.5, 3.2, 0.5 - 2.0j])
    @pytest.mark.parametrize('z', [0.5, -3.0, 4.0 + 2.0j, -6.0j])
    def test_contiguous_relation(self, a, b, z):
        """测试 b·M(a,b,z) - b·M(a-1,b,z) - z·M(a,b+1,z) = 0"""
        terms = (b * kummer_m(a, b, z), b * kummer_m(a - 1, b, z), z * kummer_m(a, b + 1, z))
        scale = max(abs(t) for t in terms)
        assert abs(terms[0] - terms[1] - terms[2]) <= 1e-10 * scale

    def test_parameter_pole(self):
        """测试 b 为非正整数"""
        with pytest.raises(ParameterPole):
            kummer_m(0.5, -1, 1.0)

    def test_out_of_range(self):
        """测试超出支持范围"""
        with pytest.raises(NonConvergence):
            kummer_m(0.5, 1.5, 80.0)


class TestJacobi:
    """Jacobi 多项式测试类"""

    def test_degree_zero(self):
        """测试 P_0 = 1"""
        assert jacobi_p(0, 0.3, -0.2, 0.7) == 1.0

    def test_degree_one(self):
        """测试 P_1 的显式形式"""
        alpha, beta, x = 0.3, -0.2, 0.4
        expected = (alpha - beta) / 2 + (alpha + beta + 2) * x / 2
        assert jacobi_p(1, alpha, beta, x) == pytest.approx(expected, rel=1e-14)

    def test_legendre(self):
        """测试 Legendre 情形 P_2(0.5) = -0.125"""
        assert jacobi_p(2, 0.0, 0.0, 0.5) == pytest.approx(-0.125, abs=1e-14)

    def test_degree_two_closed_form(self):
        """测试 n=2 显式形式"""
        alpha, beta, x = 0.4, -0.1, 0.3
        t = x - 1
        expected = ((alpha + 1) * (alpha + 2) / 2 + (alpha + 2) * (alpha + beta + 3) * t / 2
                    + (alpha + beta + 3) * (alpha + beta + 4) * t ** 2 / 8)
        assert jacobi_p(2, alpha, beta, x) == pytest.approx(expected, rel=1e-12)

    def test_array_input(self):
        """测试数组输入"""
        x = np.linspace(-1, 1, 5)
        values = jacobi_p(3, 0.0, 0.0, x)
        assert values.shape == x.shape
        np.testing.assert_allclose(values, (5 * x ** 3 - 3 * x) / 2, atol=1e-13)

    @pytest.mark.parametrize('n', [2, 3, 5, 8, 13, 20])
    @pytest.mark.parametrize('alpha', [-0.4, 0.0, 1.5, 5.0])
    @pytest.mark.parametrize('beta', [-0.4, 0.7, 5.0])
    def test_recurrence_matches_explicit_sum(self, n, alpha, beta):
        """测试三项递推与显式求和在 [-1, 1] 上一致"""
        x = np.linspace(-1.0, 1.0, 41)
        explicit = _jacobi_explicit(n, alpha, beta, x)
        scale = np.max(np.abs(explicit))
        np.testing.assert_allclose(jacobi_p(n, alpha, beta, x), explicit, rtol=1e-9, atol=1e-10 * scale)

    @pytest.mark.parametrize('n', [0, 1, 7, 20])
    def test_endpoint_value(self, n):
        """测试 P_n(1) = C(n+α, n)"""
        alpha, beta = 1.5, -0.4
        assert jacobi_p(n, alpha, beta, 1.0) == pytest.approx(_generalized_binomial(n + alpha, n), rel=1e-11)

    def test_negative_degree(self):
        """测试负次数"""
        with pytest.raises(NegativeDegree):
            jacobi_p(-1, 0.0, 0.0, 0.5)


class TestWhittaker:
    """Whittaker M 函数测试类"""

    def test_small_argument_limit(self):
        """测试 z→0 时 M/(z^{β+1/2} e^{-z/2}) → 1"""
        z = 1e-8
        beta = 0.7
        ratio = whittaker_m(0.3, beta, z) / (z ** (beta + 0.5) * math.exp(-z / 2))
        assert abs(ratio - 1) < 1e-6

    def test_closed_form(self):
        """测试 M_{0,1/2}(2) = e - 1/e"""
        assert whittaker_m(0, 0.5, 2).real == pytest.approx(math.e - 1 / math.e, rel=1e-12)

    def test_imaginary_parameters_finite(self):
        """测试纯虚参数时有限"""
        for z in (0.5, 3.0, 10.0):
            value = whittaker_m(2.5j, 1.3j, z)
            assert cmath.isfinite(value)

    def test_branch_cut(self):
        """测试负实轴"""
        with pytest.raises(BranchCutInput):
            whittaker_m(0.0, 0.5, -1.0)

    def test_parameter_pole(self):
        """测试 1+2β 为非正整数"""
        with pytest.raises(ParameterPole):
            whittaker_m(0.0, -1.0, 1.0)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
