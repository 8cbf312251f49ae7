"""
散射态与对产生单元测试
"""

import cmath
import math

import pytest

from src.core import AngularState, DunklConfig
from src.errors import DivergentDensity, NonPropagatingEnergy, SubcriticalCharge
from src.scattering import (
    ScatterInput,
    beta_tilde,
    bogoliubov,
    branch_report,
    creation_condition,
    critical_charge,
    critical_charge_3d_reduced,
    critical_charge_reduced,
    density_from,
    log_probability,
    pair_density,
    pair_probability,
    probability_from,
    probability_sweep,
    scatter,
    threshold_ze2,
    vartheta,
    whittaker_mode,
)


def direct_probability(b, x):
    return math.cosh(math.pi * (b + x)) / math.cosh(math.pi * (b - x)) * math.exp(-2 * math.pi * b)


class TestVartheta:
    """ϑ 测试类"""

    def test_values(self):
        """测试几组 d, μ"""
        assert vartheta(DunklConfig.uniform(3, 0.0)) == pytest.approx(-1.0)
        assert vartheta(DunklConfig.uniform(3, 0.4)) == pytest.approx(-2.2)
        assert vartheta(DunklConfig.uniform(6, -0.4)) == pytest.approx(-0.1)


class TestThreshold:
    """产生阈值测试类"""

    def test_beta_tilde_threshold(self):
        """测试 d=3, μ=0.4, ℓ=(1,1) 阈值 5.7"""
        config = DunklConfig.uniform(3, 0.4)
        ang = AngularState.uniform(3, 1)
        assert threshold_ze2(config, ang) == pytest.approx(5.7, rel=1e-12)
        assert beta_tilde(config, ang, 6.0) == pytest.approx(math.sqrt(36.0 - 32.49), rel=1e-12)
        with pytest.raises(SubcriticalCharge):
            beta_tilde(config, ang, 5.6)

    def test_negative_mu_threshold(self):
        """测试 d=4, μ=-0.4, ℓ=(1,1,1) 阈值 5.4"""
        config = DunklConfig.uniform(4, -0.4)
        ang = AngularState.uniform(4, 1)
        assert threshold_ze2(config, ang) == pytest.approx(5.4, rel=1e-12)

    def test_beta_tilde_zero_at_boundary(self):
        """测试 ℓ=0, μ=0, d=3 时阈值为 1/2, 边界上 β̃ = 0"""
        config = DunklConfig.uniform(3, 0.0)
        ang = AngularState.uniform(3, 0)
        assert beta_tilde(config, ang, 0.5) == 0.0

    def test_creation_condition(self):
        """测试产生条件及其等号边界"""
        config = DunklConfig.uniform(3, 0.0)
        ang = AngularState.uniform(3, 1)
        assert not creation_condition(config, ang, 0.0)
        assert creation_condition(config, ang, 4.5)
        assert not creation_condition(config, ang, 4.49)


class TestCriticalCharge:
    """临界电荷测试类"""

    def test_positive_mu(self):
        """测试 d=3, μ=0.4"""
        value = critical_charge(DunklConfig.uniform(3, 0.4), AngularState.uniform(3, 1))
        assert value == pytest.approx(5.7 * 137, rel=1e-12)

    def test_negative_mu(self):
        """测试 d=4, μ=-0.4"""
        value = critical_charge(DunklConfig.uniform(4, -0.4), AngularState.uniform(4, 1))
        assert value == pytest.approx(5.4 * 137, rel=1e-12)

    def test_reduced(self):
        """测试 μ=0 简化形式"""
        assert critical_charge_reduced(3, 1) == pytest.approx(1.5 * 137)

    @pytest.mark.parametrize('ell,expected', [(0, 0.5), (1, 1.5), (2, 2.5), (3, 3.5)])
    def test_three_dimensional_reduced(self, ell, expected):
        """测试三维 μ=0: Z_cr = (ℓ + 1/2)/e²"""
        assert critical_charge_3d_reduced(ell) == pytest.approx(expected * 137)
        assert critical_charge_3d_reduced(ell, e2_inverse=1.0) == pytest.approx(critical_charge_reduced(3, ell, 1.0))

    def test_reduced_differs_from_full(self):
        """测试 μ=0 时完整公式 (2L + (d-2)/2) 与简化公式不同"""
        full = critical_charge(DunklConfig.uniform(3, 0.0), AngularState.uniform(3, 1))
        assert full == pytest.approx(4.5 * 137)
        assert full != pytest.approx(critical_charge_reduced(3, 1))


class TestProbability:
    """对产生概率测试类"""

    def test_reference_value(self):
        """测试 β̃=1, x=2"""
        value = probability_from(1.0, 2.0)
        assert value == pytest.approx(direct_probability(1.0, 2.0), rel=1e-12)
        assert value == pytest.approx(0.9981, abs=1e-4)

    def test_large_beta_asymptotics(self):
        """测试 log 𝒫 → 2π(x - β̃)"""
        assert log_probability(20.0, 1.0) == pytest.approx(2 * math.pi * (1.0 - 20.0), abs=1e-8)

    def test_density_identity(self):
        """测试 𝒩 = 𝒫/(1-𝒫)"""
        for b, x in [(1.0, 2.0), (0.3, 0.5), (2.0, 0.1)]:
            p = probability_from(b, x)
            assert density_from(b, x) == pytest.approx(p / (1 - p), rel=1e-10)

    def test_half_probability(self):
        """测试 𝒫 = 1/2 时 𝒩 = 1"""
        b = math.log(2.0) / (2 * math.pi)
        assert probability_from(b, 0.0) == pytest.approx(0.5, rel=1e-13)
        assert density_from(b, 0.0) == pytest.approx(1.0, rel=1e-12)

    def test_density_vanishes(self):
        """测试 β̃ → ∞ 时 𝒩 → 0"""
        assert density_from(50.0, 1.0) < 1e-100

    def test_density_diverges_at_zero(self):
        """测试 β̃ = 0 时密度发散"""
        with pytest.raises(DivergentDensity):
            density_from(0.0, 1.0)

    def test_no_overflow(self):
        """测试大 x 时不溢出"""
        value = probability_from(3.0, 400.0)
        assert math.isfinite(value)


class TestBogoliubov:
    """Bogoliubov 系数测试类"""

    @pytest.mark.parametrize('x,b', [(2.0, 1.0), (0.5, 0.3), (0.0, 1.2)])
    def test_ratio_matches_probability(self, x, b):
        """测试 β 取 -iβ̃ 分支时 |B/A|² 等于 𝒫"""
        coefficients = bogoliubov(x, b, branch=-1)
        assert coefficients.ratio_sq == pytest.approx(probability_from(b, x), rel=1e-9)

    @pytest.mark.parametrize('b', [0.3, 1.2, 2.5])
    def test_zero_alpha_magnitudes(self, b):
        """测试 x=0 时 Γ 因子相消, |A| = |B|·e^{πβ̃}"""
        minus = bogoliubov(0.0, b, branch=-1)
        assert abs(minus.a) == pytest.approx(abs(minus.b) * math.exp(math.pi * b), rel=1e-10)
        assert (minus.log_a - minus.log_b).real == pytest.approx(math.pi * b, rel=1e-12)
        plus = bogoliubov(0.0, b, branch=1)
        assert abs(plus.a) == pytest.approx(abs(plus.b) * math.exp(-math.pi * b), rel=1e-10)

    def test_other_branch_is_reciprocal(self):
        """测试 +iβ̃ 分支给出倒数"""
        ratio = bogoliubov(0.5, 0.3, branch=1).ratio_sq
        assert ratio == pytest.approx(1.0 / probability_from(0.3, 0.5), rel=1e-9)

    def test_branch_report(self):
        """测试分支报告"""
        report = branch_report(0.5, 0.3)
        assert report['minus']['matches_probability']
        assert not report['plus']['matches_probability']


class TestScatterInput:
    """散射输入测试类"""

    @pytest.fixture
    def scatter_input(self):
        return ScatterInput(DunklConfig.uniform(3, 0.0), AngularState.uniform(3, 1),
                            m=1.0, ze2=6.0, energy=2.0)

    def test_kappa_and_x(self, scatter_input):
        """测试 κ 与 x"""
        assert scatter_input.kappa == pytest.approx(math.sqrt(3.0))
        assert scatter_input.alpha_im == pytest.approx(2.0 * 6.0 / math.sqrt(3.0))

    def test_scatter_consistent(self, scatter_input):
        """测试 scatter 与单项函数一致"""
        result = scatter(scatter_input)
        assert result.vartheta == pytest.approx(-1.0)
        assert result.probability == pytest.approx(pair_probability(scatter_input))
        assert result.density == pytest.approx(pair_density(scatter_input))

    @pytest.mark.parametrize('r', [0.01, 0.5, 1.0, 2.5, 5.0, 7.5, 10.0])
    def test_whittaker_mode_finite_on_ray(self, scatter_input, r):
        """测试入射模在 ζ = -2iκr, r ∈ (0, 10] 上有限"""
        zeta = complex(0.0, -2.0 * scatter_input.kappa * r)
        for branch in (-1, 1):
            assert cmath.isfinite(whittaker_mode(scatter_input, zeta, branch))

    def test_non_propagating(self):
        """测试 |E| ≤ m"""
        scatter_input = ScatterInput(DunklConfig.uniform(3, 0.0), AngularState.uniform(3, 1),
                                     m=1.0, ze2=6.0, energy=1.0)
        with pytest.raises(NonPropagatingEnergy):
            pair_probability(scatter_input)

    def test_positive_mu_raises_probability(self):
        """测试 μ=+0.4 (β̃ 较小) 的概率大于 μ=0"""
        ang = AngularState.uniform(3, 1)
        values = {}
        for mu in (0.0, 0.4):
            values[mu] = pair_probability(
                ScatterInput(DunklConfig.uniform(3, mu), ang, m=1.0, ze2=8.0, energy=2.0))
        assert values[0.4] > values[0.0]

    def test_sweep_marks_subcritical(self):
        """测试扫描中低于阈值的点为 NaN"""
        values = probability_sweep(DunklConfig.uniform(3, 0.0), AngularState.uniform(3, 1),
                                   1.0, 2.0, [4.0, 5.0, 6.0])
        assert math.isnan(values[0])
        assert 0 < values[1] < 1 and 0 < values[2] < 1

    def test_whittaker_mode_small_argument(self, scatter_input):
        """测试 ζ→0 时 Φ/ζ^{1/2+β} → 1"""
        zeta = 1e-8j
        b = beta_tilde(scatter_input.config, scatter_input.ang, scatter_input.ze2)
        leading = cmath.exp((0.5 - 1j * b) * cmath.log(zeta))
        assert abs(whittaker_mode(scatter_input, zeta) / leading - 1) < 1e-6


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
