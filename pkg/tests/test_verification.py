"""
验证套件单元测试
"""

import json
from fractions import Fraction

import pytest

from src.errors import InvalidParameter, NonConvergence
from src.verification import (
    CATEGORIES,
    OSCILLATOR_CASES,
    OSCILLATOR_LEVELS,
    CheckResult,
    VerificationReport,
    VerificationSuite,
)

CHEAP_CATEGORIES = ['table3', 'parity_shift', 'coulomb_parity', 'pair_identities',
                    'special_functions', 'angular', 'nonrel_limit']


@pytest.fixture
def suite(fast_config):
    """验证套件"""
    return VerificationSuite(fast_config)


@pytest.fixture
def oracle_suite(config):
    """默认网格的验证套件, 用于求解器比对"""
    return VerificationSuite(config)


class TestVerificationReport:
    """验证报告测试类"""

    def test_summary(self):
        """测试按类别计数"""
        report = VerificationReport(checks=[
            CheckResult('a', 'one', 0.0, 1.0, True),
            CheckResult('a', 'two', 2.0, 1.0, False),
            CheckResult('b', 'three', None, None, True),
        ])
        assert not report.passed
        assert [c.name for c in report.failures] == ['two']
        assert report.summary() == {'a': {'passed': 1, 'failed': 1}, 'b': {'passed': 1, 'failed': 0}}

    def test_write_sanitizes_infinity(self, tmp_path):
        """测试非有限值写成 null"""
        report = VerificationReport(checks=[
            CheckResult('a', 'inf', float('inf'), 1.0, False, {'error': float('nan')}),
        ])
        path = report.write(tmp_path / 'report.json')
        payload = json.loads(path.read_text(encoding='utf-8'))
        assert payload['passed'] is False
        assert payload['checks'][0]['measured'] is None
        assert payload['checks'][0]['detail']['error'] is None


class TestVerificationSuite:
    """验证套件测试类"""

    def test_unknown_category(self, suite):
        """测试未知类别"""
        with pytest.raises(InvalidParameter):
            suite.run(['bogus'])

    def test_every_category_has_check(self, suite):
        """测试每个类别都有对应检查方法"""
        for category in CATEGORIES:
            assert callable(getattr(suite, f'check_{category}'))

    @pytest.mark.parametrize('category', CHEAP_CATEGORIES)
    def test_category_passes(self, suite, category):
        """测试各类别全部通过"""
        report = suite.run([category])
        assert report.checks
        assert report.passed, [c.to_dict() for c in report.failures]

    def test_table3_typo_excluded(self, suite):
        """测试疑似印刷错误的单元格被标注"""
        checks = suite.check_table3()
        noted = [c for c in checks if c.detail.get('note')]
        assert len(noted) == 1
        assert noted[0].name == 'd=6 ell=3 mu=-0.4'

    def test_nonrel_ratios(self, suite):
        """测试 m 每增大十倍差值约缩小十倍"""
        checks = suite.check_nonrel_limit()
        assert len(checks) == 2
        assert checks[0].measured == pytest.approx(9.2, abs=0.2)
        assert checks[1].measured == pytest.approx(9.91, abs=0.05)

    def test_oscillator_oracle_single_case(self, oracle_suite, mocker):
        """测试振子比对 (只跑一个配置), 比较 n = 0..2"""
        mocker.patch('src.verification.OSCILLATOR_CASES', ((3, 0.4, (1, 1, 1), (1, 1)),))
        checks = oracle_suite.check_oscillator_oracle()
        assert [c.name for c in checks[:3]] == ['d=3 mu=+0.4 s=+++ n=0', 'd=3 mu=+0.4 s=+++ n=1',
                                                 'd=3 mu=+0.4 s=+++ n=2']
        assert all(c.passed for c in checks[:3]), [c.to_dict() for c in checks[:3]]
        assert checks[0].detail['analytic'] == pytest.approx(3.0)

    @pytest.mark.parametrize('case', [
        (3, -0.4, (-1, -1, 1), (1, 1)),
        (4, -0.4, (1, -1, 1, -1), (Fraction(1, 2), 1, Fraction(3, 2))),
        (5, 0.0, (-1, 1, -1, 1, 1), (Fraction(1, 2), Fraction(1, 2), 1, 1)),
    ])
    def test_oscillator_oracle_mixed_parity(self, oracle_suite, mocker, case):
        """测试 μ = -0.4 与 μ = 0 的混合宇称配置与求解器一致"""
        assert case in OSCILLATOR_CASES
        mocker.patch('src.verification.OSCILLATOR_CASES', (case,))
        checks = oracle_suite.check_oscillator_oracle()[:OSCILLATOR_LEVELS]
        assert len(checks) == 3
        for check in checks:
            assert check.passed, check.to_dict()
            assert check.measured < 1e-8

    def test_coulomb_oracle_single_case(self, oracle_suite, mocker):
        """测试 Coulomb 比对: n=1 对应 shifted 分母"""
        mocker.patch('src.verification.COULOMB_CASES', ((3, 0.0, 1.0),))
        checks = oracle_suite.check_coulomb_oracle()
        assert all(c.passed for c in checks), [c.to_dict() for c in checks]
        assert checks[1].detail['branch'] == 'shifted'

    def test_kummer_options_from_numerics(self, fast_config):
        """测试 numerics 段传给 Kummer 级数"""
        fast_config['numerics']['kummer_max_terms'] = 3
        suite = VerificationSuite(fast_config)
        assert suite.kummer_options == {'rel_tol': 1e-17, 'max_terms': 3, 'max_abs_z': 50.0}
        with pytest.raises(NonConvergence):
            suite.check_special_functions()

    def test_documented_mismatch_recorded(self, suite, mocker):
        """测试已登记的不符陈述带实测值记录, 未登记的不符陈述判为失败"""
        mocker.patch.object(suite.figures, 'claims', return_value=[
            {'claim': 'levels meet', 'passed': False, 'detail': 'E at Z_cr: n=0:0.087385', 'documented': True},
            {'claim': 'energy rises', 'passed': False, 'detail': '', 'documented': False},
        ])
        checks = suite.check_figure_claims()
        documented = [c for c in checks if c.name.endswith('levels meet')]
        assert documented and all(c.passed for c in documented)
        assert documented[0].detail['holds'] is False
        assert documented[0].detail['note'].startswith('documented mismatch')
        assert '0.087385' in documented[0].detail['detail']
        assert not any(c.passed for c in checks if c.name.endswith('energy rises'))

    def test_report_path(self, suite, tmp_path):
        """测试报告路径"""
        assert suite.report_path(tmp_path) == tmp_path / 'verify_report.json'


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
