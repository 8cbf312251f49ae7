"""
运行配置单元测试
"""

import pytest

from src.errors import InvalidParameter, MuOutOfRange, ParityCoupling, UnknownFigure
from src.run_config import (
    RunConfig,
    describe_columns,
    normalize_parameters,
    parse_ells,
    parse_grid,
    parse_levels,
    parse_parities,
)


class TestParsers:
    """参数解析测试类"""

    def test_parities(self):
        """测试宇称解析与广播"""
        assert parse_parities('+', 3) == [1, 1, 1]
        assert parse_parities('+,-,+', 3) == [1, -1, 1]
        with pytest.raises(InvalidParameter):
            parse_parities('x', 3)
        with pytest.raises(InvalidParameter):
            parse_parities('+,-', 3)

    def test_ells(self):
        """测试半整数写法"""
        assert parse_ells('1/2,0.5', 2) == ['1/2', '1/2']
        assert parse_ells('1', 3) == ['1', '1', '1']
        with pytest.raises(InvalidParameter):
            parse_ells('a', 1)

    def test_levels(self):
        """测试量子数范围"""
        assert parse_levels('0..3') == [0, 1, 2, 3]
        assert parse_levels('0,2,4') == [0, 2, 4]
        assert parse_levels(5) == [5]
        with pytest.raises(InvalidParameter):
            parse_levels('-1..2')

    def test_grid(self):
        """测试 Ze² 网格"""
        assert parse_grid('1..2:3') == pytest.approx([1.0, 1.5, 2.0])
        assert parse_grid('0.5') == [0.5]
        assert parse_grid('1,2') == [1.0, 2.0]
        with pytest.raises(InvalidParameter):
            parse_grid('1..x:3')


class TestNormalize:
    """参数规范化测试类"""

    def test_defaults(self):
        """测试补全默认值"""
        params = normalize_parameters('osc-spectrum', {})
        assert params['d'] == 3
        assert params['mu'] == [0.0, 0.0, 0.0]
        assert params['n'] == list(range(11))
        assert params['strict_coupling'] is True

    def test_idempotent(self):
        """测试规范形式再次规范化不变"""
        once = normalize_parameters('pair-creation', {'d': 4, 'mu': '-0.4', 'ze2': '5..6:3'})
        assert normalize_parameters('pair-creation', once) == once

    def test_unknown_key(self):
        """测试命令不接受的参数"""
        with pytest.raises(InvalidParameter):
            normalize_parameters('critical-charge', {'omega': 1.0})

    def test_figure_id(self):
        """测试图编号"""
        assert normalize_parameters('figure', {'figure': 'f3'})['figure'] == 'F3'
        with pytest.raises(UnknownFigure):
            normalize_parameters('figure', {'figure': 'F9'})


class TestRunConfig:
    """运行配置模型测试类"""

    def test_from_args(self):
        """测试由命令行参数构造"""
        run_config = RunConfig.from_args('osc-spectrum', {'d': 3, 'mu': '0.4', 'n': '0..2', 'ze2': None,
                                                          'categories': None})
        config, ang = run_config.physics()
        assert config.mu == (0.4, 0.4, 0.4)
        assert ang.two_ell == (2, 2)
        assert run_config.columns == ['n', 'E', 'E_negative', 'E_nonrel']

    def test_validation_errors_surface(self):
        """测试校验错误原样抛出"""
        with pytest.raises(ParityCoupling):
            RunConfig.from_args('osc-spectrum', {'l': '1/2'})
        with pytest.raises(MuOutOfRange):
            RunConfig.from_args('osc-spectrum', {'mu': '-0.6'})

    def test_relaxed_coupling(self):
        """测试关闭耦合检查"""
        run_config = RunConfig.from_args('osc-spectrum', {'l': '1/2', 'strict_coupling': False})
        assert run_config.parameters['l'] == ['1/2', '1/2']

    def test_bad_format(self):
        """测试不支持的输出格式"""
        with pytest.raises(InvalidParameter):
            RunConfig.from_args('table3', {}, fmt='xlsx')

    def test_unknown_command(self):
        """测试未知命令"""
        with pytest.raises(InvalidParameter):
            RunConfig.from_args('plot', {})

    def test_dump_and_load(self, tmp_path):
        """测试导出的配置可以原样重跑"""
        original = RunConfig.from_args('coulomb-sweep', {'d': 4, 'mu': '0.4', 'ze2': '0.1..1:4'},
                                       output_path='out.csv')
        path = original.dump(tmp_path / 'run.json')
        loaded = RunConfig.load(path)
        assert loaded == original
        assert loaded.parameters['ze2'] == pytest.approx([0.1, 0.4, 0.7, 1.0])

    def test_load_missing(self, tmp_path):
        """测试配置文件不存在"""
        with pytest.raises(InvalidParameter):
            RunConfig.load(tmp_path / 'missing.json')

    def test_load_invalid_json(self, tmp_path):
        """测试 JSON 内容无效"""
        path = tmp_path / 'bad.json'
        path.write_text('{"command": "osc-spectrum", "parameters": {"d": "x"}}', encoding='utf-8')
        with pytest.raises(InvalidParameter):
            RunConfig.load(path)

    def test_describe_columns(self):
        """测试帮助中的列说明"""
        text = describe_columns()
        assert 'pair-creation: ze2, beta_tilde, x, P, N' in text
        assert 'table3:' in text


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
