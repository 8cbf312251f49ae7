"""
图数据模块单元测试
"""

import math

import pytest

from src.errors import UnknownFigure
from src.figures import (
    DOCUMENTED_MISMATCHES,
    FIGURE_COLUMNS,
    FIGURE_IDS,
    SUSPECTED_TYPOS,
    TABLE3_COLUMNS,
    FigureBuilder,
    series_label,
)


@pytest.fixture
def builder(fast_config):
    """缩小网格的图数据生成器"""
    return FigureBuilder(fast_config)


class TestSeriesLabel:
    """series 标签测试类"""

    def test_format(self):
        """测试标签格式"""
        assert series_label(mu=0.4, d=3, s='+') == 'mu=+0.4 d=3 s=+'
        assert series_label(mu=-0.4, n=2) == 'mu=-0.4 n=2'
        assert series_label(mu=0.0, d=4) == 'mu=+0.0 d=4'

    def test_no_commas(self):
        """测试标签不含逗号"""
        assert ',' not in series_label(mu=0.4, d=3, n=1)


class TestFigureData:
    """图数据测试类"""

    def test_unknown_figure(self, builder):
        """测试未知图编号"""
        with pytest.raises(UnknownFigure):
            builder.figure_data('F9')

    def test_lowercase_accepted(self, builder):
        """测试小写图编号"""
        assert builder.figure_data('f1').name == 'F1'

    @pytest.mark.parametrize('figure_id', FIGURE_IDS)
    def test_columns(self, builder, figure_id):
        """测试各图列名与非空"""
        dataset = builder.figure_data(figure_id)
        assert dataset.columns == FIGURE_COLUMNS[figure_id]
        assert dataset.rows
        assert dataset.metadata['figure'] == figure_id

    def test_oscillator_series(self, builder):
        """测试 F1 每个 (d, s) 一条曲线"""
        dataset = builder.figure_data('F1')
        assert len(dataset.labels()) == 2 * len(builder.d_values)
        xs, ys = dataset.xy('mu=+0.4 d=3 s=+')
        assert xs == list(range(builder.oscillator_n_max + 1))
        assert ys[0] == pytest.approx(3.0)

    def test_pair_points_above_threshold(self, builder):
        """测试 F7 只包含阈值以上的点且概率在 (0, 1)"""
        dataset = builder.figure_data('F7')
        for row in dataset.rows:
            record = dict(zip(dataset.columns, row))
            assert 0 < record['y'] <= 1
            assert math.isfinite(record['density'])

    def test_pair_grid(self, builder):
        """测试 F7 网格从最低阈值开始"""
        grid = builder.pair_grid(3)
        assert grid[0] == pytest.approx(3.3)
        assert grid[-1] == pytest.approx(5.7 + builder.pair_ze2_span)

    def test_charge_sweep_ends_near_critical(self, builder):
        """测试 F5 最后一点贴近临界耦合"""
        dataset = builder.figure_data('F5')
        xs, _ = dataset.xy('mu=+0.4 d=3 n=0')
        assert xs[-1] == pytest.approx(5.7, rel=1e-9)
        assert xs[-1] < 5.7


class TestClaims:
    """定性断言测试类"""

    @pytest.mark.parametrize('figure_id', ['F1', 'F2', 'F7', 'F8'])
    def test_claims_hold(self, builder, figure_id):
        """测试图中陈述的性质成立"""
        claims = builder.claims(figure_id)
        assert claims
        for claim in claims:
            assert claim['passed'], claim
            assert not claim['documented']

    @pytest.mark.parametrize('figure_id', ['F4', 'F5'])
    def test_coulomb_claims_pass_or_documented(self, builder, figure_id):
        """测试 Coulomb 陈述要么成立, 要么已登记为不符"""
        for claim in builder.claims(figure_id):
            assert claim['passed'] != claim['documented'], claim

    def test_energy_rises_with_d_at_low_levels(self, builder):
        """测试 Ze²=1 时 n=0 能量随 d 增大, 两个分支都不支持随 d 减小"""
        dataset = builder.figure_data('F4')
        ground = [dataset.xy(series_label(mu=0.4, d=d))[1][0] for d in builder.coulomb_d_values]
        assert ground == pytest.approx([0.98688, 0.99394, 0.99652, 0.99775, 0.99842, 0.99883], abs=1e-5)

        claims = {c['claim']: c for c in builder.claims('F4', dataset)}
        for branch in ('printed', 'shifted'):
            claim = claims[f'energy decreases with d ({branch}, mu=+0.4)']
            assert not claim['passed']
            assert claim['documented']
            assert '0.98688 0.99394' in claim['detail']

    def test_printed_energy_falls_with_n(self, builder):
        """测试 printed 分支在极点前随 n 减小, shifted 分支随 n 增大"""
        claims = {c['claim']: c for c in builder.claims('F4')}
        printed = claims['energy increases with n (printed, mu=+0.4)']
        assert not printed['passed']
        assert printed['detail'] == 'd=3 n=0..3: 0.9869 0.9814 0.9717 0.9520'
        assert claims['energy increases with n (shifted, mu=+0.4)']['passed']

    def test_levels_do_not_meet_at_critical_charge(self, builder):
        """测试临界电荷处 n=0..3 没有共同的极小值"""
        dataset = builder.figure_data('F5')
        ends = [dataset.xy(series_label(mu=0.4, d=3, n=n))[1][-1] for n in builder.coulomb_levels]
        assert ends == pytest.approx([0.087385, 0.087382, 0.254492, 0.40166], abs=2e-5)

        claims = {c['claim']: c for c in builder.claims('F5', dataset)}
        for branch in ('printed', 'shifted'):
            claim = claims[f'levels meet at the critical charge ({branch}, mu=+0.4)']
            assert not claim['passed']
            assert claim['documented']
        assert claims['n=0 and n=1 meet at the critical charge (printed, mu=+0.4)']['passed']
        assert claims['ground energy decreases with Ze² (shifted, mu=-0.4)']['passed']

    def test_undocumented_claims_are_not_flagged(self):
        """测试未登记的陈述 documented 为假"""
        assert ('F4', 'energy increases with n (shifted, mu=+0.4)') not in DOCUMENTED_MISMATCHES
        assert ('F5', 'levels meet at the critical charge (printed, mu=-0.4)') in DOCUMENTED_MISMATCHES

    def test_profile_nodes(self, builder):
        """测试 F3 节点数断言"""
        claims = builder.claims('F3')
        assert claims[0]['claim'] == 'node count equals n'
        assert claims[0]['passed']

    def test_dimension_sweep_has_no_claims(self, builder):
        """测试 F6 没有定性断言"""
        assert builder.claims('F6') == []


class TestTable3:
    """临界电荷表测试类"""

    def test_shape(self, builder):
        """测试 4 × 3 × 3 行"""
        table = builder.table3()
        assert table.columns == TABLE3_COLUMNS
        assert len(table.rows) == 36

    def test_known_cells(self, builder):
        """测试已知单元格"""
        records = {(r[0], r[1], r[2]): dict(zip(TABLE3_COLUMNS, r)) for r in builder.table3().rows}
        assert records[(3, 1, 0.4)]['computed'] == pytest.approx(5.7)
        assert records[(4, 1, -0.4)]['computed'] == pytest.approx(5.4)
        assert records[(3, 1, 0.0)]['computed'] == pytest.approx(1.5)
        assert records[(3, 1, 0.0)]['formula'] == 'reduced'

    def test_only_typo_mismatches(self, builder):
        """测试除疑似印刷错误外全部吻合"""
        for row in builder.table3().rows:
            record = dict(zip(TABLE3_COLUMNS, row))
            key = (record['d'], record['ell'], record['mu'])
            if key in SUSPECTED_TYPOS:
                assert not record['match']
                assert record['suspected_typo']
                assert record['computed'] == pytest.approx(29.6)
            else:
                assert record['match'], record


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
