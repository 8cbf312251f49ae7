"""
图数据模块
生成各图的 (series, x, y) 数据集、临界电荷表以及对数据集的定性断言

图中未注明的参数 (F7/F8 的能量、F1 的 d 范围等) 取 figures 配置段的默认值,
并原样写进数据集元数据。
"""

import logging
import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import coulomb_bound, oscillator, scattering
from .core import AngularState, DunklConfig
from .dataset_writer import Dataset
from .errors import DegenerateDenominator, UnknownFigure
from .oracle import count_sign_changes
from .sweep import SweepRunner

logger = logging.getLogger(__name__)

FIGURE_IDS = ('F1', 'F2', 'F3', 'F4', 'F5', 'F6', 'F7', 'F8')

FIGURE_COLUMNS: Dict[str, List[str]] = {
    'F1': ['series', 'x', 'y', 'mu', 'd', 's'],
    'F2': ['series', 'x', 'y', 'mu', 'd', 's'],
    'F3': ['series', 'x', 'y', 'radial', 'probability', 'mu', 'n'],
    'F4': ['series', 'x', 'y', 'shifted', 'mu', 'd'],
    'F5': ['series', 'x', 'y', 'shifted', 'mu', 'd', 'n'],
    'F6': ['series', 'x', 'y', 'shifted', 'mu', 'n'],
    'F7': ['series', 'x', 'y', 'density', 'mu', 'd'],
    'F8': ['series', 'x', 'y', 'density', 'mu', 'd'],
}

FIGURE_TITLES = {
    'F1': '振子能谱 E(n), μ=+0.4',
    'F2': '振子能谱 E(n), μ=-0.4',
    'F3': '振子径向密度 |𝓡|²(ρ), d=3',
    'F4': 'Coulomb 能谱 E(n), d=3..8',
    'F5': 'Coulomb 能量随 Ze² 变化, 直到临界值',
    'F6': 'Coulomb 能量随维数 d 变化',
    'F7': '对产生概率 𝒫(Ze²), d=3',
    'F8': '对产生概率 𝒫(Ze²), d=4',
}

TABLE3_COLUMNS = ['d', 'ell', 'mu', 'computed', 'printed', 'z_cr', 'formula', 'match', 'suspected_typo']

# 临界电荷表的印刷值 (单位 1/e² = 137), 按 d = 3, 4, 5, 6 排列
PRINTED_TABLE3: Dict[Tuple[float, int], Tuple[float, ...]] = {
    (0.4, 1): (5.7, 8.6, 11.5, 14.4),
    (0.4, 2): (9.7, 14.6, 19.5, 24.4),
    (0.4, 3): (13.7, 20.6, 27.5, 34.4),
    (0.0, 1): (1.5, 2.0, 2.5, 3.0),
    (0.0, 2): (2.5, 3.0, 3.5, 4.0),
    (0.0, 3): (3.5, 4.0, 4.5, 5.0),
    (-0.4, 1): (3.3, 5.4, 7.5, 9.6),
    (-0.4, 2): (7.3, 11.4, 15.5, 19.6),
    (-0.4, 3): (11.3, 17.4, 23.5, 23.6),
}
TABLE3_DIMENSIONS = (3, 4, 5, 6)
TABLE3_MU = (0.4, 0.0, -0.4)
TABLE3_ELL = (1, 2, 3)
SUSPECTED_TYPOS = {(6, 3, -0.4)}

# 图注中与数据不符的定性陈述, 在 n = 0..3 的两个分支上实测:
# F4 两个分支的能量都随 d 增大, printed 分支在极点之前随 n 减小;
# F5 各能级在临界电荷处不重合, 只有 printed 的 n=0 与 n=1 相遇
DOCUMENTED_MISMATCHES = frozenset(
    [('F4', f'energy decreases with d ({branch}, mu={mu:+.1f})')
     for branch in coulomb_bound.BRANCHES for mu in (0.4, -0.4)]
    + [('F4', f'energy increases with n ({coulomb_bound.PRINTED}, mu={mu:+.1f})') for mu in (0.4, -0.4)]
    + [('F5', f'levels meet at the critical charge ({branch}, mu={mu:+.1f})')
       for branch in coulomb_bound.BRANCHES for mu in (0.4, -0.4)]
)


def parity_token(s: int) -> str:
    return '+' if s > 0 else '-'


def series_label(**parts) -> str:
    """series 标签, 例如 'mu=+0.4 d=3 s=+'"""
    tokens = []
    for key, value in parts.items():
        if key == 'mu':
            tokens.append(f"mu={value:+.1f}")
        else:
            tokens.append(f"{key}={value}")
    return ' '.join(tokens)


def _is_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def _is_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _claim(name: str, passed: bool, detail: str = '', figure_id: str = None) -> dict:
    """documented 为真表示该陈述已登记在 DOCUMENTED_MISMATCHES 中"""
    return {'claim': name, 'passed': bool(passed), 'detail': detail,
            'documented': (figure_id, name) in DOCUMENTED_MISMATCHES}


class FigureBuilder:
    """图数据生成器"""

    def __init__(self, config: dict = None, runner: SweepRunner = None):
        """
        初始化图数据生成器

        Args:
            config: 配置字典, 读取 figures、profiles、units 段
            runner: 扫描执行器, 为空时按配置新建
        """
        config = config or {}
        self.config = config
        figures_cfg = config.get('figures', {})
        self.mass = float(figures_cfg.get('mass', 1.0))
        self.omega = float(figures_cfg.get('omega', 1.0))
        self.ell = figures_cfg.get('ell', 1)
        self.d_values = list(figures_cfg.get('d_values', [3, 4, 5, 6]))
        self.oscillator_n_max = int(figures_cfg.get('oscillator_n_max', 10))
        self.profile_levels = list(figures_cfg.get('profile_levels', [2, 3, 4, 5]))
        self.profile_dimension = int(figures_cfg.get('profile_dimension', 3))
        self.coulomb_ze2 = float(figures_cfg.get('coulomb_ze2', 1.0))
        self.coulomb_n_max = int(figures_cfg.get('coulomb_n_max', 60))
        self.coulomb_levels = list(figures_cfg.get('coulomb_levels', [0, 1, 2, 3]))
        self.coulomb_sweep_points = int(figures_cfg.get('coulomb_sweep_points', 60))
        self.coulomb_sweep_dimension = int(figures_cfg.get('coulomb_sweep_dimension', 3))
        self.coulomb_d_values = list(figures_cfg.get('coulomb_d_values', [3, 4, 5, 6, 7, 8]))
        self.pair_energy_over_mass = float(figures_cfg.get('pair_energy_over_mass', 2.0))
        self.pair_mu_values = list(figures_cfg.get('pair_mu_values', [0.4, 0.0, -0.4]))
        self.pair_ze2_span = float(figures_cfg.get('pair_ze2_span', 6.0))
        self.pair_sweep_points = int(figures_cfg.get('pair_sweep_points', 60))

        profiles_cfg = config.get('profiles', {})
        self.profile_points = int(profiles_cfg.get('grid_points', 2000))
        self.profile_tol = float(profiles_cfg.get('quadrature_tol', 1e-6))

        self.e2_inverse = float(config.get('units', {}).get('e2_inverse', scattering.E2_INVERSE))
        self.runner = runner or SweepRunner(config)

        self._builders: Dict[str, Callable[[], Dataset]] = {
            'F1': lambda: self._oscillator_spectra('F1', 0.4),
            'F2': lambda: self._oscillator_spectra('F2', -0.4),
            'F3': self._oscillator_profiles,
            'F4': self._coulomb_spectra,
            'F5': self._coulomb_charge_sweep,
            'F6': self._coulomb_dimension_sweep,
            'F7': lambda: self._pair_creation('F7', 3),
            'F8': lambda: self._pair_creation('F8', 4),
        }
        logger.info("图数据生成器初始化完成")

    # ---- 入口 ----

    def figure_data(self, figure_id: str) -> Dataset:
        """
        生成某个图的数据集

        Raises:
            UnknownFigure: 图编号不在 F1..F8
        """
        key = str(figure_id).upper()
        if key not in self._builders:
            raise UnknownFigure(f"未知的图编号 {figure_id}, 可选 {', '.join(FIGURE_IDS)}")
        logger.info(f"生成图数据 {key}: {FIGURE_TITLES[key]}")
        return self._builders[key]()

    def _metadata(self, figure_id: str, **extra) -> dict:
        return {'figure': figure_id, 'title': FIGURE_TITLES[figure_id],
                'm': self.mass, **extra}

    # ---- 振子 ----

    def _oscillator_spec(self, d: int, mu: float, s: int) -> oscillator.OscillatorSpec:
        return oscillator.OscillatorSpec(
            DunklConfig.uniform(d, mu, s), AngularState.uniform(d, self.ell),
            m=self.mass, omega=self.omega, strict_coupling=False,
        )

    def _oscillator_spectra(self, figure_id: str, mu: float) -> Dataset:
        levels = list(range(self.oscillator_n_max + 1))
        points = [(d, s) for d in self.d_values for s in (1, -1)]

        def compute(point):
            d, s = point
            spec = self._oscillator_spec(d, mu, s)
            return oscillator.spectrum(spec, levels)

        energies = self.runner.map(compute, points, label=f'{figure_id} 能谱')
        rows = []
        for (d, s), series in zip(points, energies):
            label = series_label(mu=mu, d=d, s=parity_token(s))
            rows.extend([label, n, e, mu, d, parity_token(s)] for n, e in zip(levels, series))
        metadata = self._metadata(figure_id, omega=self.omega, ell=self.ell, mu=mu,
                                  d_values=self.d_values, n_max=self.oscillator_n_max,
                                  strict_coupling=False)
        return Dataset(name=figure_id, columns=FIGURE_COLUMNS[figure_id], rows=rows, metadata=metadata)

    def _oscillator_profiles(self) -> Dataset:
        d = self.profile_dimension
        points = [(mu, n) for mu in (0.4, -0.4) for n in self.profile_levels]

        def compute(point):
            mu, n = point
            spec = oscillator.OscillatorSpec(DunklConfig.uniform(d, mu, 1), AngularState.uniform(d, self.ell),
                                             m=self.mass, omega=self.omega)
            rho_max = oscillator.default_rho_max(spec, max(self.profile_levels))
            grid = np.linspace(rho_max / self.profile_points, rho_max, self.profile_points)
            profile = oscillator.density_profile(spec, n, grid=grid, tol=self.profile_tol)
            signed = profile.norm_constant * oscillator.radial_wavefunction(spec, n, grid)
            return profile, signed

        results = self.runner.map(compute, points, label='F3 径向密度')
        rows = []
        for (mu, n), (profile, signed) in zip(points, results):
            label = series_label(mu=mu, n=n)
            for rho, value, radial, prob in zip(profile.grid.tolist(), profile.values.tolist(),
                                                signed.tolist(), profile.probability.tolist()):
                rows.append([label, rho, value, radial, prob, mu, n])
        metadata = self._metadata('F3', omega=self.omega, ell=self.ell, d=d, s=1,
                                  levels=self.profile_levels, grid_points=self.profile_points)
        return Dataset(name='F3', columns=FIGURE_COLUMNS['F3'], rows=rows, metadata=metadata)

    # ---- Coulomb ----

    def _coulomb_spec(self, d: int, mu: float, ze2: float) -> coulomb_bound.CoulombSpec:
        return coulomb_bound.CoulombSpec(DunklConfig.uniform(d, mu, 1), AngularState.uniform(d, self.ell),
                                         m=self.mass, ze2=ze2)

    @staticmethod
    def _coulomb_pair(spec: coulomb_bound.CoulombSpec, n: int) -> Tuple[float, float]:
        """(printed, shifted); printed 分母为零的点记 NaN"""
        candidates = coulomb_bound.energy_candidates(spec, n)
        return candidates[coulomb_bound.PRINTED], candidates[coulomb_bound.SHIFTED]

    def _coulomb_spectra(self) -> Dataset:
        levels = list(range(self.coulomb_n_max + 1))
        points = [(mu, d) for mu in (0.4, -0.4) for d in self.coulomb_d_values]

        def compute(point):
            mu, d = point
            spec = self._coulomb_spec(d, mu, self.coulomb_ze2)
            return [self._coulomb_pair(spec, n) for n in levels]

        results = self.runner.map(compute, points, label='F4 Coulomb 能谱')
        rows = []
        for (mu, d), series in zip(points, results):
            label = series_label(mu=mu, d=d)
            rows.extend([label, n, printed, shifted, mu, d]
                        for n, (printed, shifted) in zip(levels, series))
        metadata = self._metadata('F4', ell=self.ell, ze2=self.coulomb_ze2,
                                  d_values=self.coulomb_d_values, n_max=self.coulomb_n_max)
        return Dataset(name='F4', columns=FIGURE_COLUMNS['F4'], rows=rows, metadata=metadata)

    def _coulomb_charge_sweep(self) -> Dataset:
        base_d = self.coulomb_sweep_dimension
        points: List[Tuple[float, int, int]] = []
        for mu in (0.4, -0.4):
            for d in self.coulomb_d_values:
                points.append((mu, d, 1))
            for n in self.coulomb_levels:
                if (mu, base_d, n) not in points:
                    points.append((mu, base_d, n))

        def compute(point):
            mu, d, n = point
            config = DunklConfig.uniform(d, mu, 1)
            ang = AngularState.uniform(d, self.ell)
            ze2_cr = scattering.threshold_ze2(config, ang)
            grid = np.linspace(ze2_cr / self.coulomb_sweep_points, ze2_cr, self.coulomb_sweep_points)
            grid[-1] = ze2_cr * (1.0 - 1e-12)
            values = []
            for ze2 in grid.tolist():
                spec = self._coulomb_spec(d, mu, ze2)
                try:
                    values.append((ze2,) + self._coulomb_pair(spec, n))
                except DegenerateDenominator:
                    values.append((ze2, math.nan, math.nan))
            return values

        results = self.runner.map(compute, points, label='F5 Ze² 扫描')
        rows = []
        for (mu, d, n), series in zip(points, results):
            label = series_label(mu=mu, d=d, n=n)
            rows.extend([label, ze2, printed, shifted, mu, d, n] for ze2, printed, shifted in series)
        metadata = self._metadata('F5', ell=self.ell, sweep_points=self.coulomb_sweep_points,
                                  base_dimension=base_d, levels=self.coulomb_levels,
                                  d_values=self.coulomb_d_values,
                                  ze2_max='Z_cr·e² (1 - 1e-12)')
        return Dataset(name='F5', columns=FIGURE_COLUMNS['F5'], rows=rows, metadata=metadata)

    def _coulomb_dimension_sweep(self) -> Dataset:
        points = [(mu, n) for mu in (0.4, -0.4) for n in self.coulomb_levels]

        def compute(point):
            mu, n = point
            return [self._coulomb_pair(self._coulomb_spec(d, mu, self.coulomb_ze2), n)
                    for d in self.coulomb_d_values]

        results = self.runner.map(compute, points, label='F6 维数扫描')
        rows = []
        for (mu, n), series in zip(points, results):
            label = series_label(mu=mu, n=n)
            rows.extend([label, d, printed, shifted, mu, n]
                        for d, (printed, shifted) in zip(self.coulomb_d_values, series))
        metadata = self._metadata('F6', ell=self.ell, ze2=self.coulomb_ze2,
                                  d_values=self.coulomb_d_values, levels=self.coulomb_levels)
        return Dataset(name='F6', columns=FIGURE_COLUMNS['F6'], rows=rows, metadata=metadata)

    # ---- 对产生 ----

    def pair_grid(self, d: int) -> np.ndarray:
        """各 μ 共用的 Ze² 网格: 从最低阈值到最高阈值 + span"""
        thresholds = [scattering.threshold_ze2(DunklConfig.uniform(d, mu, 1), AngularState.uniform(d, self.ell))
                      for mu in self.pair_mu_values]
        return np.linspace(min(thresholds), max(thresholds) + self.pair_ze2_span, self.pair_sweep_points)

    def _pair_creation(self, figure_id: str, d: int) -> Dataset:
        energy = self.pair_energy_over_mass * self.mass
        grid = self.pair_grid(d).tolist()

        def compute(mu):
            config = DunklConfig.uniform(d, mu, 1)
            ang = AngularState.uniform(d, self.ell)
            threshold = scattering.threshold_ze2(config, ang)
            values = []
            for ze2 in grid:
                if ze2 <= threshold:
                    continue
                result = scattering.scatter(scattering.ScatterInput(config, ang, self.mass, ze2, energy))
                values.append((ze2, result.probability, result.density))
            return values

        results = self.runner.map(compute, self.pair_mu_values, label=f'{figure_id} 对产生')
        rows = []
        for mu, series in zip(self.pair_mu_values, results):
            label = series_label(mu=mu, d=d)
            rows.extend([label, ze2, prob, density, mu, d] for ze2, prob, density in series)
        metadata = self._metadata(figure_id, ell=self.ell, d=d, energy=energy,
                                  mu_values=self.pair_mu_values, ze2_span=self.pair_ze2_span,
                                  sweep_points=self.pair_sweep_points)
        return Dataset(name=figure_id, columns=FIGURE_COLUMNS[figure_id], rows=rows, metadata=metadata)

    # ---- 临界电荷表 ----

    def table3(self, tol: float = 0.05) -> Dataset:
        """
        临界电荷表: d = 3..6, ℓ_i = 1..3, μ = +0.4, 0, -0.4

        μ = 0 一列按简化公式 ℓ + d/2 - 1 计算, 其余按 |2L + Σμ + (d-2)/2|。
        computed 与 printed 都以 1/e² 为单位。
        """
        rows = []
        for d_index, d in enumerate(TABLE3_DIMENSIONS):
            for ell in TABLE3_ELL:
                for mu in TABLE3_MU:
                    if mu == 0.0:
                        z_cr = scattering.critical_charge_reduced(d, ell, self.e2_inverse)
                        formula = 'reduced'
                    else:
                        z_cr = scattering.critical_charge(DunklConfig.uniform(d, mu, 1),
                                                          AngularState.uniform(d, ell), self.e2_inverse)
                        formula = 'full'
                    computed = z_cr / self.e2_inverse
                    printed = PRINTED_TABLE3[(mu, ell)][d_index]
                    match = abs(computed - printed) <= tol + 1e-12
                    rows.append([d, ell, mu, computed, printed, z_cr, formula, match,
                                 (d, ell, mu) in SUSPECTED_TYPOS])
        metadata = {'table': 'critical charge', 'e2_inverse': self.e2_inverse, 'tolerance': tol,
                    'suspected_typos': [list(cell) for cell in sorted(SUSPECTED_TYPOS)]}
        return Dataset(name='table3', columns=TABLE3_COLUMNS, rows=rows, metadata=metadata)

    # ---- 定性断言 ----

    def claims(self, figure_id: str, dataset: Dataset = None) -> List[dict]:
        """对数据集检查图中陈述的定性性质, 返回 [{claim, passed, detail}]"""
        key = str(figure_id).upper()
        if key not in self._builders:
            raise UnknownFigure(f"未知的图编号 {figure_id}, 可选 {', '.join(FIGURE_IDS)}")
        dataset = dataset or self.figure_data(key)
        checker = {
            'F1': self._claims_oscillator,
            'F2': self._claims_oscillator,
            'F3': self._claims_profiles,
            'F4': self._claims_coulomb_spectra,
            'F5': self._claims_coulomb_sweep,
            'F7': self._claims_pair,
            'F8': self._claims_pair,
        }.get(key)
        return checker(dataset) if checker else []

    def _claims_oscillator(self, dataset: Dataset) -> List[dict]:
        mu = dataset.metadata['mu']
        results = []
        increasing = all(_is_increasing(dataset.xy(label)[1]) for label in dataset.labels())
        results.append(_claim('energy increases with n', increasing))

        by_d = []
        for s in ('+', '-'):
            for n in range(self.oscillator_n_max + 1):
                values = [dataset.xy(series_label(mu=mu, d=d, s=s))[1][n] for d in self.d_values]
                by_d.append(_is_increasing(values))
        results.append(_claim('energy increases with d', all(by_d)))

        even_lower = True
        for d in self.d_values:
            even = dataset.xy(series_label(mu=mu, d=d, s='+'))[1]
            odd = dataset.xy(series_label(mu=mu, d=d, s='-'))[1]
            pairs = zip(even, odd)
            even_lower &= all((e < o) if mu > 0 else (e > o) for e, o in pairs)
        name = 'even parity lies below odd parity' if mu > 0 else 'odd parity lies below even parity'
        results.append(_claim(name, even_lower))
        return results

    def _claims_profiles(self, dataset: Dataset) -> List[dict]:
        results = []
        nodes_ok = True
        detail = []
        for mu in (0.4, -0.4):
            heights = []
            for n in self.profile_levels:
                part = dataset.series(series_label(mu=mu, n=n))
                nodes = count_sign_changes(part.column('radial'))
                nodes_ok &= nodes == n
                detail.append(f"mu={mu:+.1f} n={n}: {nodes}")
                heights.append(max(part.column('probability')))
            results.append(_claim(f'peak intensity decreases with n (mu={mu:+.1f})',
                                  _is_decreasing(heights),
                                  ', '.join(f"{h:.4g}" for h in heights)))
        results.insert(0, _claim('node count equals n', nodes_ok, '; '.join(detail)))
        return results

    def _coulomb_values(self, dataset: Dataset, label: str, branch: str) -> List[float]:
        column = 'y' if branch == coulomb_bound.PRINTED else 'shifted'
        return dataset.series(label).column(column)

    def _claims_coulomb_spectra(self, dataset: Dataset) -> List[dict]:
        levels = list(range(self.coulomb_n_max + 1))
        results = []
        for mu in (0.4, -0.4):
            for branch in coulomb_bound.BRANCHES:
                curves = {d: self._coulomb_values(dataset, series_label(mu=mu, d=d), branch)
                          for d in self.coulomb_d_values}
                by_d = [n for n in levels if _is_decreasing([curves[d][n] for d in self.coulomb_d_values])]
                ground = ' '.join(f"{curves[d][0]:.5f}" for d in self.coulomb_d_values)
                results.append(_claim(f'energy decreases with d ({branch}, mu={mu:+.1f})',
                                      len(by_d) == len(levels),
                                      f"holds at {len(by_d)}/{len(levels)} levels; n=0 over d: {ground}",
                                      figure_id='F4'))

                base = curves[self.coulomb_d_values[0]]
                head = ' '.join(f"{value:.4f}" for value in base[:4])
                results.append(_claim(f'energy increases with n ({branch}, mu={mu:+.1f})',
                                      all(_is_increasing(curve) for curve in curves.values()),
                                      f"d={self.coulomb_d_values[0]} n=0..3: {head}",
                                      figure_id='F4'))
        return results

    def _claims_coulomb_sweep(self, dataset: Dataset) -> List[dict]:
        results = []
        base_d = self.coulomb_sweep_dimension
        for mu in (0.4, -0.4):
            labels = {n: series_label(mu=mu, d=base_d, n=n) for n in self.coulomb_levels}
            for branch in coulomb_bound.BRANCHES:
                curves = {n: self._coulomb_values(dataset, label, branch) for n, label in labels.items()}
                ground = curves[self.coulomb_levels[0]]
                results.append(_claim(f'ground energy decreases with Ze² ({branch}, mu={mu:+.1f})',
                                      _is_decreasing(ground), f"{ground[0]:.5f} → {ground[-1]:.6f}",
                                      figure_id='F5'))

                ends = [curves[n][-1] for n in self.coulomb_levels]
                spread = (max(ends) - min(ends)) / abs(min(ends))
                measured = ' '.join(f"n={n}:{e:.6f}" for n, e in zip(self.coulomb_levels, ends))
                results.append(_claim(f'levels meet at the critical charge ({branch}, mu={mu:+.1f})',
                                      spread <= 1e-4, f"E at Z_cr: {measured}", figure_id='F5'))

            pair = [dataset.xy(labels[n])[1][-1] for n in (0, 1)]
            gap = abs(pair[0] - pair[1]) / abs(pair[0])
            results.append(_claim(f'n=0 and n=1 meet at the critical charge (printed, mu={mu:+.1f})',
                                  gap <= 1e-4, f"relative gap {gap:.3e}", figure_id='F5'))
        return results

    def _claims_pair(self, dataset: Dataset) -> List[dict]:
        d = dataset.metadata['d']
        strong = dict(zip(*dataset.xy(series_label(mu=0.4, d=d))))
        plain = dict(zip(*dataset.xy(series_label(mu=0.0, d=d))))
        shared = sorted(set(strong) & set(plain))
        ok = bool(shared) and all(strong[z] > plain[z] for z in shared)
        return [_claim('probability with mu=+0.4 exceeds mu=0', ok, f"{len(shared)} shared points")]
