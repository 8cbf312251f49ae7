"""
配置加载模块
读取 YAML 配置文件, 用环境变量覆盖, 并补全默认值
"""

import os
import logging
from pathlib import Path
from typing import Optional, Union

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = 'config/config.yaml'


def default_config_path() -> str:
    """默认配置路径, 可由 DKG_CONFIG 覆盖"""
    return os.getenv('DKG_CONFIG', DEFAULT_CONFIG_PATH)


def load_config(config_path: Optional[Union[str, Path]] = None) -> dict:
    """
    加载配置文件并补全默认值

    Args:
        config_path: 配置文件路径, 为空时使用 DKG_CONFIG 或 config/config.yaml

    Returns:
        完整的配置字典
    """
    load_dotenv()

    path = Path(config_path or default_config_path())
    config: dict = {}

    if path.exists():
        try:
            with path.open('r', encoding='utf-8') as handle:
                loaded = yaml.safe_load(handle)
            if isinstance(loaded, dict):
                config = loaded
        except Exception as exc:
            logger.warning(f"加载配置文件失败，将使用默认配置: {exc}")
    else:
        logger.warning(f"配置文件不存在: {path}, 使用默认配置")

    return apply_defaults(config)


def apply_defaults(config: dict) -> dict:
    """补全所有配置段的默认值 (原地修改并返回)"""
    logging_cfg = config.setdefault('logging', {})
    logging_cfg.setdefault('level', 'INFO')
    logging_cfg.setdefault('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    logging_cfg.setdefault('directory', 'logs')
    logging_cfg.setdefault('file_rotation', True)
    logging_cfg.setdefault('max_bytes', 10485760)
    logging_cfg.setdefault('backup_count', 5)
    logging_cfg.setdefault('console_output', True)
    logging_cfg.setdefault('file_output', True)

    output_cfg = config.setdefault('output', {})
    output_cfg.setdefault('directory', 'output')
    output_cfg.setdefault('default_format', 'csv')
    output_cfg.setdefault('float_digits', 12)

    units_cfg = config.setdefault('units', {})
    units_cfg.setdefault('e2_inverse', 137.0)

    numerics_cfg = config.setdefault('numerics', {})
    numerics_cfg.setdefault('kummer_rel_tol', 1e-17)
    numerics_cfg.setdefault('kummer_max_terms', 5000)
    numerics_cfg.setdefault('kummer_max_abs_z', 50.0)
    numerics_cfg.setdefault('quadrature_order', 16)
    numerics_cfg.setdefault('quadrature_tol', 1e-10)
    numerics_cfg.setdefault('quadrature_max_depth', 40)

    oracle_cfg = config.setdefault('oracle', {})
    oracle_cfg.setdefault('grid_points', 4000)
    oracle_cfg.setdefault('richardson', True)
    oracle_cfg.setdefault('oscillator_r_max', 12.0)
    oracle_cfg.setdefault('coulomb_bracket', [0.01, 0.999])
    oracle_cfg.setdefault('coulomb_r_max_initial', 400.0)
    oracle_cfg.setdefault('coulomb_decay_lengths', 40.0)
    oracle_cfg.setdefault('bisection_tol', 1e-12)
    oracle_cfg.setdefault('bisection_max_iter', 200)

    profiles_cfg = config.setdefault('profiles', {})
    profiles_cfg.setdefault('grid_points', 2000)
    profiles_cfg.setdefault('quadrature_tol', 1e-6)

    figures_cfg = config.setdefault('figures', {})
    figures_cfg.setdefault('mass', 1.0)
    figures_cfg.setdefault('omega', 1.0)
    figures_cfg.setdefault('ell', 1)
    figures_cfg.setdefault('d_values', [3, 4, 5, 6])
    figures_cfg.setdefault('oscillator_n_max', 10)
    figures_cfg.setdefault('profile_levels', [2, 3, 4, 5])
    figures_cfg.setdefault('profile_dimension', 3)
    figures_cfg.setdefault('coulomb_ze2', 1.0)
    figures_cfg.setdefault('coulomb_n_max', 60)
    figures_cfg.setdefault('coulomb_levels', [0, 1, 2, 3])
    figures_cfg.setdefault('coulomb_sweep_points', 60)
    figures_cfg.setdefault('coulomb_sweep_dimension', 3)
    figures_cfg.setdefault('coulomb_d_values', [3, 4, 5, 6, 7, 8])
    figures_cfg.setdefault('pair_energy_over_mass', 2.0)
    figures_cfg.setdefault('pair_mu_values', [0.4, 0.0, -0.4])
    figures_cfg.setdefault('pair_ze2_span', 6.0)
    figures_cfg.setdefault('pair_sweep_points', 60)

    concurrency_cfg = config.setdefault('concurrency', {})
    concurrency_cfg.setdefault('enable', True)
    concurrency_cfg.setdefault('max_workers', 4)

    verification_cfg = config.setdefault('verification', {})
    verification_cfg.setdefault('oscillator_rel_tol', 1e-5)
    verification_cfg.setdefault('coulomb_rel_tol', 1e-5)
    verification_cfg.setdefault('table3_abs_tol', 0.05)
    verification_cfg.setdefault('identity_rel_tol', 1e-12)
    verification_cfg.setdefault('bogoliubov_rel_tol', 1e-9)
    verification_cfg.setdefault('angular_residual_tol', 1e-5)
    verification_cfg.setdefault('report_name', 'verify_report.json')

    return config


def env_override(name: str, fallback, cast=str):
    """读取环境变量, 不存在或无法转换时返回 fallback"""
    raw = os.getenv(name)
    if raw is None or raw == '':
        return fallback
    try:
        return cast(raw)
    except (ValueError, TypeError):
        logger.warning(f"环境变量 {name}={raw!r} 无法解析, 使用默认值 {fallback!r}")
        return fallback
