"""
测试公共夹具
"""

import pytest

from src.core import AngularState, DunklConfig
from src.settings import apply_defaults


@pytest.fixture
def config():
    """完整默认配置, 关闭并发与文件日志"""
    cfg = apply_defaults({})
    cfg['concurrency']['enable'] = False
    cfg['logging']['file_output'] = False
    return cfg


@pytest.fixture
def fast_config(config):
    """缩小网格的配置, 用于图数据与校验测试"""
    config['oracle']['grid_points'] = 1500
    config['profiles']['grid_points'] = 400
    config['figures']['oscillator_n_max'] = 4
    config['figures']['coulomb_n_max'] = 60
    config['figures']['coulomb_sweep_points'] = 12
    config['figures']['pair_sweep_points'] = 12
    return config


@pytest.fixture
def ground_config():
    """d=3, μ=0, 全偶宇称"""
    return DunklConfig.uniform(3, 0.0)


@pytest.fixture
def dunkl_config():
    """d=3, μ=0.4, 全偶宇称"""
    return DunklConfig.uniform(3, 0.4)


@pytest.fixture
def ell_one():
    """d=3, ℓ=(1,1)"""
    return AngularState.uniform(3, 1)


@pytest.fixture
def ell_zero():
    """d=3, ℓ=(0,0)"""
    return AngularState.uniform(3, 0)
