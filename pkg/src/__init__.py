"""
DKG Toolkit - Dunkl-Klein-Gordon 振子与 Coulomb 问题的谱、对产生与数值验证
"""

__version__ = "1.0.0"
__author__ = "DKG Toolkit Team"

from .core import AngularState, DunklConfig
from .dataset_writer import Dataset, DatasetWriter
from .figures import FigureBuilder
from .oracle import RadialOracle, RadialProblem
from .verification import VerificationReport, VerificationSuite

__all__ = [
    "AngularState",
    "DunklConfig",
    "Dataset",
    "DatasetWriter",
    "FigureBuilder",
    "RadialOracle",
    "RadialProblem",
    "VerificationReport",
    "VerificationSuite",
]
