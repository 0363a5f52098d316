"""Roughness and multifractality diagnostics for high-frequency volatility series."""

__version__ = "0.1.0"

from .multifractal import dwt_leaders, mfdfa, moment_scaling, shuffle_comparison  # noqa: E402
from .pvar import PGrid, find_zero_crossing, logw_curve  # noqa: E402
from .series import log_returns, partition_plan, realised_volatility  # noqa: E402
from .stationarity import adf_test, binary_segmentation, rolling_stability  # noqa: E402
from .synth import SynthSpec, generate  # noqa: E402

__all__ = [
    "PGrid",
    "SynthSpec",
    "adf_test",
    "binary_segmentation",
    "dwt_leaders",
    "find_zero_crossing",
    "generate",
    "log_returns",
    "logw_curve",
    "mfdfa",
    "moment_scaling",
    "partition_plan",
    "realised_volatility",
    "rolling_stability",
    "shuffle_comparison",
]
