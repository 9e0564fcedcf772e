# core 模块初始化文件

# 从子模块导入所有公开的函数和类
from .dist_core import (
    DiscreteCdf,
    cdf_from_atoms,
    eval_cdf,
    eval_cdf_left,
    negate,
    point_mass,
    quantile,
    quantile_right,
    survivor,
)
from .distortion import (
    StandardPair,
    extreme_ray_family,
    generate_utility,
    identity_pair,
    make_standard_pair,
    tilde_transform,
)
from .stieltjes import MonotonePL, Piecewise, StepFn, ls_integral

# 定义模块的公开接口
__all__ = [
    "DiscreteCdf",
    "cdf_from_atoms",
    "eval_cdf",
    "eval_cdf_left",
    "negate",
    "point_mass",
    "quantile",
    "quantile_right",
    "survivor",
    "StandardPair",
    "extreme_ray_family",
    "generate_utility",
    "identity_pair",
    "make_standard_pair",
    "tilde_transform",
    "MonotonePL",
    "Piecewise",
    "StepFn",
    "ls_integral",
]
