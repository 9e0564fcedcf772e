# handlers 模块初始化文件

# 从子模块导入所有公开的函数和类
from .ordering import OrderingVerdict, check_ordering, upper_ordering, lower_ordering, double_ordering
from .clauses import evaluate_clause, evaluate_clauses, evaluate_theorem
from .majorize import majorizes, statements_hold
from .welfare import yaari, rdeu, gini_index, lorenz_curve, s_gini_perception
from .dualcheck import InstanceSpec, EquivalenceReport, run_equivalence_suite, exhaustive_small_scan

# 定义模块的公开接口
__all__ = [
    "OrderingVerdict",
    "check_ordering",
    "upper_ordering",
    "lower_ordering",
    "double_ordering",
    "evaluate_clause",
    "evaluate_clauses",
    "evaluate_theorem",
    "majorizes",
    "statements_hold",
    "yaari",
    "rdeu",
    "gini_index",
    "lorenz_curve",
    "s_gini_perception",
    "InstanceSpec",
    "EquivalenceReport",
    "run_equivalence_suite",
    "exhaustive_small_scan"
]
