# utils 模块初始化文件

# 从子模块导入所有公开的函数和类
# file_loader 依赖 core/handlers，不在此处导入以避免循环导入
from .errors import StochOrdError, ParseError
from .json_validator import validate_json_structure
from .csv_reader import read_csv_rows

# 定义模块的公开接口
__all__ = [
    "StochOrdError",
    "ParseError",
    "validate_json_structure",
    "read_csv_rows"
]
