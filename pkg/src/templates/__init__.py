# templates 模块初始化文件

# 这个模块只包含 jinja2 文本报告模板（*.txt）
# 模板文件直接存储在 templates 目录中，由 report_renderer 加载

# 定义模块的公开接口
__all__ = []
