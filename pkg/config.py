import logging
import os
import sys

# 项目根目录
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))

# 确保src目录在Python路径中
sys.path.append(PROJECT_ROOT)

def get_path(*path_parts):
    """获取项目内的绝对路径"""
    return os.path.join(PROJECT_ROOT, *path_parts)

# 源码目录
SRC_DIR = get_path('src')

# 报告模板目录
TEMPLATES_DIR = get_path('src', 'templates')

# 日志目录
LOGS_DIR = get_path('logs')

# 序关系计算配置
STOCHORD_CONFIG = {
    # 全局比较容差 ε
    'eps': 1e-9,
    # 概率质量归一化容差
    'mass_eps': 1e-12,
    # 距离判定边界 marginal_factor * ε 以内的结果记为 tolerance-marginal
    'marginal_factor': 2.0,

    # S-Gini 感知函数 p^rho 的默认分段线性网格
    'sgini_grid': 1001,
    # PL 生成函数得到二次效用时，每段细分的子节点数
    'refine_knots': 16,

    # Lorenz 曲线默认输出行数 (n_points + 1 行)
    'lorenz_points': 10,

    # 穷举扫描上限：|grid|^n 个向量
    'scan_limit': 10_000,
    'max_scan_n': 4,

    # 随机等价性检验的默认实例参数
    'suite_defaults': {
        'seed': 1,
        'trials': 1000,
        'n_atoms_max': 10,
        'n_knots_max': 5,
        'value_range': (-10.0, 10.0),
    },

    # 可用的序关系名称
    'classic_orders': ['FSD', 'SSD', 'ICV', 'ICX', 'LORENZ_WEAK', 'LORENZ_UPPER'],
    'pair_orders': ['UPPER', 'LOWER', 'DOUBLE'],

    # 可检验的定理编号
    'theorems': ['T1', 'T1-star', 'T2', 'T3', 'L1', 'L3', 'EQ1', 'COR1', 'COR2', 'MAJ',
                 'IBP', 'CV', 'L4'],
}

# 报告输出配置
REPORT_CONFIG = {
    'schema_version': 1,
    'float_format': '.10g',
    'templates': {
        'verdict': 'verdict.txt',
        'welfare': 'welfare.txt',
        'lorenz': 'lorenz.txt',
        'majorization': 'majorization.txt',
        'equivalence': 'equivalence.txt',
    },
}

# 日志配置
LOGGING_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        },
        'simple': {
            'format': '%(levelname)s: %(message)s'
        }
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'level': 'WARNING'
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': get_path('logs', 'app.log'),
            'formatter': 'default',
            'level': 'DEBUG',
            'encoding': 'utf-8',
            'delay': True
        }
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING'
    },
    'loggers': {
        'mcp': {
            'handlers': ['console', 'file'],
            'level': 'DEBUG',
            'propagate': False
        },
        'src': {
            'handlers': ['console', 'file'],
            'level': 'DEBUG',
            'propagate': False
        },
        'stochord': {
            'handlers': ['console', 'file'],
            'level': 'DEBUG',
            'propagate': False
        }
    }
}

# 创建必要的目录
def ensure_directories():
    """确保必要的目录存在"""
    # 确保日志目录存在
    if not os.path.exists(LOGS_DIR):
        os.makedirs(LOGS_DIR, exist_ok=True)

    # 确保模板目录存在
    if not os.path.exists(TEMPLATES_DIR):
        os.makedirs(TEMPLATES_DIR, exist_ok=True)

# 在导入时确保目录存在
ensure_directories()


def tolerance(eps=None):
    """
    Resolve the comparison tolerance used by a decision procedure.

    Args:
        eps (float, optional): Explicit tolerance. ``None`` means the configured
            global value, read at call time so that ``STOCHORD_EPS`` takes effect
            everywhere.

    Returns:
        float: The tolerance to compare against.
    """
    if eps is None:
        return float(STOCHORD_CONFIG['eps'])
    return float(eps)


# 根据环境变量加载不同配置
def load_env_config(env='development'):
    """根据环境加载不同的配置"""
    config_map = {
        'development': {
            'log_level': 'DEBUG',
        },
        'production': {
            'log_level': 'WARNING',
        },
        'testing': {
            'log_level': 'INFO',
            'trials': 200,
        }
    }

    # 获取当前环境的配置
    env_config = dict(config_map.get(env, config_map['development']))

    # 环境日志级别作用于各项目 logger
    for name in ('src', 'stochord'):
        LOGGING_CONFIG['loggers'][name]['level'] = env_config['log_level']

    # 更新随机检验默认值
    if 'trials' in env_config:
        STOCHORD_CONFIG['suite_defaults']['trials'] = env_config['trials']

    # STOCHORD_EPS 覆盖 ε
    raw_eps = os.environ.get('STOCHORD_EPS')
    if raw_eps:
        try:
            value = float(raw_eps)
        except ValueError:
            value = 0.0
        if 0 < value < float("inf"):
            STOCHORD_CONFIG['eps'] = env_config['eps'] = value
        else:
            logging.getLogger('stochord').warning("忽略无效的 STOCHORD_EPS=%r", raw_eps)

    return env_config

# 尝试从环境变量获取当前环境
current_env = os.environ.get('APP_ENV', 'development')

env_specific_config = load_env_config(current_env)

# 导出所有配置变量
__all__ = [
    'PROJECT_ROOT',
    'SRC_DIR',
    'TEMPLATES_DIR',
    'LOGS_DIR',
    'STOCHORD_CONFIG',
    'REPORT_CONFIG',
    'LOGGING_CONFIG',
    'get_path',
    'ensure_directories',
    'tolerance',
    'load_env_config',
    'env_specific_config'
]
