"""
Text reports rendered from the jinja2 templates in ``TEMPLATES_DIR``.
"""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from config import REPORT_CONFIG, TEMPLATES_DIR
from src.utils.errors import UnknownName

logger = logging.getLogger(__name__)

# 模板目录路径 - 使用 config.py 中的配置
_template_dir = TEMPLATES_DIR


def format_number(value) -> str:
    """Format a float with ``REPORT_CONFIG['float_format']``; other values pass through."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, (int, float)):
        return format(float(value), REPORT_CONFIG['float_format'])
    return str(value)


def _environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(_template_dir),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters['num'] = format_number
    return env


_env = _environment()


def render_template(kind: str, /, **context: Any) -> str:
    """
    Render the template registered for ``kind`` in ``REPORT_CONFIG``.

    Args:
        kind (str): verdict, welfare, lorenz, majorization or equivalence.
        **context: Template variables.

    Returns:
        str: The rendered text.

    Raises:
        UnknownName: No template is registered for ``kind``.
    """
    try:
        template_file = REPORT_CONFIG['templates'][kind]
    except KeyError:
        raise UnknownName(f"no report template for {kind!r}")
    return _env.get_template(template_file).render(**context)


def render_verdict(name: str, verdict, sources: Tuple[str, str] = ('F1', 'F2')) -> str:
    return render_template('verdict', name=name, verdict=verdict.to_dict(), sources=sources)


def render_welfare(functional: str, value: float, residual: Optional[float] = None,
                   params: Optional[Dict[str, Any]] = None) -> str:
    return render_template('welfare', functional=functional, value=value, residual=residual,
                           params=params or {})


def render_lorenz(rows: List[Tuple[float, float]], normalize: bool = False) -> str:
    return render_template('lorenz', rows=rows, normalize=normalize)


def render_majorization(kind: str, result, statements: Optional[Dict[str, Any]] = None) -> str:
    return render_template('majorization', kind=kind, result=result, statements=statements or {})


def render_equivalence(report) -> str:
    return render_template('equivalence', report=report)


def to_json(payload: Dict[str, Any]) -> str:
    """Stable JSON for ``--json`` output, stamped with the schema version."""
    body = {'schema_version': REPORT_CONFIG['schema_version']}
    body.update(payload)
    return json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True)


__all__ = [
    'format_number',
    'render_template',
    'render_verdict',
    'render_welfare',
    'render_lorenz',
    'render_majorization',
    'render_equivalence',
    'to_json',
]
