"""
hv-freefield CLI tools.

Each tool is configured at construction and executed once against a
validated RunConfig; the SuiteRunner drives `verify`.
"""

from hv_freefield.tools.base import (
    Tool,
    ToolOutput,
)
from hv_freefield.tools.runner import SuiteRunner

__all__ = [
    'SuiteRunner',
    'Tool',
    'ToolOutput',
]
