"""
Base classes for CLI tools.

Provides:
- ToolOutput: what a tool hands back to the CLI (text, JSON data, success flag)
- Tool: protocol for compute / diagram / enumerate-singular
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Protocol

from hv_freefield.config import RunConfig
from hv_freefield.constants import OutputFormat


@dataclass
class ToolOutput:
    text: str
    data: Dict[str, Any] = field(default_factory=dict)
    ok: bool = True

    def render(self, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return json.dumps(self.data, indent=2, sort_keys=True)
        return self.text


class Tool(Protocol):
    """
    Protocol for one-shot CLI tools.

    Tools are configured at construction (expression, diagram family, ...) and
    run once against a validated RunConfig.
    """

    @property
    def name(self) -> str:
        ...

    @property
    def description(self) -> str:
        ...

    def execute(self, config: RunConfig) -> ToolOutput:
        """
        Run the tool.

        Returns:
            ToolOutput; ok=False when the tool completed but found nothing to report

        Raises:
            HvFreeFieldError: parse or configuration problems (exit code 2)
        """
        ...
