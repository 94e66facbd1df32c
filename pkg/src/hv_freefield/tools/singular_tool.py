"""
Enumerate-singular Tool - the full space of level-p singular vectors of a Verma module.

For each selected p <= 3 the level-p singular space is solved as an exact
nullspace. With no explicit highest weight the free-field weight
(h_{p,r+2}, (1-p) cLI) is used and the tool also reports whether
Phi_p(L, c) v spans the space it found.
"""

import logging
from typing import Any, Dict, List, Optional

from hv_freefield.config import RunConfig
from hv_freefield.errors import ConfigurationError
from hv_freefield.linalg import in_span
from hv_freefield.scalars import format_scalar, parse_scalar
from hv_freefield.tools.base import ToolOutput
from hv_freefield.verma import (
    HWData, enumerate_singular, format_verma, free_field_weights, graded_dimension, phi_element, reducibility,
)

log = logging.getLogger(__name__)

MAX_ENUMERATION_LEVEL = 3


class EnumerateSingularTool:
    """Exact level-p singular subspace, p <= 3."""

    name = "enumerate-singular"
    description = "Basis of the level-p singular vectors of V(h, hI)"

    def __init__(self, h: Optional[str] = None, h_i: Optional[str] = None):
        if (h is None) != (h_i is None):
            raise ConfigurationError("--h and --hI must be given together")
        self.h = h
        self.h_i = h_i

    def _levels(self, config: RunConfig) -> List[int]:
        levels = sorted({abs(p) for p in config.p_values if p})
        too_high = [p for p in levels if p > MAX_ENUMERATION_LEVEL]
        if too_high:
            raise ConfigurationError(f"enumerate-singular supports p <= {MAX_ENUMERATION_LEVEL}, got {too_high}")
        if not levels:
            raise ConfigurationError("enumerate-singular needs at least one nonzero p")
        return levels

    def _weights(self, p: int, config: RunConfig) -> HWData:
        if self.h is None:
            hw = free_field_weights(p, config.r_scalar())
        else:
            hw = HWData(parse_scalar(self.h), parse_scalar(self.h_i))
        return hw.substitute(config.bindings)

    def execute(self, config: RunConfig) -> ToolOutput:
        lines = []
        levels: List[Dict[str, Any]] = []
        for p in self._levels(config):
            hw = self._weights(p, config)
            basis = enumerate_singular(p, hw)
            entry: Dict[str, Any] = {
                "p": p,
                "h": format_scalar(hw.h),
                "hI": format_scalar(hw.hI),
                "level_dimension": graded_dimension(p),
                "reducibility": str(reducibility(hw)),
                "singular": [format_verma(e, hw) for e in basis],
            }
            lines.append(f"p={p}  h={entry['h']}  hI={entry['hI']}  ({entry['reducibility']})")
            lines.append(f"  singular subspace: {len(basis)} of {entry['level_dimension']}")
            for text in entry["singular"]:
                lines.append(f"  {text}")
            if self.h is None:
                phi = phi_element(p, hw)
                spans = bool(phi) and len(basis) == 1 and in_span(phi, basis)
                entry["phi_spans"] = spans
                lines.append(f"  Phi_{p}(L, c) v spans the subspace: {'yes' if spans else 'no'}")
            log.info(f"[SINGULAR] level {p}: {len(basis)} singular vector(s)")
            levels.append(entry)
        return ToolOutput(text="\n".join(lines), data={"levels": levels})
