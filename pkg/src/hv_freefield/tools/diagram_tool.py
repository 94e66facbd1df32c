"""
Diagram Tool - DOT pictures of the module families, computed edge by edge.

Every edge is an engine computation: it is emitted only when the image is
nonzero, and its label carries the printed image with a relation tag
(`=`, `≡ mod Ker Q^k`, `∝` for a multiple of the target, or `≠` when the image
misses the target).

Families:
    PiPR       nodes v^(m) above v_{p,r-2l}, l + m <= depth; Q and e^c_{-p} edges
               (plus Phi_p(tilde L, c) on the m = 0 column when deformed)
    PiNeg      nodes Q^j v_{-p,r-2(l-j)}, j <= l <= depth; Q and e^c_p edges
               (tilde L(p) when deformed)
    Pi0r       chain v_{0,r-2l} with tilde L(0) - h_{0,r} edges
    Whittaker  chain d(0)^k w_lambda with descending tilde L(0) - h edges
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from hv_freefield.config import RunConfig
from hv_freefield.constants import DiagramFamily
from hv_freefield.errors import ConfigurationError
from hv_freefield.fock import FockElement, substitute_element
from hv_freefield.grammar import format_state
from hv_freefield.hvrealize import conformal_weight, make_cosingular, make_v, phi_apply, q_power, screening_q, virasoro
from hv_freefield.scalars import Scalar, format_scalar
from hv_freefield.tools.base import ToolOutput
from hv_freefield.voperator import exp_mode_apply
from hv_freefield.whittaker import lowest_weight, w_lambda

log = logging.getLogger(__name__)

MAX_DIAGRAM_DEPTH = 6


@dataclass
class Node:
    node_id: str
    label: str
    state: FockElement


@dataclass
class Edge:
    source: str
    target: str
    operator: str
    relation: str
    image: FockElement


@dataclass
class Diagram:
    family: DiagramFamily
    title: str
    nodes: List[Node] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)

    def node(self, node_id: str) -> Optional[Node]:
        return next((n for n in self.nodes if n.node_id == node_id), None)

    def connect(self, source: Node, target: Node, operator: str, image: FockElement, relation: str):
        """Record an edge when the computed image is nonzero."""
        if not image:
            log.debug(f"[DIAGRAM] {operator} {source.node_id}: zero image, no edge")
            return
        self.edges.append(Edge(source.node_id, target.node_id, operator, relation, image))
        log.debug(f"[DIAGRAM] {source.node_id} -> {target.node_id} via {operator} ({relation})")


def relation_tag(image: FockElement, target: FockElement, kernel_order: int) -> str:
    """`=` on exact agreement, else the smallest k with image = target mod Ker Q^k."""
    if image == target:
        return "="
    difference = image - target
    for k in range(1, kernel_order + 1):
        if not q_power(difference, k):
            return f"≡ mod Ker Q^{k}"
    return "≠"


def pipr_diagram(p: int, r: Scalar, depth: int, deformed: bool = False) -> Diagram:
    diagram = Diagram(DiagramFamily.PIPR, f"Pi({p}, {format_scalar(r)})")
    for level in range(depth + 1):
        for ell in range(level + 1):
            m = level - ell
            label = f"v[{p},{format_scalar(r)},{ell}]" if m == 0 else f"cos[{p},{format_scalar(r)},{ell},{m}]"
            diagram.nodes.append(Node(f"n_l{ell}_m{m}", label, make_cosingular(p, r, ell, m)))
    for node in list(diagram.nodes):
        ell, m = _coordinates(node.node_id)
        if m >= 1:
            target = diagram.node(f"n_l{ell + 1}_m{m - 1}")
            if target is not None:
                image = screening_q(node.state)
                diagram.connect(node, target, "Q", image, relation_tag(image, target.state, m - 1))
        target = diagram.node(f"n_l{ell + 1}_m{m}")
        if target is None:
            continue
        image = exp_mode_apply(1, -p, node.state)
        diagram.connect(node, target, f"e^c({-p})", image, relation_tag(image, target.state, m))
        if deformed and m == 0:
            image = phi_apply(p, node.state, deformed=True)
            diagram.connect(node, target, f"Phi_{p}(tilde L, c)", image, relation_tag(image, target.state, 0))
    return diagram


def _coordinates(node_id: str) -> Tuple[int, int]:
    """(l, m) or (l, j) from an `n_l{l}_m{m}` style node id."""
    _, ell, m = node_id.split("_")
    return int(ell[1:]), int(m[1:])


def pineg_diagram(p: int, r: Scalar, depth: int, deformed: bool = False) -> Diagram:
    diagram = Diagram(DiagramFamily.PINEG, f"Pi({-p}, {format_scalar(r)})")
    for ell in range(depth + 1):
        for j in range(ell + 1):
            label = f"v[{-p},{format_scalar(r)},{ell}]" if j == 0 else f"Q^{j} v[{-p},{format_scalar(r)},{ell - j}]"
            diagram.nodes.append(Node(f"n_l{ell}_j{j}", label, q_power(make_v(-p, r, ell - j), j)))
    lowering = f"tilde L({p})" if deformed else f"e^c({p})"
    for node in list(diagram.nodes):
        ell, j = _coordinates(node.node_id)
        target = diagram.node(f"n_l{ell + 1}_j{j + 1}")
        if target is not None:
            image = screening_q(node.state)
            diagram.connect(node, target, "Q", image, relation_tag(image, target.state, 0))
        if j == 0:
            target = diagram.node(f"n_l{ell + 1}_j0")
            if target is not None:
                image = virasoro(p, node.state, deformed=True) if deformed else exp_mode_apply(1, p, node.state)
                diagram.connect(node, target, lowering, image, relation_tag(image, target.state, 0))
    return diagram


def pi0r_diagram(r: Scalar, depth: int) -> Diagram:
    diagram = Diagram(DiagramFamily.PI0R, f"Pi(0, {format_scalar(r)})")
    weight = conformal_weight(0, r)
    for ell in range(depth + 1):
        diagram.nodes.append(Node(f"n_l{ell}", f"v[0,{format_scalar(r)},{ell}]", make_v(0, r, ell)))
    for source, target in zip(diagram.nodes, diagram.nodes[1:]):
        image = virasoro(0, source.state, deformed=True) - source.state.scale(weight)
        diagram.connect(source, target, "tilde L(0) - h", image, relation_tag(image, target.state, 0))
    return diagram


def whittaker_diagram(lam: Scalar, depth: int) -> Diagram:
    diagram = Diagram(DiagramFamily.WHITTAKER, f"Pi_lambda, lambda = {format_scalar(lam)}")
    h = lowest_weight(lam)
    for k in range(depth + 1):
        label = f"w[{format_scalar(lam)}]" if k == 0 else f"d0^{k} w[{format_scalar(lam)}]"
        diagram.nodes.append(Node(f"n_k{k}", label, w_lambda(lam, k)))
    for target, source in zip(diagram.nodes, diagram.nodes[1:]):
        image = virasoro(0, source.state, deformed=True) - source.state.scale(h)
        (target_basis,) = target.state.terms
        leading = image.coefficient(target_basis)
        relation = "∝" if image == target.state.scale(leading) else "≡ mod lower d0 powers"
        diagram.connect(source, target, "tilde L(0) - h", image, relation)
    return diagram


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(diagram: Diagram, bindings: Dict) -> str:
    lines = [
        f"digraph {diagram.family} {{",
        f'  label="{_escape(diagram.title)}";',
        "  rankdir=TB;",
        "  node [shape=box];",
    ]
    for node in diagram.nodes:
        lines.append(f'  {node.node_id} [label="{_escape(node.label)}"];')
    for edge in diagram.edges:
        image = format_state(substitute_element(edge.image, bindings))
        label = f"{_escape(edge.operator)} {_escape(edge.relation)}\\n{_escape(image)}"
        lines.append(f'  {edge.source} -> {edge.target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)


def to_dict(diagram: Diagram, bindings: Dict) -> Dict[str, Any]:
    return {
        "family": str(diagram.family),
        "title": diagram.title,
        "nodes": [{"id": n.node_id, "label": n.label} for n in diagram.nodes],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "operator": e.operator,
                "relation": e.relation,
                "image": format_state(substitute_element(e.image, bindings)),
            }
            for e in diagram.edges
        ],
    }


class DiagramTool:
    """Emit one module-family diagram as DOT (text/dot formats) or JSON."""

    name = "diagram"
    description = "DOT diagram of PiPR, PiNeg, Pi0r or Whittaker"

    def __init__(self, family: DiagramFamily, depth: int, p: Optional[int] = None):
        self.family = family
        self.depth = depth
        self.p = p

    def _builder(self, config: RunConfig) -> Callable[[], Diagram]:
        p = abs(self.p if self.p is not None else config.p_values[0])
        if self.family in (DiagramFamily.PIPR, DiagramFamily.PINEG) and p < 1:
            raise ConfigurationError(f"{self.family} diagrams need p >= 1, got {p}")
        r = config.r_scalar()
        if self.family is DiagramFamily.PIPR:
            return lambda: pipr_diagram(p, r, self.depth, config.deformed)
        if self.family is DiagramFamily.PINEG:
            return lambda: pineg_diagram(p, r, self.depth, config.deformed)
        if self.family is DiagramFamily.PI0R:
            return lambda: pi0r_diagram(r, self.depth)
        return lambda: whittaker_diagram(config.lam_scalar(), self.depth)

    def execute(self, config: RunConfig) -> ToolOutput:
        """
        Raises:
            ConfigurationError: depth outside 0..MAX_DIAGRAM_DEPTH or p < 1 for PiPR / PiNeg
        """
        if not 0 <= self.depth <= MAX_DIAGRAM_DEPTH:
            raise ConfigurationError(f"diagram depth must be in 0..{MAX_DIAGRAM_DEPTH}, got {self.depth}")
        diagram = self._builder(config)()
        log.info(f"[DIAGRAM] {diagram.title}: {len(diagram.nodes)} nodes, {len(diagram.edges)} edges")
        return ToolOutput(text=to_dot(diagram, config.bindings), data=to_dict(diagram, config.bindings))
