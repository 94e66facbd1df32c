"""
Compute Tool - the `hv-freefield compute 'OPERATORS @ STATE'` calculator.

Operator words apply right to left. Fock states accept every realized
operator; Verma states accept L(n), I(n), phi(p) and Schur(p).
"""

import logging
from typing import Any, Callable, Dict, List

from hv_freefield.config import RunConfig
from hv_freefield.constants import Generator, HGen, Indexing
from hv_freefield.errors import GrammarError, UnsupportedSpace
from hv_freefield.fock import FockElement, Pi0, heis_apply, substitute_element
from hv_freefield.grammar import (
    OperatorToken, format_basis, format_state, looks_like_verma, parse_operator_word, parse_state, parse_verma_terms,
    split_compute_expression,
)
from hv_freefield.hvrealize import OpKind, RealizedOp, apply, phi_apply, screening_q, screening_s, virasoro
from hv_freefield.scalars import format_scalar
from hv_freefield.tools.base import ToolOutput
from hv_freefield.verma import (
    HWData, VermaElement, act, apply_word, format_verma, phi_operator_apply, schur_operator_apply,
)
from hv_freefield.voperator import exp_mode_apply, exp_mode_weight_apply, schur_apply, top_shift_apply, translate

log = logging.getLogger(__name__)

# operator name -> number of integer arguments
ARITY: Dict[str, int] = {
    "L": 1, "Lt": 1, "I": 1, "W": 1, "Wbar": 1, "c": 1, "d": 1,
    "Q": 0, "S": 0, "calQ": 0, "D": 0,
    "e": 2, "phi": 1, "phit": 1, "T": 1, "Schur": 1,
}

VERMA_OPERATORS = ("L", "I", "phi", "Schur")


def _translate(v: FockElement) -> FockElement:
    if not isinstance(v.space, Pi0):
        raise UnsupportedSpace("D", v.space)
    return translate(v)


def _fock_operator(token: OperatorToken, config: RunConfig) -> Callable[[FockElement], FockElement]:
    name, args = token.name, token.args
    if name == "L":
        return lambda v: virasoro(args[0], v, config.deformed)
    if name == "Lt":
        return lambda v: virasoro(args[0], v, deformed=True)
    if name == "I":
        return lambda v: apply(RealizedOp(OpKind.I, args[0]), v)
    if name == "W":
        return lambda v: apply(RealizedOp(OpKind.W, args[0]), v)
    if name == "Wbar":
        return lambda v: apply(RealizedOp(OpKind.BARW, args[0]), v)
    if name == "Q":
        return screening_q
    if name == "S":
        return screening_s
    if name == "calQ":
        return lambda v: apply(RealizedOp(OpKind.CALQ), v)
    if name == "e":
        if config.indexing is Indexing.WEIGHT:
            return lambda v: exp_mode_weight_apply(args[0], args[1], v)
        return lambda v: exp_mode_apply(args[0], args[1], v)
    if name in ("c", "d"):
        return lambda v: heis_apply(Generator(name), args[0], v)
    if name == "phi":
        return lambda v: phi_apply(args[0], v, config.deformed)
    if name == "phit":
        return lambda v: phi_apply(args[0], v, deformed=True)
    if name == "T":
        return lambda v: top_shift_apply(args[0], v)
    if name == "D":
        return _translate
    # Schur
    return lambda v: schur_apply(Generator.C, args[0], v)


def _verma_operator(token: OperatorToken, hw: HWData) -> Callable[[VermaElement], VermaElement]:
    name, args = token.name, token.args
    if name in ("L", "I"):
        return lambda e: act(HGen(name), args[0], e, hw)
    if name == "phi":
        return lambda e: phi_operator_apply(args[0], e, hw)
    return lambda e: schur_operator_apply(args[0], e, hw)


class ComputeTool:
    """Apply an operator word to a state and print the exact result."""

    name = "compute"
    description = "Apply an operator word to a Fock or Verma state"

    def __init__(self, expression: str):
        self.expression = expression

    def _tokens(self, ops_text: str) -> List[OperatorToken]:
        try:
            tokens = parse_operator_word(ops_text)
        except GrammarError as e:
            raise self._rebase(e, 0) from e
        for token in tokens:
            expected = ARITY[token.name]
            if len(token.args) != expected:
                raise GrammarError(f"{token.name} takes {expected} integer argument(s), got {len(token.args)}",
                                   self.expression, token.position)
            if token.name in ("phi", "phit", "Schur") and token.args[0] < 0:
                raise GrammarError(f"{token.name} needs a non-negative degree", self.expression, token.position)
        return tokens

    def _rebase(self, error: GrammarError, offset: int) -> GrammarError:
        return GrammarError(error.reason, self.expression, offset + error.position)

    def execute(self, config: RunConfig) -> ToolOutput:
        """
        Raises:
            GrammarError: positions refer to the full `OPERATORS @ STATE` text
            UnsupportedSpace: an operator undefined on the state's space
            NonIntegerPower: surfaced verbatim from the exponential modes
        """
        ops_text, state_text, offset = split_compute_expression(self.expression)
        tokens = self._tokens(ops_text)
        if looks_like_verma(state_text):
            return self._execute_verma(tokens, state_text, offset, config)
        try:
            state = parse_state(state_text)
        except GrammarError as e:
            raise self._rebase(e, offset) from e

        result = state
        for token in reversed(tokens):
            log.debug(f"[COMPUTE] applying {token} to {len(result)} terms")
            result = _fock_operator(token, config)(result)
        result = substitute_element(result, config.bindings)
        text = format_state(result)
        data = {
            "expression": self.expression,
            "operators": [str(t) for t in tokens],
            "indexing": str(config.indexing),
            "deformed": config.deformed,
            "space": str(result.space),
            "result": text,
            "terms": _fock_terms(result),
        }
        return ToolOutput(text=text, data=data)

    def _execute_verma(self, tokens: List[OperatorToken], state_text: str, offset: int,
                       config: RunConfig) -> ToolOutput:
        for token in tokens:
            if token.name not in VERMA_OPERATORS:
                raise UnsupportedSpace(str(token), "a Verma module")
        try:
            terms = parse_verma_terms(state_text)
        except GrammarError as e:
            raise self._rebase(e, offset) from e
        hw = HWData(terms[0].h, terms[0].hI).substitute(config.bindings)
        state = VermaElement.combine(
            (term.coefficient, apply_word(term.word, VermaElement.highest_weight(), hw)) for term in terms
        )
        for token in reversed(tokens):
            state = _verma_operator(token, hw)(state)
        state = state.substitute(config.bindings)
        text = format_verma(state, hw)
        data = {
            "expression": self.expression,
            "operators": [str(t) for t in tokens],
            "space": f"Verma(h={format_scalar(hw.h)}, hI={format_scalar(hw.hI)})",
            "result": text,
            "terms": [
                {"l_levels": list(m.l_levels), "i_levels": list(m.i_levels), "coefficient": format_scalar(c)}
                for m, c in state.items()
            ],
        }
        return ToolOutput(text=text, data=data)


def _fock_terms(v: FockElement) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for b, c in v.items():
        rows.append({"basis": format_basis(b), "degree": b.degree, "coefficient": format_scalar(c)})
    return rows

