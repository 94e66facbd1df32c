"""
Singular vectors of the Verma modules, both families, and their free-field images.
"""

import logging
from typing import Sequence, Tuple

from hv_freefield.constants import HGen, Param, SuiteName
from hv_freefield.hvrealize import heisenberg, make_v, phi_apply, virasoro
from hv_freefield.suites.base import (
    CheckFn, CheckPrecondition, SuiteBase, SuiteContext, expect_equal, expect_true, expect_zero,
)
from hv_freefield.verma import (
    HWData, Reducibility, VermaElement, act, bipartition_count, format_verma, free_field_weights, graded_dimension,
    is_singular, pbw_basis, phi_element, realize, reducibility, schur_singular_element,
)

log = logging.getLogger(__name__)

MAX_SINGULAR_LEVEL = 4
MAX_AGREEMENT_LEVEL = 4
DIMENSION_LEVELS = 6


class SingularSuite(SuiteBase):
    name = SuiteName.SINGULAR
    description = "Phi_p and Schur singular vectors, their free-field images, Verma/free-field agreement"
    preconditions = CheckPrecondition.CLI_NONZERO

    def checks(self, ctx: SuiteContext) -> Sequence[Tuple[str, CheckFn]]:
        levels = range(1, min(ctx.degree_bound, MAX_SINGULAR_LEVEL) + 1)
        checks = []
        for p in levels:
            checks.append((f"phi_{p}_singular", _phi_singular(ctx, p)))
            checks.append((f"schur_{p}_singular", _schur_singular(ctx, p)))
        for p in ctx.positive_p:
            checks.append((f"phi_{p}_vanishes_on_top", _phi_vanishes(ctx, p)))
        for p in ctx.positive_p:
            checks.append((f"free_field_agreement_{p}", _free_field_agreement(ctx, p)))
        checks.append(("graded_dimensions", lambda: check_graded_dimensions(min(ctx.degree_bound, DIMENSION_LEVELS))))
        checks.append(("reducibility", lambda: check_reducibility(ctx)))
        return checks


def _bound_hw(ctx: SuiteContext, hw: HWData) -> HWData:
    return hw.substitute(ctx.config.bindings)


def _expect_singular(e: VermaElement, level: int, hw: HWData, what: str) -> None:
    expect_true(bool(e), f"{what} is zero")
    expect_true(is_singular(e, level, hw), f"{what} is not singular", witness=format_verma(e, hw))


def _phi_singular(ctx: SuiteContext, p: int) -> CheckFn:
    def check() -> str:
        hw = _bound_hw(ctx, free_field_weights(p, ctx.r))
        _expect_singular(phi_element(p, hw), p, hw, f"Phi_{p} v")
        return f"{len(phi_element(p, hw))} PBW terms"
    return check


def _schur_singular(ctx: SuiteContext, p: int) -> CheckFn:
    def check() -> None:
        cli = ctx.param(Param.CLI)
        hw = _bound_hw(ctx, HWData(ctx.param(Param.H), (1 + p) * cli))
        _expect_singular(schur_singular_element(p, hw), p, hw, f"S_{p}(c) v")
    return check


def _phi_vanishes(ctx: SuiteContext, p: int) -> CheckFn:
    def check() -> None:
        expect_zero(ctx, phi_apply(p, make_v(p, ctx.r + 2)), f"Phi_{p} v_{{{p},r+2}}")
    return check


def _free_field_agreement(ctx: SuiteContext, p: int) -> CheckFn:
    """realize(g(n) e) = g(n) realize(e) for every PBW monomial e and level-bounded g(n)."""
    def check() -> str:
        r = ctx.r
        hw = free_field_weights(p, r)
        bound = min(ctx.degree_bound, MAX_AGREEMENT_LEVEL)
        count = 0
        for level in range(bound + 1):
            for mono in pbw_basis(level):
                e = VermaElement.monomial(mono)
                image = realize(e, p, r)
                for n in range(level - bound, level + 1):
                    for gen in HGen:
                        free = virasoro(n, image) if gen is HGen.L else heisenberg(n, image)
                        expect_equal(ctx, realize(act(gen, n, e, hw), p, r), free,
                                     f"{gen}({n}) on {format_verma(e, hw)}")
                        count += 1
        return f"{count} operator applications up to level {bound}"
    return check


def check_graded_dimensions(levels: int) -> None:
    for n in range(levels + 1):
        expect_true(graded_dimension(n) == bipartition_count(n),
                    f"level {n}: {graded_dimension(n)} PBW monomials, {bipartition_count(n)} bipartitions")


def check_reducibility(ctx: SuiteContext) -> None:
    """hI = (1 +- p) cLI gives a reducible module; hI = cLI does not."""
    cli = ctx.param(Param.CLI)
    h = ctx.param(Param.H)
    for p in ctx.positive_p:
        for hi in ((1 + p) * cli, (1 - p) * cli):
            expect_true(reducibility(HWData(h, hi, cLI=cli)) is Reducibility.REDUCIBLE, f"hI = {hi} should be reducible")
    expect_true(reducibility(HWData(h, cli, cLI=cli)) is Reducibility.IRREDUCIBLE, "hI = cLI should be irreducible")
